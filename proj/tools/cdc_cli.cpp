// Copyright 2026 The CDC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: single evaluations and figure sweeps.
//
//   cdc capacity --family two-qubit --alpha 0.5 --n 3
//   cdc pauli    --family w --alpha 0.6 --beta 0.5 --n 6
//   cdc ggm      --family ghz --parties 3 --alpha 0.6
//   cdc entropy  --family two-qutrit --alpha 0.3 --beta 0.5
//   cdc sweep    --family ghz --alpha-range 0:0.7071:0.01 --n 5,6,7,8 --out ghz.csv
//   cdc preset fig1 --out fig1.csv
//
// Exit codes: 0 success, 1 invalid arguments or spec, 2 I/O failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdc/capacity.hpp"
#include "cdc/entanglement.hpp"
#include "cdc/states.hpp"
#include "cdc/sweep.hpp"

namespace {

struct StateArgs {
  std::string family = "two-qubit";
  int parties = 3;
  double alpha = 0.0;
  double beta = 0.0;
};

struct SearchArgs {
  int restarts = cdc::CapacityConfig{}.restarts;
  int max_iterations = cdc::CapacityConfig{}.max_iterations;
  std::uint64_t seed = cdc::CapacityConfig{}.seed;
  bool no_pauli_seed = false;
  std::string local_search = "gradient";
};

void add_state_options(CLI::App* cmd, StateArgs& a) {
  cmd->add_option("--family", a.family, "two-qubit | two-qutrit | ghz | w")->capture_default_str();
  cmd->add_option("--parties", a.parties, "party count for ghz")->capture_default_str();
  cmd->add_option("--alpha", a.alpha, "first state coefficient")->required();
  cmd->add_option("--beta", a.beta, "second state coefficient (two-qutrit, w)");
}

void add_search_options(CLI::App* cmd, SearchArgs& a) {
  cmd->add_option("--restarts", a.restarts, "random restarts of the encoder search")->capture_default_str();
  cmd->add_option("--max-iterations", a.max_iterations, "iterations per local search")
      ->capture_default_str();
  cmd->add_option("--seed", a.seed, "base random seed")->capture_default_str();
  cmd->add_flag("--no-pauli-seed", a.no_pauli_seed, "do not start a local search from the best Pauli encoding");
  cmd->add_option("--local-search", a.local_search, "gradient (BFGS) | simplex (Nelder-Mead)")
      ->check(CLI::IsMember({"gradient", "simplex"}))
      ->capture_default_str();
}

cdc::CapacityConfig make_config(const SearchArgs& a) {
  cdc::CapacityConfig cfg;
  cfg.restarts = a.restarts;
  cfg.max_iterations = a.max_iterations;
  cfg.seed = a.seed;
  cfg.seed_with_pauli = !a.no_pauli_seed;
  cfg.local_search = a.local_search == "simplex" ? cdc::LocalSearch::Simplex : cdc::LocalSearch::Gradient;
  cfg.validate();
  return cfg;
}

cdc::StateFamily make_family(const StateArgs& a) {
  cdc::StateFamily f;
  f.kind = cdc::parse_family(a.family);
  f.parties = f.kind == cdc::FamilyKind::GeneralizedGhz ? a.parties
              : f.kind == cdc::FamilyKind::GeneralizedW ? 3
                                                        : 2;
  f.alpha = a.alpha;
  f.beta = a.beta;
  if (!f.in_domain()) throw std::invalid_argument("state parameters outside the family domain");
  return f;
}

nlohmann::json result_json(const cdc::CapacityResult& r) {
  return {{"N", r.n_messages},
          {"bits", r.bits},
          {"gammas", r.gammas.values()},
          {"encoder_kind", cdc::to_string(r.encoder_kind)},
          {"encoder", r.encoder_description},
          {"status", cdc::to_string(r.status)},
          {"ddc", cdc::ddc_check(r, 1e-6)}};
}

cdc::Range parse_range(const std::string& text) {
  cdc::Range r;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw std::invalid_argument("range must look like start:stop:step, got '" + text + "'");
  }
  return r;
}

int default_threads() {
  if (const char* env = std::getenv("CDC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_and_write(cdc::SweepSpec spec, int threads) {
  spec.validate();
  // Fail before the sweep rather than after it.
  if (!std::ofstream(spec.output_path, std::ios::app)) {
    throw cdc::SweepIoError("cannot open " + spec.output_path + " for writing");
  }
  const cdc::SweepOutcome outcome = cdc::run_sweep(spec, threads, &std::cerr);
  cdc::write_sweep(spec, outcome);
  std::cerr << "wrote " << outcome.records.size() << " rows to " << spec.output_path << " ("
            << outcome.wall_seconds << " s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conclusive dense coding capacities of shared pure states"};
  app.require_subcommand(1);

  StateArgs state_args;
  SearchArgs search_args;
  int n_messages = 0;
  int threads = 0;
  std::string out_path;

  auto* capacity = app.add_subcommand("capacity", "numeric capacity C_N (or C when --n is omitted)");
  add_state_options(capacity, state_args);
  add_search_options(capacity, search_args);
  capacity->add_option("--n", n_messages, "message count N");

  auto* pauli = app.add_subcommand("pauli", "exact generalized-Pauli capacity C_N^P (or C^P)");
  add_state_options(pauli, state_args);
  pauli->add_option("--n", n_messages, "message count N");

  auto* ggm_cmd = app.add_subcommand("ggm", "generalized geometric measure");
  add_state_options(ggm_cmd, state_args);

  auto* entropy = app.add_subcommand("entropy", "senders:receiver entanglement entropy and C_a");
  add_state_options(entropy, state_args);

  std::string alpha_range, beta_range, encoder = "both";
  std::vector<int> n_list;
  auto* sweep = app.add_subcommand("sweep", "custom parameter sweep to CSV");
  sweep->add_option("--family", state_args.family, "two-qubit | two-qutrit | ghz | w")->required();
  sweep->add_option("--parties", state_args.parties, "party count for ghz")->capture_default_str();
  sweep->add_option("--alpha-range", alpha_range, "start:stop:step")->required();
  sweep->add_option("--beta-range", beta_range, "start:stop:step");
  sweep->add_option("--n", n_list, "message counts")->delimiter(',');
  sweep->add_option("--encoder", encoder, "arbitrary | pauli | both")->capture_default_str();
  sweep->add_option("--out", out_path, "CSV output path")->required();
  sweep->add_option("--threads", threads, "worker threads (default: $CDC_THREADS or all cores)");
  add_search_options(sweep, search_args);

  std::string preset_name;
  bool fine = false;
  auto* preset = app.add_subcommand("preset", "reproduce a figure dataset");
  preset->add_option("name", preset_name, "fig1 ... fig7")->required();
  preset->add_flag("--fine", fine, "0.01 grid for two-parameter families");
  preset->add_option("--out", out_path, "CSV output path (default <name>.csv)");
  preset->add_option("--threads", threads, "worker threads (default: $CDC_THREADS or all cores)");
  add_search_options(preset, search_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (threads <= 0) threads = default_threads();

    if (*capacity || *pauli) {
      const cdc::StateFamily f = make_family(state_args);
      const cdc::PureState state = f.build();
      cdc::CapacityResult r;
      if (*capacity) {
        const cdc::CapacityConfig cfg = make_config(search_args);
        r = n_messages > 0 ? cdc::cdc_capacity_n(state, f.receiver(), n_messages, cfg)
                           : cdc::cdc_capacity(state, f.receiver(), cfg);
      } else {
        r = n_messages > 0 ? cdc::pauli_capacity_n(state, f.receiver(), n_messages)
                           : cdc::pauli_capacity(state, f.receiver());
      }
      nlohmann::json j = result_json(r);
      j["C_a"] = cdc::asymptotic_capacity(state, f.receiver());
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*ggm_cmd) {
      const cdc::PureState state = make_family(state_args).build();
      const cdc::GgmResult g = cdc::ggm(state);
      nlohmann::json j = {{"ggm", g.value},
                          {"max_eigenvalue", g.max_eigenvalue},
                          {"side_a", g.maximizing_bipartition.side_a},
                          {"side_b", g.maximizing_bipartition.side_b},
                          {"bipartite_only", g.bipartite_only}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*entropy) {
      const cdc::StateFamily f = make_family(state_args);
      const cdc::PureState state = f.build();
      const auto cut = cdc::Bipartition::from_side(state.num_subsystems(), {f.receiver()});
      nlohmann::json j = {{"S", cdc::entanglement_entropy(state, cut)},
                          {"C_a", cdc::asymptotic_capacity(state, f.receiver())}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*sweep) {
      cdc::SweepSpec spec;
      spec.name = "sweep";
      spec.family = cdc::parse_family(state_args.family);
      spec.parties = state_args.parties;
      spec.alpha = parse_range(alpha_range);
      if (!beta_range.empty()) spec.beta = parse_range(beta_range);
      spec.n_list = n_list;
      spec.encoder = cdc::parse_encoder(encoder);
      spec.config = make_config(search_args);
      spec.output_path = out_path;
      return run_and_write(spec, threads);
    }
    if (*preset) {
      cdc::SweepSpec spec = cdc::preset(preset_name, fine);
      spec.config = make_config(search_args);
      if (!out_path.empty()) spec.output_path = out_path;
      return run_and_write(spec, threads);
    }
  } catch (const cdc::SweepIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
