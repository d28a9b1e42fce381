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

#include "cdc/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "cdc/entanglement.hpp"

namespace cdc {

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

bool multiparty(const SweepSpec& spec) {
  return spec.family == FamilyKind::GeneralizedW ||
         (spec.family == FamilyKind::GeneralizedGhz && spec.parties >= 3);
}

bool two_parameter(FamilyKind kind) {
  return kind == FamilyKind::TwoQutrit || kind == FamilyKind::GeneralizedW;
}

std::pair<int, int> message_bounds(const SweepSpec& spec) {
  switch (spec.family) {
    case FamilyKind::TwoQubit:
      return {3, 4};
    case FamilyKind::TwoQutrit:
      return {4, 9};
    case FamilyKind::GeneralizedGhz:
      return {(1 << (spec.parties - 1)) + 1, 1 << spec.parties};
    case FamilyKind::GeneralizedW:
      return {5, 8};
  }
  return {0, -1};
}

nlohmann::json range_json(const Range& r) {
  return {{"start", r.start}, {"stop", r.stop}, {"step", r.step}};
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> out;
  if (!(step > 0.0) || stop < start) return out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) {
    out.push_back(std::round((start + i * step) * 1e12) / 1e12);
  }
  return out;
}

void SweepSpec::validate() const {
  auto check = [](const Range& r, const char* what) {
    if (!(r.step > 0.0)) throw std::invalid_argument(std::string(what) + " step must be positive");
    if (r.stop < r.start) throw std::invalid_argument(std::string(what) + " range is empty");
  };
  check(alpha, "alpha");
  if (two_parameter(family)) {
    if (!beta) throw std::invalid_argument("this family needs a beta range");
    check(*beta, "beta");
  }
  if (family == FamilyKind::GeneralizedGhz && (parties < 2 || parties > 4)) {
    throw std::invalid_argument("generalized GHZ sweeps support 2 to 4 parties");
  }
  const auto [lo, hi] = message_bounds(*this);
  for (int n : n_list) {
    if (n < lo || n > hi) {
      throw std::invalid_argument("N = " + std::to_string(n) + " outside [" + std::to_string(lo) +
                                  ", " + std::to_string(hi) + "] for this family");
    }
  }
  config.validate();
}

std::uint64_t point_seed(std::uint64_t base, std::size_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(base ^ mix(static_cast<std::uint64_t>(index)));
}

StateFamily family_at(const SweepSpec& spec, double alpha, std::optional<double> beta) {
  StateFamily f;
  f.kind = spec.family;
  f.parties = spec.family == FamilyKind::GeneralizedGhz ? spec.parties
              : spec.family == FamilyKind::GeneralizedW ? 3
                                                        : 2;
  f.alpha = alpha;
  f.beta = beta.value_or(0.0);
  return f;
}

std::vector<GridPoint> sweep_grid(const SweepSpec& spec) {
  std::vector<GridPoint> grid;
  const auto alphas = spec.alpha.values();
  if (two_parameter(spec.family) && spec.beta) {
    const auto betas = spec.beta->values();
    for (double a : alphas) {
      for (double b : betas) grid.push_back({a, b});
    }
  } else {
    for (double a : alphas) grid.push_back({a, std::nullopt});
  }
  return grid;
}

std::vector<SweepRecord> run_point(const SweepSpec& spec, double alpha, std::optional<double> beta,
                                   const CapacityConfig& cfg) {
  const StateFamily family = family_at(spec, alpha, beta);
  if (!family.in_domain()) throw std::invalid_argument("run_point: parameters outside the family domain");
  const PureState state = family.build();
  const int receiver = family.receiver();

  SweepRecord base;
  base.alpha = alpha;
  base.beta = two_parameter(spec.family) ? beta : std::nullopt;
  base.c_a = asymptotic_capacity(state, receiver);
  base.entropy = entanglement_entropy(state, Bipartition::from_side(state.num_subsystems(), {receiver}));
  if (multiparty(spec)) base.ggm = ggm(state).value;

  std::vector<SweepRecord> out;
  if (spec.n_list.empty()) {
    base.status = "ok";
    out.push_back(base);
    return out;
  }
  for (int n : spec.n_list) {
    SweepRecord r = base;
    r.n = n;
    std::string status;
    if (spec.encoder != EncoderChoice::Pauli) {
      const CapacityResult c = cdc_capacity_n(state, receiver, n, cfg);
      r.c_n = c.bits;
      status = to_string(c.status);
    }
    if (spec.encoder != EncoderChoice::Arbitrary) {
      const CapacityResult p = pauli_capacity_n(state, receiver, n, cfg.inner);
      r.c_n_p = p.bits;
      if (status.empty()) status = to_string(p.status);
    }
    r.status = status;
    out.push_back(std::move(r));
  }
  return out;
}

SweepOutcome run_sweep(const SweepSpec& spec, int threads, std::ostream* log) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto grid = sweep_grid(spec);

  std::vector<std::vector<SweepRecord>> rows(grid.size());
  std::vector<char> skipped(grid.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex log_mu;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      const GridPoint& pt = grid[i];
      if (!family_at(spec, pt.alpha, pt.beta).in_domain()) {
        skipped[i] = 1;
        if (log) {
          std::lock_guard lock(log_mu);
          *log << "skipping out-of-domain point alpha=" << fmt12(pt.alpha);
          if (pt.beta) *log << " beta=" << fmt12(*pt.beta);
          *log << "\n";
        }
        continue;
      }
      CapacityConfig cfg = spec.config;
      cfg.seed = point_seed(spec.config.seed, i);
      try {
        rows[i] = run_point(spec, pt.alpha, pt.beta, cfg);
      } catch (...) {
        std::lock_guard lock(log_mu);
        if (!failure) failure = std::current_exception();
        next = grid.size();
        return;
      }
    }
  };

  const int count = std::max(1, threads);
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  SweepOutcome outcome;
  outcome.points = grid.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    outcome.skipped += skipped[i];
    for (auto& r : rows[i]) outcome.records.push_back(std::move(r));
  }
  outcome.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return outcome;
}

std::string csv_header() { return "alpha,beta,N,C_N,C_N_P,C_a,S,GGM,status"; }

std::string format_record(const SweepRecord& r) {
  std::string line = fmt12(r.alpha);
  line += ",";
  if (r.beta) line += fmt12(*r.beta);
  line += ",";
  if (r.n) line += std::to_string(*r.n);
  line += ",";
  if (r.c_n) line += fmt12(*r.c_n);
  line += ",";
  if (r.c_n_p) line += fmt12(*r.c_n_p);
  line += "," + fmt12(r.c_a) + "," + fmt12(r.entropy) + ",";
  if (r.ggm) line += fmt12(*r.ggm);
  line += "," + r.status;
  return line;
}

std::string manifest_path(const std::string& csv_path) {
  const auto slash = csv_path.find_last_of('/');
  const auto dot = csv_path.find_last_of('.');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? csv_path.substr(0, dot) : csv_path) + ".manifest.json";
}

void write_sweep(const SweepSpec& spec, const SweepOutcome& outcome) {
  {
    std::ofstream csv(spec.output_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw SweepIoError("cannot open " + spec.output_path + " for writing");
    csv << csv_header() << '\n';
    for (const auto& r : outcome.records) csv << format_record(r) << '\n';
    csv.flush();
    if (!csv) throw SweepIoError("failed writing " + spec.output_path);
  }

  nlohmann::json n_list = nlohmann::json::array();
  for (int n : spec.n_list) n_list.push_back(n);
  nlohmann::json manifest = {
      {"library_version", kLibraryVersion},
      {"spec",
       {{"name", spec.name},
        {"family", to_string(spec.family)},
        {"parties", spec.parties},
        {"alpha_range", range_json(spec.alpha)},
        {"beta_range", spec.beta ? range_json(*spec.beta) : nlohmann::json(nullptr)},
        {"n_list", n_list},
        {"encoder", to_string(spec.encoder)},
        {"config",
         {{"restarts", spec.config.restarts},
          {"max_iterations", spec.config.max_iterations},
          {"step_tolerance", spec.config.step_tolerance},
          {"objective_tolerance", spec.config.objective_tolerance},
          {"search_gap", spec.config.search_gap},
          {"seed_with_pauli", spec.config.seed_with_pauli},
          {"local_search", spec.config.local_search == LocalSearch::Gradient ? "gradient" : "simplex"}}}}},
      {"seed", spec.config.seed},
      {"output", spec.output_path},
      {"grid_points", outcome.points},
      {"skipped_points", outcome.skipped},
      {"rows", outcome.records.size()},
      {"wall_time_seconds", outcome.wall_seconds},
  };
  const std::string path = manifest_path(spec.output_path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SweepIoError("cannot open " + path + " for writing");
  out << manifest.dump(2) << '\n';
  if (!out) throw SweepIoError("failed writing " + path);
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"};
}

SweepSpec preset(const std::string& name, bool fine) {
  const double grid_step = fine ? 0.01 : 0.05;
  SweepSpec s;
  s.name = name;
  s.output_path = name + ".csv";
  if (name == "fig1") {
    s.family = FamilyKind::TwoQubit;
    s.alpha = {0.0, 0.7071, 0.01};
    s.n_list = {3, 4};
    s.encoder = EncoderChoice::Both;
  } else if (name == "fig2" || name == "fig3") {
    // fig2: C_N panels; fig3: the C - C^P gap, C and S, derived per point
    // from the Both columns.
    s.family = FamilyKind::TwoQutrit;
    s.alpha = {0.0, 0.8165, grid_step};
    s.beta = Range{0.0, 0.8165, grid_step};
    s.n_list = {4, 5, 6, 7, 8, 9};
    s.encoder = name == "fig2" ? EncoderChoice::Arbitrary : EncoderChoice::Both;
  } else if (name == "fig4") {
    s.family = FamilyKind::GeneralizedGhz;
    s.parties = 3;
    s.alpha = {0.0, 0.7071, 0.01};
    s.n_list = {5, 6, 7, 8};
    s.encoder = EncoderChoice::Both;
  } else if (name == "fig5") {
    s.family = FamilyKind::GeneralizedW;
    s.alpha = {0.0, 1.0, grid_step};
    s.beta = Range{0.0, 1.0, grid_step};
    s.n_list = {5, 6, 7, 8};
    s.encoder = EncoderChoice::Arbitrary;
  } else if (name == "fig6") {
    s.family = FamilyKind::GeneralizedW;
    s.alpha = {0.58, 0.70, 0.06};
    s.beta = Range{0.0, 1.0, 0.01};
    s.n_list = {};
  } else if (name == "fig7") {
    s.family = FamilyKind::GeneralizedW;
    s.alpha = {0.58, 0.70, 0.06};
    s.beta = Range{0.0, 1.0, 0.01};
    s.n_list = {5, 6, 7, 8};
    s.encoder = EncoderChoice::Arbitrary;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return s;
}

const char* to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::TwoQubit:
      return "two-qubit";
    case FamilyKind::TwoQutrit:
      return "two-qutrit";
    case FamilyKind::GeneralizedGhz:
      return "ghz";
    case FamilyKind::GeneralizedW:
      return "w";
  }
  return "unknown";
}

FamilyKind parse_family(const std::string& name) {
  if (name == "two-qubit") return FamilyKind::TwoQubit;
  if (name == "two-qutrit") return FamilyKind::TwoQutrit;
  if (name == "ghz") return FamilyKind::GeneralizedGhz;
  if (name == "w") return FamilyKind::GeneralizedW;
  throw std::invalid_argument("unknown family '" + name + "' (two-qubit, two-qutrit, ghz, w)");
}

const char* to_string(EncoderChoice choice) {
  switch (choice) {
    case EncoderChoice::Arbitrary:
      return "arbitrary";
    case EncoderChoice::Pauli:
      return "pauli";
    case EncoderChoice::Both:
      return "both";
  }
  return "unknown";
}

EncoderChoice parse_encoder(const std::string& name) {
  if (name == "arbitrary") return EncoderChoice::Arbitrary;
  if (name == "pauli") return EncoderChoice::Pauli;
  if (name == "both") return EncoderChoice::Both;
  throw std::invalid_argument("unknown encoder '" + name + "' (arbitrary, pauli, both)");
}

}  // namespace cdc
