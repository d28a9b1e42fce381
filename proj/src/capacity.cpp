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

#include "cdc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include <ceres/ceres.h>

#include "cdc/nelder_mead.hpp"

namespace cdc {

namespace {

// Largest subset count pauli_capacity_n is willing to enumerate.
constexpr double kMaxPauliSubsets = 5e6;

// Two encoded states closer than this to a common phase are the same message
// for the purposes of discrimination.
constexpr double kSameStateTolerance = 1e-10;

struct Problem {
  Dims dims;
  std::vector<int> senders;
  Dims sender_dims;
  ComplexVector psi;
  int n_messages = 0;
  std::vector<double> priors;
  double log2n = 0.0;
};

Problem make_problem(const PureState& state, int receiver, int n_messages) {
  Problem p;
  p.dims = state.dims();
  p.senders = sender_indices(state.num_subsystems(), receiver);
  for (int s : p.senders) p.sender_dims.push_back(p.dims[s]);
  if (n_messages < 2) throw std::invalid_argument("capacity: need at least 2 messages");
  if (n_messages > state.dimension()) {
    throw std::invalid_argument("capacity: more messages than the dimension of the shared space");
  }
  p.psi = state.amplitudes();
  p.n_messages = n_messages;
  p.priors.assign(n_messages, 1.0 / n_messages);
  p.log2n = std::log2(static_cast<double>(n_messages));
  return p;
}

// Conclusive success probability of a candidate ensemble. Dependent sets do
// not define a valid conclusive strategy and score zero.
UsdSolution score(const std::vector<ComplexVector>& states, const std::vector<double>& priors,
                  const UsdSettings& settings) {
  UsdSolution sol = solve_usd(gram_entries(states), priors, settings);
  if (sol.status == UsdStatus::Degenerate) {
    sol.gamma = GammaVector(std::vector<double>(priors.size(), 0.0));
    sol.objective = 0.0;
  }
  return sol;
}

std::string format_params(const std::vector<std::vector<UnitaryParams>>& params) {
  std::string out = "arbitrary";
  char buf[32];
  for (std::size_t i = 1; i < params.size(); ++i) {
    out += i == 1 ? ": " : " | ";
    for (std::size_t s = 0; s < params[i].size(); ++s) {
      if (s > 0) out += " x ";
      out += "[";
      for (std::size_t k = 0; k < params[i][s].values.size(); ++k) {
        std::snprintf(buf, sizeof buf, k == 0 ? "%.6g" : " %.6g", params[i][s].values[k]);
        out += buf;
      }
      out += "]";
    }
  }
  return out;
}

std::string format_pauli(const std::vector<std::vector<std::pair<int, int>>>& tuples) {
  std::string out = "pauli:";
  for (const auto& t : tuples) {
    out += " ";
    for (std::size_t s = 0; s < t.size(); ++s) {
      if (s > 0) out += "x";
      out += "(" + std::to_string(t[s].first) + "," + std::to_string(t[s].second) + ")";
    }
  }
  return out;
}

// K_ab = sum over the other subsystems of phi_(a, rest) conj(chi_(b, rest)),
// with a, b indexing subsystem `target`.
ComplexMatrix local_cross(const ComplexVector& phi, const ComplexVector& chi, std::span<const int> dims,
                          int target) {
  const int d = dims[target];
  Eigen::Index inner = 1;
  for (std::size_t k = target + 1; k < dims.size(); ++k) inner *= dims[k];
  const Eigen::Index block = inner * d;
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index h = 0; h < phi.size(); h += block) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        out(a, b) += chi.segment(h + b * inner, inner).dot(phi.segment(h + a * inner, inner));
      }
    }
  }
  return out;
}

}  // namespace

// Encoders 1..N-1 as traceless generator coefficients, one block of d^2 - 1
// values per sender. The identity coefficient is pinned to zero: a global
// phase per encoder leaves every Gram modulus unchanged.
class EncoderObjective::Impl {
 public:
  explicit Impl(Problem p) : p_(std::move(p)) {
    for (int d : p_.sender_dims) {
      bases_.push_back(&hermitian_basis(d));
      block_ += d * d - 1;
    }
  }

  std::size_t dimension() const { return static_cast<std::size_t>(block_) * (p_.n_messages - 1); }
  int n_messages() const { return p_.n_messages; }

  std::vector<std::vector<ComplexMatrix>> unitaries(std::span<const double> theta) const {
    return expand(theta).ops;
  }

  std::vector<ComplexVector> states(const std::vector<std::vector<ComplexMatrix>>& ops) const {
    std::vector<ComplexVector> out;
    out.reserve(ops.size());
    out.push_back(p_.psi);
    for (std::size_t i = 1; i < ops.size(); ++i) {
      out.push_back(encode_state(p_.psi, p_.dims, p_.senders, ops[i]));
    }
    return out;
  }

  UsdSolution solve(std::span<const double> theta, const UsdSettings& settings) const {
    return score(states(unitaries(theta)), p_.priors, settings);
  }

  double bits(std::span<const double> theta, const UsdSettings& settings) const {
    return solve(theta, settings).objective * p_.log2n;
  }

  // Capacity in bits and its gradient with respect to theta. The optimal
  // value of the inner program moves by Re tr(Z dG) with Z its dual matrix,
  // so only first derivatives of the encoded states are needed.
  double bits_and_gradient(std::span<const double> theta, std::span<double> grad,
                           const UsdSettings& settings) const {
    const Expanded e = expand(theta);
    const std::vector<ComplexVector> psi = states(e.ops);
    const UsdSolution sol = score(psi, p_.priors, settings);
    std::fill(grad.begin(), grad.end(), 0.0);
    if (sol.status == UsdStatus::Degenerate) return 0.0;

    std::size_t k = 0;
    for (int i = 1; i < p_.n_messages; ++i) {
      ComplexVector phi = ComplexVector::Zero(p_.psi.size());
      for (int j = 0; j < p_.n_messages; ++j) phi += sol.dual(j, i) * psi[j];
      for (std::size_t s = 0; s < p_.sender_dims.size(); ++s) {
        const int d = p_.sender_dims[s];
        ComplexVector chi = p_.psi;
        for (std::size_t r = 0; r < p_.sender_dims.size(); ++r) {
          if (r != s) chi = apply_local_operator(e.ops[i][r], chi, p_.dims, p_.senders[r]);
        }
        const ComplexMatrix cross = local_cross(phi, chi, p_.dims, p_.senders[s]);
        // d exp(iH) = V (F o (V^+ dH V)) V^+ with F the divided differences of
        // exp(i x) over the spectrum of H.
        const ComplexMatrix& v = e.vectors[i][s];
        const RealVector& lambda = e.values[i][s];
        ComplexMatrix w = v.adjoint() * cross * v;
        for (int a = 0; a < d; ++a) {
          for (int b = 0; b < d; ++b) {
            const double gap = lambda(a) - lambda(b);
            const Complex f = std::abs(gap) < 1e-9
                                  ? Complex(0.0, 1.0) * std::polar(1.0, 0.5 * (lambda(a) + lambda(b)))
                                  : (std::polar(1.0, lambda(a)) - std::polar(1.0, lambda(b))) / gap;
            w(a, b) *= std::conj(f);
          }
        }
        const ComplexMatrix y = v * w * v.adjoint();
        const auto& basis = *bases_[s];
        for (std::size_t b = 1; b < basis.size(); ++b) {
          grad[k++] = 2.0 * p_.log2n * (basis[b].transpose().cwiseProduct(y)).sum().real();
        }
      }
    }
    return sol.objective * p_.log2n;
  }

  std::vector<std::vector<UnitaryParams>> params(std::span<const double> theta) const {
    std::vector<std::vector<UnitaryParams>> out;
    std::vector<UnitaryParams> zero;
    for (int d : p_.sender_dims) zero.push_back({d, std::vector<double>(d * d, 0.0)});
    out.push_back(zero);
    std::size_t k = 0;
    for (int i = 1; i < p_.n_messages; ++i) {
      std::vector<UnitaryParams> row;
      for (int d : p_.sender_dims) {
        UnitaryParams up{d, std::vector<double>(d * d, 0.0)};
        for (int b = 1; b < d * d; ++b) up.values[b] = theta[k++];
        row.push_back(std::move(up));
      }
      out.push_back(std::move(row));
    }
    return out;
  }

  std::vector<double> theta_of(const std::vector<std::vector<ComplexMatrix>>& ops) const {
    std::vector<double> theta;
    for (std::size_t i = 1; i < ops.size(); ++i) {
      for (const auto& u : ops[i]) {
        const UnitaryParams up = params_from_unitary(u);
        theta.insert(theta.end(), up.values.begin() + 1, up.values.end());
      }
    }
    return theta;
  }

 private:
  struct Expanded {
    std::vector<std::vector<ComplexMatrix>> ops;
    std::vector<std::vector<ComplexMatrix>> vectors;
    std::vector<std::vector<RealVector>> values;
  };

  Expanded expand(std::span<const double> theta) const {
    Expanded e;
    e.ops.resize(p_.n_messages);
    e.vectors.resize(p_.n_messages);
    e.values.resize(p_.n_messages);
    for (int d : p_.sender_dims) e.ops[0].push_back(ComplexMatrix::Identity(d, d));
    std::size_t k = 0;
    for (int i = 1; i < p_.n_messages; ++i) {
      for (std::size_t s = 0; s < p_.sender_dims.size(); ++s) {
        const int d = p_.sender_dims[s];
        const auto& basis = *bases_[s];
        ComplexMatrix h = ComplexMatrix::Zero(d, d);
        for (std::size_t b = 1; b < basis.size(); ++b) h += theta[k++] * basis[b];
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
        ComplexVector phases(d);
        for (int a = 0; a < d; ++a) phases(a) = std::polar(1.0, eig.eigenvalues()(a));
        e.ops[i].push_back(eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint());
        e.vectors[i].push_back(eig.eigenvectors());
        e.values[i].push_back(eig.eigenvalues());
      }
    }
    return e;
  }

  Problem p_;
  std::vector<const std::vector<ComplexMatrix>*> bases_;
  int block_ = 0;
};

EncoderObjective::EncoderObjective(const PureState& state, int receiver, int n_messages)
    : impl_(std::make_shared<const Impl>(make_problem(state, receiver, n_messages))) {}

std::size_t EncoderObjective::dimension() const { return impl_->dimension(); }

int EncoderObjective::n_messages() const { return impl_->n_messages(); }

double EncoderObjective::bits(std::span<const double> theta, const UsdSettings& settings) const {
  if (theta.size() != dimension()) throw std::invalid_argument("EncoderObjective: wrong parameter count");
  return impl_->bits(theta, settings);
}

double EncoderObjective::bits_and_gradient(std::span<const double> theta, std::span<double> grad,
                                           const UsdSettings& settings) const {
  if (theta.size() != dimension() || grad.size() != dimension()) {
    throw std::invalid_argument("EncoderObjective: wrong parameter count");
  }
  return impl_->bits_and_gradient(theta, grad, settings);
}

std::vector<std::vector<ComplexMatrix>> EncoderObjective::unitaries(std::span<const double> theta) const {
  if (theta.size() != dimension()) throw std::invalid_argument("EncoderObjective: wrong parameter count");
  return impl_->unitaries(theta);
}

std::vector<std::vector<UnitaryParams>> EncoderObjective::params(std::span<const double> theta) const {
  if (theta.size() != dimension()) throw std::invalid_argument("EncoderObjective: wrong parameter count");
  return impl_->params(theta);
}

UsdSolution EncoderObjective::solve(std::span<const double> theta, const UsdSettings& settings) const {
  if (theta.size() != dimension()) throw std::invalid_argument("EncoderObjective: wrong parameter count");
  return impl_->solve(theta, settings);
}

std::vector<double> EncoderObjective::theta_of(const std::vector<std::vector<ComplexMatrix>>& ops) const {
  return impl_->theta_of(ops);
}

namespace {

struct LocalResult {
  std::vector<double> theta;
  double bits = 0.0;
  bool converged = false;
};

// Ceres minimizes, so the cost is minus the capacity.
class NegativeBits final : public ceres::FirstOrderFunction {
 public:
  NegativeBits(const EncoderObjective& search, const UsdSettings& settings)
      : search_(search), settings_(settings) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    const std::size_t n = search_.dimension();
    const std::span<const double> theta(parameters, n);
    if (gradient == nullptr) {
      *cost = -search_.bits(theta, settings_);
      return true;
    }
    *cost = -search_.bits_and_gradient(theta, std::span<double>(gradient, n), settings_);
    for (std::size_t k = 0; k < n; ++k) gradient[k] = -gradient[k];
    return std::isfinite(*cost);
  }

  int NumParameters() const override { return static_cast<int>(search_.dimension()); }

 private:
  const EncoderObjective& search_;
  UsdSettings settings_;
};

LocalResult gradient_search(const EncoderObjective& search, std::vector<double> start,
                            const CapacityConfig& cfg, const UsdSettings& search_settings,
                            double tighten = 1.0) {
  ceres::GradientProblem problem(new NegativeBits(search, search_settings));
  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::BFGS;
  options.max_num_iterations = cfg.max_iterations;
  options.function_tolerance = 1e-3 * tighten * cfg.objective_tolerance;
  options.gradient_tolerance = 1e-3 * tighten * cfg.objective_tolerance;
  options.parameter_tolerance = tighten * cfg.step_tolerance;
  options.logging_type = ceres::SILENT;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, start.data(), &summary);
  const bool converged = summary.termination_type == ceres::CONVERGENCE;
  const double bits = -summary.final_cost;
  return {std::move(start), std::isfinite(bits) ? bits : 0.0, converged};
}

LocalResult simplex_search(const EncoderObjective& search, std::vector<double> start,
                           const CapacityConfig& cfg, const UsdSettings& search_settings) {
  auto objective = [&](std::span<const double> theta) { return -search.bits(theta, search_settings); };
  NelderMeadOptions opt;
  opt.max_iterations = cfg.max_iterations;
  opt.step_tolerance = cfg.step_tolerance;
  opt.objective_tolerance = cfg.objective_tolerance;
  opt.initial_step = 0.6;
  NelderMeadResult r = nelder_mead(objective, std::move(start), opt);
  // Re-seed a smaller simplex at the optimum until that stops paying off;
  // Nelder-Mead often collapses early in high dimension.
  for (double step : {0.2, 0.05}) {
    opt.initial_step = step;
    NelderMeadResult again = nelder_mead(objective, r.x, opt);
    const bool improved = again.value < r.value - cfg.objective_tolerance;
    if (again.value <= r.value) r = std::move(again);
    if (!improved) break;
  }
  return {r.x, -r.value, r.converged};
}

LocalResult local_search(const EncoderObjective& search, std::vector<double> start,
                         const CapacityConfig& cfg, const UsdSettings& search_settings) {
  return cfg.local_search == LocalSearch::Gradient ? gradient_search(search, std::move(start), cfg, search_settings)
                                                   : simplex_search(search, std::move(start), cfg, search_settings);
}

std::vector<std::vector<std::pair<int, int>>> all_pauli_tuples(const Dims& sender_dims) {
  std::vector<std::vector<std::pair<int, int>>> tuples{{}};
  for (int d : sender_dims) {
    const auto idx = pauli_indices(d);
    std::vector<std::vector<std::pair<int, int>>> next;
    for (const auto& t : tuples) {
      for (const auto& mn : idx) {
        auto u = t;
        u.push_back(mn);
        next.push_back(std::move(u));
      }
    }
    tuples = std::move(next);
  }
  return tuples;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

CapacityResult degenerate_result(int n_messages, EncoderKind kind) {
  CapacityResult r;
  r.n_messages = n_messages;
  r.gammas = GammaVector(std::vector<double>(n_messages, 0.0));
  r.encoder_kind = kind;
  r.status = CapacityStatus::Degenerate;
  r.encoder_description = "none";
  return r;
}

std::pair<int, int> message_range(const PureState& state, int receiver) {
  const auto senders = sender_indices(state.num_subsystems(), receiver);
  int classical = 1;
  for (int s : senders) classical *= state.dims()[s];
  return {classical + 1, static_cast<int>(state.dimension())};
}

}  // namespace

void CapacityConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("CapacityConfig: restarts must be at least 1");
  if (max_iterations < 1) throw std::invalid_argument("CapacityConfig: max_iterations must be positive");
  if (!(step_tolerance > 0.0) || !(objective_tolerance > 0.0) || !(search_gap > 0.0)) {
    throw std::invalid_argument("CapacityConfig: tolerances must be positive");
  }
}

const char* to_string(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::Arbitrary:
      return "arbitrary";
    case EncoderKind::Pauli:
      return "pauli";
    case EncoderKind::ClosedForm:
      return "closed_form";
  }
  return "unknown";
}

const char* to_string(CapacityStatus status) {
  switch (status) {
    case CapacityStatus::Converged:
      return "converged";
    case CapacityStatus::RestartLimit:
      return "restart_limit";
    case CapacityStatus::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

CapacityResult cdc_capacity_n(const PureState& state, int receiver, int n_messages,
                              const CapacityConfig& cfg) {
  cfg.validate();
  const Problem problem = make_problem(state, receiver, n_messages);
  const EncoderObjective search(state, receiver, n_messages);
  UsdSettings search_settings = cfg.inner;
  search_settings.gap_tolerance = std::max(cfg.search_gap, cfg.inner.gap_tolerance);

  std::vector<std::vector<double>> starts;
  if (cfg.seed_with_pauli) {
    const CapacityResult pauli = pauli_capacity_n(state, receiver, n_messages, search_settings);
    if (pauli.status != CapacityStatus::Degenerate) {
      std::vector<std::vector<ComplexMatrix>> ops;
      for (const auto& tuple : pauli.pauli_tuples) {
        std::vector<ComplexMatrix> row;
        for (std::size_t s = 0; s < tuple.size(); ++s) {
          row.push_back(generalized_pauli(problem.sender_dims[s], tuple[s].first, tuple[s].second));
        }
        ops.push_back(std::move(row));
      }
      starts.push_back(search.theta_of(ops));
    }
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> x(search.dimension());
    for (double& v : x) v = angle(rng);
    starts.push_back(std::move(x));
  }

  LocalResult best;
  best.bits = -1.0;
  for (auto& start : starts) {
    LocalResult local = local_search(search, std::move(start), cfg, search_settings);
    if (local.bits > best.bits) best = std::move(local);
  }
  // Polish the winner with the reporting precision of the inner program.
  if (cfg.local_search == LocalSearch::Gradient) {
    LocalResult polished = gradient_search(search, best.theta, cfg, cfg.inner, 1e-3);
    if (polished.bits > best.bits) best = std::move(polished);
  }

  const auto ops = search.unitaries(best.theta);
  const UsdSolution sol = search.solve(best.theta, cfg.inner);
  if (sol.objective <= 0.0) return degenerate_result(n_messages, EncoderKind::Arbitrary);

  CapacityResult result;
  result.n_messages = n_messages;
  result.bits = conclusive_mutual_information(problem.priors, sol.gamma);
  result.gammas = sol.gamma;
  result.encoder_kind = EncoderKind::Arbitrary;
  result.parameters = search.params(best.theta);
  result.encoder_description = format_params(result.parameters);
  result.status = best.converged ? CapacityStatus::Converged : CapacityStatus::RestartLimit;
  return result;
}

CapacityResult cdc_capacity(const PureState& state, int receiver, const CapacityConfig& cfg) {
  const auto [lo, hi] = message_range(state, receiver);
  if (lo > hi) throw std::invalid_argument("cdc_capacity: no message count beyond the classical limit");
  CapacityResult best;
  bool have = false;
  for (int n = lo; n <= hi; ++n) {
    CapacityResult r = cdc_capacity_n(state, receiver, n, cfg);
    if (!have || r.bits > best.bits + cfg.objective_tolerance) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

CapacityResult pauli_capacity_n(const PureState& state, int receiver, int n_messages,
                                const UsdSettings& settings) {
  const Problem problem = make_problem(state, receiver, n_messages);
  const auto tuples = all_pauli_tuples(problem.sender_dims);

  // One representative per distinct encoded state (up to phase); picking two
  // members of a class makes the ensemble dependent.
  std::vector<std::size_t> reps;
  std::vector<ComplexVector> rep_states;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    std::vector<ComplexMatrix> ops;
    for (std::size_t s = 0; s < tuples[t].size(); ++s) {
      ops.push_back(generalized_pauli(problem.sender_dims[s], tuples[t][s].first, tuples[t][s].second));
    }
    ComplexVector v = encode_state(problem.psi, problem.dims, problem.senders, ops);
    const bool seen = std::any_of(rep_states.begin(), rep_states.end(), [&](const ComplexVector& r) {
      return std::abs(r.dot(v)) >= 1.0 - kSameStateTolerance;
    });
    if (!seen) {
      reps.push_back(t);
      rep_states.push_back(std::move(v));
    }
  }
  const int classes = static_cast<int>(reps.size());
  if (classes < n_messages) return degenerate_result(n_messages, EncoderKind::Pauli);
  if (binomial(classes - 1, n_messages - 1) > kMaxPauliSubsets) {
    throw std::invalid_argument("pauli_capacity_n: subset search too large");
  }

  const ComplexMatrix full = gram_entries(rep_states);
  const int k = n_messages - 1;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i + 1;
  ComplexMatrix sub(n_messages, n_messages);
  double best_objective = -1.0;
  std::vector<int> best_pick;
  UsdSolution best_sol;
  for (;;) {
    for (int a = 0; a < n_messages; ++a) {
      const int ia = a == 0 ? 0 : pick[a - 1];
      for (int b = 0; b < n_messages; ++b) sub(a, b) = full(ia, b == 0 ? 0 : pick[b - 1]);
    }
    UsdSolution sol = solve_usd(sub, problem.priors, settings);
    if (sol.status != UsdStatus::Degenerate && sol.objective > best_objective) {
      best_objective = sol.objective;
      best_pick = pick;
      best_sol = std::move(sol);
    }
    // Next k-combination of {1, ..., classes - 1}.
    int i = k - 1;
    while (i >= 0 && pick[i] == classes - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (best_objective <= 0.0) return degenerate_result(n_messages, EncoderKind::Pauli);

  CapacityResult result;
  result.n_messages = n_messages;
  result.gammas = best_sol.gamma;
  result.bits = conclusive_mutual_information(problem.priors, best_sol.gamma);
  result.encoder_kind = EncoderKind::Pauli;
  result.status = CapacityStatus::Converged;
  result.pauli_tuples.push_back(tuples[reps[0]]);
  for (int p : best_pick) result.pauli_tuples.push_back(tuples[reps[p]]);
  result.encoder_description = format_pauli(result.pauli_tuples);
  return result;
}

CapacityResult pauli_capacity(const PureState& state, int receiver, double objective_tolerance,
                              const UsdSettings& settings) {
  const auto [lo, hi] = message_range(state, receiver);
  if (lo > hi) throw std::invalid_argument("pauli_capacity: no message count beyond the classical limit");
  CapacityResult best;
  bool have = false;
  for (int n = lo; n <= hi; ++n) {
    CapacityResult r = pauli_capacity_n(state, receiver, n, settings);
    if (!have || r.bits > best.bits + objective_tolerance) {
      best = std::move(r);
      have = true;
    }
  }
  return best;
}

CapacityResult evaluate_encoding(const PureState& state, int receiver, const EncodingSet& enc,
                                 const UsdSettings& settings) {
  const int n = static_cast<int>(enc.size());
  const Problem problem = make_problem(state, receiver, n);
  if (enc.sender_dims() != problem.sender_dims) {
    throw std::invalid_argument("evaluate_encoding: sender dimensions do not match the state");
  }
  std::vector<ComplexVector> states;
  for (const auto& ops : enc.unitaries()) {
    states.push_back(encode_state(problem.psi, problem.dims, problem.senders, ops));
  }
  const UsdSolution sol = score(states, problem.priors, settings);
  if (sol.objective <= 0.0) return degenerate_result(n, EncoderKind::Arbitrary);
  CapacityResult result;
  result.n_messages = n;
  result.gammas = sol.gamma;
  result.bits = conclusive_mutual_information(problem.priors, sol.gamma);
  result.encoder_kind = EncoderKind::Arbitrary;
  result.encoder_description = "fixed";
  return result;
}

double closed_form_two_qubit_pauli(double alpha, int n_messages) {
  if (n_messages != 3 && n_messages != 4) {
    throw std::invalid_argument("closed_form_two_qubit_pauli: N must be 3 or 4");
  }
  return closed_form_gghz_pauli(2, alpha, n_messages);
}

double closed_form_gghz_pauli(int n_parties, double alpha, int n_messages) {
  if (n_parties < 2 || n_parties > 30) throw std::invalid_argument("closed_form_gghz_pauli: bad party count");
  if (alpha < 0.0 || alpha > 1.0 / std::sqrt(2.0) + 1e-12) {
    throw std::invalid_argument("closed_form_gghz_pauli: alpha must lie in [0, 1/sqrt(2)]");
  }
  const double full = std::ldexp(1.0, n_parties);
  const double n = n_messages;
  if (!(n > full / 2.0 && n <= full)) {
    throw std::invalid_argument("closed_form_gghz_pauli: N must satisfy 2^(n-1) < N <= 2^n");
  }
  return (full - n + 2.0 * alpha * alpha * (2.0 * n - full)) / n * std::log2(n);
}

double asymptotic_capacity(const PureState& state, int receiver) {
  const auto senders = sender_indices(state.num_subsystems(), receiver);
  double sender_dim = 1.0;
  for (int s : senders) sender_dim *= state.dims()[s];
  const int keep[] = {receiver};
  const double advantage = von_neumann_entropy(reduced_state(state, keep));
  // S of the full pure state is zero.
  return std::log2(sender_dim) + std::max(advantage, 0.0);
}

bool ddc_check(const CapacityResult& result, double tol) {
  return result.bits >= std::log2(static_cast<double>(result.n_messages)) - tol;
}

}  // namespace cdc
