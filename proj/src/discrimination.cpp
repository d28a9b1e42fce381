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

#include "cdc/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cdc {

namespace {

void check_distribution(std::span<const double> p, const char* what) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative probability");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument(std::string(what) + ": probabilities do not sum to 1");
  }
}

// Log-det barrier path for a full-rank Gram block:
//   minimize  -t p.gamma - log det(G - diag(gamma)) - sum log gamma
// with t increased geometrically until the barrier bound 2n/t on the duality
// gap drops below settings.gap_tolerance.
struct BarrierResult {
  RealVector gamma;
  ComplexMatrix dual;
  int steps = 0;
  bool converged = true;
};

BarrierResult barrier_solve(const ComplexMatrix& g, const RealVector& p, double lambda_min,
                            const UsdSettings& settings) {
  const Eigen::Index n = g.rows();
  BarrierResult out;
  out.gamma = RealVector::Constant(n, std::min(0.5, 0.5 * lambda_min));

  ComplexMatrix s(n, n);
  ComplexMatrix s_inv(n, n);
  Eigen::MatrixXd hess(n, n);
  RealVector grad(n);
  RealVector step(n);
  RealVector trial(n);
  Eigen::LLT<ComplexMatrix> llt(n);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(n);
  const ComplexMatrix identity = ComplexMatrix::Identity(n, n);

  // Barrier value at x; +inf outside the domain. Leaves the factorization of
  // G - diag(x) in llt on success.
  auto phi = [&](const RealVector& x, double t) {
    if ((x.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
    s = g;
    s.diagonal().array() -= x.array().cast<Complex>();
    llt.compute(s);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const auto diag = llt.matrixLLT().diagonal().real().array();
    if ((diag <= 0.0).any()) return std::numeric_limits<double>::infinity();
    return -t * p.dot(x) - 2.0 * diag.log().sum() - x.array().log().sum();
  };

  const double barrier_order = 2.0 * static_cast<double>(n);
  double t = static_cast<double>(n);
  double value = phi(out.gamma, t);
  for (;;) {
    // Newton centering at fixed t.
    for (int centering = 0;; ++centering) {
      if (out.steps >= settings.max_newton_steps) {
        out.converged = false;
        if (out.dual.size() == 0) out.dual = llt.solve(identity) / t;
        return out;
      }
      // llt holds the factorization at out.gamma.
      s_inv = llt.solve(identity);
      for (Eigen::Index i = 0; i < n; ++i) {
        grad(i) = -t * p(i) + s_inv(i, i).real() - 1.0 / out.gamma(i);
        for (Eigen::Index j = 0; j < n; ++j) hess(i, j) = std::norm(s_inv(i, j));
        hess(i, i) += 1.0 / (out.gamma(i) * out.gamma(i));
      }
      ldlt.compute(hess);
      step = -ldlt.solve(grad);
      const double decrement = -grad.dot(step);
      ++out.steps;
      if (!(decrement > 1e-12) || centering >= 50) break;

      // Inside the quadratic region the full step is feasible for a
      // self-concordant barrier; take it without a line search, whose
      // sufficient-decrease test drowns in rounding noise once t is large.
      if (decrement < 0.25) {
        trial = out.gamma + step;
        const double v = phi(trial, t);
        if (std::isfinite(v)) {
          out.gamma = trial;
          value = v;
          continue;
        }
        value = phi(out.gamma, t);
      }

      double size = 1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (step(i) < 0.0) size = std::min(size, -0.99 * out.gamma(i) / step(i));
      }
      bool moved = false;
      for (int k = 0; k < 60; ++k) {
        trial = out.gamma + size * step;
        const double v = phi(trial, t);
        if (v <= value - 0.25 * size * decrement) {
          out.gamma = trial;
          value = v;
          moved = true;
          break;
        }
        size *= 0.5;
      }
      if (!moved) {
        value = phi(out.gamma, t);
        break;
      }
    }
    // On the central path S^-1 / t is dual feasible with gap 2n / t. Past
    // about 1e-9 the inverse of the nearly singular S loses more to rounding
    // than the smaller gap buys, so the dual is taken from that stage.
    if (out.dual.size() == 0 && barrier_order / t < 1e-9) out.dual = s_inv / t;
    if (barrier_order / t < settings.gap_tolerance) {
      if (out.dual.size() == 0) out.dual = s_inv / t;
      break;
    }
    t *= settings.barrier_growth;
    value = phi(out.gamma, t);
  }
  return out;
}

UsdSolution solve_on_subset(const ComplexMatrix& g, std::span<const double> priors,
                            const std::vector<Eigen::Index>& active, const UsdSettings& settings,
                            bool degenerate) {
  UsdSolution sol;
  std::vector<double> gamma(priors.size(), 0.0);
  const auto n = static_cast<Eigen::Index>(active.size());
  sol.dual = ComplexMatrix::Zero(g.rows(), g.cols());
  if (n == 0) {
    sol.gamma = GammaVector(std::move(gamma));
    sol.status = UsdStatus::Degenerate;
    return sol;
  }

  ComplexMatrix sub(n, n);
  RealVector p(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    p(a) = priors[active[a]];
    for (Eigen::Index b = 0; b < n; ++b) sub(a, b) = g(active[a], active[b]);
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sub);
  const RealVector& lambda = eig.eigenvalues();
  if (lambda(0) <= settings.independence_tolerance) {
    // Messages in the support of a null vector cannot be identified.
    const Eigen::Index nulls =
        std::count_if(lambda.begin(), lambda.end(),
                      [&](double l) { return l <= settings.independence_tolerance; });
    const ComplexMatrix v = eig.eigenvectors().leftCols(nulls);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index a = 0; a < n; ++a) {
      if (v.row(a).squaredNorm() <= 1e-6) keep.push_back(active[a]);
    }
    return solve_on_subset(g, priors, keep, settings, true);
  }

  const BarrierResult br = barrier_solve(sub, p, lambda(0), settings);
  double objective = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    gamma[active[a]] = std::clamp(br.gamma(a), 0.0, 1.0);
    objective += priors[active[a]] * gamma[active[a]];
    for (Eigen::Index b = 0; b < n; ++b) sol.dual(active[a], active[b]) = br.dual(a, b);
  }
  // Inexact centering leaves Z_ii a hair below p_i. A diagonal congruence
  // restores dual feasibility exactly and keeps Z positive semidefinite.
  RealVector scale = RealVector::Ones(g.rows());
  for (Eigen::Index a : active) {
    const double z = sol.dual(a, a).real();
    if (z > 0.0 && z < priors[a]) scale(a) = std::sqrt(priors[a] / z);
  }
  sol.dual = scale.asDiagonal() * sol.dual * scale.asDiagonal();
  sol.gamma = GammaVector(std::move(gamma));
  sol.objective = objective;
  sol.newton_steps = br.steps;
  sol.status = degenerate       ? UsdStatus::Degenerate
               : br.converged ? UsdStatus::Converged
                              : UsdStatus::IterationLimit;
  return sol;
}

}  // namespace

Ensemble::Ensemble(std::vector<PureState> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.empty()) throw std::invalid_argument("Ensemble: no states");
  if (states_.size() != priors_.size()) {
    throw std::invalid_argument("Ensemble: prior count does not match state count");
  }
  for (const auto& s : states_) {
    if (s.dims() != states_.front().dims()) {
      throw std::invalid_argument("Ensemble: states have mixed dimensions");
    }
  }
  check_distribution(priors_, "Ensemble");
}

GramMatrix::GramMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("GramMatrix: matrix must be square and nonempty");
  }
  if (hermiticity_error(entries_) > 1e-12) {
    throw std::invalid_argument("GramMatrix: matrix is not Hermitian");
  }
  if ((entries_.diagonal().array() - Complex(1.0)).abs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("GramMatrix: diagonal entries must be 1");
  }
  if (eigvals_hermitian(entries_)(0) < -1e-9) {
    throw std::invalid_argument("GramMatrix: matrix is not positive semidefinite");
  }
}

GammaVector::GammaVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("GammaVector: entries must lie in [0, 1]");
  }
}

ComplexMatrix gram_entries(std::span<const ComplexVector> states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      g(i, j) = states[i].dot(states[j]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

GramMatrix gram(const Ensemble& e) {
  std::vector<ComplexVector> raw;
  raw.reserve(e.size());
  for (const auto& s : e.states()) raw.push_back(s.amplitudes());
  ComplexMatrix g = gram_entries(raw);
  for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, i) = raw[i].squaredNorm();
  return GramMatrix(std::move(g));
}

int independence_rank(const GramMatrix& g, double tol) {
  const RealVector lambda = eigvals_hermitian(g.entries());
  return static_cast<int>(std::count_if(lambda.begin(), lambda.end(), [&](double l) { return l > tol; }));
}

bool usd_feasible(const GramMatrix& g, const GammaVector& gamma, double eps) {
  if (static_cast<Eigen::Index>(gamma.size()) != g.size()) {
    throw std::invalid_argument("usd_feasible: size mismatch");
  }
  ComplexMatrix m = g.entries();
  for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, i) -= gamma[i];
  return eigvals_hermitian(m)(0) >= -eps;
}

UsdSolution optimize_gammas(const GramMatrix& g, std::span<const double> priors,
                            const UsdSettings& settings) {
  if (static_cast<Eigen::Index>(priors.size()) != g.size()) {
    throw std::invalid_argument("optimize_gammas: prior count does not match Gram size");
  }
  check_distribution(priors, "optimize_gammas");
  return solve_usd(g.entries(), priors, settings);
}

UsdSolution solve_usd(const ComplexMatrix& gram, std::span<const double> priors,
                      const UsdSettings& settings) {
  std::vector<Eigen::Index> all(priors.size());
  std::iota(all.begin(), all.end(), Eigen::Index{0});
  return solve_on_subset(gram, priors, all, settings, false);
}

double conclusive_mutual_information(std::span<const double> priors, const GammaVector& gamma) {
  if (priors.size() != gamma.size()) {
    throw std::invalid_argument("conclusive_mutual_information: length mismatch");
  }
  const double h = shannon_entropy(priors);
  double success = 0.0;
  for (std::size_t i = 0; i < priors.size(); ++i) success += priors[i] * gamma[i];
  return success * h;
}

}  // namespace cdc
