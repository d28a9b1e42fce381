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

#pragma once

#include <span>
#include <vector>

#include "cdc/qcore.hpp"

namespace cdc {

/// Message ensemble {p_i, |Psi_i>}: equal-dimension states with a prior each.
class Ensemble {
 public:
  Ensemble(std::vector<PureState> states, std::vector<double> priors);

  const std::vector<PureState>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }
  std::size_t size() const { return states_.size(); }

 private:
  std::vector<PureState> states_;
  std::vector<double> priors_;
};

/// Pairwise overlaps <Psi_i|Psi_j> of an ensemble. Hermitian, unit diagonal
/// and positive semidefinite (down to -1e-9).
class GramMatrix {
 public:
  explicit GramMatrix(ComplexMatrix entries);

  const ComplexMatrix& entries() const { return entries_; }
  Eigen::Index size() const { return entries_.rows(); }

 private:
  ComplexMatrix entries_;
};

/// Conclusive-identification probability per message, each in [0, 1].
class GammaVector {
 public:
  GammaVector() = default;
  explicit GammaVector(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Settings for the log-det barrier solver behind optimize_gammas.
struct UsdSettings {
  /// Target bound on the duality gap of the returned point.
  double gap_tolerance = 1e-11;
  /// Gram eigenvalues at or below this are treated as linear dependence.
  double independence_tolerance = 1e-10;
  /// Barrier weight multiplier between centering stages.
  double barrier_growth = 16.0;
  int max_newton_steps = 600;
};

enum class UsdStatus { Converged, Degenerate, IterationLimit };

struct UsdSolution {
  GammaVector gamma;
  /// sum_i p_i gamma_i at the returned gamma.
  double objective = 0.0;
  UsdStatus status = UsdStatus::Converged;
  int newton_steps = 0;
  /// Dual matrix Z at the returned point: Z >= 0, Z_ii >= p_i, and the
  /// optimal value changes by Re tr(Z dG) to first order in the Gram
  /// matrix. Zero for messages pinned by a linear dependence.
  ComplexMatrix dual;
};

/// Overlap matrix of raw state vectors. No validation.
ComplexMatrix gram_entries(std::span<const ComplexVector> states);

GramMatrix gram(const Ensemble& e);

/// Number of Gram eigenvalues above tol, i.e. the dimension of the span.
int independence_rank(const GramMatrix& g, double tol = 1e-10);

/// True iff the smallest eigenvalue of G - diag(gamma) is at least -eps.
bool usd_feasible(const GramMatrix& g, const GammaVector& gamma, double eps = 1e-9);

/// Maximizes sum_i p_i gamma_i subject to G - diag(gamma) >= 0 and gamma >= 0.
///
/// Rank-deficient Gram matrices are accepted. Every message whose state
/// takes part in a linear dependence (the support of the Gram null space) is
/// pinned to gamma = 0, the program is solved on the remaining messages and
/// the status is Degenerate.
UsdSolution optimize_gammas(const GramMatrix& g, std::span<const double> priors,
                            const UsdSettings& settings = {});

/// optimize_gammas without validating its inputs. `gram` must be Hermitian
/// with unit diagonal and `priors` must have matching length.
UsdSolution solve_usd(const ComplexMatrix& gram, std::span<const double> priors,
                      const UsdSettings& settings = {});

/// Mutual information of conclusive decoding: (sum_j p_j gamma_j) H({p_i}).
double conclusive_mutual_information(std::span<const double> priors, const GammaVector& gamma);

}  // namespace cdc
