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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cdc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Ordered subsystem dimensions. Subsystem 0 is the most significant tensor
/// factor of every composite index.
using Dims = std::vector<int>;

/// Product of all entries of `dims`; throws if any entry is below 2.
Eigen::Index total_dimension(std::span<const int> dims);

/// Normalized state vector on a composite Hilbert space.
class PureState {
 public:
  /// Throws std::invalid_argument unless dims are all >= 2, the amplitude
  /// count equals their product and the norm is 1 within 1e-12.
  PureState(Dims dims, ComplexVector amplitudes);

  const Dims& dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  Eigen::Index dimension() const { return amplitudes_.size(); }

 private:
  Dims dims_;
  ComplexVector amplitudes_;
};

/// Unit-trace Hermitian positive-semidefinite operator on a composite space.
class DensityMatrix {
 public:
  /// Validates trace (1e-12), Hermiticity (1e-12) and min eigenvalue (-1e-10).
  DensityMatrix(Dims dims, ComplexMatrix matrix);

  static DensityMatrix from_pure(const PureState& state);

  const Dims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }

 private:
  struct Unchecked {};
  DensityMatrix(Dims dims, ComplexMatrix matrix, Unchecked)
      : dims_(std::move(dims)), matrix_(std::move(matrix)) {}

  Dims dims_;
  ComplexMatrix matrix_;

  friend DensityMatrix partial_trace(const DensityMatrix&, std::span<const int>);
  friend DensityMatrix reduced_state(const PureState&, std::span<const int>);
};

/// Kronecker product; the first factor is the most significant index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced density matrix on the subsystems listed in `keep` (kept in
/// ascending subsystem order). `keep` must be a nonempty proper subset.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Same as partial_trace(DensityMatrix::from_pure(state), keep) without
/// forming the full projector.
DensityMatrix reduced_state(const PureState& state, std::span<const int> keep);

/// Eigenvalues of a Hermitian matrix in ascending order. Throws if `m` is
/// not Hermitian within 1e-10.
RealVector eigvals_hermitian(const ComplexMatrix& m);

/// exp(i h) for Hermitian h, computed from the eigendecomposition of h.
ComplexMatrix matrix_exp_i_hermitian(const ComplexMatrix& h);

/// Entropy in bits. Eigenvalues in [-1e-10, 0) count as zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy in bits of a probability vector (nonnegative, sums to 1 within 1e-10).
double shannon_entropy(std::span<const double> p);

/// <a|b>, antilinear in `a`.
Complex inner_product(const PureState& a, const PureState& b);

/// Applies `op` to subsystem `target` of a raw amplitude vector laid out
/// according to `dims`.
ComplexVector apply_local_operator(const ComplexMatrix& op, const ComplexVector& psi,
                                   std::span<const int> dims, int target);

/// Largest absolute entry of m - m^dagger.
double hermiticity_error(const ComplexMatrix& m);

}  // namespace cdc
