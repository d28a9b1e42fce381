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

#include "cdc/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cdc {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kHermitianTolerance = 1e-10;
constexpr double kEigenClip = 1e-10;

std::vector<Eigen::Index> strides_of(std::span<const int> dims) {
  std::vector<Eigen::Index> strides(dims.size());
  Eigen::Index s = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    strides[k] = s;
    s *= dims[k];
  }
  return strides;
}

// Full-space offsets for every multi-index over `subset`, last subsystem of
// the subset varying fastest.
std::vector<Eigen::Index> subset_offsets(std::span<const int> dims,
                                         const std::vector<Eigen::Index>& strides,
                                         const std::vector<int>& subset) {
  std::vector<Eigen::Index> offsets{0};
  for (int k : subset) {
    std::vector<Eigen::Index> next;
    next.reserve(offsets.size() * dims[k]);
    for (Eigen::Index base : offsets) {
      for (int l = 0; l < dims[k]; ++l) next.push_back(base + l * strides[k]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

struct Split {
  std::vector<int> kept;
  std::vector<int> traced;
};

Split split_subsystems(int n, std::span<const int> keep) {
  Split split;
  split.kept.assign(keep.begin(), keep.end());
  std::sort(split.kept.begin(), split.kept.end());
  split.kept.erase(std::unique(split.kept.begin(), split.kept.end()), split.kept.end());
  if (split.kept.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  for (int k : split.kept) {
    if (k < 0 || k >= n) {
      throw std::invalid_argument("partial_trace: subsystem index " + std::to_string(k) +
                                  " out of range");
    }
  }
  if (static_cast<int>(split.kept.size()) == n) {
    throw std::invalid_argument("partial_trace: keep set must be a proper subset");
  }
  for (int k = 0; k < n; ++k) {
    if (!std::binary_search(split.kept.begin(), split.kept.end(), k)) split.traced.push_back(k);
  }
  return split;
}

Dims select_dims(std::span<const int> dims, const std::vector<int>& subset) {
  Dims out;
  for (int k : subset) out.push_back(dims[k]);
  return out;
}

}  // namespace

Eigen::Index total_dimension(std::span<const int> dims) {
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d < 2) throw std::invalid_argument("subsystem dimension must be at least 2");
    total *= d;
  }
  return total;
}

PureState::PureState(Dims dims, ComplexVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (dims_.empty()) throw std::invalid_argument("PureState: no subsystems");
  if (total_dimension(dims_) != amplitudes_.size()) {
    throw std::invalid_argument("PureState: amplitude count does not match dims");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
}

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  const Eigen::Index n = total_dimension(dims_);
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw std::invalid_argument("DensityMatrix: matrix shape does not match dims");
  }
  if (hermiticity_error(matrix_) > 1e-12) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > 1e-12) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  if (eigvals_hermitian(matrix_)(0) < -kEigenClip) {
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  const ComplexVector& psi = state.amplitudes();
  return DensityMatrix(state.dims(), psi * psi.adjoint());
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const Split split = split_subsystems(rho.num_subsystems(), keep);
  const auto strides = strides_of(rho.dims());
  const auto kept = subset_offsets(rho.dims(), strides, split.kept);
  const auto traced = subset_offsets(rho.dims(), strides, split.traced);

  const ComplexMatrix& m = rho.matrix();
  const auto dk = static_cast<Eigen::Index>(kept.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex sum = 0.0;
      for (Eigen::Index t : traced) sum += m(kept[a] + t, kept[b] + t);
      out(a, b) = sum;
    }
  }
  return DensityMatrix(select_dims(rho.dims(), split.kept), std::move(out),
                       DensityMatrix::Unchecked{});
}

DensityMatrix reduced_state(const PureState& state, std::span<const int> keep) {
  const Split split = split_subsystems(state.num_subsystems(), keep);
  const auto strides = strides_of(state.dims());
  const auto kept = subset_offsets(state.dims(), strides, split.kept);
  const auto traced = subset_offsets(state.dims(), strides, split.traced);

  const ComplexVector& psi = state.amplitudes();
  ComplexMatrix m(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(traced.size()));
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t t = 0; t < traced.size(); ++t) m(a, t) = psi(kept[a] + traced[t]);
  }
  return DensityMatrix(select_dims(state.dims(), split.kept), m * m.adjoint(),
                       DensityMatrix::Unchecked{});
}

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

RealVector eigvals_hermitian(const ComplexMatrix& m) {
  if (hermiticity_error(m) > kHermitianTolerance) {
    throw std::invalid_argument("eigvals_hermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

ComplexMatrix matrix_exp_i_hermitian(const ComplexMatrix& h) {
  if (hermiticity_error(h) > kHermitianTolerance) {
    throw std::invalid_argument("matrix_exp_i_hermitian: generator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const ComplexMatrix& v = solver.eigenvectors();
  ComplexVector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases(k) = std::polar(1.0, solver.eigenvalues()(k));
  return v * phases.asDiagonal() * v.adjoint();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RealVector lambda = eigvals_hermitian(rho.matrix());
  double s = 0.0;
  for (double l : lambda) {
    if (l > 0.0) s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}

double shannon_entropy(std::span<const double> p) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw std::invalid_argument("shannon_entropy: negative probability");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("shannon_entropy: probabilities do not sum to 1");
  }
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (a.dims() != b.dims()) throw std::invalid_argument("inner_product: dimension mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

ComplexVector apply_local_operator(const ComplexMatrix& op, const ComplexVector& psi,
                                   std::span<const int> dims, int target) {
  if (target < 0 || target >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("apply_local_operator: target out of range");
  }
  const int d = dims[target];
  if (op.rows() != d || op.cols() != d) {
    throw std::invalid_argument("apply_local_operator: operator dimension mismatch");
  }
  Eigen::Index inner = 1;
  for (std::size_t k = target + 1; k < dims.size(); ++k) inner *= dims[k];
  const Eigen::Index block = inner * d;
  const Eigen::Index outer = psi.size() / block;

  ComplexVector out = ComplexVector::Zero(psi.size());
  for (Eigen::Index h = 0; h < outer; ++h) {
    const Eigen::Index base = h * block;
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        const Complex w = op(r, c);
        if (w == Complex(0.0)) continue;
        out.segment(base + r * inner, inner) += w * psi.segment(base + c * inner, inner);
      }
    }
  }
  return out;
}

}  // namespace cdc
