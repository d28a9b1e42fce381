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

#include "cdc/encoding.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cdc {

ComplexMatrix generalized_pauli(int d, int m, int n) {
  if (d < 2) throw std::invalid_argument("generalized_pauli: d must be at least 2");
  if (m < 1 || m > d || n < 1 || n > d) {
    throw std::invalid_argument("generalized_pauli: powers must lie in [1, d]");
  }
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (int l = 0; l < d; ++l) {
    x((l + 1) % d, l) = 1.0;
    z(l, l) = std::polar(1.0, 2.0 * std::numbers::pi * l / d);
  }
  ComplexMatrix xm = ComplexMatrix::Identity(d, d);
  ComplexMatrix zn = ComplexMatrix::Identity(d, d);
  for (int k = 0; k < m % d; ++k) xm = x * xm;
  for (int k = 0; k < n % d; ++k) zn = z * zn;
  return xm * zn;
}

std::vector<std::pair<int, int>> pauli_indices(int d) {
  if (d < 2) throw std::invalid_argument("pauli_indices: d must be at least 2");
  std::vector<std::pair<int, int>> out{{d, d}};
  for (int m = 1; m <= d; ++m) {
    for (int n = 1; n <= d; ++n) {
      if (m != d || n != d) out.emplace_back(m, n);
    }
  }
  return out;
}

std::vector<ComplexMatrix> pauli_set(int d) {
  std::vector<ComplexMatrix> out;
  for (auto [m, n] : pauli_indices(d)) out.push_back(generalized_pauli(d, m, n));
  return out;
}

const std::vector<ComplexMatrix>& hermitian_basis(int d) {
  if (d < 2) throw std::invalid_argument("hermitian_basis: d must be at least 2");
  static std::mutex mu;
  static std::map<int, std::vector<ComplexMatrix>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;

  const double r2 = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> basis;
  basis.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(j, k) = r2;
      sym(k, j) = r2;
      basis.push_back(sym);
      ComplexMatrix anti = ComplexMatrix::Zero(d, d);
      anti(j, k) = Complex(0.0, -r2);
      anti(k, j) = Complex(0.0, r2);
      basis.push_back(anti);
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) diag(m, m) = norm;
    diag(l, l) = -l * norm;
    basis.push_back(diag);
  }
  return cache.emplace(d, std::move(basis)).first->second;
}

ComplexMatrix unitary_from_params(const UnitaryParams& p) {
  const auto& basis = hermitian_basis(p.d);
  if (p.values.size() != basis.size()) {
    throw std::invalid_argument("unitary_from_params: expected d^2 parameters");
  }
  ComplexMatrix h = ComplexMatrix::Zero(p.d, p.d);
  for (std::size_t k = 0; k < basis.size(); ++k) h += p.values[k] * basis[k];
  return matrix_exp_i_hermitian(h);
}

UnitaryParams params_from_unitary(const ComplexMatrix& u) {
  const auto d = static_cast<int>(u.rows());
  if (u.cols() != d) throw std::invalid_argument("params_from_unitary: matrix must be square");
  if ((u.adjoint() * u - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("params_from_unitary: matrix is not unitary");
  }
  // A unitary is normal, so its Schur form is diagonal with an orthonormal
  // eigenbasis even for degenerate spectra.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& q = schur.matrixU();
  RealVector phase(d);
  for (int k = 0; k < d; ++k) phase(k) = std::arg(schur.matrixT()(k, k));
  const ComplexMatrix h = q * phase.cast<Complex>().asDiagonal() * q.adjoint();

  UnitaryParams p{d, {}};
  for (const auto& g : hermitian_basis(d)) p.values.push_back((g * h).trace().real());
  return p;
}

EncodingSet::EncodingSet(Dims sender_dims, std::vector<std::vector<ComplexMatrix>> unitaries)
    : sender_dims_(std::move(sender_dims)), unitaries_(std::move(unitaries)) {
  if (sender_dims_.empty()) throw std::invalid_argument("EncodingSet: no senders");
  if (unitaries_.empty()) throw std::invalid_argument("EncodingSet: no encodings");
  for (std::size_t i = 0; i < unitaries_.size(); ++i) {
    if (unitaries_[i].size() != sender_dims_.size()) {
      throw std::invalid_argument("EncodingSet: one unitary per sender required");
    }
    for (std::size_t s = 0; s < sender_dims_.size(); ++s) {
      const ComplexMatrix& u = unitaries_[i][s];
      const int d = sender_dims_[s];
      if (u.rows() != d || u.cols() != d) {
        throw std::invalid_argument("EncodingSet: unitary does not match sender dimension");
      }
      const ComplexMatrix id = ComplexMatrix::Identity(d, d);
      if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("EncodingSet: matrix is not unitary");
      }
      if (i == 0 && (u - id).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("EncodingSet: the first encoding must be the identity");
      }
    }
  }
}

std::vector<int> sender_indices(int num_subsystems, int receiver) {
  if (receiver < 0 || receiver >= num_subsystems) {
    throw std::invalid_argument("receiver index out of range");
  }
  std::vector<int> out;
  for (int k = 0; k < num_subsystems; ++k) {
    if (k != receiver) out.push_back(k);
  }
  return out;
}

ComplexVector encode_state(const ComplexVector& psi, std::span<const int> dims,
                           std::span<const int> senders, std::span<const ComplexMatrix> ops) {
  ComplexVector out = psi;
  for (std::size_t s = 0; s < senders.size(); ++s) {
    out = apply_local_operator(ops[s], out, dims, senders[s]);
  }
  return out;
}

Ensemble apply_encoding(const PureState& state, const EncodingSet& enc, int receiver_index,
                        std::span<const double> priors) {
  const auto senders = sender_indices(state.num_subsystems(), receiver_index);
  if (senders.size() != enc.sender_dims().size()) {
    throw std::invalid_argument("apply_encoding: sender count mismatch");
  }
  for (std::size_t s = 0; s < senders.size(); ++s) {
    if (state.dims()[senders[s]] != enc.sender_dims()[s]) {
      throw std::invalid_argument("apply_encoding: sender dimension mismatch");
    }
  }
  if (priors.size() != enc.size()) {
    throw std::invalid_argument("apply_encoding: prior count does not match encoding count");
  }
  std::vector<PureState> states;
  states.reserve(enc.size());
  for (const auto& ops : enc.unitaries()) {
    ComplexVector v = encode_state(state.amplitudes(), state.dims(), senders, ops);
    states.emplace_back(state.dims(), v.normalized());
  }
  return Ensemble(std::move(states), std::vector<double>(priors.begin(), priors.end()));
}

}  // namespace cdc
