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

#include "cdc/discrimination.hpp"
#include "cdc/qcore.hpp"

namespace cdc {

/// X^m Z^n with X|l> = |l+1 mod d> and Z|l> = exp(2 pi i l / d)|l>.
/// Requires d >= 2 and 1 <= m, n <= d (m = d or n = d is the identity power).
ComplexMatrix generalized_pauli(int d, int m, int n);

/// All d^2 generalized Pauli operators. The identity (m = n = d) comes
/// first, followed by the rest in (m, n) lexicographic order.
std::vector<ComplexMatrix> pauli_set(int d);

/// (m, n) power pairs in the order used by pauli_set.
std::vector<std::pair<int, int>> pauli_indices(int d);

/// Hilbert-Schmidt orthonormal basis of d x d Hermitian matrices:
///   [0]                 identity / sqrt(d)
///   then for each j < k in lexicographic order:
///                       (|j><k| + |k><j|) / sqrt(2),
///                       (-i|j><k| + i|k><j|) / sqrt(2)
///   then for l = 1 .. d-1 the diagonal Gell-Mann matrix
///                       (sum_{m<l} |m><m| - l|l><l|) / sqrt(l (l + 1))
/// For d = 2 this is (I, sigma_x, sigma_y, sigma_z) / sqrt(2).
const std::vector<ComplexMatrix>& hermitian_basis(int d);

/// Coefficients of a Hermitian generator in hermitian_basis(d).
struct UnitaryParams {
  int d = 2;
  std::vector<double> values;  // length d^2
};

/// exp(i sum_k values[k] G_k).
ComplexMatrix unitary_from_params(const UnitaryParams& p);

/// Generator coefficients of a unitary, up to the branch of the logarithm:
/// unitary_from_params(params_from_unitary(u)) reproduces u.
UnitaryParams params_from_unitary(const ComplexMatrix& u);

/// Local encodings of N messages for a fixed set of senders. Entry i holds
/// one unitary per sender; entry 0 is the all-identity encoding.
class EncodingSet {
 public:
  EncodingSet(Dims sender_dims, std::vector<std::vector<ComplexMatrix>> unitaries);

  const Dims& sender_dims() const { return sender_dims_; }
  const std::vector<std::vector<ComplexMatrix>>& unitaries() const { return unitaries_; }
  std::size_t size() const { return unitaries_.size(); }

 private:
  Dims sender_dims_;
  std::vector<std::vector<ComplexMatrix>> unitaries_;
};

/// Indices of every subsystem except `receiver`, ascending.
std::vector<int> sender_indices(int num_subsystems, int receiver);

/// Applies one unitary per sender (in sender_indices order) to a raw state.
ComplexVector encode_state(const ComplexVector& psi, std::span<const int> dims,
                           std::span<const int> senders, std::span<const ComplexMatrix> ops);

/// The ensemble {p_i, (U_i^{senders} (x) I_receiver)|Psi>}.
Ensemble apply_encoding(const PureState& state, const EncodingSet& enc, int receiver_index,
                        std::span<const double> priors);

}  // namespace cdc
