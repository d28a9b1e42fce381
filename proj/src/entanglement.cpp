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

#include "cdc/entanglement.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdc {

namespace {

// Marginal on the side with the smaller Hilbert space; both sides of a pure
// state share the nonzero spectrum.
DensityMatrix smaller_marginal(const PureState& state, const Bipartition& cut) {
  Eigen::Index da = 1;
  Eigen::Index db = 1;
  for (int k : cut.side_a) da *= state.dims()[k];
  for (int k : cut.side_b) db *= state.dims()[k];
  return reduced_state(state, da <= db ? cut.side_a : cut.side_b);
}

}  // namespace

Bipartition Bipartition::from_side(int n, std::vector<int> side_a) {
  std::sort(side_a.begin(), side_a.end());
  Bipartition cut;
  for (int k = 0; k < n; ++k) {
    if (!std::binary_search(side_a.begin(), side_a.end(), k)) cut.side_b.push_back(k);
  }
  cut.side_a = std::move(side_a);
  cut.validate(n);
  return cut;
}

void Bipartition::validate(int n) const {
  if (side_a.empty() || side_b.empty()) throw std::invalid_argument("Bipartition: empty side");
  std::vector<int> all = side_a;
  all.insert(all.end(), side_b.begin(), side_b.end());
  std::sort(all.begin(), all.end());
  if (static_cast<int>(all.size()) != n) throw std::invalid_argument("Bipartition: sides must cover all parties once");
  for (int k = 0; k < n; ++k) {
    if (all[k] != k) throw std::invalid_argument("Bipartition: sides must cover all parties once");
  }
}

std::vector<Bipartition> all_bipartitions(int n) {
  if (n < 2) throw std::invalid_argument("all_bipartitions: need at least two parties");
  std::vector<Bipartition> cuts;
  // Masks over parties 1..n-1 choose which of them join party 0.
  const unsigned full = (1u << (n - 1)) - 1u;
  for (unsigned mask = 0; mask < full; ++mask) {
    std::vector<int> side{0};
    for (int k = 1; k < n; ++k) {
      if (mask & (1u << (k - 1))) side.push_back(k);
    }
    cuts.push_back(Bipartition::from_side(n, side));
  }
  return cuts;
}

double entanglement_entropy(const PureState& state, const Bipartition& cut) {
  cut.validate(state.num_subsystems());
  return von_neumann_entropy(smaller_marginal(state, cut));
}

GgmResult ggm(const PureState& state) {
  GgmResult result;
  result.max_eigenvalue = -1.0;
  result.bipartite_only = state.num_subsystems() == 2;
  for (auto& cut : all_bipartitions(state.num_subsystems())) {
    const double top = eigvals_hermitian(smaller_marginal(state, cut).matrix()).maxCoeff();
    if (top > result.max_eigenvalue) {
      result.max_eigenvalue = top;
      result.maximizing_bipartition = std::move(cut);
    }
  }
  result.value = 1.0 - result.max_eigenvalue;
  return result;
}

}  // namespace cdc
