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

#include <vector>

#include "cdc/qcore.hpp"

namespace cdc {

/// Split of the parties into two nonempty complementary groups.
struct Bipartition {
  std::vector<int> side_a;
  std::vector<int> side_b;

  /// Builds the complement of side_a over n subsystems.
  static Bipartition from_side(int n, std::vector<int> side_a);
  /// Throws unless the sides are nonempty, disjoint and cover 0..n-1.
  void validate(int n) const;
};

/// Every nontrivial bipartition of n parties (2^(n-1) - 1 of them), each
/// listed once with subsystem 0 on side_a.
std::vector<Bipartition> all_bipartitions(int n);

struct GgmResult {
  double value = 0.0;
  Bipartition maximizing_bipartition;
  double max_eigenvalue = 1.0;
  /// Set when the state has only two parties, where the measure reduces to
  /// one minus the largest squared Schmidt coefficient.
  bool bipartite_only = false;
};

/// Entropy (ebits) of the reduced state on either side of the cut.
double entanglement_entropy(const PureState& state, const Bipartition& cut);

/// Generalized geometric measure: 1 - max over bipartitions of the largest
/// eigenvalue of the marginal.
GgmResult ggm(const PureState& state);

}  // namespace cdc
