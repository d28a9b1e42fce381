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

#include "cdc/qcore.hpp"

namespace cdc {

/// The shared-state families studied here, all with real nonnegative
/// coefficients and no relative phases.
enum class FamilyKind { TwoQubit, TwoQutrit, GeneralizedGhz, GeneralizedW };

struct StateFamily {
  FamilyKind kind = FamilyKind::TwoQubit;
  int parties = 2;  // only meaningful for GeneralizedGhz
  double alpha = 0.0;
  double beta = 0.0;  // TwoQutrit and GeneralizedW only

  /// True when (alpha, beta) lies in the family's canonical domain.
  bool in_domain() const;
  PureState build() const;
  /// Index of the receiving party (the last subsystem for every family).
  int receiver() const;
};

/// alpha|00> + sqrt(1 - alpha^2)|11>, 0 <= alpha <= 1/sqrt(2).
PureState two_qubit_state(double alpha);

/// alpha|00> + beta|11> + sqrt(1 - alpha^2 - beta^2)|22> with
/// 0 <= alpha <= beta and alpha^2 + beta^2 <= 2/3.
PureState two_qutrit_state(double alpha, double beta);

/// alpha|0...0> + sqrt(1 - alpha^2)|1...1> on n >= 2 qubits.
PureState gghz_state(int n, double alpha);

/// alpha|001> + beta|010> + sqrt(1 - alpha^2 - beta^2)|100>, party order
/// (A1, A2, B).
PureState gw_state(double alpha, double beta);

}  // namespace cdc
