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

#include "cdc/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cdc {

namespace {

// Slack for parameters computed on a floating-point grid (1/sqrt(2) etc.).
constexpr double kSlack = 1e-12;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double residual(double weight) { return std::sqrt(std::max(0.0, 1.0 - weight)); }

bool two_qubit_ok(double alpha) { return alpha >= 0.0 && alpha <= kInvSqrt2 + kSlack; }

bool two_qutrit_ok(double alpha, double beta) {
  return alpha >= 0.0 && alpha <= beta + kSlack &&
         alpha * alpha + beta * beta <= 2.0 / 3.0 + kSlack;
}

bool gw_ok(double alpha, double beta) {
  return alpha >= 0.0 && beta >= 0.0 && alpha * alpha + beta * beta <= 1.0 + kSlack;
}

}  // namespace

PureState two_qubit_state(double alpha) {
  return gghz_state(2, alpha);
}

PureState two_qutrit_state(double alpha, double beta) {
  if (!two_qutrit_ok(alpha, beta)) {
    throw std::invalid_argument("two_qutrit_state: need 0 <= alpha <= beta, alpha^2 + beta^2 <= 2/3");
  }
  ComplexVector psi = ComplexVector::Zero(9);
  psi(0) = alpha;
  psi(4) = beta;
  psi(8) = residual(alpha * alpha + beta * beta);
  return PureState({3, 3}, psi.normalized());
}

PureState gghz_state(int n, double alpha) {
  if (n < 2) throw std::invalid_argument("gghz_state: need at least 2 parties");
  if (!two_qubit_ok(alpha)) {
    throw std::invalid_argument("gghz_state: alpha must lie in [0, 1/sqrt(2)]");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexVector psi = ComplexVector::Zero(dim);
  psi(0) = alpha;
  psi(dim - 1) = residual(alpha * alpha);
  return PureState(Dims(n, 2), psi.normalized());
}

PureState gw_state(double alpha, double beta) {
  if (!gw_ok(alpha, beta)) {
    throw std::invalid_argument("gw_state: need alpha, beta >= 0 and alpha^2 + beta^2 <= 1");
  }
  ComplexVector psi = ComplexVector::Zero(8);
  psi(1) = alpha;                                  // |001>
  psi(2) = beta;                                   // |010>
  psi(4) = residual(alpha * alpha + beta * beta);  // |100>
  return PureState({2, 2, 2}, psi.normalized());
}

bool StateFamily::in_domain() const {
  switch (kind) {
    case FamilyKind::TwoQubit:
      return two_qubit_ok(alpha);
    case FamilyKind::TwoQutrit:
      return two_qutrit_ok(alpha, beta);
    case FamilyKind::GeneralizedGhz:
      return parties >= 2 && two_qubit_ok(alpha);
    case FamilyKind::GeneralizedW:
      return gw_ok(alpha, beta);
  }
  return false;
}

PureState StateFamily::build() const {
  switch (kind) {
    case FamilyKind::TwoQubit:
      return two_qubit_state(alpha);
    case FamilyKind::TwoQutrit:
      return two_qutrit_state(alpha, beta);
    case FamilyKind::GeneralizedGhz:
      return gghz_state(parties, alpha);
    case FamilyKind::GeneralizedW:
      return gw_state(alpha, beta);
  }
  throw std::invalid_argument("StateFamily: unknown kind");
}

int StateFamily::receiver() const {
  switch (kind) {
    case FamilyKind::TwoQubit:
    case FamilyKind::TwoQutrit:
      return 1;
    case FamilyKind::GeneralizedGhz:
      return parties - 1;
    case FamilyKind::GeneralizedW:
      return 2;
  }
  return 1;
}

}  // namespace cdc
