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

#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "cdc/capacity.hpp"
#include "cdc/states.hpp"
#include "support/oracles.hpp"

namespace cdc {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

CapacityConfig quick(int restarts = 3) {
  CapacityConfig cfg;
  cfg.restarts = restarts;
  return cfg;
}

// (4 - N + 2 a^2 (2N - 4)) / N log2 N evaluated term by term.
double two_qubit_formula(double a, int n) { return (4.0 - n + 2 * a * a * (2.0 * n - 4)) / n * std::log2(n); }

TEST(ClosedForm, TwoQubitValues) {
  EXPECT_NEAR(closed_form_two_qubit_pauli(kInvSqrt2, 4), 2.0, 1e-12);
  EXPECT_NEAR(closed_form_two_qubit_pauli(kInvSqrt2, 3), std::log2(3.0), 1e-12);
  EXPECT_NEAR(closed_form_two_qubit_pauli(0.5, 4), 1.0, 1e-12);
  EXPECT_NEAR(closed_form_two_qubit_pauli(0.3, 3), two_qubit_formula(0.3, 3), 1e-15);
  EXPECT_THROW(closed_form_two_qubit_pauli(0.5, 5), std::invalid_argument);
  EXPECT_THROW(closed_form_two_qubit_pauli(0.8, 3), std::invalid_argument);
}

TEST(ClosedForm, GeneralizedGhz) {
  // (0 + 2 * 0.25 * 8) / 8 * 3
  EXPECT_NEAR(closed_form_gghz_pauli(3, 0.5, 8), 1.5, 1e-12);
  EXPECT_NEAR(closed_form_gghz_pauli(2, 0.4, 3), closed_form_two_qubit_pauli(0.4, 3), 1e-15);
  EXPECT_NEAR(closed_form_gghz_pauli(4, kInvSqrt2, 12), std::log2(12.0), 1e-12);
  EXPECT_THROW(closed_form_gghz_pauli(3, 0.5, 4), std::invalid_argument);
  EXPECT_THROW(closed_form_gghz_pauli(3, 0.5, 9), std::invalid_argument);
  EXPECT_THROW(closed_form_gghz_pauli(1, 0.5, 2), std::invalid_argument);
}

TEST(ClosedForm, NondecreasingInAlpha) {
  for (int n_parties : {2, 3, 4}) {
    const int full = 1 << n_parties;
    for (int n = full / 2 + 1; n <= full; ++n) {
      double prev = -1.0;
      for (int k = 0; k <= 70; ++k) {
        const double v = closed_form_gghz_pauli(n_parties, 0.01 * k, n);
        EXPECT_GE(v, prev);
        prev = v;
      }
    }
  }
}

TEST(AsymptoticCapacity, KnownValues) {
  EXPECT_NEAR(asymptotic_capacity(two_qubit_state(0.5), 1), 1.0 + testing::binary_entropy(0.25), 1e-12);
  EXPECT_NEAR(asymptotic_capacity(two_qubit_state(kInvSqrt2), 1), 2.0, 1e-12);
  EXPECT_NEAR(asymptotic_capacity(two_qutrit_state(kInvSqrt3, kInvSqrt3), 1), 2 * std::log2(3.0), 1e-12);
  EXPECT_NEAR(asymptotic_capacity(gw_state(0.6, 0.3), 2), 2.0 + testing::binary_entropy(0.36), 1e-12);
}

TEST(PauliCapacity, TwoQubitMatchesClosedForm) {
  for (int k = 1; k <= 14; ++k) {
    const double a = 0.05 * k;
    for (int n : {3, 4}) {
      const CapacityResult r = pauli_capacity_n(two_qubit_state(a), 1, n);
      EXPECT_NEAR(r.bits, closed_form_two_qubit_pauli(a, n), 1e-8) << a << " " << n;
      EXPECT_EQ(r.encoder_kind, EncoderKind::Pauli);
      EXPECT_EQ(r.pauli_tuples.size(), static_cast<std::size_t>(n));
      EXPECT_EQ(r.pauli_tuples.front(), (std::vector<std::pair<int, int>>{{2, 2}}));
    }
  }
}

TEST(PauliCapacity, GeneralizedGhzMatchesClosedForm) {
  for (double a : {0.2, 0.5, 0.65}) {
    for (int n = 5; n <= 8; ++n) {
      EXPECT_NEAR(pauli_capacity_n(gghz_state(3, a), 2, n).bits, closed_form_gghz_pauli(3, a, n), 1e-8);
    }
  }
}

TEST(PauliCapacity, MaximallyEntangledQutritsAreDeterministic) {
  const PureState s = two_qutrit_state(kInvSqrt3, kInvSqrt3);
  for (int n = 4; n <= 9; ++n) {
    const CapacityResult r = pauli_capacity_n(s, 1, n);
    EXPECT_NEAR(r.bits, std::log2(n), 1e-8);
    EXPECT_TRUE(ddc_check(r));
  }
}

TEST(PauliCapacity, ProductStateIsDegenerate) {
  const CapacityResult r = pauli_capacity_n(two_qubit_state(0.0), 1, 3);
  EXPECT_EQ(r.status, CapacityStatus::Degenerate);
  EXPECT_EQ(r.bits, 0.0);
}

TEST(PauliCapacity, MaximumOverN) {
  const CapacityResult r = pauli_capacity(two_qubit_state(0.3), 1);
  EXPECT_EQ(r.n_messages, 3);
  EXPECT_NEAR(r.bits, closed_form_two_qubit_pauli(0.3, 3), 1e-8);
  EXPECT_EQ(pauli_capacity(two_qubit_state(0.7), 1).n_messages, 4);
}

TEST(EvaluateEncoding, BellStateDenseCoding) {
  std::vector<std::vector<ComplexMatrix>> ops;
  for (const auto& p : pauli_set(2)) ops.push_back({p});
  const CapacityResult r = evaluate_encoding(two_qubit_state(kInvSqrt2), 1, EncodingSet({2}, ops));
  EXPECT_NEAR(r.bits, 2.0, 1e-9);
  EXPECT_THROW(evaluate_encoding(two_qutrit_state(0.3, 0.5), 1, EncodingSet({2}, ops)), std::invalid_argument);
}

TEST(CdcCapacityN, TwoQubitMatchesClosedForm) {
  for (double a : {0.1, 0.35, 0.5, 0.65}) {
    for (int n : {3, 4}) {
      const CapacityResult r = cdc_capacity_n(two_qubit_state(a), 1, n, quick());
      EXPECT_NEAR(r.bits, two_qubit_formula(a, n), 1e-6) << a << " " << n;
      EXPECT_EQ(r.encoder_kind, EncoderKind::Arbitrary);
      EXPECT_EQ(r.parameters.size(), static_cast<std::size_t>(n));
    }
  }
}

TEST(CdcCapacityN, RandomStartsAloneReachTheClosedForm) {
  CapacityConfig cfg = quick(5);
  cfg.seed_with_pauli = false;
  const CapacityResult r = cdc_capacity_n(two_qubit_state(0.4), 1, 3, cfg);
  EXPECT_NEAR(r.bits, two_qubit_formula(0.4, 3), 1e-6);
}

TEST(CdcCapacityN, SimplexSearchAgrees) {
  CapacityConfig cfg = quick(2);
  cfg.local_search = LocalSearch::Simplex;
  cfg.seed_with_pauli = false;
  const CapacityResult r = cdc_capacity_n(two_qubit_state(0.4), 1, 3, cfg);
  EXPECT_NEAR(r.bits, two_qubit_formula(0.4, 3), 1e-5);
}

TEST(CdcCapacityN, ReportedEncodingReproducesTheValue) {
  const PureState s = gw_state(0.5, 0.4);
  const CapacityResult r = cdc_capacity_n(s, 2, 5, quick(2));
  std::vector<std::vector<ComplexMatrix>> ops;
  for (const auto& row : r.parameters) {
    std::vector<ComplexMatrix> u;
    for (const auto& p : row) u.push_back(unitary_from_params(p));
    ops.push_back(u);
  }
  EXPECT_NEAR(evaluate_encoding(s, 2, EncodingSet({2, 2}, ops)).bits, r.bits, 1e-9);
}

TEST(CdcCapacityN, ProductStateScoresZero) {
  const CapacityResult r = cdc_capacity_n(two_qubit_state(0.0), 1, 3, quick(2));
  EXPECT_EQ(r.bits, 0.0);
  EXPECT_EQ(r.status, CapacityStatus::Degenerate);
}

TEST(CdcCapacityN, MessageCountBounds) {
  EXPECT_THROW(cdc_capacity_n(two_qubit_state(0.5), 1, 1, quick()), std::invalid_argument);
  EXPECT_THROW(cdc_capacity_n(two_qubit_state(0.5), 1, 5, quick()), std::invalid_argument);
  CapacityConfig bad = quick();
  bad.restarts = 0;
  EXPECT_THROW(cdc_capacity_n(two_qubit_state(0.5), 1, 3, bad), std::invalid_argument);
}

TEST(CdcCapacityN, DeterministicForFixedSeed) {
  const PureState s = two_qutrit_state(0.3, 0.5);
  const CapacityResult a = cdc_capacity_n(s, 1, 6, quick(2));
  const CapacityResult b = cdc_capacity_n(s, 1, 6, quick(2));
  EXPECT_EQ(a.bits, b.bits);
  EXPECT_EQ(a.encoder_description, b.encoder_description);
}

TEST(CdcCapacityN, BoundsAndHierarchy) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    const double a = 0.7 * u(rng);
    const double b = std::sqrt(1 - a * a) * u(rng);
    const PureState s = gw_state(a, b);
    for (int n : {5, 6}) {
      const CapacityResult r = cdc_capacity_n(s, 2, n, quick(1));
      EXPECT_LE(r.bits, asymptotic_capacity(s, 2) + 1e-9);
      EXPECT_LE(r.bits, std::log2(n) + 1e-9);
      EXPECT_GE(r.bits, pauli_capacity_n(s, 2, n).bits - 1e-6);
    }
  }
}

TEST(CdcCapacityN, QutritArbitraryBeatsPauli) {
  const PureState s = two_qutrit_state(0.3, 0.5);
  EXPECT_GT(cdc_capacity_n(s, 1, 6, quick(2)).bits, pauli_capacity_n(s, 1, 6).bits + 0.1);
}

TEST(CdcCapacity, PicksTheBestMessageCount) {
  const CapacityResult low = cdc_capacity(two_qubit_state(0.3), 1, quick(2));
  EXPECT_EQ(low.n_messages, 3);
  const CapacityResult high = cdc_capacity(two_qubit_state(kInvSqrt2), 1, quick(2));
  EXPECT_EQ(high.n_messages, 4);
  EXPECT_NEAR(high.bits, 2.0, 1e-6);
}

TEST(DdcCheck, Examples) {
  EXPECT_TRUE(ddc_check(cdc_capacity_n(two_qubit_state(kInvSqrt2), 1, 4, quick(1))));
  EXPECT_FALSE(ddc_check(cdc_capacity_n(two_qubit_state(0.5), 1, 4, quick(1))));
  EXPECT_TRUE(ddc_check(cdc_capacity_n(gw_state(kInvSqrt3, kInvSqrt3), 2, 6, quick(5)), 1e-6));
}

TEST(EncoderObjective, GradientMatchesFiniteDifferences) {
  struct Case {
    PureState state;
    int receiver;
    int n;
  };
  const Case cases[] = {{two_qubit_state(0.4), 1, 3}, {two_qutrit_state(0.3, 0.5), 1, 5}, {gw_state(0.5, 0.4), 2, 6}};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  UsdSettings tight;
  tight.gap_tolerance = 1e-12;
  for (const Case& c : cases) {
    const EncoderObjective obj(c.state, c.receiver, c.n);
    std::vector<double> theta(obj.dimension());
    // The value is only differentiable where no gamma sits at zero.
    for (int tries = 0; tries < 1000; ++tries) {
      for (double& x : theta) x = u(rng);
      const UsdSolution sol = obj.solve(theta);
      double lowest = 1.0;
      for (std::size_t i = 0; i < sol.gamma.size(); ++i) lowest = std::min(lowest, sol.gamma[i]);
      if (lowest > 1e-2) break;
    }
    std::vector<double> grad(theta.size());
    obj.bits_and_gradient(theta, grad, tight);
    for (std::size_t k = 0; k < theta.size(); ++k) {
      auto plus = theta, minus = theta;
      plus[k] += 1e-5;
      minus[k] -= 1e-5;
      const double fd = (obj.bits(plus, tight) - obj.bits(minus, tight)) / 2e-5;
      EXPECT_NEAR(grad[k], fd, 1e-5) << k;
    }
  }
}

TEST(EncoderObjective, ParameterCount) {
  EXPECT_EQ(EncoderObjective(two_qubit_state(0.4), 1, 4).dimension(), 9u);
  EXPECT_EQ(EncoderObjective(two_qutrit_state(0.3, 0.5), 1, 9).dimension(), 64u);
  EXPECT_EQ(EncoderObjective(gw_state(0.3, 0.5), 2, 8).dimension(), 42u);
  const EncoderObjective obj(two_qubit_state(0.4), 1, 3);
  EXPECT_THROW(obj.bits(std::vector<double>(5)), std::invalid_argument);
}

}  // namespace
}  // namespace cdc
