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

#include "cdc/discrimination.hpp"
#include "support/oracles.hpp"

namespace cdc {
namespace {

ComplexMatrix two_state_gram(Complex s) {
  ComplexMatrix g = ComplexMatrix::Identity(2, 2);
  g(0, 1) = s;
  g(1, 0) = std::conj(s);
  return g;
}

std::vector<double> uniform(int n) { return std::vector<double>(n, 1.0 / n); }

TEST(Ensemble, Validation) {
  ComplexVector a = ComplexVector::Zero(2), b = ComplexVector::Zero(2);
  a(0) = 1;
  b(1) = 1;
  const PureState sa({2}, a), sb({2}, b);
  EXPECT_NO_THROW(Ensemble({sa, sb}, {0.5, 0.5}));
  EXPECT_THROW(Ensemble({sa, sb}, {0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Ensemble({sa, sb}, {1.0}), std::invalid_argument);
  EXPECT_THROW(Ensemble({}, {}), std::invalid_argument);
  ComplexVector c = ComplexVector::Zero(4);
  c(0) = 1;
  EXPECT_THROW(Ensemble({sa, PureState({2, 2}, c)}, {0.5, 0.5}), std::invalid_argument);
}

TEST(GramMatrix, Validation) {
  EXPECT_NO_THROW(GramMatrix(two_state_gram(0.3)));
  ComplexMatrix bad_diag = two_state_gram(0.3);
  bad_diag(1, 1) = 0.9;
  EXPECT_THROW(GramMatrix{bad_diag}, std::invalid_argument);
  ComplexMatrix non_herm = two_state_gram(0.3);
  non_herm(1, 0) = 0.2;
  EXPECT_THROW(GramMatrix{non_herm}, std::invalid_argument);
  EXPECT_THROW(GramMatrix(two_state_gram(1.5)), std::invalid_argument);
  EXPECT_THROW(GramMatrix(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST(GammaVector, Range) {
  EXPECT_NO_THROW(GammaVector({0.0, 1.0}));
  EXPECT_THROW(GammaVector({-0.1}), std::invalid_argument);
  EXPECT_THROW(GammaVector({1.1}), std::invalid_argument);
}

TEST(Gram, FromEnsembleAndRank) {
  ComplexVector a = ComplexVector::Zero(2), b(2);
  a(0) = 1;
  b << std::sqrt(0.5), Complex(0, std::sqrt(0.5));
  const Ensemble e({PureState({2}, a), PureState({2}, b), PureState({2}, a)}, uniform(3));
  const GramMatrix g = gram(e);
  EXPECT_NEAR(std::abs(g.entries()(0, 1) - std::sqrt(0.5)), 0.0, 1e-15);
  EXPECT_EQ(independence_rank(g), 2);
}

TEST(Feasibility, Check) {
  const GramMatrix g(two_state_gram(0.6));
  EXPECT_TRUE(usd_feasible(g, GammaVector({0.4, 0.4})));
  EXPECT_FALSE(usd_feasible(g, GammaVector({0.5, 0.5})));
  EXPECT_THROW(usd_feasible(g, GammaVector({0.1})), std::invalid_argument);
}

TEST(OptimizeGammas, TwoStatesEqualPriors) {
  for (double s : {0.0, 0.1, 0.5, 0.9}) {
    const UsdSolution sol = optimize_gammas(GramMatrix(two_state_gram(std::polar(s, 0.7))), uniform(2));
    EXPECT_NEAR(sol.gamma[0], 1 - s, 1e-9) << s;
    EXPECT_NEAR(sol.gamma[1], 1 - s, 1e-9) << s;
    EXPECT_EQ(sol.status, UsdStatus::Converged);
  }
}

TEST(OptimizeGammas, TwoStatesUnequalPriors) {
  for (double p1 : {0.1, 0.3, 0.45}) {
    for (double s : {0.1, 0.4, 0.7, 0.95}) {
      const std::vector<double> p{p1, 1 - p1};
      const UsdSolution sol = optimize_gammas(GramMatrix(two_state_gram(s)), p);
      EXPECT_NEAR(sol.objective, testing::two_state_optimum(p1, 1 - p1, s), 1e-9) << p1 << " " << s;
    }
  }
}

TEST(OptimizeGammas, OrthogonalStates) {
  const UsdSolution sol = optimize_gammas(GramMatrix(ComplexMatrix::Identity(5, 5)), uniform(5));
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(sol.gamma[i], 1.0, 1e-9);
}

TEST(OptimizeGammas, DependentMessagesArePinned) {
  ComplexMatrix g = ComplexMatrix::Identity(3, 3);
  g(0, 1) = g(1, 0) = 1.0;
  const UsdSolution sol = optimize_gammas(GramMatrix(g), uniform(3));
  EXPECT_EQ(sol.status, UsdStatus::Degenerate);
  EXPECT_EQ(sol.gamma[0], 0.0);
  EXPECT_EQ(sol.gamma[1], 0.0);
  EXPECT_NEAR(sol.gamma[2], 1.0, 1e-9);
  EXPECT_NEAR(sol.objective, 1.0 / 3.0, 1e-9);
}

TEST(OptimizeGammas, PairedBlockGram) {
  for (int pairs : {1, 2, 3}) {
    for (int singles : {0, 1, 2}) {
      for (double alpha : {0.2, 0.45, 0.6, 0.7}) {
        const ComplexMatrix g = testing::paired_block_gram(pairs, singles, alpha);
        const int n = 2 * pairs + singles;
        const UsdSolution sol = optimize_gammas(GramMatrix(g), uniform(n));
        for (int i = 0; i < n; ++i) {
          EXPECT_NEAR(sol.gamma[i], i < 2 * pairs ? 2 * alpha * alpha : 1.0, 1e-6);
        }
      }
    }
  }
}

TEST(OptimizeGammas, MatchesGridSearch) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const ComplexMatrix g = testing::random_gram(rng, n, n);
    std::vector<double> p(n);
    std::uniform_real_distribution<double> u(0.2, 1.0);
    double total = 0;
    for (double& x : p) total += (x = u(rng));
    for (double& x : p) x /= total;
    const UsdSolution sol = optimize_gammas(GramMatrix(g), p);
    const testing::GridOptimum grid = testing::grid_search_usd(g, p, 0.01);
    EXPECT_GE(sol.objective, grid.objective - 1e-9);
    EXPECT_LE(sol.objective - grid.objective, 0.02);
  }
}

TEST(OptimizeGammas, PropertiesOnRandomEnsembles) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> phase(-3.14, 3.14);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 8;
    const int dim = n + trial % 3;
    const ComplexMatrix g = testing::random_gram(rng, n, dim);
    const auto p = uniform(n);
    const UsdSolution sol = optimize_gammas(GramMatrix(g), p);

    EXPECT_TRUE(usd_feasible(GramMatrix(g), sol.gamma, 1e-9));

    // Relabelling the states by phases leaves the problem unchanged.
    ComplexVector d(n);
    for (auto& c : d) c = std::polar(1.0, phase(rng));
    const ComplexMatrix rotated = d.asDiagonal() * g * d.conjugate().asDiagonal();
    EXPECT_NEAR(optimize_gammas(GramMatrix(rotated), p).objective, sol.objective, 1e-8);

    // Shrinking every overlap can only help.
    const ComplexMatrix shrunk = 0.7 * g + 0.3 * ComplexMatrix::Identity(n, n);
    EXPECT_GE(optimize_gammas(GramMatrix(shrunk), p).objective, sol.objective - 1e-9);

    // The optimum is concave in the Gram matrix.
    const ComplexMatrix other = testing::random_gram(rng, n, dim);
    const double mid = optimize_gammas(GramMatrix(0.5 * (g + other)), p).objective;
    const double avg = 0.5 * (sol.objective + optimize_gammas(GramMatrix(other), p).objective);
    EXPECT_GE(mid, avg - 1e-8);
  }
}

TEST(OptimizeGammas, DualCertificate) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    const ComplexMatrix g = testing::random_gram(rng, n, n + 1);
    const auto p = uniform(n);
    const UsdSolution sol = optimize_gammas(GramMatrix(g), p);
    const ComplexMatrix& z = sol.dual;
    ASSERT_EQ(z.rows(), n);
    EXPECT_GE(testing::min_eigenvalue(0.5 * (z + z.adjoint())), -1e-9);
    for (int i = 0; i < n; ++i) EXPECT_GE(z(i, i).real(), p[i] - 1e-9) << z(i, i).real() - p[i];
    // Weak duality: tr(Z G) bounds the objective from above.
    const double dual_value = (z * g).trace().real();
    EXPECT_GE(dual_value, sol.objective - 1e-9) << dual_value - sol.objective;
    EXPECT_LE(dual_value - sol.objective, 1e-6);
  }
}

TEST(OptimizeGammas, DualIsTheGradient) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 3;
    const ComplexMatrix g = testing::random_gram(rng, n, n);
    const auto p = uniform(n);
    const UsdSolution sol = optimize_gammas(GramMatrix(g), p);
    ComplexMatrix dg = testing::random_gram(rng, n, n) - ComplexMatrix::Identity(n, n);
    const double h = 1e-6;
    UsdSettings tight;
    tight.gap_tolerance = 1e-12;
    // Directional derivative only exists where no gamma sits on its bound.
    bool interior = true;
    for (int i = 0; i < n; ++i) interior = interior && sol.gamma[i] > 1e-3;
    if (!interior) continue;
    const double fd = (solve_usd(g + h * dg, p, tight).objective - solve_usd(g - h * dg, p, tight).objective) / (2 * h);
    EXPECT_NEAR((sol.dual * dg).trace().real(), fd, 1e-5);
  }
}

TEST(OptimizeGammas, InputValidation) {
  EXPECT_THROW(optimize_gammas(GramMatrix(two_state_gram(0.3)), uniform(3)), std::invalid_argument);
  EXPECT_THROW(optimize_gammas(GramMatrix(two_state_gram(0.3)), std::vector<double>{0.3, 0.3}),
               std::invalid_argument);
}

TEST(OptimizeGammas, IterationLimitStatus) {
  UsdSettings s;
  s.max_newton_steps = 2;
  const UsdSolution sol = optimize_gammas(GramMatrix(two_state_gram(0.5)), uniform(2), s);
  EXPECT_EQ(sol.status, UsdStatus::IterationLimit);
  EXPECT_EQ(sol.newton_steps, 2);
}

TEST(MutualInformation, ConclusiveFraction) {
  const std::vector<double> p = uniform(4);
  EXPECT_NEAR(conclusive_mutual_information(p, GammaVector({1, 1, 1, 1})), 2.0, 1e-15);
  EXPECT_NEAR(conclusive_mutual_information(p, GammaVector({0.5, 0.5, 0.5, 0.5})), 1.0, 1e-15);
  EXPECT_THROW(conclusive_mutual_information(p, GammaVector({1.0})), std::invalid_argument);
}

}  // namespace
}  // namespace cdc
