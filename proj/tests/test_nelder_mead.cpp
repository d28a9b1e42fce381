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
#include <limits>

#include <gtest/gtest.h>

#include "cdc/nelder_mead.hpp"

namespace cdc {
namespace {

TEST(NelderMead, Rosenbrock) {
  auto f = [](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  NelderMeadOptions opt;
  opt.max_iterations = 5000;
  opt.objective_tolerance = 1e-14;
  opt.step_tolerance = 1e-9;
  const NelderMeadResult r = nelder_mead(f, {-1.2, 1.0}, opt);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-6);
  EXPECT_NEAR(r.x[1], 1.0, 1e-6);
  EXPECT_GT(r.evaluations, r.iterations);
}

TEST(NelderMead, ShiftedQuadraticInTenDimensions) {
  auto f = [](std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1) * std::pow(x[i] - 0.1 * i, 2);
    return s;
  };
  NelderMeadOptions opt;
  opt.max_iterations = 20000;
  opt.objective_tolerance = 1e-16;
  opt.step_tolerance = 1e-8;
  const NelderMeadResult r = nelder_mead(f, std::vector<double>(10, 1.0), opt);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(r.x[i], 0.1 * i, 1e-5);
}

TEST(NelderMead, IterationLimitReported) {
  auto f = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
  NelderMeadOptions opt;
  opt.max_iterations = 3;
  const NelderMeadResult r = nelder_mead(f, {5.0, 5.0}, opt);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
}

TEST(NelderMead, NanIsTreatedAsInfinite) {
  auto f = [](std::span<const double> x) {
    return x[0] < 0 ? std::numeric_limits<double>::quiet_NaN() : (x[0] - 1) * (x[0] - 1);
  };
  NelderMeadOptions opt;
  opt.objective_tolerance = 1e-14;
  const NelderMeadResult r = nelder_mead(f, {0.2}, opt);
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
}

}  // namespace
}  // namespace cdc
