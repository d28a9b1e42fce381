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

#include <functional>
#include <span>
#include <vector>

namespace cdc {

struct NelderMeadOptions {
  int max_iterations = 2000;
  /// Converged once every vertex lies within this distance (max-norm) of
  /// the best vertex...
  double step_tolerance = 1e-8;
  /// ...and the simplex values span no more than this.
  double objective_tolerance = 1e-6;
  /// Edge length of the initial axis-aligned simplex.
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes f from x0 with the dimension-adaptive Nelder-Mead coefficients
/// (reflection 1, expansion 1 + 2/n, contraction 3/4 - 1/(2n),
/// shrink 1 - 1/n), which behave far better than the classic ones once n
/// exceeds a handful of parameters.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options);

}  // namespace cdc
