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

#include "cdc/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cdc {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  NelderMeadResult result;
  if (n == 0) {
    result.x = std::move(x0);
    result.value = f(result.x);
    result.evaluations = 1;
    result.converged = true;
    return result;
  }

  const double dn = static_cast<double>(n);
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 0.5 / dn;
  const double shrink = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t k = 0; k < n; ++k) simplex[k + 1][k] += options.initial_step;
  std::vector<double> values(n + 1);
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  for (std::size_t k = 0; k <= n; ++k) values[k] = eval(simplex[k]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  auto along = [&](std::vector<double>& out, double coef) {
    const auto& worst = simplex[order[n]];
    for (std::size_t c = 0; c < n; ++c) out[c] = centroid[c] + coef * (centroid[c] - worst[c]);
  };

  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order[0];

    double spread = values[order[n]] - values[best];
    double reach = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t c = 0; c < n; ++c) {
        reach = std::max(reach, std::abs(simplex[order[k]][c] - simplex[best][c]));
      }
    }
    if (spread <= options.objective_tolerance && reach <= options.step_tolerance) {
      result.converged = true;
      break;
    }
    if (result.iterations >= options.max_iterations) break;
    ++result.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t c = 0; c < n; ++c) centroid[c] += simplex[order[k]][c];
    }
    for (double& c : centroid) c /= dn;

    const std::size_t worst = order[n];
    const double f_best = values[best];
    const double f_second_worst = values[order[n - 1]];
    const double f_worst = values[worst];

    along(xr, 1.0);
    const double fr = eval(xr);
    if (fr < f_best) {
      along(xe, expand);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < f_second_worst) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    if (fr < f_worst) {
      along(xc, contract);  // outside contraction
      const double fc = eval(xc);
      if (fc <= fr) {
        simplex[worst] = xc;
        values[worst] = fc;
        continue;
      }
    } else {
      along(xc, -contract);  // inside contraction
      const double fc = eval(xc);
      if (fc < f_worst) {
        simplex[worst] = xc;
        values[worst] = fc;
        continue;
      }
    }
    for (std::size_t k = 1; k <= n; ++k) {
      auto& v = simplex[order[k]];
      for (std::size_t c = 0; c < n; ++c) v[c] = simplex[best][c] + shrink * (v[c] - simplex[best][c]);
      values[order[k]] = eval(v);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace cdc
