// Copyright 2026 The qmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmetro/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <vector>

#include "qmetro/error.hpp"

namespace qmetro {

namespace {

struct Simplex {
  std::vector<RVec> points;
  std::vector<double> values;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const RVec&)>& f, const RVec& x0,
                             const NelderMeadOptions& options) {
  const Eigen::Index n = x0.size();
  require(n > 0, ErrorCode::InvalidArgument, "nelder_mead: empty start point");
  const double dn = static_cast<double>(n);
  // Gao-Han coefficients keep the method effective beyond a handful of dims.
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 1.0 / (2.0 * dn);
  const double delta = 1.0 - 1.0 / dn;

  NelderMeadResult result;
  result.x = x0;
  int evals = 0;
  auto eval = [&](const RVec& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : INFINITY;
  };
  result.value = eval(x0);

  double step = options.initial_step;
  for (int round = 0; round <= options.restarts; ++round) {
    Simplex s;
    s.points.push_back(result.x);
    s.values.push_back(result.value);
    for (Eigen::Index i = 0; i < n; ++i) {
      RVec p = result.x;
      p(i) += step;
      s.points.push_back(p);
      s.values.push_back(eval(p));
    }

    std::vector<std::size_t> order(s.points.size());
    std::deque<double> history;
    bool converged = false;
    double improvement = INFINITY;
    while (evals < options.max_evaluations) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second = order[order.size() - 2];

      history.push_back(s.values[best]);
      if (static_cast<int>(history.size()) > options.stall_iterations) {
        improvement = history.front() - history.back();
        history.pop_front();
        if (improvement < options.tolerance) {
          converged = true;
          break;
        }
      }

      RVec centroid = RVec::Zero(n);
      for (std::size_t i = 0; i < s.points.size(); ++i)
        if (i != worst) centroid += s.points[i];
      centroid /= dn;

      const RVec xr = centroid + alpha * (centroid - s.points[worst]);
      const double fr = eval(xr);
      if (fr < s.values[best]) {
        const RVec xe = centroid + beta * (xr - centroid);
        const double fe = eval(xe);
        if (fe < fr) {
          s.points[worst] = xe;
          s.values[worst] = fe;
        } else {
          s.points[worst] = xr;
          s.values[worst] = fr;
        }
        continue;
      }
      if (fr < s.values[second]) {
        s.points[worst] = xr;
        s.values[worst] = fr;
        continue;
      }
      const bool outside = fr < s.values[worst];
      const RVec xc = outside ? RVec(centroid + gamma * (xr - centroid))
                              : RVec(centroid - gamma * (centroid - s.points[worst]));
      const double fc = eval(xc);
      if (fc < std::min(fr, s.values[worst])) {
        s.points[worst] = xc;
        s.values[worst] = fc;
        continue;
      }
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i == best) continue;
        s.points[i] = s.points[best] + delta * (s.points[i] - s.points[best]);
        s.values[i] = eval(s.points[i]);
      }
    }

    const auto best_it = std::min_element(s.values.begin(), s.values.end());
    const std::size_t best = static_cast<std::size_t>(best_it - s.values.begin());
    const double gain = result.value - s.values[best];
    if (s.values[best] <= result.value) {
      result.x = s.points[best];
      result.value = s.values[best];
    }
    result.converged = converged;
    result.last_improvement = improvement;
    if (!converged) break;
    if (round > 0 && gain < options.tolerance) break;
    step *= 0.1;
  }
  result.evaluations = evals;
  return result;
}

}  // namespace qmetro
