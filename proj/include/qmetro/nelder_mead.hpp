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

#pragma once

#include <functional>

#include "qmetro/linalg.hpp"

namespace qmetro {

struct NelderMeadOptions {
  double initial_step = 0.25;
  int max_evaluations = 20000;
  // Converged once the best value improves by less than `tolerance` over
  // `stall_iterations` consecutive iterations.
  double tolerance = 1e-10;
  int stall_iterations = 50;
  // Rebuild the simplex around the incumbent this many times after the first
  // convergence; cheap insurance against collapse on nonsmooth objectives.
  int restarts = 2;
};

struct NelderMeadResult {
  RVec x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
  // Improvement of the best value over the final stall window.
  double last_improvement = 0.0;
};

/// Minimizes `f` from `x0` with the adaptive-parameter simplex method.
NelderMeadResult nelder_mead(const std::function<double(const RVec&)>& f, const RVec& x0,
                             const NelderMeadOptions& options = {});

}  // namespace qmetro
