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

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qmetro {

using Rng = std::mt19937_64;

/// Independent deterministic stream for work unit `index` of a run seeded
/// with `seed`; results never depend on the order units are evaluated in.
Rng substream(std::uint64_t seed, std::uint64_t index);

/// Two-level variant for nested work units.
Rng substream(std::uint64_t seed, std::uint64_t index, std::uint64_t sub);

/// Multinomial draw of `trials` events over `probs` (renormalized; tiny
/// negative rounding clipped to zero) by sequential conditional binomials.
std::vector<std::uint64_t> sample_multinomial(Rng& rng, std::span<const double> probs,
                                              std::uint64_t trials);

std::uint64_t sample_poisson(Rng& rng, double mean);

}  // namespace qmetro
