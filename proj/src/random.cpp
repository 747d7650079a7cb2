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

#include "qmetro/random.hpp"

#include <algorithm>
#include <cmath>

#include "qmetro/error.hpp"

namespace qmetro {

namespace {

Rng seeded(std::initializer_list<std::uint64_t> words) {
  std::vector<std::uint32_t> parts;
  for (std::uint64_t w : words) {
    parts.push_back(static_cast<std::uint32_t>(w));
    parts.push_back(static_cast<std::uint32_t>(w >> 32));
  }
  std::seed_seq seq(parts.begin(), parts.end());
  return Rng(seq);
}

}  // namespace

Rng substream(std::uint64_t seed, std::uint64_t index) { return seeded({seed, index}); }

Rng substream(std::uint64_t seed, std::uint64_t index, std::uint64_t sub) {
  return seeded({seed, index, sub});
}

std::vector<std::uint64_t> sample_multinomial(Rng& rng, std::span<const double> probs,
                                              std::uint64_t trials) {
  require(!probs.empty(), ErrorCode::InvalidArgument, "multinomial: no outcomes");
  std::vector<double> p(probs.begin(), probs.end());
  double total = 0.0;
  for (double& x : p) {
    require(std::isfinite(x) && x > -1e-9, ErrorCode::InvalidArgument,
            "multinomial: negative probability");
    x = std::max(x, 0.0);
    total += x;
  }
  require(total > 0.0, ErrorCode::ZeroProbability, "multinomial: all probabilities zero");

  std::size_t last = p.size() - 1;
  while (p[last] == 0.0) --last;

  std::vector<std::uint64_t> counts(p.size(), 0);
  std::uint64_t left = trials;
  double mass = 1.0;
  for (std::size_t k = 0; k < last && left > 0; ++k) {
    const double q = p[k] / total;
    const double cond = mass > 0.0 ? std::clamp(q / mass, 0.0, 1.0) : 0.0;
    std::uint64_t n = 0;
    if (cond >= 1.0) {
      n = left;
    } else if (cond > 0.0) {
      n = std::binomial_distribution<std::uint64_t>(left, cond)(rng);
    }
    counts[k] = n;
    left -= n;
    mass -= q;
  }
  counts[last] += left;
  return counts;
}

std::uint64_t sample_poisson(Rng& rng, double mean) {
  require(std::isfinite(mean) && mean >= 0.0, ErrorCode::InvalidArgument,
          "poisson: mean must be nonnegative");
  if (mean == 0.0) return 0;
  return std::poisson_distribution<std::uint64_t>(mean)(rng);
}

}  // namespace qmetro
