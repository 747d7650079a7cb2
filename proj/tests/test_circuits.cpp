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

#include <doctest.h>

#include <cmath>
#include <random>

#include "qmetro/channels.hpp"
#include "qmetro/circuits.hpp"
#include "qmetro/error.hpp"
#include "support/oracles.hpp"

using namespace qmetro;

TEST_CASE("CNOT is a self-inverse permutation") {
  const CMat c = cnot();
  CHECK(max_abs_diff(c * c, CMat::Identity(4, 4)) < 1e-15);
  CHECK(std::abs(c(3, 2) - 1.0) < 1e-15);
}

TEST_CASE("F equals depolarizing noise conjugated by CNOT on random inputs") {
  std::mt19937_64 rng(50);
  for (double p : {0.0, 0.3, 0.5, 1.0}) {
    CHECK(conjugation_residual(p) <= 1e-12);
    const KrausChannel f = build_F(p);
    CHECK(f.completeness_residual() < 1e-14);
    const CMat c = cnot();
    for (int i = 0; i < 5; ++i) {
      const CMat r = oracle::random_state(rng, 4);
      // Oracle: CNOT, then (1-p) rho + p/2 1 (x) Tr_1 rho on the probe, then CNOT.
      const CMat s = c * r * c;
      CMat red = CMat::Zero(2, 2);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) red(a, b) = s(a, b) + s(a + 2, b + 2);
      const CMat dep = (1 - p) * s + p * oracle::kron(CMat::Identity(2, 2) / 2.0, red);
      CHECK(max_abs_diff(apply_map(f, r), c * dep * c) < 1e-14);
    }
  }
}

TEST_CASE("the flag splits the output into the quoted blocks") {
  for (double p : {0.0, 0.2, 0.5, 0.9})
    for (double phi : {0.0, 0.8}) {
      const FlaggedOutputReport r = verify_flagged_output(p, phi);
      CHECK(r.weight0 == doctest::Approx(1 - p / 2).epsilon(1e-14));
      CHECK(r.weight1 == doctest::Approx(p / 2).epsilon(1e-14));
      CHECK(r.block0_residual < 1e-14);
      CHECK(r.block1_residual < 1e-14);
      CHECK(r.conditional_residual < 1e-14);
      CHECK(r.cross_norm < 1e-14);
      CHECK(r.q == doctest::Approx(p / (2 - p)));
    }
}

TEST_CASE("flagged variances") {
  const VariancePair v = flagged_variance(0.5);
  CHECK(v.assisted == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(v.bare == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(flagged_variance(1.0), Error);
  for (double p = 0.0; p < 0.99; p += 0.05) {
    const ConsistencyReport c = variance_consistency_check(p);
    CHECK(c.residual <= 1e-12);
    CHECK(c.closed_form == doctest::Approx(2 * (1 - p) * (1 - p) / (2 - p)));
    CHECK(flagged_variance(p).assisted <= flagged_variance(p).bare);
  }
}
