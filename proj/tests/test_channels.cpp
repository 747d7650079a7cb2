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
#include "qmetro/error.hpp"
#include "support/oracles.hpp"

using namespace qmetro;

namespace {

// Amplitude damping written out by hand.
CMat ad_oracle(const CMat& r, double eta) {
  CMat out(2, 2);
  out(0, 0) = r(0, 0) + eta * r(1, 1);
  out(1, 1) = (1.0 - eta) * r(1, 1);
  out(0, 1) = std::sqrt(1.0 - eta) * r(0, 1);
  out(1, 0) = std::conj(out(0, 1));
  return out;
}

}  // namespace

TEST_CASE("amplitude damping matches its matrix-element action") {
  std::mt19937_64 rng(10);
  for (double eta : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    const KrausChannel ch = amplitude_damping(eta);
    CHECK(ch.completeness_residual() < 1e-14);
    for (int i = 0; i < 10; ++i) {
      const CMat r = oracle::random_state(rng, 2);
      CHECK(max_abs_diff(apply_map(ch, r), ad_oracle(r, eta)) < 1e-14);
    }
  }
}

TEST_CASE("depolarizing contracts the Bloch vector by 1 - p") {
  std::mt19937_64 rng(11);
  for (double p : {0.0, 0.3, 0.4, 1.0}) {
    const KrausChannel ch = depolarizing(p);
    CHECK(ch.size() == 4);
    for (int i = 0; i < 10; ++i) {
      const CMat r = oracle::random_state(rng, 2);
      const CMat expected = (1.0 - p) * r + p * CMat::Identity(2, 2) / 2.0;
      CHECK(max_abs_diff(apply_map(ch, r), expected) < 1e-14);
    }
  }
}

TEST_CASE("general Pauli channels are trace preserving for random weights") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const KrausChannel ch = general_pauli(oracle::random_simplex(rng));
    CHECK(ch.completeness_residual() < 1e-13);
    CHECK(ch.size() == 4);
    const CMat r = oracle::random_state(rng, 2);
    CHECK(apply_map(ch, r).trace().real() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("invalid channels are rejected") {
  CHECK_THROWS_AS(amplitude_damping(-0.1), Error);
  CHECK_THROWS_AS(depolarizing(1.5), Error);
  CHECK_THROWS_AS(general_pauli({0.5, 0.5, 0.5, 0.0}), Error);
  CHECK_THROWS_AS(KrausChannel({2.0 * CMat::Identity(2, 2)}, "bad"), Error);
}

TEST_CASE("ancilla extension acts as the channel tensor identity") {
  std::mt19937_64 rng(13);
  const KrausChannel ch = amplitude_damping(0.3);
  const KrausChannel ext = extend_with_ancilla(ch);
  CHECK(ext.dim() == 4);
  const CMat a = oracle::random_state(rng, 2);
  const CMat b = oracle::random_state(rng, 2);
  CHECK(max_abs_diff(apply_map(ext, oracle::kron(a, b)), oracle::kron(ad_oracle(a, 0.3), b)) <
        1e-14);
}

TEST_CASE("collective channels factorize on product inputs") {
  std::mt19937_64 rng(14);
  const KrausChannel ch = amplitude_damping(0.2);
  const KrausChannel two = collective(ch, 2);
  CHECK(two.size() == 4);
  const CMat a = oracle::random_state(rng, 2);
  const CMat b = oracle::random_state(rng, 2);
  CHECK(max_abs_diff(apply_map(two, oracle::kron(a, b)),
                     oracle::kron(ad_oracle(a, 0.2), ad_oracle(b, 0.2))) < 1e-14);
}

TEST_CASE("phase family derivatives agree with finite differences") {
  const PhaseChannelFamily fam = PhaseChannelFamily::single(amplitude_damping(0.4));
  CHECK(max_abs_diff(fam.unitary(0.7), phase_unitary(0.7)) < 1e-15);
  const double h = 1e-6;
  const auto kp = fam.kraus_at(0.3 + h);
  const auto km = fam.kraus_at(0.3 - h);
  const auto dk = fam.dkraus_at(0.3);
  for (std::size_t i = 0; i < dk.size(); ++i)
    CHECK(max_abs_diff((kp[i] - km[i]) / (2 * h), dk[i]) < 1e-8);

  const PhaseChannelFamily ext = fam.extended();
  CHECK(ext.dim() == 4);
  const PhaseChannelFamily col = fam.collective(2);
  CHECK(col.dim() == 4);
  // G (x) 1 + 1 (x) G has eigenvalues 0, 1, 1, 2.
  CHECK(col.generator()(3) == doctest::Approx(2.0));
}

TEST_CASE("GeneratorH parameters round-trip") {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> n;
  RVec params(9);
  for (Eigen::Index i = 0; i < 9; ++i) params(i) = n(rng);
  const GeneratorH h = GeneratorH::from_params(3, params);
  CHECK(hermiticity_residual(h.mat()) < 1e-15);
  CHECK((h.params() - params).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rotating Kraus derivatives leaves the channel derivative unchanged") {
  // Sum K'rho K^H + K rho K'^H is invariant under K' -> K' - i h K.
  std::mt19937_64 rng(16);
  const PhaseChannelFamily fam = PhaseChannelFamily::single(depolarizing(0.3));
  std::normal_distribution<double> n;
  RVec params(16);
  for (Eigen::Index i = 0; i < 16; ++i) params(i) = n(rng);
  const GeneratorH h = GeneratorH::from_params(4, params);
  const auto k = fam.kraus_at(0.2);
  const auto dk = fam.dkraus_at(0.2);
  const auto rk = rotate_kraus(fam, h, 0.2);
  const CMat r = oracle::random_state(rng, 2);
  CMat a = CMat::Zero(2, 2), b = CMat::Zero(2, 2);
  for (std::size_t i = 0; i < k.size(); ++i) {
    a += dk[i] * r * k[i].adjoint() + k[i] * r * dk[i].adjoint();
    b += rk[i] * r * k[i].adjoint() + k[i] * r * rk[i].adjoint();
  }
  CHECK(max_abs_diff(a, b) < 1e-13);
  CHECK(hermiticity_residual(alpha_operator(rk)) < 1e-13);
}
