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
#include <numbers>
#include <random>

#include "qmetro/channels.hpp"
#include "qmetro/error.hpp"
#include "qmetro/optics.hpp"
#include "qmetro/tomography.hpp"
#include "support/oracles.hpp"

using namespace qmetro;

namespace {

constexpr double kPi = std::numbers::pi;

bool is_unitary(const CMat& u) {
  return max_abs_diff(u.adjoint() * u, CMat::Identity(u.rows(), u.cols())) < 1e-13;
}

double channel_fidelity(const KrausChannel& a, const KrausChannel& b) {
  return process_fidelity(chi_theory(a), chi_theory(b)).value;
}

}  // namespace

TEST_CASE("wave plates") {
  for (double t : {0.0, 0.1, kPi / 8, kPi / 4, 1.3}) {
    const CMat h = jones_hwp(t);
    const CMat q = jones_qwp(t);
    CHECK(is_unitary(h));
    CHECK(is_unitary(q));
    CHECK(max_abs_diff(h * h, CMat::Identity(2, 2)) < 1e-15);
    // Two quarter-wave plates at the same angle make a half-wave plate.
    CHECK(max_abs_diff(q * q, h) < 1e-15);
  }
  CMat diag = CMat::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = kI;
  CHECK(max_abs_diff(jones_qwp(0.0), diag) < 1e-15);
  // HWP at 22.5 degrees takes H to diagonal polarization.
  const CMat d = jones_hwp(kPi / 8).col(0);
  CHECK(std::abs(d(0) - d(1)) < 1e-15);
  CHECK(std::abs(d(0) - 1.0 / std::numbers::sqrt2) < 1e-15);
}

TEST_CASE("unitary elements and networks are unitary") {
  const ModeSpace space{4, 1};
  for (const OpticalElement& e :
       {OpticalElement::hwp(0.3, {0, 2}), OpticalElement::qwp(0.7, {1}),
        OpticalElement::bd(0, 2), OpticalElement::bd(1, 1), OpticalElement::nbs(1, 3),
        OpticalElement::phase(0.4, {2})})
    CHECK(is_unitary(element_unitary(space, e)));
  OpticalNetwork net{space, {OpticalElement::bd(0, 1), OpticalElement::hwp(0.2, {1}),
                             OpticalElement::nbs(0, 1)}};
  CHECK(is_unitary(network_unitary(net)));
  net.elements.push_back(OpticalElement::dephase({{0}, {1}}));
  CHECK_THROWS_AS(network_unitary(net), Error);
}

TEST_CASE("a beam displacer shifts only its polarization") {
  const ModeSpace space{2, 1};
  const CMat bd = element_unitary(space, OpticalElement::bd(0, 1));
  const auto h0 = static_cast<Eigen::Index>(space.index(0, 0, 0));
  const auto h1 = static_cast<Eigen::Index>(space.index(0, 1, 0));
  const auto v0 = static_cast<Eigen::Index>(space.index(1, 0, 0));
  CHECK(std::abs(bd(h1, h0) - 1.0) < 1e-15);
  CHECK(std::abs(bd(v0, v0) - 1.0) < 1e-15);
}

TEST_CASE("dephasing removes coherence between blocks") {
  const ModeSpace space{2, 1};
  // Split diagonal light by polarization and recombine it, with or without
  // dephasing the two paths in between.
  CMat h = CMat::Zero(2, 2);
  h(0, 0) = 1.0;
  const auto run = [&](bool dephase) {
    OpticalNetwork net{space, {OpticalElement::hwp(kPi / 8, {0}), OpticalElement::bd(0, 1)}};
    if (dephase) net.elements.push_back(OpticalElement::dephase({{0}, {1}}));
    net.elements.push_back(OpticalElement::bd(0, 1));
    return propagate(net, h);
  };
  const CMat coherent = run(false);
  const CMat mixed = run(true);
  CHECK(std::abs(coherent(0, 1)) == doctest::Approx(0.5));
  CHECK(std::abs(mixed(0, 1)) < 1e-15);
  CHECK(mixed.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("postselecting an empty port has zero probability") {
  const OpticalNetwork net{ModeSpace{2, 1}, {OpticalElement::postselect({1})}};
  CHECK_THROWS_AS(apply_network(net, DensityMatrix::maximally_mixed(2)), Error);
}

TEST_CASE("plate angle relations for amplitude damping") {
  for (double eta = 0.0; eta <= 1.0; eta += 0.05) {
    const double t = ad_plate_angle(eta);
    CHECK(std::cos(2 * t) == doctest::Approx(-std::sqrt(1 - eta)).epsilon(1e-12));
    CHECK(std::sin(2 * t) == doctest::Approx(std::sqrt(eta)).epsilon(1e-12));
  }
}

TEST_CASE("the amplitude-damping network realizes the channel") {
  std::mt19937_64 rng(40);
  for (double eta = 0.0; eta <= 1.0 + 1e-12; eta += 0.1) {
    const OpticalNetwork net = build_ad_network(std::min(eta, 1.0));
    const KrausChannel target = amplitude_damping(std::min(eta, 1.0));
    for (int i = 0; i < 5; ++i) {
      const CMat r = oracle::random_state(rng, 2);
      const NetworkOutput out = apply_network(net, DensityMatrix(r));
      CHECK(out.success_probability == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(max_abs_diff(out.state.mat(), apply_map(target, r)) < 1e-12);
    }
    CHECK(channel_fidelity(extract_channel(net), target) >= 1.0 - 1e-12);
  }
}

TEST_CASE("Pauli angles solve their relations") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const auto p = oracle::random_simplex(rng);
    const PauliAngles a = solve_pauli_angles(p);
    CHECK(a.max_residual() <= 1e-10);
    const auto r = pauli_angle_residuals(p, a.theta);
    for (double x : r) CHECK(std::abs(x) <= 1e-10);
  }
  // Vertices of the simplex, where ratios degenerate.
  for (int k = 0; k < 4; ++k) {
    std::array<double, 4> p{};
    p[static_cast<std::size_t>(k)] = 1.0;
    CHECK(solve_pauli_angles(p).max_residual() <= 1e-10);
  }
}

TEST_CASE("the Pauli network realizes random Pauli channels") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 30; ++i) {
    const auto p = oracle::random_simplex(rng);
    const OpticalNetwork net = build_pauli_network(p);
    const KrausChannel target = general_pauli(p);
    CHECK(channel_fidelity(extract_channel(net), target) >= 1.0 - 1e-9);
    const CMat r = oracle::random_state(rng, 2);
    CHECK(max_abs_diff(apply_network(net, DensityMatrix(r)).state.mat(), apply_map(target, r)) <
          1e-10);
  }
  CHECK(channel_fidelity(extract_channel(build_pauli_network({0.5, 0.0, 0.5, 0.0})),
                         general_pauli({0.5, 0.0, 0.5, 0.0})) >= 1.0 - 1e-9);
}

TEST_CASE("extracted channels are trace preserving") {
  const KrausChannel ch = extract_channel(build_pauli_network({0.1, 0.2, 0.3, 0.4}));
  CHECK(ch.completeness_residual() < 1e-10);
  CHECK(ch.dim() == 2);
}
