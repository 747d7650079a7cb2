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

#include <numeric>
#include <random>

#include "qmetro/channels.hpp"
#include "qmetro/tomography.hpp"
#include "support/oracles.hpp"

using namespace qmetro;

namespace {

// Born probabilities of the design computed from the raw Kraus action.
std::vector<double> oracle_frequencies(const KrausChannel& ch, std::size_t qubits) {
  std::vector<double> f;
  const auto inputs = qpt_inputs(qubits);
  const std::size_t settings = inputs.size();
  const std::size_t outcomes = std::size_t{1} << qubits;
  for (std::size_t i = 0; i < settings; ++i) {
    CMat out = CMat::Zero(inputs[i].mat().rows(), inputs[i].mat().cols());
    for (const CMat& k : ch.kraus()) out += k * inputs[i].mat() * k.adjoint();
    for (std::size_t b = 0; b < settings; ++b)
      for (std::size_t o = 0; o < outcomes; ++o)
        f.push_back((qpt_effect(qubits, b, o) * out).trace().real());
  }
  return f;
}

}  // namespace

TEST_CASE("Pauli channels have a diagonal process matrix") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = oracle::random_simplex(rng);
    const ChiMatrix chi = chi_theory(general_pauli(p));
    CHECK(chi.dim_basis == 4);
    CMat expected = CMat::Zero(4, 4);
    for (int a = 0; a < 4; ++a) expected(a, a) = p[static_cast<std::size_t>(a)];
    CHECK(max_abs_diff(chi.mat, expected) < 1e-14);
  }
  const ChiMatrix id = chi_theory(extend_with_ancilla(identity_channel(2)));
  CHECK(id.dim_basis == 16);
  CHECK(std::abs(id.mat(0, 0) - 1.0) < 1e-14);
  CHECK(id.mat.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("the process matrix reproduces the channel action") {
  std::mt19937_64 rng(31);
  const KrausChannel ch = extend_with_ancilla(amplitude_damping(0.37));
  const ChiMatrix chi = chi_theory(ch);
  CHECK(chi.mat.trace().real() == doctest::Approx(1.0));
  for (int i = 0; i < 5; ++i) {
    const CMat r = oracle::random_state(rng, 4);
    CHECK(max_abs_diff(apply_chi(chi, r), apply_map(ch, r)) < 1e-13);
  }
}

TEST_CASE("the operator basis is orthogonal") {
  for (std::size_t q : {1u, 2u}) {
    const auto& basis = operator_basis(q);
    const double d = static_cast<double>(std::size_t{1} << q);
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = 0; b < basis.size(); ++b)
        CHECK(std::abs((basis[a].adjoint() * basis[b]).trace() - (a == b ? d : 0.0)) < 1e-14);
  }
}

TEST_CASE("effects form a POVM per basis") {
  for (std::size_t q : {1u, 2u}) {
    const std::size_t dim = std::size_t{1} << q;
    const auto n = static_cast<Eigen::Index>(dim);
    for (std::size_t b = 0; b < (std::size_t{1} << (2 * q)); ++b) {
      CMat sum = CMat::Zero(n, n);
      for (std::size_t o = 0; o < dim; ++o) sum += qpt_effect(q, b, o);
      CHECK(max_abs_diff(sum, CMat::Identity(n, n)) < 1e-14);
    }
  }
}

TEST_CASE("linear inversion of exact frequencies recovers the process matrix") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const KrausChannel ch = extend_with_ancilla(general_pauli(oracle::random_simplex(rng)));
    const ChiMatrix rec = reconstruct_chi_from_frequencies(2, oracle_frequencies(ch, 2));
    CHECK(max_abs_diff(rec.mat, chi_theory(ch).mat) < 1e-10);
  }
  const KrausChannel ad = amplitude_damping(0.8);
  const ChiMatrix rec1 = reconstruct_chi_from_frequencies(1, oracle_frequencies(ad, 1));
  CHECK(max_abs_diff(rec1.mat, chi_theory(ad).mat) < 1e-10);
}

TEST_CASE("exact-probability datasets reach unit fidelity") {
  for (double x : {0.0, 0.4, 0.5, 1.0}) {
    const KrausChannel ad = amplitude_damping(x);
    const FidelityReport f =
        process_fidelity(reconstruct_chi(exact_qpt(ad, true)), chi_theory(extend_with_ancilla(ad)));
    CHECK(f.value >= 1.0 - 1e-10);
    CHECK(f.imaginary_residual < 1e-10);
  }
}

TEST_CASE("reconstructed process matrices are physical") {
  const QptDataset data = simulate_qpt(depolarizing(0.4), true, 500, 7);
  const ChiMatrix chi = reconstruct_chi(data);
  CHECK(chi.mat.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hermiticity_residual(chi.mat) < 1e-14);
  Eigen::SelfAdjointEigenSolver<CMat> es(chi.mat);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("simulated datasets are deterministic and complete") {
  const KrausChannel ch = amplitude_damping(0.5);
  const QptDataset a = simulate_qpt(ch, true, 1000, 42);
  const QptDataset b = simulate_qpt(ch, true, 1000, 42);
  const QptDataset c = simulate_qpt(ch, true, 1000, 43);
  CHECK(a.counts == b.counts);
  CHECK(a.counts != c.counts);
  CHECK(a.counts.size() == 16 * 16 * 4);
  for (std::size_t i = 0; i < a.input_count; ++i)
    for (std::size_t s = 0; s < a.basis_count; ++s) {
      std::uint64_t total = 0;
      for (std::size_t o = 0; o < a.outcome_count; ++o) total += a.counts[a.index(i, s, o)];
      CHECK(total == 1000);
    }
}

TEST_CASE("fidelity is symmetric and bounded") {
  std::mt19937_64 rng(33);
  const ChiMatrix a = chi_theory(general_pauli(oracle::random_simplex(rng)));
  const ChiMatrix b = chi_theory(amplitude_damping(0.3));
  const double ab = process_fidelity(a, b).value;
  CHECK(ab == doctest::Approx(process_fidelity(b, a).value).epsilon(1e-14));
  CHECK(ab >= 0.0);
  CHECK(ab <= 1.0 + 1e-14);
  CHECK(process_fidelity(a, a).value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sampled reconstruction at 20000 shots") {
  const KrausChannel ad = amplitude_damping(0.5);
  const ChiMatrix th = chi_theory(extend_with_ancilla(ad));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const QptDataset data = simulate_qpt(ad, true, 20000, seed);
    CHECK(process_fidelity(reconstruct_chi(data), th).value >= 0.99);
  }
}

TEST_CASE("Poisson spread shrinks as shots grow") {
  const KrausChannel ch = depolarizing(0.4);
  const ChiMatrix th = chi_theory(extend_with_ancilla(ch));
  const double lo = poisson_uncertainty(simulate_qpt(ch, true, 2000, 5), th, 40, 9);
  const double hi = poisson_uncertainty(simulate_qpt(ch, true, 200000, 5), th, 40, 9);
  CHECK(lo > 0.0);
  CHECK(hi < lo);
}
