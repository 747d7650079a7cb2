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

#include <random>
#include <vector>

#include "qmetro/error.hpp"
#include "qmetro/linalg.hpp"
#include "support/oracles.hpp"

using namespace qmetro;

TEST_CASE("tensor matches an explicit Kronecker product") {
  std::mt19937_64 rng(1);
  const CMat a = oracle::random_state(rng, 2);
  const CMat b = oracle::random_state(rng, 3);
  CHECK(max_abs_diff(tensor(a, b), oracle::kron(a, b)) < 1e-15);
  const std::vector<CMat> f{a, b, a};
  CHECK(max_abs_diff(tensor_all(f), oracle::kron(oracle::kron(a, b), a)) < 1e-15);
}

TEST_CASE("partial trace of a product state returns each factor") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat a = oracle::random_state(rng, 2);
    const CMat b = oracle::random_state(rng, 3);
    const CMat c = oracle::random_state(rng, 2);
    const CMat abc = oracle::kron(oracle::kron(a, b), c);
    const std::size_t dims[] = {2, 3, 2};
    const std::size_t keep_b[] = {1};
    const std::size_t keep_ac[] = {0, 2};
    CHECK(max_abs_diff(partial_trace(abc, dims, keep_b), b) < 1e-14);
    CHECK(max_abs_diff(partial_trace(abc, dims, keep_ac), oracle::kron(a, c)) < 1e-14);
  }
}

TEST_CASE("partial trace preserves the trace of entangled states") {
  std::mt19937_64 rng(3);
  const CMat r = oracle::random_state(rng, 6);
  const std::size_t dims[] = {2, 3};
  const std::size_t keep[] = {0};
  const CMat reduced = partial_trace(r, dims, keep);
  CHECK(reduced.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hermiticity_residual(reduced) < 1e-15);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(4);
  for (Eigen::Index d : {2, 4, 16}) {
    const CMat u = oracle::random_unitary(rng, d);
    RVec lam(d);
    for (Eigen::Index i = 0; i < d; ++i) lam(i) = static_cast<double>(i) - 0.5 * static_cast<double>(d);
    const CMat m = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
    const EigenSystem es = eigh(m);
    for (Eigen::Index i = 0; i < d; ++i) CHECK(es.values(i) == doctest::Approx(lam(i)).epsilon(1e-12));
    const CMat back = es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    CHECK(max_abs_diff(back, m) < 1e-12);
    CHECK(max_abs_diff(es.vectors.adjoint() * es.vectors, CMat::Identity(d, d)) < 1e-12);
    CHECK(spectral_max(m) == doctest::Approx(lam(d - 1)).epsilon(1e-12));
  }
}

TEST_CASE("eigh rejects non-Hermitian input") {
  CMat m = CMat::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(eigh(m), Error);
}

TEST_CASE("Pauli matrices satisfy the algebra") {
  const CMat x = pauli::x(), y = pauli::y(), z = pauli::z(), id = pauli::identity();
  CHECK(max_abs_diff(x * y, kI * z) < 1e-15);
  CHECK(max_abs_diff(y * z, kI * x) < 1e-15);
  CHECK(max_abs_diff(z * x, kI * y) < 1e-15);
  for (const CMat& p : pauli::basis()) CHECK(max_abs_diff(p * p, id) < 1e-15);
}

TEST_CASE("DensityMatrix validates its input") {
  CMat bad = CMat::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{bad}, Error);
  CMat neg = CMat::Zero(2, 2);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix{neg}, Error);
  CHECK(DensityMatrix::maximally_mixed(4).mat().trace().real() == doctest::Approx(1.0));
  const DensityMatrix p = DensityMatrix::pure(basis_ket(3, 1));
  CHECK(p(1, 1).real() == doctest::Approx(1.0));
}
