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

/**
 * @file
 * Dense complex linear algebra for the small (at most 16x16) operators used
 * throughout the library: Kronecker products, partial traces, Hermitian
 * eigendecomposition, and the density-matrix value type.
 */

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qmetro {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Kronecker product; dimensions multiply.
CMat tensor(const CMat& a, const CMat& b);

/// Left-to-right Kronecker product of a list of factors.
CMat tensor_all(std::span<const CMat> factors);

/**
 * Partial trace of `m` over the subsystems not listed in `keep`.
 *
 * `dims` gives the subsystem dimensions in tensor order (first factor is the
 * most significant index). The kept subsystems stay in their original order.
 */
CMat partial_trace(const CMat& m, std::span<const std::size_t> dims,
                   std::span<const std::size_t> keep);

struct EigenSystem {
  RVec values;   // ascending
  CMat vectors;  // orthonormal columns
};

/// Hermitian eigendecomposition. Throws NotHermitian when max|M - M^H| > 1e-10.
EigenSystem eigh(const CMat& m);

CMat dagger(const CMat& m);
CMat matmul(const CMat& a, const CMat& b);
double frob_norm(const CMat& m);

/// Largest eigenvalue of a Hermitian matrix.
double spectral_max(const CMat& m);

/// max |M - M^H| entrywise.
double hermiticity_residual(const CMat& m);

/// max |A - B| entrywise; dimensions must agree.
double max_abs_diff(const CMat& a, const CMat& b);

CMat hermitian_part(const CMat& m);
CMat projector(const CVec& psi);
CVec basis_ket(std::size_t dim, std::size_t index);

namespace pauli {
CMat identity();
CMat x();
CMat y();
CMat z();
/// (1, X, Y, Z) in that order.
const std::array<CMat, 4>& basis();
}  // namespace pauli

/// Positive, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  /// Validates: Hermitian to 1e-12, trace 1 to 1e-12, smallest eigenvalue
  /// at least -1e-10.
  explicit DensityMatrix(CMat m);

  static DensityMatrix pure(const CVec& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  /// Skips validation but symmetrizes; for results of trace-preserving maps.
  static DensityMatrix trusted(const CMat& m);

  const CMat& mat() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(mat_.rows()); }
  Complex operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

 private:
  struct Unchecked {};
  DensityMatrix(CMat m, Unchecked) : mat_(std::move(m)) {}
  CMat mat_;
};

}  // namespace qmetro
