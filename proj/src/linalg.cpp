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

#include "qmetro/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qmetro/error.hpp"

namespace qmetro {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::NotHermitian: return "not Hermitian";
    case ErrorCode::OptimizerFailure: return "optimizer failure";
    case ErrorCode::SingularDesign: return "singular design";
    case ErrorCode::ZeroProbability: return "zero probability";
    case ErrorCode::EstimationUndefined: return "estimation undefined";
    case ErrorCode::VerificationFailed: return "verification failed";
    case ErrorCode::Parse: return "parse error";
  }
  return "unknown";
}

CMat tensor(const CMat& a, const CMat& b) {
  require(a.size() > 0 && b.size() > 0, ErrorCode::InvalidArgument,
          "tensor: empty factor");
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMat tensor_all(std::span<const CMat> factors) {
  require(!factors.empty(), ErrorCode::InvalidArgument, "tensor_all: no factors");
  CMat out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

CMat partial_trace(const CMat& m, std::span<const std::size_t> dims,
                   std::span<const std::size_t> keep) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  require(m.rows() == m.cols() && static_cast<std::size_t>(m.rows()) == total,
          ErrorCode::DimensionMismatch,
          "partial_trace: subsystem dimensions do not match the matrix");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    require(k < dims.size(), ErrorCode::DimensionMismatch,
            "partial_trace: keep index out of range");
    kept[k] = true;
  }

  std::size_t out_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s)
    if (kept[s]) out_dim *= dims[s];

  // Row-major mixed-radix digits of a flat index.
  auto digits = [&](std::size_t index) {
    std::vector<std::size_t> d(dims.size());
    for (std::size_t s = dims.size(); s-- > 0;) {
      d[s] = index % dims[s];
      index /= dims[s];
    }
    return d;
  };
  auto kept_index = [&](const std::vector<std::size_t>& d) {
    std::size_t idx = 0;
    for (std::size_t s = 0; s < dims.size(); ++s)
      if (kept[s]) idx = idx * dims[s] + d[s];
    return idx;
  };

  CMat out = CMat::Zero(static_cast<Eigen::Index>(out_dim),
                        static_cast<Eigen::Index>(out_dim));
  for (std::size_t r = 0; r < total; ++r) {
    const auto dr = digits(r);
    for (std::size_t c = 0; c < total; ++c) {
      const auto dc = digits(c);
      bool traced_equal = true;
      for (std::size_t s = 0; s < dims.size() && traced_equal; ++s)
        if (!kept[s] && dr[s] != dc[s]) traced_equal = false;
      if (!traced_equal) continue;
      out(static_cast<Eigen::Index>(kept_index(dr)),
          static_cast<Eigen::Index>(kept_index(dc))) +=
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

double hermiticity_residual(const CMat& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs_diff(const CMat& a, const CMat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::DimensionMismatch,
          "max_abs_diff: shapes differ");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

CMat hermitian_part(const CMat& m) { return 0.5 * (m + m.adjoint()); }

EigenSystem eigh(const CMat& m) {
  require(m.rows() == m.cols() && m.rows() > 0, ErrorCode::DimensionMismatch,
          "eigh: matrix must be square and non-empty");
  require(hermiticity_residual(m) <= 1e-10, ErrorCode::NotHermitian,
          "eigh: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> solver(hermitian_part(m));
  require(solver.info() == Eigen::Success, ErrorCode::NotHermitian,
          "eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMat dagger(const CMat& m) { return m.adjoint(); }

CMat matmul(const CMat& a, const CMat& b) {
  require(a.cols() == b.rows(), ErrorCode::DimensionMismatch,
          "matmul: inner dimensions differ");
  return a * b;
}

double frob_norm(const CMat& m) { return m.norm(); }

double spectral_max(const CMat& m) { return eigh(m).values.maxCoeff(); }

CMat projector(const CVec& psi) { return psi * psi.adjoint(); }

CVec basis_ket(std::size_t dim, std::size_t index) {
  require(index < dim, ErrorCode::InvalidArgument, "basis_ket: index out of range");
  CVec v = CVec::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

namespace pauli {

CMat identity() { return CMat::Identity(2, 2); }

CMat x() {
  CMat m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

CMat y() {
  CMat m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

CMat z() {
  CMat m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

const std::array<CMat, 4>& basis() {
  static const std::array<CMat, 4> b{identity(), x(), y(), z()};
  return b;
}

}  // namespace pauli

DensityMatrix::DensityMatrix(CMat m) : mat_(std::move(m)) {
  require(mat_.rows() == mat_.cols() && mat_.rows() > 0, ErrorCode::DimensionMismatch,
          "DensityMatrix: matrix must be square and non-empty");
  require(hermiticity_residual(mat_) <= 1e-12, ErrorCode::NotHermitian,
          "DensityMatrix: matrix is not Hermitian");
  const Complex tr = mat_.trace();
  require(std::abs(tr - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
          "DensityMatrix: trace differs from 1 (" + std::to_string(tr.real()) + ")");
  require(eigh(mat_).values.minCoeff() >= -1e-10, ErrorCode::InvalidArgument,
          "DensityMatrix: matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const CVec& psi) {
  require(psi.size() > 0, ErrorCode::InvalidArgument, "pure: empty state vector");
  const double n = psi.norm();
  require(std::abs(n - 1.0) <= 1e-10, ErrorCode::InvalidArgument,
          "pure: state vector is not normalized");
  return DensityMatrix(hermitian_part(projector(psi / n)), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  require(dim > 0, ErrorCode::InvalidArgument, "maximally_mixed: zero dimension");
  const auto d = static_cast<Eigen::Index>(dim);
  return DensityMatrix(CMat::Identity(d, d) / static_cast<double>(dim), Unchecked{});
}

DensityMatrix DensityMatrix::trusted(const CMat& m) {
  require(m.rows() == m.cols() && m.rows() > 0, ErrorCode::DimensionMismatch,
          "DensityMatrix: matrix must be square and non-empty");
  return DensityMatrix(hermitian_part(m), Unchecked{});
}

}  // namespace qmetro
