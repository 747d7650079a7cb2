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

// Reference computations for the tests. They use Eigen's own solvers and
// textbook formulas so they do not share code paths with the library.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <algorithm>
#include <array>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// QFI via the SLD equation d rho = (L rho + rho L)/2, solved as a linear
/// system on vec(L) (minimum-norm least squares), with d rho from central
/// differences; J = Tr(rho L^2).
template <class StateFn>
double lyapunov_qfi(StateFn state, double phi, double h = 1e-5) {
  const Mat rho = state(phi);
  const Mat drho = (state(phi + h) - state(phi - h)) / (2.0 * h);
  const Eigen::Index d = rho.rows();
  const Mat id = Mat::Identity(d, d);
  // Column-major vec: vec(A X B) = (B^T (x) A) vec(X).
  Mat a = Mat::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      a.block(i * d, j * d, d, d) += 0.5 * rho.transpose()(i, j) * id;
      a.block(i * d, j * d, d, d) += 0.5 * id(i, j) * rho;
    }
  const Vec b = Eigen::Map<const Vec>(drho.data(), d * d);
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(a);
  cod.setThreshold(1e-10);
  const Vec x = cod.solve(b);
  const Mat l = Eigen::Map<const Mat>(x.data(), d, d);
  return (rho * l * l).trace().real();
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vec random_ket(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> n;
  Vec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = {n(rng), n(rng)};
  return v / v.norm();
}

/// Random full-rank state from a Ginibre matrix.
inline Mat random_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> n;
  Mat g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = {n(rng), n(rng)};
  Mat r = g * g.adjoint();
  return r / r.trace();
}

inline Mat random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> n;
  Mat g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = {n(rng), n(rng)};
  Eigen::HouseholderQR<Mat> qr(g);
  return qr.householderQ();
}

/// Random probability vector of length 4 (uniform on the simplex).
inline std::array<double, 4> random_simplex(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 4> p{};
  double s = 0.0;
  for (double& x : p) s += (x = e(rng));
  for (double& x : p) x /= s;
  return p;
}

inline double max_abs(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace oracle
