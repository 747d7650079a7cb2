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

#include "qmetro/channels.hpp"

#include <cmath>
#include <numeric>

#include "qmetro/error.hpp"

namespace qmetro {

namespace {

void check_unit_interval(double x, const char* what) {
  require(std::isfinite(x) && x >= 0.0 && x <= 1.0, ErrorCode::InvalidArgument,
          std::string(what) + " must lie in [0, 1]");
}

}  // namespace

KrausChannel::KrausChannel(std::vector<CMat> kraus, std::string label)
    : kraus_(std::move(kraus)), label_(std::move(label)) {
  require(!kraus_.empty(), ErrorCode::InvalidArgument, "channel has no Kraus operators");
  dim_ = static_cast<std::size_t>(kraus_.front().rows());
  require(dim_ > 0, ErrorCode::InvalidArgument, "empty Kraus operator");
  for (const CMat& k : kraus_) {
    require(static_cast<std::size_t>(k.rows()) == dim_ &&
                static_cast<std::size_t>(k.cols()) == dim_,
            ErrorCode::DimensionMismatch, "Kraus operators must be square and equal-sized");
  }
  require(completeness_residual() <= 1e-10, ErrorCode::InvalidArgument,
          "Kraus operators violate completeness (" + label_ + ")");
}

double KrausChannel::completeness_residual() const {
  const auto d = static_cast<Eigen::Index>(dim_);
  CMat s = CMat::Zero(d, d);
  for (const CMat& k : kraus_) s += k.adjoint() * k;
  return (s - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
}

CMat phase_unitary(double phi) {
  CMat u = CMat::Zero(2, 2);
  u(0, 0) = 1.0;
  u(1, 1) = std::polar(1.0, phi);
  return u;
}

KrausChannel identity_channel(std::size_t dim) {
  require(dim > 0, ErrorCode::InvalidArgument, "identity_channel: zero dimension");
  const auto d = static_cast<Eigen::Index>(dim);
  return KrausChannel({CMat::Identity(d, d)}, "identity");
}

KrausChannel amplitude_damping(double eta) {
  check_unit_interval(eta, "amplitude damping eta");
  CMat a0 = CMat::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - eta);
  CMat a1 = CMat::Zero(2, 2);
  a1(0, 1) = std::sqrt(eta);
  return KrausChannel({a0, a1}, "amplitude_damping");
}

KrausChannel general_pauli(const std::array<double, 4>& p) {
  double total = 0.0;
  for (double x : p) {
    require(std::isfinite(x) && x >= 0.0 && x <= 1.0, ErrorCode::InvalidArgument,
            "Pauli probabilities must lie in [0, 1]");
    total += x;
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
          "Pauli probabilities must sum to 1");
  std::vector<CMat> kraus;
  kraus.reserve(4);
  for (std::size_t i = 0; i < 4; ++i) kraus.push_back(std::sqrt(p[i]) * pauli::basis()[i]);
  return KrausChannel(std::move(kraus), "general_pauli");
}

KrausChannel depolarizing(double p) {
  check_unit_interval(p, "depolarizing p");
  const double q = p / 4.0;
  KrausChannel ch = general_pauli({1.0 - 3.0 * q, q, q, q});
  return KrausChannel(ch.kraus(), "depolarizing");
}

CMat apply_map(const KrausChannel& ch, const CMat& rho) {
  require(static_cast<std::size_t>(rho.rows()) == ch.dim() && rho.rows() == rho.cols(),
          ErrorCode::DimensionMismatch, "apply: state dimension differs from channel");
  CMat out = CMat::Zero(rho.rows(), rho.cols());
  for (const CMat& k : ch.kraus()) out.noalias() += k * rho * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix::trusted(apply_map(ch, rho.mat()));
}

KrausChannel extend_with_ancilla(const KrausChannel& ch) {
  const auto d = static_cast<Eigen::Index>(ch.dim());
  const CMat id = CMat::Identity(d, d);
  std::vector<CMat> kraus;
  kraus.reserve(ch.size());
  for (const CMat& k : ch.kraus()) kraus.push_back(tensor(k, id));
  return KrausChannel(std::move(kraus), ch.label() + "_x_id");
}

KrausChannel collective(const KrausChannel& ch, std::size_t n) {
  require(n >= 1, ErrorCode::InvalidArgument, "collective: n must be at least 1");
  std::vector<CMat> kraus = ch.kraus();
  for (std::size_t s = 1; s < n; ++s) {
    std::vector<CMat> next;
    next.reserve(kraus.size() * ch.size());
    for (const CMat& a : kraus)
      for (const CMat& b : ch.kraus()) next.push_back(tensor(a, b));
    kraus = std::move(next);
  }
  return KrausChannel(std::move(kraus),
                      n == 1 ? ch.label() : ch.label() + "^" + std::to_string(n));
}

GeneratorH::GeneratorH(CMat h) : h_(std::move(h)) {
  require(h_.rows() == h_.cols(), ErrorCode::DimensionMismatch, "GeneratorH must be square");
  require(hermiticity_residual(h_) <= 1e-12, ErrorCode::NotHermitian,
          "GeneratorH must be Hermitian");
}

GeneratorH GeneratorH::zero(std::size_t m) {
  const auto n = static_cast<Eigen::Index>(m);
  return GeneratorH(CMat::Zero(n, n));
}

GeneratorH GeneratorH::from_params(std::size_t m, const RVec& params) {
  require(static_cast<std::size_t>(params.size()) == m * m, ErrorCode::DimensionMismatch,
          "GeneratorH: expected m^2 parameters");
  const auto n = static_cast<Eigen::Index>(m);
  CMat h = CMat::Zero(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = params(k++);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex z(params(k), params(k + 1));
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return GeneratorH(std::move(h));
}

RVec GeneratorH::params() const {
  const Eigen::Index n = h_.rows();
  RVec out(n * n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) out(k++) = h_(i, i).real();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      out(k++) = h_(i, j).real();
      out(k++) = h_(i, j).imag();
    }
  }
  return out;
}

PhaseChannelFamily::PhaseChannelFamily(KrausChannel noise, RVec generator)
    : noise_(std::move(noise)), generator_(std::move(generator)) {
  require(static_cast<std::size_t>(generator_.size()) == noise_.dim(),
          ErrorCode::DimensionMismatch, "phase generator length differs from channel dim");
}

PhaseChannelFamily PhaseChannelFamily::single(KrausChannel noise) {
  require(noise.dim() == 2, ErrorCode::DimensionMismatch,
          "single-probe family needs a qubit channel");
  RVec g(2);
  g << 0.0, 1.0;
  return PhaseChannelFamily(std::move(noise), g);
}

PhaseChannelFamily PhaseChannelFamily::extended() const {
  const Eigen::Index d = generator_.size();
  RVec g(d * d);
  for (Eigen::Index i = 0; i < d; ++i) g.segment(i * d, d).setConstant(generator_(i));
  return PhaseChannelFamily(extend_with_ancilla(noise_), g);
}

PhaseChannelFamily PhaseChannelFamily::collective(std::size_t n) const {
  require(n >= 1, ErrorCode::InvalidArgument, "collective: n must be at least 1");
  RVec g = generator_;
  for (std::size_t s = 1; s < n; ++s) {
    const Eigen::Index a = g.size();
    const Eigen::Index b = generator_.size();
    RVec next(a * b);
    for (Eigen::Index i = 0; i < a; ++i)
      for (Eigen::Index j = 0; j < b; ++j) next(i * b + j) = g(i) + generator_(j);
    g = std::move(next);
  }
  return PhaseChannelFamily(qmetro::collective(noise_, n), g);
}

CMat PhaseChannelFamily::unitary(double phi) const {
  const Eigen::Index d = generator_.size();
  CMat u = CMat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) u(i, i) = std::polar(1.0, phi * generator_(i));
  return u;
}

CMat PhaseChannelFamily::dunitary(double phi) const {
  const Eigen::Index d = generator_.size();
  CMat du = CMat::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    du(i, i) = kI * generator_(i) * std::polar(1.0, phi * generator_(i));
  return du;
}

std::vector<CMat> PhaseChannelFamily::kraus_at(double phi) const {
  const CMat u = unitary(phi);
  std::vector<CMat> out;
  out.reserve(noise_.size());
  for (const CMat& k : noise_.kraus()) out.push_back(k * u);
  return out;
}

std::vector<CMat> PhaseChannelFamily::dkraus_at(double phi) const {
  const CMat du = dunitary(phi);
  std::vector<CMat> out;
  out.reserve(noise_.size());
  for (const CMat& k : noise_.kraus()) out.push_back(k * du);
  return out;
}

KrausChannel PhaseChannelFamily::channel_at(double phi) const {
  return KrausChannel(kraus_at(phi), noise_.label());
}

std::vector<CMat> rotate_kraus(const PhaseChannelFamily& fam, const GeneratorH& h,
                               double phi0) {
  require(h.size() == fam.kraus_count(), ErrorCode::DimensionMismatch,
          "rotate_kraus: h size differs from Kraus count");
  const std::vector<CMat> k = fam.kraus_at(phi0);
  std::vector<CMat> dk = fam.dkraus_at(phi0);
  const CMat& hm = h.mat();
  for (std::size_t i = 0; i < dk.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) {
      const Complex c = hm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (c != Complex(0.0)) dk[i] -= kI * c * k[j];
    }
  return dk;
}

CMat alpha_operator(const std::vector<CMat>& dkraus) {
  require(!dkraus.empty(), ErrorCode::InvalidArgument, "alpha_operator: empty list");
  CMat a = CMat::Zero(dkraus.front().cols(), dkraus.front().cols());
  for (const CMat& d : dkraus) a.noalias() += d.adjoint() * d;
  return a;
}

}  // namespace qmetro
