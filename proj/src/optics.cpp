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

#include "qmetro/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmetro/error.hpp"

namespace qmetro {

namespace {

constexpr double kPi = std::numbers::pi;

void check_modes(const ModeSpace& space, const std::vector<std::size_t>& modes) {
  for (std::size_t m : modes)
    require(m < space.n_lateral, ErrorCode::InvalidArgument,
            "optical element refers to a lateral mode outside the space");
}

CMat polarization_block(const ModeSpace& space, const std::vector<std::size_t>& modes,
                        const CMat& jones) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  CMat u = CMat::Identity(d, d);
  for (std::size_t lat : modes) {
    for (std::size_t lon = 0; lon < space.n_longitudinal; ++lon) {
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          u(static_cast<Eigen::Index>(space.index(a, lat, lon)),
            static_cast<Eigen::Index>(space.index(b, lat, lon))) =
              jones(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        }
      }
    }
  }
  return u;
}

// Lateral index of every basis state.
std::size_t lateral_of(const ModeSpace& space, std::size_t index) {
  return (index / space.n_longitudinal) % space.n_lateral;
}

CMat embed(const ModeSpace& space, const CMat& op) {
  require(static_cast<std::size_t>(op.rows()) == space.io_dim() && op.rows() == op.cols(),
          ErrorCode::DimensionMismatch, "network input has the wrong dimension");
  const auto d = static_cast<Eigen::Index>(space.dim());
  CMat out = CMat::Zero(d, d);
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t l = 0; l < space.n_longitudinal; ++l)
      for (std::size_t q = 0; q < 2; ++q)
        for (std::size_t k = 0; k < space.n_longitudinal; ++k)
          out(static_cast<Eigen::Index>(space.index(p, 0, l)),
              static_cast<Eigen::Index>(space.index(q, 0, k))) =
              op(static_cast<Eigen::Index>(p * space.n_longitudinal + l),
                 static_cast<Eigen::Index>(q * space.n_longitudinal + k));
  return out;
}

CMat reduce(const ModeSpace& space, const CMat& full) {
  const auto io = static_cast<Eigen::Index>(space.io_dim());
  CMat out = CMat::Zero(io, io);
  for (std::size_t lat = 0; lat < space.n_lateral; ++lat)
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t l = 0; l < space.n_longitudinal; ++l)
        for (std::size_t q = 0; q < 2; ++q)
          for (std::size_t k = 0; k < space.n_longitudinal; ++k)
            out(static_cast<Eigen::Index>(p * space.n_longitudinal + l),
                static_cast<Eigen::Index>(q * space.n_longitudinal + k)) +=
                full(static_cast<Eigen::Index>(space.index(p, lat, l)),
                     static_cast<Eigen::Index>(space.index(q, lat, k)));
  return out;
}

}  // namespace

const char* to_string(ElementKind kind) noexcept {
  switch (kind) {
    case ElementKind::Hwp: return "HWP";
    case ElementKind::Qwp: return "QWP";
    case ElementKind::Bd: return "BD";
    case ElementKind::Nbs: return "NBS";
    case ElementKind::Dephase: return "DEPHASE";
    case ElementKind::Phase: return "PHASE";
    case ElementKind::Postselect: return "POSTSELECT";
  }
  return "unknown";
}

OpticalElement OpticalElement::hwp(double theta, std::vector<std::size_t> modes) {
  OpticalElement e;
  e.kind = ElementKind::Hwp;
  e.angle = theta;
  e.modes = std::move(modes);
  return e;
}

OpticalElement OpticalElement::qwp(double theta, std::vector<std::size_t> modes) {
  OpticalElement e = hwp(theta, std::move(modes));
  e.kind = ElementKind::Qwp;
  return e;
}

OpticalElement OpticalElement::bd(std::size_t polarization, std::size_t shift) {
  OpticalElement e;
  e.kind = ElementKind::Bd;
  e.polarization = polarization;
  e.shift = shift;
  return e;
}

OpticalElement OpticalElement::nbs(std::size_t a, std::size_t b) {
  OpticalElement e;
  e.kind = ElementKind::Nbs;
  e.modes = {a, b};
  return e;
}

OpticalElement OpticalElement::dephase(std::vector<std::vector<std::size_t>> blocks) {
  OpticalElement e;
  e.kind = ElementKind::Dephase;
  e.blocks = std::move(blocks);
  return e;
}

OpticalElement OpticalElement::phase(double phi, std::vector<std::size_t> modes) {
  OpticalElement e = hwp(phi, std::move(modes));
  e.kind = ElementKind::Phase;
  return e;
}

OpticalElement OpticalElement::postselect(std::vector<std::size_t> modes) {
  OpticalElement e;
  e.kind = ElementKind::Postselect;
  e.modes = std::move(modes);
  return e;
}

CMat jones_hwp(double theta) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  CMat m(2, 2);
  m << c, s, s, -c;
  return m;
}

CMat jones_qwp(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  CMat r(2, 2);
  r << c, -s, s, c;
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = kI;
  return r * d * r.transpose();
}

CMat element_unitary(const ModeSpace& space, const OpticalElement& e) {
  require(space.n_lateral >= 1 && space.n_longitudinal >= 1 && space.dim() <= 16,
          ErrorCode::InvalidArgument, "mode space must have dimension at most 16");
  const auto d = static_cast<Eigen::Index>(space.dim());
  switch (e.kind) {
    case ElementKind::Hwp:
      check_modes(space, e.modes);
      return polarization_block(space, e.modes, jones_hwp(e.angle));
    case ElementKind::Qwp:
      check_modes(space, e.modes);
      return polarization_block(space, e.modes, jones_qwp(e.angle));
    case ElementKind::Phase:
      check_modes(space, e.modes);
      return polarization_block(space, e.modes, phase_unitary(e.angle));
    case ElementKind::Bd: {
      require(e.polarization < 2, ErrorCode::InvalidArgument, "BD polarization must be 0 or 1");
      CMat u = CMat::Zero(d, d);
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t lat = 0; lat < space.n_lateral; ++lat)
          for (std::size_t lon = 0; lon < space.n_longitudinal; ++lon) {
            const std::size_t to = p == e.polarization ? (lat + e.shift) % space.n_lateral : lat;
            u(static_cast<Eigen::Index>(space.index(p, to, lon)),
              static_cast<Eigen::Index>(space.index(p, lat, lon))) = 1.0;
          }
      return u;
    }
    case ElementKind::Nbs: {
      require(e.modes.size() == 2 && e.modes[0] != e.modes[1], ErrorCode::InvalidArgument,
              "NBS needs two distinct lateral modes");
      check_modes(space, e.modes);
      const double r = 1.0 / std::numbers::sqrt2;
      CMat u = CMat::Identity(d, d);
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t lon = 0; lon < space.n_longitudinal; ++lon) {
          const auto a = static_cast<Eigen::Index>(space.index(p, e.modes[0], lon));
          const auto b = static_cast<Eigen::Index>(space.index(p, e.modes[1], lon));
          u(a, a) = r;
          u(a, b) = r;
          u(b, a) = r;
          u(b, b) = -r;
        }
      return u;
    }
    case ElementKind::Dephase:
    case ElementKind::Postselect:
      break;
  }
  fail(ErrorCode::InvalidArgument,
       std::string(to_string(e.kind)) + " is not a unitary element");
}

CMat network_unitary(const OpticalNetwork& net) {
  const auto d = static_cast<Eigen::Index>(net.space.dim());
  CMat u = CMat::Identity(d, d);
  for (const OpticalElement& e : net.elements) u = element_unitary(net.space, e) * u;
  return u;
}

CMat propagate(const OpticalNetwork& net, const CMat& op) {
  const ModeSpace& space = net.space;
  CMat rho = embed(space, op);
  const auto d = static_cast<Eigen::Index>(space.dim());
  for (const OpticalElement& e : net.elements) {
    if (e.kind == ElementKind::Dephase) {
      std::vector<std::size_t> block_of(space.n_lateral);
      for (std::size_t lat = 0; lat < space.n_lateral; ++lat) block_of[lat] = e.blocks.size() + lat;
      for (std::size_t b = 0; b < e.blocks.size(); ++b) {
        check_modes(space, e.blocks[b]);
        for (std::size_t lat : e.blocks[b]) block_of[lat] = b;
      }
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
          if (block_of[lateral_of(space, static_cast<std::size_t>(r))] !=
              block_of[lateral_of(space, static_cast<std::size_t>(c))])
            rho(r, c) = 0.0;
    } else if (e.kind == ElementKind::Postselect) {
      check_modes(space, e.modes);
      for (Eigen::Index r = 0; r < d; ++r) {
        const std::size_t lat = lateral_of(space, static_cast<std::size_t>(r));
        if (std::find(e.modes.begin(), e.modes.end(), lat) == e.modes.end()) {
          rho.row(r).setZero();
          rho.col(r).setZero();
        }
      }
    } else {
      const CMat u = element_unitary(space, e);
      rho = u * rho * u.adjoint();
    }
  }
  return reduce(space, rho);
}

NetworkOutput apply_network(const OpticalNetwork& net, const DensityMatrix& rho_in) {
  const CMat out = propagate(net, rho_in.mat());
  const double p = out.trace().real();
  require(p > 1e-15, ErrorCode::ZeroProbability, "postselection probability is zero");
  return {DensityMatrix::trusted(out / p), p};
}

double ad_plate_angle(double eta) {
  require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0, ErrorCode::InvalidArgument,
          "eta must lie in [0, 1]");
  return 0.5 * std::atan2(std::sqrt(eta), -std::sqrt(1.0 - eta));
}

OpticalNetwork build_ad_network(double eta) {
  const double theta_a = ad_plate_angle(eta);
  const double q = kPi / 4.0;
  OpticalNetwork net;
  net.space = {2, 1};
  net.elements = {
      OpticalElement::bd(0, 1),
      OpticalElement::hwp(q, {1}),
      OpticalElement::hwp(theta_a, {0}),
      OpticalElement::hwp(q, {0}),
      OpticalElement::bd(0, 1),
      OpticalElement::hwp(q, {0, 1}),
      OpticalElement::dephase({{0}, {1}}),
      OpticalElement::nbs(0, 1),
      OpticalElement::postselect({1}),
  };
  return net;
}

double PauliAngles::max_residual() const {
  return *std::max_element(residuals.begin(), residuals.end());
}

std::array<double, 8> pauli_angle_residuals(const std::array<double, 4>& p,
                                            const std::array<double, 6>& t) {
  std::array<double, 6> c{};
  std::array<double, 6> s{};
  for (std::size_t i = 0; i < 6; ++i) {
    c[i] = std::cos(2.0 * t[i]);
    s[i] = std::sin(2.0 * t[i]);
  }
  const double r0 = std::sqrt(p[0]);
  const double r1 = std::sqrt(p[1]);
  const double r2 = std::sqrt(p[2]);
  const double r3 = std::sqrt(p[3]);
  return {
      std::abs(r0 - c[0] * s[2]),
      std::abs(r0 - c[1] * c[3] * s[5]),
      std::abs(r1 - s[0]),
      std::abs(r1 + c[1] * c[3] * c[5]),
      std::abs(r2 - c[0] * c[2] * c[4]),
      std::abs(r2 - s[1]),
      std::abs(r3 - c[0] * c[2] * s[4]),
      std::abs(r3 + c[1] * s[3]),
  };
}

PauliAngles solve_pauli_angles(const std::array<double, 4>& p) {
  general_pauli(p);  // validates the probability vector
  const double r0 = std::sqrt(p[0]);
  const double r1 = std::sqrt(p[1]);
  const double r2 = std::sqrt(p[2]);
  const double r3 = std::sqrt(p[3]);
  PauliAngles out;
  auto& t = out.theta;
  // H branch: p1 first, then p0 against the remainder, then p2/p3.
  t[0] = 0.5 * std::asin(std::min(r1, 1.0));
  t[2] = 0.5 * std::atan2(r0, std::sqrt(p[2] + p[3]));
  t[4] = 0.5 * std::atan2(r3, r2);
  // V branch: p2 first, then p3 (signed), then p0/p1 (signed).
  t[1] = 0.5 * std::asin(std::min(r2, 1.0));
  t[3] = 0.5 * std::atan2(-r3, std::sqrt(p[0] + p[1]));
  t[5] = 0.5 * std::atan2(r0, -r1);
  for (double& x : t) x += 0.0;  // no negative zeros in reports
  out.residuals = pauli_angle_residuals(p, t);
  require(out.max_residual() <= 1e-10, ErrorCode::VerificationFailed,
          "solve_pauli_angles: relations not satisfied");
  return out;
}

OpticalNetwork build_pauli_network(const std::array<double, 4>& p) {
  const PauliAngles a = solve_pauli_angles(p);
  const double q = kPi / 4.0;
  OpticalNetwork net;
  net.space = {4, 1};
  net.elements = {
      OpticalElement::bd(0, 2),
      OpticalElement::hwp(a.theta[0], {2}),
      OpticalElement::hwp(a.theta[1], {0}),
      OpticalElement::bd(0, 1),
      OpticalElement::hwp(a.theta[2], {3}),
      OpticalElement::hwp(a.theta[3], {0}),
      OpticalElement::bd(0, 2),
      OpticalElement::hwp(a.theta[4], {1}),
      OpticalElement::hwp(a.theta[5], {0}),
      OpticalElement::bd(0, 1),
      OpticalElement::hwp(q, {1, 2, 3}),
      OpticalElement::bd(0, 2),
      // Lateral modes now carry the X, 1, Y and Z terms; mode 2 holds its
      // branches with polarizations exchanged.
      OpticalElement::hwp(q, {0}),
      OpticalElement::hwp(0.0, {2}),
      OpticalElement::hwp(0.0, {3}),
      OpticalElement::dephase({{0}, {1}, {2}, {3}}),
      OpticalElement::nbs(0, 1),
      OpticalElement::nbs(2, 3),
      OpticalElement::postselect({1, 3}),
  };
  return net;
}

KrausChannel extract_channel(const OpticalNetwork& net) {
  const std::size_t d = net.space.io_dim();
  const auto n = static_cast<Eigen::Index>(d);
  const double p = propagate(net, CMat::Identity(n, n) / static_cast<double>(d)).trace().real();
  require(p > 1e-15, ErrorCode::ZeroProbability, "network transmits nothing");

  CMat choi = CMat::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      CMat e = CMat::Zero(n, n);
      e(i, j) = 1.0;
      choi.block(i * n, j * n, n, n) = propagate(net, e) / p;
    }
  }
  const EigenSystem es = eigh(hermitian_part(choi));
  require(es.values.minCoeff() >= -1e-9, ErrorCode::VerificationFailed,
          "extracted map is not completely positive");

  std::vector<CMat> kraus;
  for (Eigen::Index k = n * n - 1; k >= 0; --k) {
    const double w = es.values(k);
    if (w <= 1e-12) continue;
    CMat op(n, n);
    for (Eigen::Index in = 0; in < n; ++in)
      for (Eigen::Index out = 0; out < n; ++out)
        op(out, in) = std::sqrt(w) * es.vectors(in * n + out, k);
    kraus.push_back(op);
  }
  require(!kraus.empty(), ErrorCode::VerificationFailed, "extracted map is zero");

  CMat s = CMat::Zero(n, n);
  for (const CMat& k : kraus) s += k.adjoint() * k;
  require((s - CMat::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-8,
          ErrorCode::VerificationFailed, "extracted map is not trace preserving");
  // Remove residual rounding so the strict channel invariant holds.
  const EigenSystem ss = eigh(hermitian_part(s));
  const CMat inv_sqrt = ss.vectors *
                        ss.values.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
                        ss.vectors.adjoint();
  for (CMat& k : kraus) k = k * inv_sqrt;
  return KrausChannel(std::move(kraus), "network");
}

}  // namespace qmetro
