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

#include "qmetro/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmetro/error.hpp"
#include "qmetro/nelder_mead.hpp"
#include "qmetro/random.hpp"

namespace qmetro {

const char* to_string(QfiMethod method) noexcept {
  switch (method) {
    case QfiMethod::Sld: return "sld";
    case QfiMethod::Minimax: return "minimax";
    case QfiMethod::ClosedForm: return "closed_form";
    case QfiMethod::MatrixElement: return "matrix_element";
  }
  return "unknown";
}

namespace {

const PhaseChannelFamily& pick(const PhaseChannelFamily& fam, bool extended,
                               std::optional<PhaseChannelFamily>& storage) {
  if (!extended) return fam;
  storage.emplace(fam.extended());
  return *storage;
}

void check_unit(double x, const char* what) {
  require(std::isfinite(x) && x >= 0.0 && x <= 1.0, ErrorCode::InvalidArgument,
          std::string(what) + " must lie in [0, 1]");
}

DensityMatrix bloch_state(double theta, double azimuth) {
  CVec psi(2);
  psi << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), azimuth);
  return DensityMatrix::pure(psi);
}

// Probe-ancilla purification sum_k sqrt(w_k) |k>|k> of a probe state.
DensityMatrix purification(const DensityMatrix& rho) {
  const EigenSystem es = eigh(rho.mat());
  const Eigen::Index d = rho.mat().rows();
  CVec psi = CVec::Zero(d * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double w = std::max(es.values(k), 0.0);
    for (Eigen::Index a = 0; a < d; ++a)
      psi(a * d + k) += std::sqrt(w) * es.vectors(a, k);
  }
  psi.normalize();
  return DensityMatrix::pure(psi);
}

// Bloch-ball point from an unconstrained 3-vector (radial squash keeps the
// map continuous and onto the closed ball).
DensityMatrix ball_state(const RVec& x) {
  const double n = x.norm();
  const double scale = n > 1.0 ? 1.0 / n : 1.0;
  const RVec r = x * scale;
  CMat m = 0.5 * (pauli::identity() + r(0) * pauli::x() + r(1) * pauli::y() +
                  r(2) * pauli::z());
  return DensityMatrix::trusted(m);
}

}  // namespace

CMat output_state(const PhaseChannelFamily& fam, const DensityMatrix& rho_in, double phi,
                  bool extended) {
  std::optional<PhaseChannelFamily> storage;
  const PhaseChannelFamily& f = pick(fam, extended, storage);
  require(rho_in.dim() == f.dim(), ErrorCode::DimensionMismatch,
          "output_state: input dimension differs from channel");
  CMat out = CMat::Zero(rho_in.mat().rows(), rho_in.mat().cols());
  for (const CMat& k : f.kraus_at(phi)) out.noalias() += k * rho_in.mat() * k.adjoint();
  return hermitian_part(out);
}

CMat state_derivative(const PhaseChannelFamily& fam, const DensityMatrix& rho_in, double phi,
                      bool extended) {
  std::optional<PhaseChannelFamily> storage;
  const PhaseChannelFamily& f = pick(fam, extended, storage);
  require(rho_in.dim() == f.dim(), ErrorCode::DimensionMismatch,
          "state_derivative: input dimension differs from channel");
  const std::vector<CMat> k = f.kraus_at(phi);
  const std::vector<CMat> dk = f.dkraus_at(phi);
  CMat out = CMat::Zero(rho_in.mat().rows(), rho_in.mat().cols());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const CMat t = dk[i] * rho_in.mat() * k[i].adjoint();
    out += t + t.adjoint();
  }
  return out;
}

QfiResult sld_qfi(const DensityMatrix& rho, const CMat& drho, double cutoff) {
  require(cutoff > 0.0, ErrorCode::InvalidArgument, "sld_qfi: cutoff must be positive");
  require(drho.rows() == rho.mat().rows() && drho.cols() == rho.mat().cols(),
          ErrorCode::DimensionMismatch, "sld_qfi: derivative dimension differs");
  require(hermiticity_residual(drho) <= 1e-10, ErrorCode::NotHermitian,
          "sld_qfi: derivative is not Hermitian");
  const EigenSystem es = eigh(rho.mat());
  const CMat d = es.vectors.adjoint() * drho * es.vectors;
  const Eigen::Index n = d.rows();
  CMat a = CMat::Zero(n, n);
  double j = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double s = es.values(r) + es.values(c);
      if (s <= cutoff) continue;
      a(r, c) = 2.0 * d(r, c) / s;
      j += 2.0 * std::norm(d(r, c)) / s;
    }
  }
  QfiResult result;
  result.value = std::max(j, 0.0);
  result.method = QfiMethod::Sld;
  result.sld = SldOperator{hermitian_part(es.vectors * a * es.vectors.adjoint()), cutoff};
  result.dual_value = result.value;
  return result;
}

double sld_residual(const DensityMatrix& rho, const CMat& drho, const SldOperator& sld) {
  const EigenSystem es = eigh(rho.mat());
  const CMat diff = drho - 0.5 * (sld.mat * rho.mat() + rho.mat() * sld.mat);
  CMat e = es.vectors.adjoint() * diff * es.vectors;
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c)
      if (es.values(r) + es.values(c) <= sld.support_cutoff) e(r, c) = 0.0;
  return e.norm();
}

double closed_form_qfi(ClosedFormKind kind, double param, bool assisted) {
  check_unit(param, "closed_form_qfi parameter");
  switch (kind) {
    case ClosedFormKind::AmplitudeDamping:
      return assisted ? 2.0 * (1.0 - param) / (2.0 - param) : 1.0 - param;
    case ClosedFormKind::Depolarizing: {
      const double q = (1.0 - param) * (1.0 - param);
      return assisted ? 2.0 * q / (2.0 - param) : q;
    }
  }
  fail(ErrorCode::InvalidArgument, "closed_form_qfi: unknown kind");
}

double two_probe_collective_ad_qfi(double eta, double phi) {
  check_unit(eta, "eta");
  const double e1 = (eta - 1.0) * (eta - 1.0);
  const double g = (eta - 2.0) * eta + 2.0;
  return 8.0 * e1 * (2.0 * e1 * std::cos(8.0 * phi) + (eta - 2.0) * eta * g + 2.0) /
         (g * g * g);
}

double two_probe_collective_ad_sld(double eta, double phi) {
  const PhaseChannelFamily fam = PhaseChannelFamily::single(amplitude_damping(eta)).collective(2);
  CVec psi = CVec::Zero(16);
  psi(0) = psi(15) = 1.0 / std::numbers::sqrt2;
  const DensityMatrix in = DensityMatrix::pure(psi);
  const DensityMatrix out = DensityMatrix::trusted(output_state(fam, in, phi, true));
  return sld_qfi(out, state_derivative(fam, in, phi, true)).value;
}

double two_probe_bare_ad_sld(double eta, double phi) {
  const PhaseChannelFamily fam = PhaseChannelFamily::single(amplitude_damping(eta)).collective(2);
  CVec psi = CVec::Zero(4);
  psi(0) = psi(3) = 1.0 / std::numbers::sqrt2;
  const DensityMatrix in = DensityMatrix::pure(psi);
  const DensityMatrix out = DensityMatrix::trusted(output_state(fam, in, phi, false));
  return sld_qfi(out, state_derivative(fam, in, phi, false)).value;
}

QfiResult minimax_fixed_input(const PhaseChannelFamily& fam, const DensityMatrix& rho_a,
                              double phi0) {
  require(rho_a.dim() == fam.dim(), ErrorCode::DimensionMismatch,
          "minimax: input dimension differs from channel");
  const std::vector<CMat> k = fam.kraus_at(phi0);
  const std::vector<CMat> dk = fam.dkraus_at(phi0);
  const auto m = static_cast<Eigen::Index>(k.size());
  const auto d = static_cast<Eigen::Index>(fam.dim());
  const EigenSystem es = eigh(rho_a.mat());

  std::vector<Eigen::Index> support;
  for (Eigen::Index s = 0; s < d; ++s)
    if (es.values(s) > 1e-14) support.push_back(s);

  // Complex residual r = b + A x stacked as [Re; Im]; one block of d rows
  // per (Kraus index i, eigenvector s).
  const Eigen::Index blocks = m * static_cast<Eigen::Index>(support.size());
  const Eigen::Index rows = blocks * d;
  const Eigen::Index cols = m * m;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, cols);
  CVec b(rows);

  for (std::size_t si = 0; si < support.size(); ++si) {
    const Eigen::Index s = support[si];
    const double sw = std::sqrt(es.values(s));
    const CVec v = es.vectors.col(s);
    std::vector<CVec> kv(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) kv[j] = sw * (k[j] * v);
    auto row0 = [&](Eigen::Index i) { return (i * static_cast<Eigen::Index>(support.size()) +
                                              static_cast<Eigen::Index>(si)) * d; };
    for (Eigen::Index i = 0; i < m; ++i) b.segment(row0(i), d) = sw * (dk[i] * v);

    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < m; ++i, ++col) a.block(row0(i), col, d, 1) = -kI * kv[i];
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = i + 1; j < m; ++j) {
        a.block(row0(i), col, d, 1) = -kI * kv[j];
        a.block(row0(j), col, d, 1) = -kI * kv[i];
        ++col;
        a.block(row0(i), col, d, 1) = kv[j];
        a.block(row0(j), col, d, 1) = -kv[i];
        ++col;
      }
    }
  }

  Eigen::MatrixXd ar(2 * rows, cols);
  ar << a.real(), a.imag();
  Eigen::VectorXd br(2 * rows);
  br << b.real(), b.imag();
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(ar);
  const RVec x = cod.solve(-br);

  const GeneratorH h = GeneratorH::from_params(static_cast<std::size_t>(m), x);
  const CMat alpha = alpha_operator(rotate_kraus(fam, h, phi0));
  QfiResult result;
  result.value = std::max(4.0 * (rho_a.mat() * alpha).trace().real(), 0.0);
  result.dual_value = result.value;
  result.method = QfiMethod::Minimax;
  result.optimal_h = h;
  result.evaluations = 1;
  return result;
}

namespace {

QfiResult minimax_extended_optimal(const PhaseChannelFamily& fam, double phi0,
                                   const MinimaxOptions& options) {
  const std::size_t m = fam.kraus_count();
  NelderMeadOptions nm;
  nm.max_evaluations = options.max_evaluations;
  int evaluations = 0;

  // Dual: the fixed-input value is concave in the probe input.
  auto dual = [&](const RVec& x) {
    return -minimax_fixed_input(fam, ball_state(x), phi0).value;
  };
  NelderMeadResult best_dual;
  best_dual.value = INFINITY;
  for (int s = 0; s < 4; ++s) {
    RVec x0 = RVec::Zero(3);
    if (s > 0) x0(s - 1) = 0.5;
    NelderMeadOptions dnm = nm;
    dnm.initial_step = 0.3;
    const NelderMeadResult r = nelder_mead(dual, x0, dnm);
    evaluations += r.evaluations;
    if (r.value < best_dual.value) best_dual = r;
  }
  const DensityMatrix rho_star = ball_state(best_dual.x);
  const QfiResult at_dual = minimax_fixed_input(fam, rho_star, phi0);

  // Primal: min over h of the spectral maximum.
  auto primal = [&](const RVec& p) {
    const GeneratorH h = GeneratorH::from_params(m, p);
    return 4.0 * spectral_max(alpha_operator(rotate_kraus(fam, h, phi0)));
  };
  std::vector<RVec> starts;
  starts.push_back(RVec::Zero(static_cast<Eigen::Index>(m * m)));
  starts.push_back(at_dual.optimal_h->params());
  Rng rng = substream(options.seed, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 0; s < options.restarts; ++s) {
    RVec p(static_cast<Eigen::Index>(m * m));
    for (Eigen::Index t = 0; t < p.size(); ++t) p(t) = normal(rng);
    starts.push_back(p);
  }
  NelderMeadResult best;
  best.value = INFINITY;
  for (const RVec& p0 : starts) {
    const NelderMeadResult r = nelder_mead(primal, p0, nm);
    evaluations += r.evaluations;
    if (r.value < best.value) best = r;
  }
  require(best.converged || best.last_improvement <= 1e-8, ErrorCode::OptimizerFailure,
          "minimax: simplex search did not converge within the evaluation budget");

  QfiResult result;
  result.method = QfiMethod::Minimax;
  result.value = std::max(best.value, 0.0);
  result.dual_value = -best_dual.value;
  result.optimal_h = GeneratorH::from_params(m, best.x);
  result.optimal_input = purification(rho_star);
  result.evaluations = evaluations;
  return result;
}

QfiResult minimax_unextended(const PhaseChannelFamily& fam, double phi0,
                             const MinimaxOptions& options) {
  require(options.grid >= 2, ErrorCode::InvalidArgument, "minimax: grid must be at least 2");
  const int g = options.grid;
  const double pi = std::numbers::pi;

  struct Candidate {
    double value;
    double theta;
    double azimuth;
    std::array<double, 3> bloch;
  };
  std::vector<Candidate> grid;
  grid.reserve(static_cast<std::size_t>(g * g));
  double top = -INFINITY;
  for (int i = 0; i < g; ++i) {
    const double theta = pi * i / (g - 1);
    for (int j = 0; j < g; ++j) {
      // The poles are single points; skip redundant azimuths there.
      if ((i == 0 || i == g - 1) && j > 0) continue;
      const double az = 2.0 * pi * j / g;
      const double v = minimax_fixed_input(fam, bloch_state(theta, az), phi0).value;
      grid.push_back({v, theta, az,
                      {std::sin(theta) * std::cos(az), std::sin(theta) * std::sin(az),
                       std::cos(theta)}});
      top = std::max(top, v);
    }
  }
  const Candidate* chosen = nullptr;
  for (const Candidate& c : grid) {
    if (c.value < top - 1e-9) continue;
    if (chosen == nullptr || c.bloch < chosen->bloch) chosen = &c;
  }
  int evaluations = static_cast<int>(grid.size());

  auto objective = [&](const RVec& x) {
    return -minimax_fixed_input(fam, bloch_state(x(0), x(1)), phi0).value;
  };
  RVec x0(2);
  x0 << chosen->theta, chosen->azimuth;
  NelderMeadOptions nm;
  nm.initial_step = pi / g;
  nm.max_evaluations = options.max_evaluations;
  const NelderMeadResult refined = nelder_mead(objective, x0, nm);
  evaluations += refined.evaluations;

  double theta = chosen->theta;
  double az = chosen->azimuth;
  if (-refined.value > chosen->value + 1e-9) {
    theta = refined.x(0);
    az = refined.x(1);
  }
  const DensityMatrix best_input = bloch_state(theta, az);
  QfiResult result = minimax_fixed_input(fam, best_input, phi0);
  result.optimal_input = best_input;
  result.evaluations = evaluations;
  return result;
}

}  // namespace

QfiResult channel_qfi_minimax(const PhaseChannelFamily& fam, bool extended, double phi0,
                              const MinimaxOptions& options) {
  require(fam.dim() == 2, ErrorCode::DimensionMismatch,
          "channel_qfi_minimax: supports qubit probes only");
  require(std::isfinite(phi0), ErrorCode::InvalidArgument, "phi0 must be finite");
  if (!extended) return minimax_unextended(fam, phi0, options);
  if (options.extended_input == ExtendedInput::Optimal)
    return minimax_extended_optimal(fam, phi0, options);

  const DensityMatrix half = DensityMatrix::maximally_mixed(2);
  QfiResult result = minimax_fixed_input(fam, half, phi0);
  result.optimal_input = purification(half);
  return result;
}

double qfi_from_matrix_elements(const DensityMatrix& rho, MatrixElementKind kind) {
  auto term = [&](std::size_t a, std::size_t b) {
    const double den = rho(a, a).real() + rho(b, b).real();
    if (den <= 1e-15) return 0.0;
    const double c = 2.0 * std::abs(rho(a, b));
    return c * c / den;
  };
  switch (kind) {
    case MatrixElementKind::AdSingle:
    case MatrixElementKind::DepolSingle:
      require(rho.dim() == 2, ErrorCode::DimensionMismatch,
              "matrix-element QFI: single-probe kinds need a qubit state");
      return term(0, 1);
    case MatrixElementKind::AdAssisted:
      require(rho.dim() == 4, ErrorCode::DimensionMismatch,
              "matrix-element QFI: assisted kinds need a two-qubit state");
      return term(0, 3);
    case MatrixElementKind::DepolAssisted:
      require(rho.dim() == 4, ErrorCode::DimensionMismatch,
              "matrix-element QFI: assisted kinds need a two-qubit state");
      return term(0, 3) + term(1, 2);
  }
  fail(ErrorCode::InvalidArgument, "matrix-element QFI: unknown kind");
}

double cramer_rao(double j, double nu) {
  require(std::isfinite(j) && j > 0.0, ErrorCode::InvalidArgument,
          "cramer_rao: J must be positive");
  require(std::isfinite(nu) && nu >= 1.0, ErrorCode::InvalidArgument,
          "cramer_rao: nu must be at least 1");
  return 1.0 / std::sqrt(nu * j);
}

}  // namespace qmetro
