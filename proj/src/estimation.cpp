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

#include "qmetro/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmetro/channels.hpp"
#include "qmetro/error.hpp"
#include "qmetro/qfi.hpp"

namespace qmetro {

namespace {

double sample_std(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1.0));
}

// Bare schemes: the state from apply() with coherences scaled by v, read
// out in a fixed projective basis.
struct BareSetup {
  PhaseChannelFamily family;
  DensityMatrix input;
  std::vector<CVec> basis;
};

BareSetup bare_setup(Scheme scheme, double noise) {
  const double r = 1.0 / std::numbers::sqrt2;
  if (scheme == Scheme::AdTwoProbeBare) {
    CVec psi = CVec::Zero(4);
    psi(0) = psi(3) = r;
    std::vector<CVec> basis(4, CVec::Zero(4));
    basis[0](0) = r;
    basis[0](3) = kI * r;
    basis[1](0) = r;
    basis[1](3) = -kI * r;
    basis[2](1) = 1.0;
    basis[3](2) = 1.0;
    return {PhaseChannelFamily::single(amplitude_damping(noise)).collective(2),
            DensityMatrix::pure(psi), basis};
  }
  CVec plus(2);
  plus << r, r;
  std::vector<CVec> basis(2, CVec(2));
  basis[0] << r, kI * r;
  basis[1] << r, -kI * r;
  KrausChannel ch = scheme == Scheme::AdSingleBare ? amplitude_damping(noise) : depolarizing(noise);
  return {PhaseChannelFamily::single(std::move(ch)), DensityMatrix::pure(plus), basis};
}

CMat with_visibility(const CMat& rho, double v) {
  CMat out = v * rho;
  out.diagonal() = rho.diagonal();
  return out;
}

std::vector<double> born(const std::vector<CVec>& basis, const CMat& op) {
  std::vector<double> p;
  p.reserve(basis.size());
  for (const CVec& b : basis) p.push_back((b.adjoint() * op * b)(0, 0).real());
  return p;
}

}  // namespace

const char* to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::AdSingleAssisted: return "ad_single_assisted";
    case Scheme::DepolSingleAssisted: return "depol_single_assisted";
    case Scheme::AdTwoProbeAssisted: return "ad_two_probe_assisted";
    case Scheme::AdSingleBare: return "ad_single_bare";
    case Scheme::DepolSingleBare: return "depol_single_bare";
    case Scheme::AdTwoProbeBare: return "ad_two_probe_bare";
  }
  return "unknown";
}

bool is_assisted(Scheme scheme) noexcept {
  return scheme == Scheme::AdSingleAssisted || scheme == Scheme::DepolSingleAssisted ||
         scheme == Scheme::AdTwoProbeAssisted;
}

std::size_t probe_count(Scheme scheme) noexcept {
  return scheme == Scheme::AdTwoProbeAssisted || scheme == Scheme::AdTwoProbeBare ? 2 : 1;
}

Scheme bare_counterpart(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::AdSingleAssisted: return Scheme::AdSingleBare;
    case Scheme::DepolSingleAssisted: return Scheme::DepolSingleBare;
    case Scheme::AdTwoProbeAssisted: return Scheme::AdTwoProbeBare;
    default: return scheme;
  }
}

MeasurementModel::MeasurementModel(Scheme scheme, double noise, double visibility)
    : scheme_(scheme), noise_(noise), visibility_(visibility) {
  require(std::isfinite(noise) && noise >= 0.0 && noise <= 1.0, ErrorCode::InvalidArgument,
          "noise parameter must lie in [0, 1]");
  require(std::isfinite(visibility) && visibility >= 0.0 && visibility <= 1.0,
          ErrorCode::InvalidArgument, "visibility must lie in [0, 1]");
}

std::vector<std::string> MeasurementModel::outcome_labels() const {
  switch (scheme_) {
    case Scheme::AdSingleAssisted:
    case Scheme::DepolSingleAssisted: return {"HU+iVD", "HU-iVD", "HD", "VU"};
    case Scheme::AdTwoProbeAssisted:
      return {"HUHU+iVDVD", "HUHU-iVDVD", "HDHD", "HDVD", "VDHD"};
    case Scheme::AdSingleBare:
    case Scheme::DepolSingleBare: return {"H+iV", "H-iV"};
    case Scheme::AdTwoProbeBare: return {"HH+iVV", "HH-iVV", "HV", "VH"};
  }
  return {};
}

std::vector<double> MeasurementModel::probabilities(double phi) const {
  const double e = noise_;
  const double v = visibility_;
  switch (scheme_) {
    case Scheme::AdSingleAssisted: {
      const double a = 2.0 * v * std::sqrt(1.0 - e) * std::sin(phi);
      return {(2.0 - e + a) / 4.0, (2.0 - e - a) / 4.0, e / 2.0, 0.0};
    }
    case Scheme::DepolSingleAssisted: {
      const double a = 2.0 * v * (1.0 - e) * std::sin(phi);
      return {(2.0 - e + a) / 4.0, (2.0 - e - a) / 4.0, e / 4.0, e / 4.0};
    }
    case Scheme::AdTwoProbeAssisted: {
      const double base = 2.0 - 2.0 * e + e * e;
      const double a = 2.0 * v * (1.0 - e) * std::sin(2.0 * phi);
      return {(base - a) / 4.0, (base + a) / 4.0, e * e / 2.0, e * (1.0 - e) / 2.0,
              e * (1.0 - e) / 2.0};
    }
    default: {
      const BareSetup s = bare_setup(scheme_, e);
      return born(s.basis, with_visibility(output_state(s.family, s.input, phi, false), v));
    }
  }
}

std::vector<double> MeasurementModel::dprobabilities(double phi) const {
  const double e = noise_;
  const double v = visibility_;
  switch (scheme_) {
    case Scheme::AdSingleAssisted: {
      const double a = 2.0 * v * std::sqrt(1.0 - e) * std::cos(phi) / 4.0;
      return {a, -a, 0.0, 0.0};
    }
    case Scheme::DepolSingleAssisted: {
      const double a = 2.0 * v * (1.0 - e) * std::cos(phi) / 4.0;
      return {a, -a, 0.0, 0.0};
    }
    case Scheme::AdTwoProbeAssisted: {
      const double a = 4.0 * v * (1.0 - e) * std::cos(2.0 * phi) / 4.0;
      return {-a, a, 0.0, 0.0, 0.0};
    }
    default: {
      const BareSetup s = bare_setup(scheme_, e);
      return born(s.basis, with_visibility(state_derivative(s.family, s.input, phi, false), v));
    }
  }
}

double MeasurementModel::contrast() const {
  const double k = static_cast<double>(probe_count(scheme_));
  const std::vector<double> p = probabilities(std::numbers::pi / (2.0 * k));
  return p[0] - p[1];
}

double MeasurementModel::quoted_qfi() const {
  const double e = noise_;
  const double v2 = visibility_ * visibility_;
  const double q = (1.0 - e) * (1.0 - e);
  switch (scheme_) {
    case Scheme::AdSingleAssisted: return 2.0 * v2 * (1.0 - e) / (2.0 - e);
    case Scheme::DepolSingleAssisted: return 2.0 * v2 * q / (2.0 - e);
    case Scheme::AdTwoProbeAssisted: return 8.0 * v2 * q / (1.0 + q);
    case Scheme::AdSingleBare: return v2 * (1.0 - e);
    case Scheme::DepolSingleBare: return v2 * q;
    case Scheme::AdTwoProbeBare: return 4.0 * v2 * q / (1.0 - e + e * e);
  }
  return 0.0;
}

double classical_fisher(const MeasurementModel& model, double phi) {
  const std::vector<double> p = model.probabilities(phi);
  const std::vector<double> dp = model.dprobabilities(phi);
  double f = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] > 1e-12) f += dp[k] * dp[k] / p[k];
  return f;
}

std::vector<std::uint64_t> sample_counts(const MeasurementModel& model, double phi,
                                         std::uint64_t events, Rng& rng) {
  require(events >= 1, ErrorCode::InvalidArgument, "events must be at least 1");
  const std::vector<double> p = model.probabilities(phi);
  return sample_multinomial(rng, p, events);
}

std::vector<std::uint64_t> sample_counts(const MeasurementModel& model, double phi,
                                         std::uint64_t events, std::uint64_t seed) {
  Rng rng = substream(seed, 0);
  return sample_counts(model, phi, events, rng);
}

double estimate_phase(const MeasurementModel& model, const std::vector<std::uint64_t>& counts) {
  require(counts.size() == model.outcome_labels().size(), ErrorCode::DimensionMismatch,
          "estimate_phase: count vector has the wrong length");
  double total = 0.0;
  for (std::uint64_t c : counts) total += static_cast<double>(c);
  require(total > 0.0, ErrorCode::InvalidArgument, "estimate_phase: no events");
  const double c = model.contrast();
  require(std::abs(c) > 1e-12, ErrorCode::EstimationUndefined,
          "estimate_phase: zero contrast, phase is not identifiable");
  const double x = (static_cast<double>(counts[0]) - static_cast<double>(counts[1])) / (total * c);
  const double k = static_cast<double>(probe_count(model.scheme()));
  return std::asin(std::clamp(x, -1.0, 1.0)) / k;
}

Experiment run_experiment(const MeasurementModel& model, double phi_true, std::uint64_t events,
                          std::size_t repetitions, std::uint64_t seed,
                          std::size_t bootstrap_resamples) {
  require(repetitions >= 2, ErrorCode::InvalidArgument, "repetitions must be at least 2");
  require(bootstrap_resamples >= 2, ErrorCode::InvalidArgument,
          "bootstrap needs at least 2 resamples");
  require(events >= 1, ErrorCode::InvalidArgument, "events must be at least 1");
  Experiment out;
  TrialEnsemble& ens = out.ensemble;
  ens.repetitions = repetitions;
  ens.seed = seed;
  ens.nu = static_cast<double>(events);
  const std::vector<double> p = model.probabilities(phi_true);
  for (std::size_t r = 0; r < repetitions; ++r) {
    Rng rng = substream(seed, 0, r);
    ens.counts.push_back(sample_multinomial(rng, p, events));
    ens.estimates.push_back(estimate_phase(model, ens.counts.back()));
  }

  const double root_nu = std::sqrt(ens.nu);
  ErrorReport& rep = out.report;
  rep.sqrt_nu_dphi = sample_std(ens.estimates) * root_nu;

  std::vector<double> boot(bootstrap_resamples);
  std::vector<double> draw(repetitions);
  for (std::size_t b = 0; b < bootstrap_resamples; ++b) {
    Rng rng = substream(seed, 1, b);
    std::uniform_int_distribution<std::size_t> pick(0, repetitions - 1);
    for (double& x : draw) x = ens.estimates[pick(rng)];
    boot[b] = sample_std(draw) * root_nu;
  }
  rep.bootstrap_std = sample_std(boot);

  const double j = model.quoted_qfi();
  rep.cr_bound = j > 0.0 ? 1.0 / std::sqrt(j) : INFINITY;
  rep.shot_noise = 1.0 / std::sqrt(static_cast<double>(probe_count(model.scheme())));
  return out;
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  Rng rng = substream(seed, stream, index);
  return rng();
}

std::vector<ErrorCurveRow> error_curve(Scheme scheme, const std::vector<double>& grid,
                                       double visibility, std::uint64_t events,
                                       std::size_t repetitions, std::uint64_t seed) {
  require(!grid.empty(), ErrorCode::InvalidArgument, "error_curve: empty grid");
  std::vector<ErrorCurveRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const MeasurementModel model(scheme, grid[i], visibility);
    rows.push_back({grid[i], run_experiment(model, 0.0, events, repetitions,
                                            derived_seed(seed, static_cast<std::uint64_t>(scheme), i)).report});
  }
  return rows;
}

}  // namespace qmetro
