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
 * Monte-Carlo phase estimation with interferometric visibility.
 *
 * Every model has outcomes 0 and 1 as the phase-sensitive pair with
 * P0 - P1 = c sin(k phi), k = 1 for one probe and 2 for two probes; the
 * estimator inverts that contrast.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qmetro/random.hpp"

namespace qmetro {

enum class Scheme {
  AdSingleAssisted,
  DepolSingleAssisted,
  AdTwoProbeAssisted,
  AdSingleBare,
  DepolSingleBare,
  AdTwoProbeBare,
};

const char* to_string(Scheme scheme) noexcept;
bool is_assisted(Scheme scheme) noexcept;
std::size_t probe_count(Scheme scheme) noexcept;
/// The bare scheme sharing channel and probe count with `scheme`.
Scheme bare_counterpart(Scheme scheme) noexcept;

class MeasurementModel {
 public:
  MeasurementModel(Scheme scheme, double noise, double visibility);

  Scheme scheme() const noexcept { return scheme_; }
  double noise() const noexcept { return noise_; }
  double visibility() const noexcept { return visibility_; }
  std::vector<std::string> outcome_labels() const;

  std::vector<double> probabilities(double phi) const;
  std::vector<double> dprobabilities(double phi) const;

  /// P0 - P1 at k phi = pi/2.
  double contrast() const;

  /// v^2 (1 - eta), 2 v^2 (1 - eta)/(2 - eta), ... as quoted per scheme.
  double quoted_qfi() const;

 private:
  Scheme scheme_;
  double noise_;
  double visibility_;
};

/// sum_k (dP_k/dphi)^2 / P_k over outcomes with P_k > 1e-12.
double classical_fisher(const MeasurementModel& model, double phi);

std::vector<std::uint64_t> sample_counts(const MeasurementModel& model, double phi,
                                         std::uint64_t events, Rng& rng);
std::vector<std::uint64_t> sample_counts(const MeasurementModel& model, double phi,
                                         std::uint64_t events, std::uint64_t seed);

/// asin(clamp((n0 - n1)/(N c))) / k. Throws EstimationUndefined when the
/// contrast vanishes.
double estimate_phase(const MeasurementModel& model, const std::vector<std::uint64_t>& counts);

struct TrialEnsemble {
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<double> estimates;
  double nu = 0.0;
  std::size_t repetitions = 0;
  std::uint64_t seed = 0;
};

struct ErrorReport {
  double sqrt_nu_dphi = 0.0;
  double bootstrap_std = 0.0;
  double cr_bound = 0.0;
  double shot_noise = 0.0;
};

struct Experiment {
  TrialEnsemble ensemble;
  ErrorReport report;
};

inline constexpr std::size_t kBootstrapResamples = 200;

Experiment run_experiment(const MeasurementModel& model, double phi_true, std::uint64_t events,
                          std::size_t repetitions, std::uint64_t seed,
                          std::size_t bootstrap_resamples = kBootstrapResamples);

struct ErrorCurveRow {
  double noise = 0.0;
  ErrorReport report;
};

/// One experiment per grid point at phi = 0; point i uses a seed derived
/// from (seed, scheme, i), so curves of different schemes are independent.
std::vector<ErrorCurveRow> error_curve(Scheme scheme, const std::vector<double>& grid,
                                       double visibility, std::uint64_t events,
                                       std::size_t repetitions, std::uint64_t seed);

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace qmetro
