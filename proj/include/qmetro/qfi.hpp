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
 * Quantum Fisher information: the SLD formula on explicit states, the
 * channel minimax over Kraus representations, and closed forms.
 */

#pragma once

#include <cstdint>
#include <optional>

#include "qmetro/channels.hpp"
#include "qmetro/linalg.hpp"

namespace qmetro {

enum class QfiMethod { Sld, Minimax, ClosedForm, MatrixElement };

const char* to_string(QfiMethod method) noexcept;

struct SldOperator {
  CMat mat;
  double support_cutoff = 1e-10;
};

struct QfiResult {
  double value = 0.0;
  QfiMethod method = QfiMethod::Sld;
  std::optional<DensityMatrix> optimal_input;
  std::optional<GeneratorH> optimal_h;
  std::optional<SldOperator> sld;
  // Minimax only: the concave lower bound matching `value` at the optimum.
  // For fixed-input evaluations both coincide.
  double dual_value = 0.0;
  int evaluations = 0;
};

/// Output state Lambda_phi(rho), with Lambda_phi (x) 1 when `extended`.
CMat output_state(const PhaseChannelFamily& fam, const DensityMatrix& rho_in, double phi,
                  bool extended);

/// d/dphi of output_state, evaluated analytically from the Kraus derivatives.
CMat state_derivative(const PhaseChannelFamily& fam, const DensityMatrix& rho_in,
                      double phi, bool extended);

/// J = sum over lambda_i + lambda_j > cutoff of 2 |<i|drho|j>|^2 / (lambda_i + lambda_j).
QfiResult sld_qfi(const DensityMatrix& rho, const CMat& drho, double cutoff = 1e-10);

/// max over the support of |d rho - (A rho + rho A)/2|, Frobenius norm.
double sld_residual(const DensityMatrix& rho, const CMat& drho, const SldOperator& sld);

enum class ClosedFormKind { AmplitudeDamping, Depolarizing };

/// 1 - eta, 2(1 - eta)/(2 - eta), (1 - p)^2, 2(1 - p)^2/(2 - p).
double closed_form_qfi(ClosedFormKind kind, double param, bool assisted);

/// Closed four-qubit collective-damping expression,
/// including its cos(8 phi) term.
double two_probe_collective_ad_qfi(double eta, double phi);

/// SLD value for (|0000> + |1111>)/sqrt2 with (AD o U_phi) on both probes
/// and two idle ancillas; the independent reference for the expression above.
double two_probe_collective_ad_sld(double eta, double phi);

/// SLD value for the two-probe N00N input without ancillas.
double two_probe_bare_ad_sld(double eta, double phi);

enum class ExtendedInput {
  // Probe half of (|00> + |11>)/sqrt2, i.e. reduced input 1/d.
  MaximallyEntangled,
  // Optimized over every probe-ancilla input (min over h of the spectral max).
  Optimal,
};

struct MinimaxOptions {
  ExtendedInput extended_input = ExtendedInput::MaximallyEntangled;
  int restarts = 8;
  std::uint64_t seed = 2018;
  int grid = 64;
  int max_evaluations = 20000;
};

/**
 * Channel QFI by minimization over equivalent Kraus representations.
 *
 * extended = false: max over pure probe states of 4 min_h Tr(rho alpha(h)).
 * extended = true: 4 min_h Tr(rho_A alpha(h)) at the maximally entangled
 * input, or 4 min_h lambda_max(alpha(h)) when the input is optimized.
 * Both require a qubit probe. Throws OptimizerFailure on non-convergence.
 */
QfiResult channel_qfi_minimax(const PhaseChannelFamily& fam, bool extended, double phi0,
                              const MinimaxOptions& options = {});

/// 4 min_h Tr(rho_A alpha(h)) for a fixed (possibly mixed) probe input;
/// an exact linear least-squares problem in the parameters of h.
QfiResult minimax_fixed_input(const PhaseChannelFamily& fam, const DensityMatrix& rho_a,
                              double phi0);

enum class MatrixElementKind { AdAssisted, AdSingle, DepolSingle, DepolAssisted };

/// [2|rho_12|]^2/(rho_11 + rho_22) and its two-qubit analogues on
/// the (1,4) and (2,3) coherences (1-based labels).
double qfi_from_matrix_elements(const DensityMatrix& rho, MatrixElementKind kind);

/// 1/sqrt(nu J).
double cramer_rao(double j, double nu);

}  // namespace qmetro
