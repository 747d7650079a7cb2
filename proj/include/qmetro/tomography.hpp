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
 * Simulated process tomography in the Pauli (product) operator basis.
 *
 * Operator basis index a = 4n + m for Xi_n (x) Xi_m, probe first. Each
 * qubit is prepared in one of {|0>, |1>, (|0> - i|1>)/sqrt2, (|0> + |1>)/sqrt2}
 * and measured as the two-outcome pair {P_s, 1 - P_s} for the same four
 * states; two-qubit outcome index is 2 o_probe + o_ancilla.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmetro/channels.hpp"
#include "qmetro/linalg.hpp"

namespace qmetro {

struct ChiMatrix {
  std::size_t dim_basis = 0;  // 4 or 16
  CMat mat;
};

/// Pauli (product) operator basis for 1 or 2 qubits.
const std::vector<CMat>& operator_basis(std::size_t qubits);

/// chi_ab = sum_i c_ia conj(c_ib) with K_i = sum_a c_ia B_a.
ChiMatrix chi_theory(const KrausChannel& ch);

/// sum_ab chi_ab B_a rho B_b^H.
CMat apply_chi(const ChiMatrix& chi, const CMat& rho);

struct QptDataset {
  std::size_t qubits = 0;
  std::size_t shots_per_setting = 0;
  std::size_t input_count = 0;     // 4^qubits
  std::size_t basis_count = 0;     // 4^qubits
  std::size_t outcome_count = 0;   // 2^qubits
  // Flat [input][basis][outcome].
  std::vector<std::uint64_t> counts;
  // Born probabilities in the same layout; filled only for exact datasets,
  // in which case reconstruction uses them instead of the counts.
  std::vector<double> exact_probabilities;

  std::size_t index(std::size_t input, std::size_t basis, std::size_t outcome) const {
    return (input * basis_count + basis) * outcome_count + outcome;
  }
  bool exact() const noexcept { return !exact_probabilities.empty(); }
};

/// Preparation states of the design.
std::vector<DensityMatrix> qpt_inputs(std::size_t qubits);

/// Effect operator for (basis, outcome).
CMat qpt_effect(std::size_t qubits, std::size_t basis, std::size_t outcome);

/// Multinomial counts per (input, basis) setting; `extended` applies ch (x) 1.
QptDataset simulate_qpt(const KrausChannel& ch, bool extended, std::size_t shots,
                        std::uint64_t seed);

/// Infinite-shot dataset carrying the Born probabilities.
QptDataset exact_qpt(const KrausChannel& ch, bool extended);

/// Linear inversion, then Hermitian part, eigenvalue clipping at zero and
/// trace rescaled to one. Throws SingularDesign for a rank-deficient design.
ChiMatrix reconstruct_chi(const QptDataset& data);

/// Linear inversion on explicit per-setting frequencies (same layout).
ChiMatrix reconstruct_chi_from_frequencies(std::size_t qubits,
                                           const std::vector<double>& frequencies);

struct FidelityReport {
  double value = 0.0;
  double imaginary_residual = 0.0;
};

/// Re Tr(chi_th^H chi_exp) / sqrt(Tr(chi_exp^H chi_exp) Tr(chi_th^H chi_th)).
FidelityReport process_fidelity(const ChiMatrix& exp, const ChiMatrix& th);

/// Sample standard deviation of the fidelity against `th` over `resamples`
/// Poisson redraws of every count.
double poisson_uncertainty(const QptDataset& data, const ChiMatrix& th,
                           std::size_t resamples, std::uint64_t seed);

}  // namespace qmetro
