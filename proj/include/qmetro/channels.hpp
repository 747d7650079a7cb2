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
 * Kraus channels and phase-parameterized channel families.
 *
 * A family is Lambda_phi = E o U_phi: the phase unitary acts first and the
 * noise map E after it. Its Kraus operators are K_i(phi) = K_i U_phi.
 */

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qmetro/linalg.hpp"

namespace qmetro {

class KrausChannel {
 public:
  /// Throws InvalidArgument when the operators are not square, differ in
  /// size, or violate completeness by more than 1e-10.
  KrausChannel(std::vector<CMat> kraus, std::string label);

  const std::vector<CMat>& kraus() const noexcept { return kraus_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return kraus_.size(); }

  /// max |sum K^H K - 1|.
  double completeness_residual() const;

 private:
  std::vector<CMat> kraus_;
  std::string label_;
  std::size_t dim_ = 0;
};

/// diag(1, e^{i phi}).
CMat phase_unitary(double phi);

KrausChannel identity_channel(std::size_t dim);
KrausChannel amplitude_damping(double eta);
/// Kraus operators sqrt(p_i) Xi_i for Xi = (1, X, Y, Z). Zero-weight terms
/// are kept so the operator count is always four.
KrausChannel general_pauli(const std::array<double, 4>& p);
KrausChannel depolarizing(double p);

/// Sum K rho K^H on a raw matrix (no positivity checks).
CMat apply_map(const KrausChannel& ch, const CMat& rho);
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// K_i (x) 1 on a same-sized ancilla.
KrausChannel extend_with_ancilla(const KrausChannel& ch);

/// All n-fold tensor products of the Kraus operators.
KrausChannel collective(const KrausChannel& ch, std::size_t n);

/// Hermitian m x m matrix with the unconstrained parameterization
/// [h_00 .. h_{m-1,m-1}, then Re h_ij, Im h_ij for i < j row-major].
class GeneratorH {
 public:
  explicit GeneratorH(CMat h);
  static GeneratorH zero(std::size_t m);
  static GeneratorH from_params(std::size_t m, const RVec& params);

  RVec params() const;
  const CMat& mat() const noexcept { return h_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(h_.rows()); }

 private:
  CMat h_;
};

class PhaseChannelFamily {
 public:
  /// `generator` holds the diagonal of G where U_phi = exp(i phi G).
  PhaseChannelFamily(KrausChannel noise, RVec generator);

  /// Single probe: G = diag(0, 1), so U_phi matches phase_unitary.
  static PhaseChannelFamily single(KrausChannel noise);

  /// (E (x) 1) o (U_phi (x) 1) on probe (x) ancilla.
  PhaseChannelFamily extended() const;

  /// n probes in parallel: E^{(x)n} o U_phi^{(x)n}.
  PhaseChannelFamily collective(std::size_t n) const;

  const KrausChannel& noise() const noexcept { return noise_; }
  const RVec& generator() const noexcept { return generator_; }
  std::size_t dim() const noexcept { return noise_.dim(); }
  std::size_t kraus_count() const noexcept { return noise_.size(); }

  CMat unitary(double phi) const;
  CMat dunitary(double phi) const;
  std::vector<CMat> kraus_at(double phi) const;
  std::vector<CMat> dkraus_at(double phi) const;
  KrausChannel channel_at(double phi) const;

 private:
  KrausChannel noise_;
  RVec generator_;
};

/// First-order rotated derivatives K~'_i = K'_i - i sum_j h_ij K_j at phi0.
std::vector<CMat> rotate_kraus(const PhaseChannelFamily& fam, const GeneratorH& h,
                               double phi0);

/// sum_i K~'_i^H K~'_i for the rotated derivatives.
CMat alpha_operator(const std::vector<CMat>& dkraus);

}  // namespace qmetro
