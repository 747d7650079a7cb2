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
 * Jones-calculus simulation of polarization (x) lateral (x) longitudinal
 * mode networks.
 *
 * Basis index = (pol * n_lateral + lateral) * n_longitudinal + longitudinal
 * with pol H = 0, V = 1. Inputs enter lateral mode 0 and outputs are reduced
 * back to polarization (x) longitudinal.
 */

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qmetro/channels.hpp"
#include "qmetro/linalg.hpp"

namespace qmetro {

struct ModeSpace {
  std::size_t n_lateral = 1;
  std::size_t n_longitudinal = 1;

  std::size_t dim() const noexcept { return 2 * n_lateral * n_longitudinal; }
  std::size_t io_dim() const noexcept { return 2 * n_longitudinal; }
  std::size_t index(std::size_t pol, std::size_t lateral, std::size_t longitudinal) const {
    return (pol * n_lateral + lateral) * n_longitudinal + longitudinal;
  }
};

enum class ElementKind { Hwp, Qwp, Bd, Nbs, Dephase, Phase, Postselect };

const char* to_string(ElementKind kind) noexcept;

struct OpticalElement {
  ElementKind kind = ElementKind::Hwp;
  double angle = 0.0;                       // HWP/QWP axis or PHASE value, radians
  std::vector<std::size_t> modes;           // lateral modes acted on
  std::size_t polarization = 0;             // BD: displaced component
  std::size_t shift = 1;                    // BD: lateral displacement (cyclic)
  std::vector<std::vector<std::size_t>> blocks;  // DEPHASE partition

  static OpticalElement hwp(double theta, std::vector<std::size_t> modes);
  static OpticalElement qwp(double theta, std::vector<std::size_t> modes);
  static OpticalElement bd(std::size_t polarization, std::size_t shift);
  static OpticalElement nbs(std::size_t a, std::size_t b);
  static OpticalElement dephase(std::vector<std::vector<std::size_t>> blocks);
  static OpticalElement phase(double phi, std::vector<std::size_t> modes);
  static OpticalElement postselect(std::vector<std::size_t> modes);
};

struct OpticalNetwork {
  ModeSpace space;
  std::vector<OpticalElement> elements;
};

/// [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
CMat jones_hwp(double theta);

/// Quarter-wave retarder with fast axis at theta; QWP(0) = diag(1, i).
CMat jones_qwp(double theta);

/// Full-space matrix of a unitary element; throws for DEPHASE/POSTSELECT.
CMat element_unitary(const ModeSpace& space, const OpticalElement& element);

/// Product of all elements when none of them is DEPHASE or POSTSELECT.
CMat network_unitary(const OpticalNetwork& net);

/// Linear, unnormalized action on an operator of the input space:
/// postselection projects without renormalizing.
CMat propagate(const OpticalNetwork& net, const CMat& op);

struct NetworkOutput {
  DensityMatrix state;
  double success_probability;
};

/// Throws ZeroProbability when the postselected weight vanishes.
NetworkOutput apply_network(const OpticalNetwork& net, const DensityMatrix& rho_in);

/// Angle of the amplitude-damping plate: cos 2t = -sqrt(1 - eta), sin 2t = sqrt(eta).
double ad_plate_angle(double eta);

OpticalNetwork build_ad_network(double eta);

struct PauliAngles {
  std::array<double, 6> theta{};
  std::array<double, 8> residuals{};
  double max_residual() const;
};

/// Successive closed-form inversion of the eight ratio relations.
PauliAngles solve_pauli_angles(const std::array<double, 4>& p);

/// Residuals of the eight relations for arbitrary angles.
std::array<double, 8> pauli_angle_residuals(const std::array<double, 4>& p,
                                            const std::array<double, 6>& theta);

OpticalNetwork build_pauli_network(const std::array<double, 4>& p);

/// Kraus form of the normalized input-output map, via its Choi matrix.
/// Throws VerificationFailed for a map that is not CP or not trace
/// preserving after normalization (tolerances 1e-9 and 1e-8).
KrausChannel extract_channel(const OpticalNetwork& net);

}  // namespace qmetro
