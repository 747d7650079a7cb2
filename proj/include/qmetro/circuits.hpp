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
 * Depolarizing noise pushed through probe-controlled CNOTs: the two-qubit
 * operation F and the ancilla-flagged estimator it yields.
 *
 * Two-qubit operators are ordered probe (x) ancilla.
 */

#pragma once

#include "qmetro/channels.hpp"
#include "qmetro/linalg.hpp"

namespace qmetro {

/// Probe-controlled NOT on probe (x) ancilla.
CMat cnot();

/// Kraus operators sqrt(1 - 3p/4) 1(x)1, sqrt(p/4) {Z(x)1, X(x)X, Y(x)X}.
KrausChannel build_F(double p);

/// sum_ij |i><j| (x) Lambda(|i><j|).
CMat choi(const KrausChannel& ch);

/// max |Choi(F) - Choi(CNOT (E (x) 1) CNOT)| for depolarizing E.
double conjugation_residual(double p);

struct FlaggedOutputReport {
  CMat block0;   // <0|_anc rho |0>_anc (unnormalized probe block)
  CMat block1;   // <1|_anc rho |1>_anc
  double weight0 = 0.0;
  double weight1 = 0.0;
  double cross_norm = 0.0;        // norm of the ancilla off-diagonal blocks
  double block0_residual = 0.0;   // vs (1-p) U|+><+|U^H + (p/4) 1
  double block1_residual = 0.0;   // vs (p/4) 1
  double conditional_residual = 0.0;  // normalized block0 vs (1-q) U|+><+|U^H + q 1/2
  double q = 0.0;
};

/// F o (U_phi (x) 1) applied to |+>|0>, decomposed on the ancilla.
FlaggedOutputReport verify_flagged_output(double p, double phi);

struct VariancePair {
  double assisted;
  double bare;
};

/// ((1 - p/2)/(1 - p)^2, 1/(1 - p)^2); throws for p = 1.
VariancePair flagged_variance(double p);

struct ConsistencyReport {
  double inverse_assisted_variance = 0.0;
  double closed_form = 0.0;
  double residual = 0.0;
};

/// Compares 1/assisted variance with 2(1 - p)^2/(2 - p).
ConsistencyReport variance_consistency_check(double p);

}  // namespace qmetro
