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

#include "qmetro/circuits.hpp"

#include <cmath>
#include <numbers>

#include "qmetro/error.hpp"
#include "qmetro/qfi.hpp"

namespace qmetro {

namespace {

void check_p(double p) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0, ErrorCode::InvalidArgument,
          "p must lie in [0, 1]");
}

}  // namespace

CMat cnot() {
  CMat c = CMat::Zero(4, 4);
  c(0, 0) = c(1, 1) = 1.0;
  c(2, 3) = c(3, 2) = 1.0;
  return c;
}

KrausChannel build_F(double p) {
  check_p(p);
  const CMat id = pauli::identity();
  const double w = std::sqrt(p / 4.0);
  return KrausChannel({std::sqrt(1.0 - 3.0 * p / 4.0) * tensor(id, id),
                       w * tensor(pauli::z(), id), w * tensor(pauli::x(), pauli::x()),
                       w * tensor(pauli::y(), pauli::x())},
                      "F");
}

CMat choi(const KrausChannel& ch) {
  const auto n = static_cast<Eigen::Index>(ch.dim());
  CMat out = CMat::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      CMat e = CMat::Zero(n, n);
      e(i, j) = 1.0;
      out.block(i * n, j * n, n, n) = apply_map(ch, e);
    }
  }
  return out;
}

double conjugation_residual(double p) {
  const CMat c = cnot();
  std::vector<CMat> conj;
  const KrausChannel extended = extend_with_ancilla(depolarizing(p));
  for (const CMat& k : extended.kraus()) conj.push_back(c * k * c);
  const KrausChannel circuit(std::move(conj), "cnot_conjugated_depolarizing");
  return max_abs_diff(choi(build_F(p)), choi(circuit));
}

FlaggedOutputReport verify_flagged_output(double p, double phi) {
  check_p(p);
  const double r = 1.0 / std::numbers::sqrt2;
  CVec plus(2);
  plus << r, r;
  CVec zero(2);
  zero << 1.0, 0.0;
  const CMat u = phase_unitary(phi);
  const CMat in = projector(tensor(u * plus, zero));
  const CMat out = apply_map(build_F(p), in);

  FlaggedOutputReport rep;
  CMat b0(2, 2);
  CMat b1(2, 2);
  CMat x(2, 2);
  for (Eigen::Index a = 0; a < 2; ++a)
    for (Eigen::Index b = 0; b < 2; ++b) {
      b0(a, b) = out(2 * a, 2 * b);
      b1(a, b) = out(2 * a + 1, 2 * b + 1);
      x(a, b) = out(2 * a, 2 * b + 1);
    }
  rep.block0 = b0;
  rep.block1 = b1;
  rep.weight0 = b0.trace().real();
  rep.weight1 = b1.trace().real();
  rep.cross_norm = x.norm();

  const CMat rotated = projector(u * plus);
  const CMat id = CMat::Identity(2, 2);
  rep.block0_residual = max_abs_diff(b0, (1.0 - p) * rotated + (p / 4.0) * id);
  rep.block1_residual = max_abs_diff(b1, (p / 4.0) * id);
  rep.q = (p / 2.0) / (1.0 - p / 2.0);
  if (rep.weight0 > 0.0)
    rep.conditional_residual =
        max_abs_diff(b0 / rep.weight0, (1.0 - rep.q) * rotated + rep.q * id / 2.0);
  return rep;
}

VariancePair flagged_variance(double p) {
  check_p(p);
  require(p < 1.0, ErrorCode::InvalidArgument, "flagged_variance: p must be below 1");
  const double d = (1.0 - p) * (1.0 - p);
  return {(1.0 - p / 2.0) / d, 1.0 / d};
}

ConsistencyReport variance_consistency_check(double p) {
  const VariancePair v = flagged_variance(p);
  ConsistencyReport rep;
  rep.inverse_assisted_variance = 1.0 / v.assisted;
  rep.closed_form = closed_form_qfi(ClosedFormKind::Depolarizing, p, true);
  rep.residual = std::abs(rep.inverse_assisted_variance - rep.closed_form);
  return rep;
}

}  // namespace qmetro
