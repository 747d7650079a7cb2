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

#include "qmetro/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>

#include "qmetro/error.hpp"
#include "qmetro/random.hpp"

namespace qmetro {

namespace {

void check_qubits(std::size_t qubits) {
  require(qubits == 1 || qubits == 2, ErrorCode::DimensionMismatch,
          "tomography supports one or two qubits");
}

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

CVec design_ket(std::size_t s) {
  const double r = 1.0 / std::numbers::sqrt2;
  CVec v(2);
  switch (s) {
    case 0: v << 1.0, 0.0; break;
    case 1: v << 0.0, 1.0; break;
    case 2: v << r, -kI * r; break;
    default: v << r, r; break;
  }
  return v;
}

CMat single_effect(std::size_t s, std::size_t outcome) {
  const CMat p = projector(design_ket(s));
  return outcome == 0 ? p : CMat(CMat::Identity(2, 2) - p);
}

// Real parameterization of a Hermitian D x D matrix: D diagonal entries,
// then (Re, Im) of each upper-triangular entry, row-major.
CMat chi_from_params(std::size_t d, const RVec& x) {
  const auto n = static_cast<Eigen::Index>(d);
  CMat chi = CMat::Zero(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index a = 0; a < n; ++a) chi(a, a) = x(k++);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      chi(a, b) = Complex(x(k), x(k + 1));
      chi(b, a) = std::conj(chi(a, b));
      k += 2;
    }
  }
  return chi;
}

struct Design {
  Eigen::MatrixXd pinv;  // params x rows
};

Design build_design(std::size_t qubits) {
  const std::vector<CMat>& basis = operator_basis(qubits);
  const std::vector<DensityMatrix> inputs = qpt_inputs(qubits);
  const std::size_t n_bases = ipow(4, qubits);
  const std::size_t n_out = ipow(2, qubits);
  const auto d = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index params = d * d;
  const auto rows = static_cast<Eigen::Index>(inputs.size() * n_bases * n_out);

  Eigen::MatrixXd design(rows, params);
  Eigen::Index row = 0;
  for (const DensityMatrix& rho : inputs) {
    std::vector<CMat> left(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) left[a] = basis[a] * rho.mat();
    for (std::size_t b = 0; b < n_bases; ++b) {
      for (std::size_t o = 0; o < n_out; ++o, ++row) {
        const CMat effect = qpt_effect(qubits, b, o);
        // T_ab = Tr(E B_a rho B_b^H).
        std::vector<CMat> right(basis.size());
        for (std::size_t c = 0; c < basis.size(); ++c) right[c] = basis[c].adjoint() * effect;
        auto t = [&](Eigen::Index a, Eigen::Index c) {
          return (right[static_cast<std::size_t>(c)].transpose().cwiseProduct(
                      left[static_cast<std::size_t>(a)]))
              .sum();
        };
        Eigen::Index k = 0;
        for (Eigen::Index a = 0; a < d; ++a) design(row, k++) = t(a, a).real();
        for (Eigen::Index a = 0; a < d; ++a) {
          for (Eigen::Index c = a + 1; c < d; ++c) {
            const Complex v = t(a, c);
            design(row, k++) = 2.0 * v.real();
            design(row, k++) = -2.0 * v.imag();
          }
        }
      }
    }
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
  require(cod.rank() == params, ErrorCode::SingularDesign,
          "tomography design matrix is rank deficient");
  return {cod.pseudoInverse()};
}

const Design& design_for(std::size_t qubits) {
  check_qubits(qubits);
  static const Design one = build_design(1);
  static const Design two = build_design(2);
  return qubits == 1 ? one : two;
}

ChiMatrix project_physical(CMat chi) {
  const EigenSystem es = eigh(hermitian_part(chi));
  RVec w = es.values.cwiseMax(0.0);
  const double total = w.sum();
  require(total > 0.0, ErrorCode::SingularDesign,
          "reconstruction produced no positive spectral weight");
  w /= total;
  CMat out = es.vectors * w.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  return {static_cast<std::size_t>(out.rows()), hermitian_part(out)};
}

QptDataset empty_dataset(const KrausChannel& ch, bool extended, const KrausChannel*& use,
                         std::optional<KrausChannel>& storage) {
  if (extended) {
    require(ch.dim() == 2, ErrorCode::DimensionMismatch,
            "extended tomography needs a single-qubit channel");
    storage.emplace(extend_with_ancilla(ch));
    use = &*storage;
  } else {
    require(ch.dim() == 2 || ch.dim() == 4, ErrorCode::DimensionMismatch,
            "tomography supports one- or two-qubit channels");
    use = &ch;
  }
  QptDataset data;
  data.qubits = use->dim() == 2 ? 1 : 2;
  data.input_count = ipow(4, data.qubits);
  data.basis_count = ipow(4, data.qubits);
  data.outcome_count = ipow(2, data.qubits);
  return data;
}

std::vector<double> born_table(const KrausChannel& ch, const QptDataset& data) {
  std::vector<double> probs(data.input_count * data.basis_count * data.outcome_count);
  const std::vector<DensityMatrix> inputs = qpt_inputs(data.qubits);
  for (std::size_t l = 0; l < data.input_count; ++l) {
    const CMat out = apply_map(ch, inputs[l].mat());
    for (std::size_t b = 0; b < data.basis_count; ++b)
      for (std::size_t o = 0; o < data.outcome_count; ++o)
        probs[data.index(l, b, o)] =
            std::max((qpt_effect(data.qubits, b, o) * out).trace().real(), 0.0);
  }
  return probs;
}

}  // namespace

const std::vector<CMat>& operator_basis(std::size_t qubits) {
  check_qubits(qubits);
  static const std::vector<CMat> one(pauli::basis().begin(), pauli::basis().end());
  static const std::vector<CMat> two = [] {
    std::vector<CMat> out;
    for (const CMat& a : pauli::basis())
      for (const CMat& b : pauli::basis()) out.push_back(tensor(a, b));
    return out;
  }();
  return qubits == 1 ? one : two;
}

ChiMatrix chi_theory(const KrausChannel& ch) {
  require(ch.dim() == 2 || ch.dim() == 4, ErrorCode::DimensionMismatch,
          "chi_theory supports one- or two-qubit channels");
  const std::vector<CMat>& basis = operator_basis(ch.dim() == 2 ? 1 : 2);
  const auto n = static_cast<Eigen::Index>(basis.size());
  const double d = static_cast<double>(ch.dim());
  CMat chi = CMat::Zero(n, n);
  for (const CMat& k : ch.kraus()) {
    CVec c(n);
    for (Eigen::Index a = 0; a < n; ++a)
      c(a) = (basis[static_cast<std::size_t>(a)].adjoint() * k).trace() / d;
    chi.noalias() += c * c.adjoint();
  }
  return {static_cast<std::size_t>(n), hermitian_part(chi)};
}

CMat apply_chi(const ChiMatrix& chi, const CMat& rho) {
  require(chi.dim_basis == 4 || chi.dim_basis == 16, ErrorCode::DimensionMismatch,
          "apply_chi: unsupported basis size");
  const std::vector<CMat>& basis = operator_basis(chi.dim_basis == 4 ? 1 : 2);
  require(rho.rows() == basis.front().rows(), ErrorCode::DimensionMismatch,
          "apply_chi: state dimension differs");
  CMat out = CMat::Zero(rho.rows(), rho.cols());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const CMat left = basis[a] * rho;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Complex c = chi.mat(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (c != Complex(0.0)) out += c * left * basis[b].adjoint();
    }
  }
  return out;
}

std::vector<DensityMatrix> qpt_inputs(std::size_t qubits) {
  check_qubits(qubits);
  std::vector<DensityMatrix> out;
  if (qubits == 1) {
    for (std::size_t s = 0; s < 4; ++s) out.push_back(DensityMatrix::pure(design_ket(s)));
  } else {
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t t = 0; t < 4; ++t)
        out.push_back(DensityMatrix::pure(tensor(design_ket(s), design_ket(t))));
  }
  return out;
}

CMat qpt_effect(std::size_t qubits, std::size_t basis, std::size_t outcome) {
  check_qubits(qubits);
  require(basis < ipow(4, qubits) && outcome < ipow(2, qubits), ErrorCode::InvalidArgument,
          "qpt_effect: index out of range");
  if (qubits == 1) return single_effect(basis, outcome);
  return tensor(single_effect(basis / 4, outcome / 2), single_effect(basis % 4, outcome % 2));
}

QptDataset simulate_qpt(const KrausChannel& ch, bool extended, std::size_t shots,
                        std::uint64_t seed) {
  require(shots >= 1, ErrorCode::InvalidArgument, "simulate_qpt: shots must be positive");
  const KrausChannel* use = nullptr;
  std::optional<KrausChannel> storage;
  QptDataset data = empty_dataset(ch, extended, use, storage);
  data.shots_per_setting = shots;
  const std::vector<double> probs = born_table(*use, data);
  data.counts.assign(probs.size(), 0);
  for (std::size_t l = 0; l < data.input_count; ++l) {
    for (std::size_t b = 0; b < data.basis_count; ++b) {
      const std::size_t setting = l * data.basis_count + b;
      Rng rng = substream(seed, setting);
      const std::span<const double> p(probs.data() + data.index(l, b, 0), data.outcome_count);
      const std::vector<std::uint64_t> c = sample_multinomial(rng, p, shots);
      std::copy(c.begin(), c.end(), data.counts.begin() + static_cast<std::ptrdiff_t>(
                                                              data.index(l, b, 0)));
    }
  }
  return data;
}

QptDataset exact_qpt(const KrausChannel& ch, bool extended) {
  const KrausChannel* use = nullptr;
  std::optional<KrausChannel> storage;
  QptDataset data = empty_dataset(ch, extended, use, storage);
  data.exact_probabilities = born_table(*use, data);
  data.counts.assign(data.exact_probabilities.size(), 0);
  return data;
}

ChiMatrix reconstruct_chi_from_frequencies(std::size_t qubits,
                                           const std::vector<double>& frequencies) {
  const Design& design = design_for(qubits);
  require(static_cast<Eigen::Index>(frequencies.size()) == design.pinv.cols(),
          ErrorCode::DimensionMismatch, "reconstruct_chi: frequency table has wrong size");
  const Eigen::Map<const RVec> f(frequencies.data(),
                                 static_cast<Eigen::Index>(frequencies.size()));
  const RVec x = design.pinv * f;
  const std::size_t d = operator_basis(qubits).size();
  return project_physical(chi_from_params(d, x));
}

ChiMatrix reconstruct_chi(const QptDataset& data) {
  check_qubits(data.qubits);
  if (data.exact()) return reconstruct_chi_from_frequencies(data.qubits, data.exact_probabilities);
  require(data.counts.size() == data.input_count * data.basis_count * data.outcome_count,
          ErrorCode::DimensionMismatch, "reconstruct_chi: count table has wrong size");
  std::vector<double> freq(data.counts.size(), 0.0);
  for (std::size_t s = 0; s < data.input_count * data.basis_count; ++s) {
    double total = 0.0;
    for (std::size_t o = 0; o < data.outcome_count; ++o)
      total += static_cast<double>(data.counts[s * data.outcome_count + o]);
    require(total > 0.0, ErrorCode::ZeroProbability, "reconstruct_chi: setting with no counts");
    for (std::size_t o = 0; o < data.outcome_count; ++o)
      freq[s * data.outcome_count + o] =
          static_cast<double>(data.counts[s * data.outcome_count + o]) / total;
  }
  return reconstruct_chi_from_frequencies(data.qubits, freq);
}

FidelityReport process_fidelity(const ChiMatrix& exp, const ChiMatrix& th) {
  require(exp.dim_basis == th.dim_basis && exp.mat.rows() == th.mat.rows(),
          ErrorCode::DimensionMismatch, "process_fidelity: basis sizes differ");
  const double ne = exp.mat.squaredNorm();
  const double nt = th.mat.squaredNorm();
  require(ne > 0.0 && nt > 0.0, ErrorCode::InvalidArgument,
          "process_fidelity: zero-norm process matrix");
  const Complex overlap = (th.mat.adjoint() * exp.mat).trace() / std::sqrt(ne * nt);
  require(std::abs(overlap.imag()) <= 1e-8, ErrorCode::VerificationFailed,
          "process_fidelity: overlap has an imaginary part");
  return {overlap.real(), std::abs(overlap.imag())};
}

double poisson_uncertainty(const QptDataset& data, const ChiMatrix& th,
                           std::size_t resamples, std::uint64_t seed) {
  require(resamples >= 2, ErrorCode::InvalidArgument,
          "poisson_uncertainty: need at least two resamples");
  require(!data.exact(), ErrorCode::InvalidArgument,
          "poisson_uncertainty: exact datasets carry no counts");
  std::vector<double> fid(resamples);
  for (std::size_t r = 0; r < resamples; ++r) {
    Rng rng = substream(seed, r);
    QptDataset redraw = data;
    for (std::size_t s = 0; s < data.input_count * data.basis_count; ++s) {
      std::uint64_t total = 0;
      for (std::size_t o = 0; o < data.outcome_count; ++o) {
        const std::size_t i = s * data.outcome_count + o;
        redraw.counts[i] = sample_poisson(rng, static_cast<double>(data.counts[i]));
        total += redraw.counts[i];
      }
      // A setting that redraws to nothing keeps its observed counts.
      if (total == 0)
        for (std::size_t o = 0; o < data.outcome_count; ++o)
          redraw.counts[s * data.outcome_count + o] = data.counts[s * data.outcome_count + o];
    }
    fid[r] = process_fidelity(reconstruct_chi(redraw), th).value;
  }
  double mean = 0.0;
  for (double f : fid) mean += f;
  mean /= static_cast<double>(resamples);
  double var = 0.0;
  for (double f : fid) var += (f - mean) * (f - mean);
  return std::sqrt(var / static_cast<double>(resamples - 1));
}

}  // namespace qmetro
