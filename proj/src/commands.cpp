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

#include "qmetro/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmetro/channels.hpp"
#include "qmetro/circuits.hpp"
#include "qmetro/estimation.hpp"
#include "qmetro/optics.hpp"
#include "qmetro/qfi.hpp"
#include "qmetro/serialize.hpp"
#include "qmetro/tomography.hpp"

namespace qmetro {

namespace {

constexpr double kPathTolerance = 1e-4;
constexpr double kOpticsFidelityFloor = 1.0 - 1e-6;
constexpr double kAngleTolerance = 1e-10;
constexpr double kSupplementTolerance = 1e-10;
constexpr double kQptSampledFloor = 0.99;
constexpr double kQptExactFloor = 1.0 - 1e-10;
constexpr std::uint64_t kDefaultShots = 20000;

std::string describe(double x) { return format_number(x); }

void check_probability(double x, const char* what) {
  require(std::isfinite(x) && x >= 0.0 && x <= 1.0, ErrorCode::InvalidArgument,
          std::string(what) + " must lie in [0, 1]");
}

std::array<double, 4> pauli_probabilities(const RunConfig& cfg) {
  bool any = false;
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (cfg.pauli[i]) any = true;
    p[i] = cfg.pauli[i].value_or(0.0);
  }
  if (!any) return {1.0, 0.0, 0.0, 0.0};
  return p;
}

double default_noise(ChannelKind kind) {
  return kind == ChannelKind::AmplitudeDamping ? 0.5 : 0.4;
}

/// Noise points for the ad/depol channels: the grid, the single
/// --eta/--p value, or the fallback.
std::vector<double> noise_points(const RunConfig& cfg, const std::vector<double>& fallback) {
  if (cfg.grid) return cfg.grid->values();
  const auto& single = cfg.channel == ChannelKind::AmplitudeDamping ? cfg.eta : cfg.p;
  if (single) return {*single};
  return fallback;
}

Json table_json(const RunConfig& cfg, const CsvTable& table) {
  return Json{{"command", to_string(cfg.command)}, {"rows", table.to_json()}};
}

std::string render(const RunConfig& cfg, const CsvTable& table) {
  if (cfg.format == OutputFormat::Json) return table_json(cfg, table).dump(2) + "\n";
  return table.str();
}

void finish(CommandOutput& out) {
  out.exit_code = out.failures.empty() ? kExitOk : kExitVerification;
}

KrausChannel target_channel(const RunConfig& cfg, double noise) {
  switch (cfg.channel) {
    case ChannelKind::AmplitudeDamping:
      return amplitude_damping(noise);
    case ChannelKind::Depolarizing:
      return depolarizing(noise);
    case ChannelKind::Pauli:
      break;
  }
  return general_pauli(pauli_probabilities(cfg));
}

// ---------------------------------------------------------------- qfi-curve

DensityMatrix bell_input() {
  CVec psi = CVec::Zero(4);
  psi(0) = psi(3) = 1.0 / std::numbers::sqrt2;
  return DensityMatrix::pure(psi);
}

DensityMatrix plus_input() {
  CVec psi(2);
  psi << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  return DensityMatrix::pure(psi);
}

double sld_path(const PhaseChannelFamily& fam, bool extended) {
  const DensityMatrix in = extended ? bell_input() : plus_input();
  const DensityMatrix out = DensityMatrix::trusted(output_state(fam, in, 0.0, extended));
  return sld_qfi(out, state_derivative(fam, in, 0.0, extended)).value;
}

double matrix_element_path(const PhaseChannelFamily& fam, bool extended, bool ad) {
  const DensityMatrix in = extended ? bell_input() : plus_input();
  const DensityMatrix out = DensityMatrix::trusted(output_state(fam, in, 0.0, extended));
  const MatrixElementKind kind =
      ad ? (extended ? MatrixElementKind::AdAssisted : MatrixElementKind::AdSingle)
         : (extended ? MatrixElementKind::DepolAssisted : MatrixElementKind::DepolSingle);
  return qfi_from_matrix_elements(out, kind);
}

CommandOutput qfi_curve(const RunConfig& cfg) {
  CommandOutput out;
  const bool ad = cfg.channel == ChannelKind::AmplitudeDamping;
  const auto grid = noise_points(cfg, GridSpec{0.0, 0.9, 0.1}.values());

  if (cfg.probes == 2) {
    CsvTable table({"noise", "qfi_two_probe_formula", "qfi_two_probe_sld",
                    "qfi_two_probe_bare_sld", "formula_minus_sld"});
    for (double eta : grid) {
      const double formula = two_probe_collective_ad_qfi(eta, 0.0);
      const double sld = two_probe_collective_ad_sld(eta, 0.0);
      table.add_row({eta, formula, sld, two_probe_bare_ad_sld(eta, 0.0), formula - sld});
    }
    out.body = render(cfg, table);
    return out;
  }

  std::vector<std::string> header{"noise", "qfi_assisted_closed", "qfi_bare_closed"};
  if (cfg.minimax)
    header.insert(header.end(), {"qfi_assisted_minimax", "qfi_bare_minimax", "qfi_assisted_sld",
                                 "qfi_bare_sld", "qfi_assisted_matrix_element",
                                 "qfi_bare_matrix_element"});
  CsvTable table(header);
  const ClosedFormKind kind = ad ? ClosedFormKind::AmplitudeDamping : ClosedFormKind::Depolarizing;
  MinimaxOptions options;
  options.seed = cfg.seed;
  for (double x : grid) {
    const double assisted = closed_form_qfi(kind, x, true);
    const double bare = closed_form_qfi(kind, x, false);
    std::vector<double> row{x, assisted, bare};
    if (cfg.minimax) {
      const auto fam = PhaseChannelFamily::single(ad ? amplitude_damping(x) : depolarizing(x));
      const std::vector<double> paths{
          channel_qfi_minimax(fam, true, 0.0, options).value,
          channel_qfi_minimax(fam, false, 0.0, options).value,
          sld_path(fam, true),
          sld_path(fam, false),
          matrix_element_path(fam, true, ad),
          matrix_element_path(fam, false, ad)};
      for (std::size_t i = 0; i < paths.size(); ++i) {
        const double reference = i % 2 == 0 ? assisted : bare;
        if (std::abs(paths[i] - reference) > kPathTolerance)
          out.failures.push_back(header[3 + i] + " at noise " + describe(x) + " differs from " +
                                 header[1 + i % 2]);
      }
      row.insert(row.end(), paths.begin(), paths.end());
    }
    table.add_row(row);
  }
  out.body = render(cfg, table);
  finish(out);
  return out;
}

// -------------------------------------------------------------- error-curve

Scheme assisted_scheme(const RunConfig& cfg) {
  if (cfg.probes == 2) return Scheme::AdTwoProbeAssisted;
  return cfg.channel == ChannelKind::AmplitudeDamping ? Scheme::AdSingleAssisted
                                                      : Scheme::DepolSingleAssisted;
}

double default_visibility(Scheme scheme) {
  switch (scheme) {
    case Scheme::AdSingleAssisted:
    case Scheme::AdSingleBare:
      return 0.9969;
    case Scheme::DepolSingleAssisted:
    case Scheme::DepolSingleBare:
      return 0.9928;
    case Scheme::AdTwoProbeAssisted:
    case Scheme::AdTwoProbeBare:
      break;
  }
  return 0.9699;
}

double theory_error(Scheme scheme, double noise, double v) {
  const double f = classical_fisher(MeasurementModel(scheme, noise, v), 0.0);
  return f > 0.0 ? 1.0 / std::sqrt(f) : INFINITY;
}

CommandOutput error_curve_command(const RunConfig& cfg) {
  CommandOutput out;
  const Scheme assisted = assisted_scheme(cfg);
  const Scheme bare = bare_counterpart(assisted);
  const Scheme measured = cfg.bare ? bare : assisted;
  const double v = cfg.visibility.value_or(default_visibility(assisted));
  const std::uint64_t events = cfg.events.value_or(cfg.probes == 2 ? 2000 : 20000);
  const std::size_t reps = cfg.repetitions.value_or(100);
  const auto grid = noise_points(cfg, GridSpec{0.0, 0.8, 0.1}.values());

  CsvTable table({"noise", "sqrt_nu_dphi", "bootstrap_std", "cr_bound", "shot_noise",
                  "theory_assisted", "theory_bare"});
  for (const ErrorCurveRow& row : error_curve(measured, grid, v, events, reps, cfg.seed)) {
    table.add_row({row.noise, row.report.sqrt_nu_dphi, row.report.bootstrap_std,
                   row.report.cr_bound, row.report.shot_noise,
                   theory_error(assisted, row.noise, v), theory_error(bare, row.noise, v)});
  }
  out.body = render(cfg, table);
  return out;
}

// ---------------------------------------------------------------------- qpt

CommandOutput qpt_command(const RunConfig& cfg) {
  CommandOutput out;
  const std::vector<double> grid = cfg.channel == ChannelKind::Pauli
                                       ? std::vector<double>{1.0 - pauli_probabilities(cfg)[0]}
                                       : noise_points(cfg, {default_noise(cfg.channel)});
  const bool extended = !cfg.bare;
  const std::uint64_t shots = cfg.events.value_or(kDefaultShots);
  const std::size_t resamples = cfg.repetitions.value_or(100);

  CsvTable table({"noise", "fidelity", "fidelity_std"});
  Json points = Json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double noise = grid[i];
    const KrausChannel ch = target_channel(cfg, noise);
    const ChiMatrix th = chi_theory(extended ? extend_with_ancilla(ch) : ch);
    const QptDataset data =
        cfg.exact ? exact_qpt(ch, extended)
                  : simulate_qpt(ch, extended, shots, derived_seed(cfg.seed, 0, i));
    const ChiMatrix exp = reconstruct_chi(data);
    const double fidelity = process_fidelity(exp, th).value;
    const double spread =
        cfg.exact ? 0.0 : poisson_uncertainty(data, th, resamples, derived_seed(cfg.seed, 1, i));
    table.add_row({noise, fidelity, spread});
    points.push_back(Json{{"noise", noise},
                          {"fidelity", fidelity},
                          {"fidelity_std", spread},
                          {"chi_exp", chi_to_json(exp)},
                          {"chi_th", chi_to_json(th)}});
    if (!cfg.exact)
      out.artifacts.emplace_back(".counts_" + std::to_string(i) + ".csv", counts_to_csv(data));
    const double floor = cfg.exact ? kQptExactFloor : kQptSampledFloor;
    if (fidelity < floor)
      out.failures.push_back("fidelity " + describe(fidelity) + " below " + describe(floor) +
                             " at noise " + describe(noise));
  }
  if (cfg.format == OutputFormat::Json) {
    out.body = Json{{"command", "qpt"}, {"points", points}}.dump(2) + "\n";
  } else {
    out.body = table.str();
    out.artifacts.emplace_back(".chi.json", points.dump(2) + "\n");
  }
  finish(out);
  return out;
}

// ------------------------------------------------------------ optics-verify

Json optics_point(const RunConfig& cfg, double noise, CommandOutput& out, CsvTable& table) {
  std::array<double, 4> p{};
  OpticalNetwork net;
  std::vector<double> angles;
  std::vector<double> residuals;
  if (cfg.channel == ChannelKind::AmplitudeDamping) {
    net = build_ad_network(noise);
    const double t = ad_plate_angle(noise);
    angles = {t};
    residuals = {std::cos(2 * t) + std::sqrt(1.0 - noise), std::sin(2 * t) - std::sqrt(noise)};
  } else {
    p = cfg.channel == ChannelKind::Depolarizing
            ? std::array<double, 4>{1.0 - 0.75 * noise, noise / 4, noise / 4, noise / 4}
            : pauli_probabilities(cfg);
    net = build_pauli_network(p);
    const PauliAngles solved = solve_pauli_angles(p);
    angles.assign(solved.theta.begin(), solved.theta.end());
    residuals.assign(solved.residuals.begin(), solved.residuals.end());
  }
  const KrausChannel target = cfg.channel == ChannelKind::AmplitudeDamping
                                  ? amplitude_damping(noise)
                                  : general_pauli(p);
  const KrausChannel extracted = extract_channel(net);
  const double fidelity =
      process_fidelity(chi_theory(extracted), chi_theory(target)).value;
  const auto d = static_cast<Eigen::Index>(net.space.io_dim());
  const double success =
      propagate(net, CMat::Identity(d, d) / static_cast<double>(d)).trace().real();
  double max_residual = 0.0;
  for (double r : residuals) max_residual = std::max(max_residual, std::abs(r));

  const bool passed = fidelity >= kOpticsFidelityFloor && max_residual <= kAngleTolerance;
  if (fidelity < kOpticsFidelityFloor)
    out.failures.push_back("process fidelity " + describe(fidelity) + " at noise " +
                           describe(noise));
  if (max_residual > kAngleTolerance)
    out.failures.push_back("angle residual " + describe(max_residual) + " at noise " +
                           describe(noise));
  table.add_row({noise, fidelity, success, max_residual});

  Json report{{"channel", cfg.channel == ChannelKind::AmplitudeDamping ? "ad"
                          : cfg.channel == ChannelKind::Depolarizing   ? "depol"
                                                                       : "pauli"},
              {"noise", noise},
              {"angles_rad", angles},
              {"residuals", residuals},
              {"max_residual", max_residual},
              {"process_fidelity", fidelity},
              {"success_probability", success},
              {"passed", passed},
              {"network", network_to_json(net)}};
  if (cfg.channel != ChannelKind::AmplitudeDamping) report["pauli"] = p;
  return report;
}

CommandOutput optics_verify(const RunConfig& cfg) {
  CommandOutput out;
  const std::vector<double> grid = cfg.channel == ChannelKind::Pauli
                                       ? std::vector<double>{1.0 - pauli_probabilities(cfg)[0]}
                                       : noise_points(cfg, {default_noise(cfg.channel)});
  CsvTable table({"noise", "process_fidelity", "success_probability", "max_residual"});
  Json reports = Json::array();
  for (double noise : grid) reports.push_back(optics_point(cfg, noise, out, table));
  if (cfg.format == OutputFormat::Json)
    out.body = Json{{"command", "optics-verify"}, {"points", reports}}.dump(2) + "\n";
  else
    out.body = table.str();
  finish(out);
  return out;
}

// -------------------------------------------------------- supplement-verify

CommandOutput supplement_verify(const RunConfig& cfg) {
  CommandOutput out;
  std::vector<double> grid;
  if (cfg.grid)
    grid = cfg.grid->values();
  else if (cfg.p)
    grid = {*cfg.p};
  else
    grid = GridSpec{0.0, 0.9, 0.1}.values();

  CsvTable table({"p", "conjugation_residual", "weight_flag0", "weight_flag1",
                  "block0_residual", "block1_residual", "conditional_residual",
                  "variance_assisted", "variance_bare", "consistency_residual"});
  for (double p : grid) {
    const double conj = conjugation_residual(p);
    const FlaggedOutputReport flagged = verify_flagged_output(p, 0.0);
    const VariancePair var = flagged_variance(p);
    const ConsistencyReport cons = variance_consistency_check(p);
    const double weight_residual = std::max(std::abs(flagged.weight0 - (1.0 - p / 2.0)),
                                            std::abs(flagged.weight1 - p / 2.0));
    const double worst = std::max({conj, weight_residual, flagged.block0_residual,
                                   flagged.block1_residual, flagged.conditional_residual,
                                   flagged.cross_norm, cons.residual});
    if (worst > kSupplementTolerance)
      out.failures.push_back("identity residual " + describe(worst) + " at p " + describe(p));
    table.add_row({p, conj, flagged.weight0, flagged.weight1, flagged.block0_residual,
                   flagged.block1_residual, flagged.conditional_residual, var.assisted,
                   var.bare, cons.residual});
  }
  out.body = render(cfg, table);
  finish(out);
  return out;
}

}  // namespace

const char* to_string(Command command) noexcept {
  switch (command) {
    case Command::QfiCurve:
      return "qfi-curve";
    case Command::ErrorCurve:
      return "error-curve";
    case Command::Qpt:
      return "qpt";
    case Command::OpticsVerify:
      return "optics-verify";
    case Command::SupplementVerify:
      return "supplement-verify";
  }
  return "unknown";
}

std::optional<Command> parse_command(const std::string& name) {
  for (Command c : {Command::QfiCurve, Command::ErrorCurve, Command::Qpt, Command::OpticsVerify,
                    Command::SupplementVerify})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

std::optional<ChannelKind> parse_channel(const std::string& name) {
  if (name == "ad") return ChannelKind::AmplitudeDamping;
  if (name == "depol") return ChannelKind::Depolarizing;
  if (name == "pauli") return ChannelKind::Pauli;
  return std::nullopt;
}

std::vector<double> GridSpec::values() const {
  require(std::isfinite(start) && std::isfinite(stop) && std::isfinite(step),
          ErrorCode::InvalidArgument, "grid: non-finite bound");
  require(step > 0.0, ErrorCode::InvalidArgument, "grid: step must be positive");
  require(stop >= start, ErrorCode::InvalidArgument, "grid: stop below start");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  require(n <= 100000, ErrorCode::InvalidArgument, "grid: too many points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

GridSpec parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = text.find(':', pos);
    const std::string piece = text.substr(pos, colon == std::string::npos ? colon : colon - pos);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(!piece.empty() && used == piece.size(), ErrorCode::InvalidArgument,
            "grid: cannot parse '" + text + "'");
    parts.push_back(value);
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) return GridSpec{parts[0], parts[0], 1.0};
  require(parts.size() == 3, ErrorCode::InvalidArgument, "grid: expected start:stop:step");
  GridSpec g{parts[0], parts[1], parts[2]};
  (void)g.values();
  return g;
}

void validate(const RunConfig& cfg) {
  const bool ad = cfg.channel == ChannelKind::AmplitudeDamping;
  const bool pauli = cfg.channel == ChannelKind::Pauli;
  if (cfg.grid)
    for (double x : cfg.grid->values()) check_probability(x, "grid value");
  if (cfg.eta) check_probability(*cfg.eta, "--eta");
  if (cfg.p) check_probability(*cfg.p, "--p");
  require(cfg.probes == 1 || cfg.probes == 2, ErrorCode::InvalidArgument,
          "--probes must be 1 or 2");
  if (cfg.events) require(*cfg.events >= 1, ErrorCode::InvalidArgument, "--events must be >= 1");
  if (cfg.repetitions)
    require(*cfg.repetitions >= 2, ErrorCode::InvalidArgument, "--reps must be >= 2");
  if (cfg.visibility)
    require(std::isfinite(*cfg.visibility) && *cfg.visibility > 0.0 && *cfg.visibility <= 1.0,
            ErrorCode::InvalidArgument, "--visibility must lie in (0, 1]");

  if (pauli) {
    double sum = 0.0;
    for (double x : pauli_probabilities(cfg)) {
      check_probability(x, "--p0..--p3");
      sum += x;
    }
    require(std::abs(sum - 1.0) <= 1e-9, ErrorCode::InvalidArgument,
            "--p0..--p3 must sum to 1");
    require(!cfg.grid, ErrorCode::InvalidArgument, "--grid does not apply to --channel pauli");
  } else {
    for (const auto& x : cfg.pauli)
      require(!x, ErrorCode::InvalidArgument, "--p0..--p3 require --channel pauli");
    require(!(ad && cfg.p), ErrorCode::InvalidArgument, "--channel ad takes --eta, not --p");
    require(!(!ad && cfg.eta), ErrorCode::InvalidArgument, "--channel depol takes --p, not --eta");
  }
  if (cfg.probes == 2)
    require(ad && (cfg.command == Command::QfiCurve || cfg.command == Command::ErrorCurve),
            ErrorCode::InvalidArgument,
            "--probes 2 applies to amplitude damping in qfi-curve and error-curve");

  switch (cfg.command) {
    case Command::QfiCurve:
    case Command::ErrorCurve:
      require(!pauli, ErrorCode::InvalidArgument, "this command takes --channel ad or depol");
      break;
    case Command::SupplementVerify:
      require(cfg.channel == ChannelKind::Depolarizing || (!cfg.eta && !pauli),
              ErrorCode::InvalidArgument, "supplement-verify concerns depolarizing noise only");
      if (cfg.grid)
        for (double x : cfg.grid->values())
          require(x < 1.0, ErrorCode::InvalidArgument, "supplement-verify needs p < 1");
      if (cfg.p) require(*cfg.p < 1.0, ErrorCode::InvalidArgument, "supplement-verify needs p < 1");
      break;
    case Command::Qpt:
    case Command::OpticsVerify:
      break;
  }
}

CommandOutput run_command(const RunConfig& cfg) {
  validate(cfg);
  switch (cfg.command) {
    case Command::QfiCurve:
      return qfi_curve(cfg);
    case Command::ErrorCurve:
      return error_curve_command(cfg);
    case Command::Qpt:
      return qpt_command(cfg);
    case Command::OpticsVerify:
      return optics_verify(cfg);
    case Command::SupplementVerify:
      return supplement_verify(cfg);
  }
  fail(ErrorCode::InvalidArgument, "unknown command");
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotHermitian:
    case ErrorCode::Parse:
      return kExitInvalidConfig;
    case ErrorCode::OptimizerFailure:
    case ErrorCode::SingularDesign:
    case ErrorCode::VerificationFailed:
    case ErrorCode::ZeroProbability:
    case ErrorCode::EstimationUndefined:
      return kExitVerification;
  }
  return kExitError;
}

}  // namespace qmetro
