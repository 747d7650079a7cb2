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

#include "qmetro/qmetro.h"

#include <exception>
#include <functional>
#include <new>
#include <string>
#include <utility>

#include "qmetro/channels.hpp"
#include "qmetro/commands.hpp"
#include "qmetro/error.hpp"
#include "qmetro/estimation.hpp"
#include "qmetro/qfi.hpp"
#include "qmetro/serialize.hpp"
#include "qmetro/tomography.hpp"

struct qm_text {
  std::string data;
};

struct qm_channel {
  qmetro::KrausChannel channel;
};

struct qm_qpt_dataset {
  qmetro::QptDataset data;
  bool extended;
};

struct qm_report {
  qmetro::CommandOutput output;
};

namespace {

thread_local std::string last_error;

qm_status status_for(qmetro::ErrorCode code) {
  using qmetro::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument:
      return QM_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch:
      return QM_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NotHermitian:
      return QM_ERR_NOT_HERMITIAN;
    case ErrorCode::OptimizerFailure:
      return QM_ERR_OPTIMIZER_FAILURE;
    case ErrorCode::SingularDesign:
      return QM_ERR_SINGULAR_DESIGN;
    case ErrorCode::ZeroProbability:
      return QM_ERR_ZERO_PROBABILITY;
    case ErrorCode::EstimationUndefined:
      return QM_ERR_ESTIMATION_UNDEFINED;
    case ErrorCode::VerificationFailed:
      return QM_ERR_VERIFICATION_FAILED;
    case ErrorCode::Parse:
      return QM_ERR_PARSE;
  }
  return QM_ERR_INTERNAL;
}

qm_status fail_with(qm_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

/// Runs fn, translating exceptions into status codes.
template <class F>
qm_status guarded(F&& fn) {
  try {
    fn();
    return QM_OK;
  } catch (const qmetro::Error& e) {
    return fail_with(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(QM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(QM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail_with(QM_ERR_INTERNAL, "unknown exception");
  }
}

qm_status null_argument(const char* name) {
  return fail_with(QM_ERR_INVALID_ARGUMENT, std::string(name) + " is NULL");
}

qm_status make_channel(qm_channel** out, const std::function<qmetro::KrausChannel()>& build) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new qm_channel{build()}; });
}

qmetro::RunConfig to_config(const qm_config& c) {
  using namespace qmetro;
  RunConfig cfg;
  switch (c.command) {
    case QM_CMD_QFI_CURVE:
      cfg.command = Command::QfiCurve;
      break;
    case QM_CMD_ERROR_CURVE:
      cfg.command = Command::ErrorCurve;
      break;
    case QM_CMD_QPT:
      cfg.command = Command::Qpt;
      break;
    case QM_CMD_OPTICS_VERIFY:
      cfg.command = Command::OpticsVerify;
      break;
    case QM_CMD_SUPPLEMENT_VERIFY:
      cfg.command = Command::SupplementVerify;
      break;
    default:
      fail(ErrorCode::InvalidArgument, "unknown command");
  }
  switch (c.channel) {
    case QM_CHANNEL_AD:
      cfg.channel = ChannelKind::AmplitudeDamping;
      break;
    case QM_CHANNEL_DEPOL:
      cfg.channel = ChannelKind::Depolarizing;
      break;
    case QM_CHANNEL_PAULI:
      cfg.channel = ChannelKind::Pauli;
      break;
    default:
      fail(ErrorCode::InvalidArgument, "unknown channel");
  }
  require(c.format == QM_FORMAT_CSV || c.format == QM_FORMAT_JSON, ErrorCode::InvalidArgument,
          "unknown format");
  if (c.has_eta) cfg.eta = c.eta;
  if (c.has_p) cfg.p = c.p;
  for (int i = 0; i < 4; ++i)
    if (c.has_pauli[i]) cfg.pauli[static_cast<std::size_t>(i)] = c.pauli[i];
  if (c.has_grid) cfg.grid = GridSpec{c.grid_start, c.grid_stop, c.grid_step};
  if (c.has_events) cfg.events = c.events;
  if (c.has_repetitions) cfg.repetitions = static_cast<std::size_t>(c.repetitions);
  if (c.has_visibility) cfg.visibility = c.visibility;
  cfg.seed = c.seed;
  cfg.format = c.format == QM_FORMAT_JSON ? OutputFormat::Json : OutputFormat::Csv;
  cfg.exact = c.exact != 0;
  cfg.minimax = c.minimax != 0;
  cfg.probes = c.probes;
  cfg.bare = c.bare != 0;
  return cfg;
}

}  // namespace

extern "C" {

const char* qm_status_string(qm_status status) {
  switch (status) {
    case QM_OK:
      return "ok";
    case QM_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case QM_ERR_DIMENSION_MISMATCH:
      return "dimension mismatch";
    case QM_ERR_NOT_HERMITIAN:
      return "not Hermitian";
    case QM_ERR_OPTIMIZER_FAILURE:
      return "optimizer failure";
    case QM_ERR_SINGULAR_DESIGN:
      return "singular design";
    case QM_ERR_ZERO_PROBABILITY:
      return "zero probability";
    case QM_ERR_ESTIMATION_UNDEFINED:
      return "estimation undefined";
    case QM_ERR_VERIFICATION_FAILED:
      return "verification failed";
    case QM_ERR_PARSE:
      return "parse error";
    case QM_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* qm_last_error(void) { return last_error.c_str(); }

const char* qm_version(void) { return "1.0.0"; }

int qm_exit_code(qm_status status) {
  switch (status) {
    case QM_OK:
      return qmetro::kExitOk;
    case QM_ERR_INVALID_ARGUMENT:
    case QM_ERR_DIMENSION_MISMATCH:
    case QM_ERR_NOT_HERMITIAN:
    case QM_ERR_PARSE:
      return qmetro::kExitInvalidConfig;
    case QM_ERR_OPTIMIZER_FAILURE:
    case QM_ERR_SINGULAR_DESIGN:
    case QM_ERR_ZERO_PROBABILITY:
    case QM_ERR_ESTIMATION_UNDEFINED:
    case QM_ERR_VERIFICATION_FAILED:
      return qmetro::kExitVerification;
    case QM_ERR_INTERNAL:
      break;
  }
  return qmetro::kExitError;
}

const char* qm_text_data(const qm_text* text) { return text ? text->data.c_str() : ""; }
size_t qm_text_size(const qm_text* text) { return text ? text->data.size() : 0; }
void qm_text_free(qm_text* text) { delete text; }

qm_status qm_channel_amplitude_damping(double eta, qm_channel** out) {
  return make_channel(out, [eta] { return qmetro::amplitude_damping(eta); });
}

qm_status qm_channel_depolarizing(double p, qm_channel** out) {
  return make_channel(out, [p] { return qmetro::depolarizing(p); });
}

qm_status qm_channel_pauli(const double p[4], qm_channel** out) {
  if (!p) return null_argument("p");
  return make_channel(out, [p] { return qmetro::general_pauli({p[0], p[1], p[2], p[3]}); });
}

qm_status qm_channel_from_json(const char* json, qm_channel** out) {
  if (!json) return null_argument("json");
  return make_channel(out, [json] {
    qmetro::Json j;
    try {
      j = qmetro::Json::parse(json);
    } catch (const qmetro::Json::exception& e) {
      qmetro::fail(qmetro::ErrorCode::Parse, e.what());
    }
    return qmetro::channel_from_json(j);
  });
}

qm_status qm_channel_to_json(const qm_channel* channel, qm_text** out) {
  if (!channel) return null_argument("channel");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new qm_text{qmetro::channel_to_json(channel->channel).dump()}; });
}

size_t qm_channel_dim(const qm_channel* channel) { return channel ? channel->channel.dim() : 0; }

size_t qm_channel_kraus_count(const qm_channel* channel) {
  return channel ? channel->channel.size() : 0;
}

void qm_channel_free(qm_channel* channel) { delete channel; }

qm_status qm_closed_form_qfi(qm_noise noise, double param, int assisted, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    qmetro::require(noise == QM_NOISE_AMPLITUDE_DAMPING || noise == QM_NOISE_DEPOLARIZING,
                    qmetro::ErrorCode::InvalidArgument, "unknown noise kind");
    *out = qmetro::closed_form_qfi(noise == QM_NOISE_AMPLITUDE_DAMPING
                                       ? qmetro::ClosedFormKind::AmplitudeDamping
                                       : qmetro::ClosedFormKind::Depolarizing,
                                   param, assisted != 0);
  });
}

qm_status qm_channel_qfi(const qm_channel* channel, int extended, double phi0, double* out) {
  if (!channel) return null_argument("channel");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto fam = qmetro::PhaseChannelFamily::single(channel->channel);
    *out = qmetro::channel_qfi_minimax(fam, extended != 0, phi0).value;
  });
}

qm_status qm_two_probe_qfi(double eta, double phi, double* formula, double* simulated) {
  if (!formula) return null_argument("formula");
  if (!simulated) return null_argument("simulated");
  return guarded([&] {
    *formula = qmetro::two_probe_collective_ad_qfi(eta, phi);
    *simulated = qmetro::two_probe_collective_ad_sld(eta, phi);
  });
}

qm_status qm_classical_fisher(qm_scheme scheme, double noise, double visibility, double phi,
                              double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    qmetro::require(scheme >= QM_SCHEME_AD_SINGLE_ASSISTED && scheme <= QM_SCHEME_AD_TWO_PROBE_BARE,
                    qmetro::ErrorCode::InvalidArgument, "unknown scheme");
    const qmetro::MeasurementModel model(static_cast<qmetro::Scheme>(scheme), noise, visibility);
    *out = qmetro::classical_fisher(model, phi);
  });
}

qm_status qm_qpt_simulate(const qm_channel* channel, int extended, uint64_t shots, uint64_t seed,
                          qm_qpt_dataset** out) {
  if (!channel) return null_argument("channel");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new qm_qpt_dataset{
        qmetro::simulate_qpt(channel->channel, extended != 0, static_cast<std::size_t>(shots), seed),
        extended != 0};
  });
}

qm_status qm_qpt_exact(const qm_channel* channel, int extended, qm_qpt_dataset** out) {
  if (!channel) return null_argument("channel");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new qm_qpt_dataset{qmetro::exact_qpt(channel->channel, extended != 0), extended != 0};
  });
}

qm_status qm_qpt_fidelity(const qm_qpt_dataset* data, const qm_channel* target, double* out) {
  if (!data) return null_argument("data");
  if (!target) return null_argument("target");
  if (!out) return null_argument("out");
  return guarded([&] {
    const qmetro::ChiMatrix th = qmetro::chi_theory(
        data->extended ? qmetro::extend_with_ancilla(target->channel) : target->channel);
    *out = qmetro::process_fidelity(qmetro::reconstruct_chi(data->data), th).value;
  });
}

qm_status qm_qpt_counts_csv(const qm_qpt_dataset* data, qm_text** out) {
  if (!data) return null_argument("data");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new qm_text{qmetro::counts_to_csv(data->data)}; });
}

void qm_qpt_dataset_free(qm_qpt_dataset* data) { delete data; }

void qm_config_init(qm_config* config) {
  if (!config) return;
  *config = qm_config{};
  config->command = QM_CMD_QFI_CURVE;
  config->channel = QM_CHANNEL_AD;
  config->grid_step = 0.1;
  config->seed = 2018;
  config->format = QM_FORMAT_CSV;
  config->probes = 1;
}

qm_status qm_parse_command(const char* name, qm_command* out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  const auto c = qmetro::parse_command(name);
  if (!c) return fail_with(QM_ERR_INVALID_ARGUMENT, std::string("unknown command: ") + name);
  *out = static_cast<qm_command>(*c);
  return QM_OK;
}

qm_status qm_parse_channel(const char* name, qm_channel_kind* out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  const auto c = qmetro::parse_channel(name);
  if (!c) return fail_with(QM_ERR_INVALID_ARGUMENT, std::string("unknown channel: ") + name);
  *out = static_cast<qm_channel_kind>(*c);
  return QM_OK;
}

qm_status qm_parse_grid(const char* text, double* start, double* stop, double* step) {
  if (!text) return null_argument("text");
  if (!start || !stop || !step) return null_argument("output");
  return guarded([&] {
    const qmetro::GridSpec g = qmetro::parse_grid(text);
    *start = g.start;
    *stop = g.stop;
    *step = g.step;
  });
}

qm_status qm_run(const qm_config* config, qm_report** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new qm_report{qmetro::run_command(to_config(*config))}; });
}

int qm_report_exit_code(const qm_report* report) {
  return report ? report->output.exit_code : qmetro::kExitError;
}

const char* qm_report_body(const qm_report* report) {
  return report ? report->output.body.c_str() : "";
}

size_t qm_report_artifact_count(const qm_report* report) {
  return report ? report->output.artifacts.size() : 0;
}

const char* qm_report_artifact_suffix(const qm_report* report, size_t index) {
  if (!report || index >= report->output.artifacts.size()) return nullptr;
  return report->output.artifacts[index].first.c_str();
}

const char* qm_report_artifact_content(const qm_report* report, size_t index) {
  if (!report || index >= report->output.artifacts.size()) return nullptr;
  return report->output.artifacts[index].second.c_str();
}

size_t qm_report_failure_count(const qm_report* report) {
  return report ? report->output.failures.size() : 0;
}

const char* qm_report_failure(const qm_report* report, size_t index) {
  if (!report || index >= report->output.failures.size()) return nullptr;
  return report->output.failures[index].c_str();
}

void qm_report_free(qm_report* report) { delete report; }

}  // extern "C"
