/* Copyright 2026 The qmetro Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the qmetro library.
 *
 * Every fallible call returns a qm_status; on failure qm_last_error() holds a
 * message for the calling thread until its next failing call. Objects are
 * opaque and released with the matching *_free function, which accepts NULL.
 */

#ifndef QMETRO_QMETRO_H_
#define QMETRO_QMETRO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(QMETRO_BUILDING_LIBRARY)
#define QM_API __attribute__((visibility("default")))
#else
#define QM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qm_status {
  QM_OK = 0,
  QM_ERR_INVALID_ARGUMENT = 1,
  QM_ERR_DIMENSION_MISMATCH = 2,
  QM_ERR_NOT_HERMITIAN = 3,
  QM_ERR_OPTIMIZER_FAILURE = 4,
  QM_ERR_SINGULAR_DESIGN = 5,
  QM_ERR_ZERO_PROBABILITY = 6,
  QM_ERR_ESTIMATION_UNDEFINED = 7,
  QM_ERR_VERIFICATION_FAILED = 8,
  QM_ERR_PARSE = 9,
  QM_ERR_INTERNAL = 10
} qm_status;

QM_API const char* qm_status_string(qm_status status);
QM_API const char* qm_last_error(void);
QM_API const char* qm_version(void);

/* Process exit code for a status: 0, 2 (configuration), 3 (numerical or
 * verification failure) or 1. */
QM_API int qm_exit_code(qm_status status);

/* ---------------------------------------------------------------- text */

typedef struct qm_text qm_text;

QM_API const char* qm_text_data(const qm_text* text);
QM_API size_t qm_text_size(const qm_text* text);
QM_API void qm_text_free(qm_text* text);

/* ------------------------------------------------------------ channels */

typedef struct qm_channel qm_channel;

QM_API qm_status qm_channel_amplitude_damping(double eta, qm_channel** out);
QM_API qm_status qm_channel_depolarizing(double p, qm_channel** out);
/* p[0..3]: weights of I, X, Y, Z. */
QM_API qm_status qm_channel_pauli(const double p[4], qm_channel** out);
/* {label, dim, kraus: [[[re, im], ...], ...]} with row-major operators. */
QM_API qm_status qm_channel_from_json(const char* json, qm_channel** out);
QM_API qm_status qm_channel_to_json(const qm_channel* channel, qm_text** out);
QM_API size_t qm_channel_dim(const qm_channel* channel);
QM_API size_t qm_channel_kraus_count(const qm_channel* channel);
QM_API void qm_channel_free(qm_channel* channel);

/* --------------------------------------------------------------- QFI */

typedef enum qm_noise { QM_NOISE_AMPLITUDE_DAMPING = 0, QM_NOISE_DEPOLARIZING = 1 } qm_noise;

QM_API qm_status qm_closed_form_qfi(qm_noise noise, double param, int assisted, double* out);

/* Channel QFI of the family channel o exp(i phi diag(0, 1)) at phi0, by
 * minimization over Kraus representations; qubit channels only. */
QM_API qm_status qm_channel_qfi(const qm_channel* channel, int extended, double phi0,
                                double* out);

/* Collective two-probe amplitude damping: the closed expression and the
 * value computed from the simulated state. */
QM_API qm_status qm_two_probe_qfi(double eta, double phi, double* formula, double* simulated);

/* ---------------------------------------------------------- estimation */

typedef enum qm_scheme {
  QM_SCHEME_AD_SINGLE_ASSISTED = 0,
  QM_SCHEME_DEPOL_SINGLE_ASSISTED = 1,
  QM_SCHEME_AD_TWO_PROBE_ASSISTED = 2,
  QM_SCHEME_AD_SINGLE_BARE = 3,
  QM_SCHEME_DEPOL_SINGLE_BARE = 4,
  QM_SCHEME_AD_TWO_PROBE_BARE = 5
} qm_scheme;

QM_API qm_status qm_classical_fisher(qm_scheme scheme, double noise, double visibility,
                                     double phi, double* out);

/* ---------------------------------------------------------- tomography */

typedef struct qm_qpt_dataset qm_qpt_dataset;

QM_API qm_status qm_qpt_simulate(const qm_channel* channel, int extended, uint64_t shots,
                                 uint64_t seed, qm_qpt_dataset** out);
QM_API qm_status qm_qpt_exact(const qm_channel* channel, int extended, qm_qpt_dataset** out);
/* Reconstructs the process matrix and returns its fidelity to `target`
 * (extended with an identity ancilla when the dataset is). */
QM_API qm_status qm_qpt_fidelity(const qm_qpt_dataset* data, const qm_channel* target,
                                 double* out);
/* input_index,basis_index,outcome_index,count */
QM_API qm_status qm_qpt_counts_csv(const qm_qpt_dataset* data, qm_text** out);
QM_API void qm_qpt_dataset_free(qm_qpt_dataset* data);

/* ------------------------------------------------------------ commands */

typedef enum qm_command {
  QM_CMD_QFI_CURVE = 0,
  QM_CMD_ERROR_CURVE = 1,
  QM_CMD_QPT = 2,
  QM_CMD_OPTICS_VERIFY = 3,
  QM_CMD_SUPPLEMENT_VERIFY = 4
} qm_command;

typedef enum qm_channel_kind {
  QM_CHANNEL_AD = 0,
  QM_CHANNEL_DEPOL = 1,
  QM_CHANNEL_PAULI = 2
} qm_channel_kind;

typedef enum qm_format { QM_FORMAT_CSV = 0, QM_FORMAT_JSON = 1 } qm_format;

/* Optional fields are used only when the matching has_* flag is set. */
typedef struct qm_config {
  qm_command command;
  qm_channel_kind channel;
  int has_eta;
  double eta;
  int has_p;
  double p;
  int has_pauli[4];
  double pauli[4];
  int has_grid;
  double grid_start;
  double grid_stop;
  double grid_step;
  int has_events;
  uint64_t events;
  int has_repetitions;
  uint64_t repetitions;
  int has_visibility;
  double visibility;
  uint64_t seed;
  qm_format format;
  int exact;
  int minimax;
  unsigned probes;
  int bare;
} qm_config;

/* Defaults: qfi-curve, amplitude damping, seed 2018, CSV, one probe. */
QM_API void qm_config_init(qm_config* config);
QM_API qm_status qm_parse_command(const char* name, qm_command* out);
QM_API qm_status qm_parse_channel(const char* name, qm_channel_kind* out);
/* "start:stop:step" or a single value. */
QM_API qm_status qm_parse_grid(const char* text, double* start, double* stop, double* step);

typedef struct qm_report qm_report;

/* QM_OK means the command ran; its checks may still have failed, see
 * qm_report_exit_code. */
QM_API qm_status qm_run(const qm_config* config, qm_report** out);
QM_API int qm_report_exit_code(const qm_report* report);
QM_API const char* qm_report_body(const qm_report* report);
QM_API size_t qm_report_artifact_count(const qm_report* report);
QM_API const char* qm_report_artifact_suffix(const qm_report* report, size_t index);
QM_API const char* qm_report_artifact_content(const qm_report* report, size_t index);
QM_API size_t qm_report_failure_count(const qm_report* report);
QM_API const char* qm_report_failure(const qm_report* report, size_t index);
QM_API void qm_report_free(qm_report* report);

#ifdef __cplusplus
}
#endif

#endif /* QMETRO_QMETRO_H_ */
