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

#include <doctest.h>

#include <cmath>
#include <string>

#include "qmetro/qmetro.h"

TEST_CASE("channel handles") {
  qm_channel* ch = nullptr;
  REQUIRE(qm_channel_amplitude_damping(0.5, &ch) == QM_OK);
  CHECK(qm_channel_dim(ch) == 2);
  CHECK(qm_channel_kraus_count(ch) == 2);

  qm_text* json = nullptr;
  REQUIRE(qm_channel_to_json(ch, &json) == QM_OK);
  const std::string text = qm_text_data(json);
  CHECK(text.find("\"kraus\"") != std::string::npos);
  CHECK(qm_text_size(json) == text.size());

  qm_channel* back = nullptr;
  REQUIRE(qm_channel_from_json(text.c_str(), &back) == QM_OK);
  double a = 0.0, b = 0.0;
  REQUIRE(qm_channel_qfi(ch, 1, 0.0, &a) == QM_OK);
  REQUIRE(qm_channel_qfi(back, 1, 0.0, &b) == QM_OK);
  CHECK(a == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(a == b);

  qm_text_free(json);
  qm_channel_free(back);
  qm_channel_free(ch);
  qm_channel_free(nullptr);
}

TEST_CASE("errors carry status and message") {
  qm_channel* ch = nullptr;
  CHECK(qm_channel_depolarizing(2.0, &ch) == QM_ERR_INVALID_ARGUMENT);
  CHECK(ch == nullptr);
  CHECK(std::string(qm_last_error()).size() > 0);
  CHECK(qm_channel_from_json("{not json", &ch) == QM_ERR_PARSE);
  CHECK(qm_channel_amplitude_damping(0.1, nullptr) == QM_ERR_INVALID_ARGUMENT);
  CHECK(qm_exit_code(QM_ERR_INVALID_ARGUMENT) == 2);
  CHECK(qm_exit_code(QM_ERR_OPTIMIZER_FAILURE) == 3);
  CHECK(std::string(qm_status_string(QM_ERR_SINGULAR_DESIGN)) == "singular design");
}

TEST_CASE("scalar entry points") {
  double v = 0.0;
  REQUIRE(qm_closed_form_qfi(QM_NOISE_DEPOLARIZING, 0.4, 1, &v) == QM_OK);
  CHECK(v == doctest::Approx(0.45));
  double f = 0.0, s = 0.0;
  REQUIRE(qm_two_probe_qfi(0.0, 0.0, &f, &s) == QM_OK);
  CHECK(f == 4.0);
  CHECK(s == doctest::Approx(4.0));
  REQUIRE(qm_classical_fisher(QM_SCHEME_AD_TWO_PROBE_BARE, 0.5, 1.0, 0.0, &v) == QM_OK);
  CHECK(v == doctest::Approx(4 * 0.25 / 0.75).epsilon(1e-10));
}

TEST_CASE("tomography through handles") {
  qm_channel* ch = nullptr;
  REQUIRE(qm_channel_depolarizing(0.4, &ch) == QM_OK);
  qm_qpt_dataset* exact = nullptr;
  REQUIRE(qm_qpt_exact(ch, 1, &exact) == QM_OK);
  double f = 0.0;
  REQUIRE(qm_qpt_fidelity(exact, ch, &f) == QM_OK);
  CHECK(f >= 1 - 1e-10);

  qm_qpt_dataset* sampled = nullptr;
  REQUIRE(qm_qpt_simulate(ch, 0, 100, 3, &sampled) == QM_OK);
  qm_text* csv = nullptr;
  REQUIRE(qm_qpt_counts_csv(sampled, &csv) == QM_OK);
  CHECK(std::string(qm_text_data(csv)).rfind("input_index,basis_index", 0) == 0);
  qm_text_free(csv);
  qm_qpt_dataset_free(sampled);
  qm_qpt_dataset_free(exact);
  qm_channel_free(ch);
}

TEST_CASE("commands through the configuration struct") {
  qm_config cfg;
  qm_config_init(&cfg);
  CHECK(cfg.seed == 2018);
  REQUIRE(qm_parse_command("supplement-verify", &cfg.command) == QM_OK);
  REQUIRE(qm_parse_grid("0:0.5:0.25", &cfg.grid_start, &cfg.grid_stop, &cfg.grid_step) == QM_OK);
  cfg.has_grid = 1;
  cfg.channel = QM_CHANNEL_DEPOL;
  qm_report* r = nullptr;
  REQUIRE(qm_run(&cfg, &r) == QM_OK);
  CHECK(qm_report_exit_code(r) == 0);
  CHECK(qm_report_failure_count(r) == 0);
  CHECK(std::string(qm_report_body(r)).rfind("p,conjugation_residual", 0) == 0);
  CHECK(qm_report_artifact_suffix(r, 0) == nullptr);
  qm_report_free(r);

  CHECK(qm_parse_command("bogus", &cfg.command) == QM_ERR_INVALID_ARGUMENT);
  qm_config_init(&cfg);
  cfg.probes = 3;
  CHECK(qm_run(&cfg, &r) == QM_ERR_INVALID_ARGUMENT);
}
