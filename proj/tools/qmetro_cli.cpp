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

// Command-line front end. Talks to the library only through qmetro.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qmetro/qmetro.h"

namespace {

struct Flags {
  std::string channel = "ad";
  std::optional<double> eta;
  std::optional<double> p;
  std::optional<double> pauli[4];
  std::optional<std::string> grid;
  std::optional<std::uint64_t> events;
  std::optional<std::uint64_t> reps;
  std::optional<double> visibility;
  std::uint64_t seed = 2018;
  std::string out;
  std::string format = "csv";
  bool exact = false;
  bool minimax = false;
  unsigned probes = 1;
  bool bare = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--channel", f.channel, "Noise channel")
      ->check(CLI::IsMember({"ad", "depol", "pauli"}));
  cmd->add_option("--eta", f.eta, "Amplitude-damping strength");
  cmd->add_option("--p", f.p, "Depolarizing strength");
  cmd->add_option("--p0", f.pauli[0], "Pauli weight of I");
  cmd->add_option("--p1", f.pauli[1], "Pauli weight of X");
  cmd->add_option("--p2", f.pauli[2], "Pauli weight of Y");
  cmd->add_option("--p3", f.pauli[3], "Pauli weight of Z");
  cmd->add_option("--grid", f.grid, "Noise grid start:stop:step");
  cmd->add_option("--events", f.events, "Events per estimate, or shots per QPT setting");
  cmd->add_option("--reps", f.reps, "Repetitions, or Poisson resamples for qpt");
  cmd->add_option("--visibility", f.visibility, "Interferometric visibility");
  cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", f.out, "Output path (default: stdout)");
  cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_flag("--exact", f.exact, "Use exact probabilities instead of sampling");
  cmd->add_flag("--minimax", f.minimax, "Add optimizer and cross-check columns");
  cmd->add_option("--probes", f.probes, "Number of probes (1 or 2)")->capture_default_str();
  cmd->add_flag("--bare", f.bare, "Measure without the ancilla");
}

int report_status(qm_status status) {
  std::fprintf(stderr, "qmetro: %s: %s\n", qm_status_string(status), qm_last_error());
  return qm_exit_code(status);
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  return static_cast<bool>(os);
}

int run(const std::string& command, const Flags& f) {
  qm_config cfg;
  qm_config_init(&cfg);
  if (qm_status s = qm_parse_command(command.c_str(), &cfg.command); s != QM_OK)
    return report_status(s);
  if (qm_status s = qm_parse_channel(f.channel.c_str(), &cfg.channel); s != QM_OK)
    return report_status(s);
  if (f.eta) {
    cfg.has_eta = 1;
    cfg.eta = *f.eta;
  }
  if (f.p) {
    cfg.has_p = 1;
    cfg.p = *f.p;
  }
  for (int i = 0; i < 4; ++i)
    if (f.pauli[i]) {
      cfg.has_pauli[i] = 1;
      cfg.pauli[i] = *f.pauli[i];
    }
  if (f.grid) {
    cfg.has_grid = 1;
    if (qm_status s = qm_parse_grid(f.grid->c_str(), &cfg.grid_start, &cfg.grid_stop,
                                    &cfg.grid_step);
        s != QM_OK)
      return report_status(s);
  }
  if (f.events) {
    cfg.has_events = 1;
    cfg.events = *f.events;
  }
  if (f.reps) {
    cfg.has_repetitions = 1;
    cfg.repetitions = *f.reps;
  }
  if (f.visibility) {
    cfg.has_visibility = 1;
    cfg.visibility = *f.visibility;
  }
  cfg.seed = f.seed;
  cfg.format = f.format == "json" ? QM_FORMAT_JSON : QM_FORMAT_CSV;
  cfg.exact = f.exact;
  cfg.minimax = f.minimax;
  cfg.probes = f.probes;
  cfg.bare = f.bare;

  qm_report* report = nullptr;
  if (qm_status s = qm_run(&cfg, &report); s != QM_OK) return report_status(s);

  int code = qm_report_exit_code(report);
  if (f.out.empty()) {
    std::fputs(qm_report_body(report), stdout);
  } else {
    bool ok = write_file(f.out, qm_report_body(report));
    for (size_t i = 0; i < qm_report_artifact_count(report); ++i)
      ok = write_file(f.out + qm_report_artifact_suffix(report, i),
                      qm_report_artifact_content(report, i)) &&
           ok;
    if (!ok) {
      std::fprintf(stderr, "qmetro: cannot write %s\n", f.out.c_str());
      code = 1;
    }
  }
  for (size_t i = 0; i < qm_report_failure_count(report); ++i)
    std::fprintf(stderr, "qmetro: check failed: %s\n", qm_report_failure(report, i));
  qm_report_free(report);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy phase estimation with ancilla assistance"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qm_version());

  Flags flags;
  const char* commands[][2] = {
      {"qfi-curve", "Quantum Fisher information against noise strength"},
      {"error-curve", "Monte-Carlo phase-estimation error against noise strength"},
      {"qpt", "Simulated process tomography and fidelity"},
      {"optics-verify", "Check the optical network against its target channel"},
      {"supplement-verify", "Check the CNOT-flagged depolarizing identities"},
  };
  for (const auto& c : commands) add_flags(app.add_subcommand(c[0], c[1]), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return run(app.get_subcommands().front()->get_name(), flags);
}
