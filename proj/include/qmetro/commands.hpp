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
 * The five front-end commands, rendered to CSV or JSON text.
 *
 * Exit codes: 0 all checks pass, 2 invalid configuration, 3 optimizer,
 * reconstruction or verification failure, 1 anything else.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmetro/error.hpp"

namespace qmetro {

enum class Command { QfiCurve, ErrorCurve, Qpt, OpticsVerify, SupplementVerify };
enum class ChannelKind { AmplitudeDamping, Depolarizing, Pauli };
enum class OutputFormat { Csv, Json };

const char* to_string(Command command) noexcept;
std::optional<Command> parse_command(const std::string& name);
std::optional<ChannelKind> parse_channel(const std::string& name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitVerification = 3;

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.1;

  /// start, start + step, ... up to stop (inclusive within 1e-9 step).
  std::vector<double> values() const;
};

/// Parses "start:stop:step" or a single number.
GridSpec parse_grid(const std::string& text);

struct RunConfig {
  Command command = Command::QfiCurve;
  ChannelKind channel = ChannelKind::AmplitudeDamping;
  std::optional<double> eta;
  std::optional<double> p;
  std::array<std::optional<double>, 4> pauli{};
  std::optional<GridSpec> grid;
  std::optional<std::uint64_t> events;
  std::optional<std::size_t> repetitions;
  std::optional<double> visibility;
  std::uint64_t seed = 2018;
  OutputFormat format = OutputFormat::Csv;
  bool exact = false;
  bool minimax = false;
  std::size_t probes = 1;
  bool bare = false;
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string body;
  /// Secondary files, written next to the primary output as <out><suffix>.
  std::vector<std::pair<std::string, std::string>> artifacts;
  std::vector<std::string> failures;
};

/// Throws Error(InvalidArgument) for an invalid configuration.
void validate(const RunConfig& cfg);

/// Runs one command. Library errors propagate as Error.
CommandOutput run_command(const RunConfig& cfg);

/// Maps an error code to the process exit code.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace qmetro
