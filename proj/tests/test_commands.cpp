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

#include <sstream>
#include <string>
#include <vector>

#include "qmetro/commands.hpp"
#include "qmetro/error.hpp"
#include "qmetro/serialize.hpp"

using namespace qmetro;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

ErrorCode code_of(const RunConfig& cfg) {
  try {
    run_command(cfg);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Parse;
}

}  // namespace

TEST_CASE("grid parsing") {
  CHECK(parse_grid("0:0.9:0.1").values().size() == 10);
  CHECK(parse_grid("0.5").values() == std::vector<double>{0.5});
  CHECK(parse_grid("0:0.8:0.1").values().back() == doctest::Approx(0.8));
  CHECK_THROWS_AS(parse_grid("0:1"), Error);
  CHECK_THROWS_AS(parse_grid("0:1:0"), Error);
  CHECK_THROWS_AS(parse_grid("a:b:c"), Error);
  CHECK_THROWS_AS(parse_grid("1:0:0.1"), Error);
}

TEST_CASE("qfi-curve reproduces the theory rows") {
  RunConfig cfg;
  const auto rows = parse_csv(run_command(cfg).body);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0][0] == "noise");
  CHECK(rows[6] == std::vector<std::string>{"0.5", "0.666667", "0.5"});

  cfg.channel = ChannelKind::Depolarizing;
  cfg.p = 0.4;
  cfg.minimax = true;
  const CommandOutput out = run_command(cfg);
  CHECK(out.exit_code == kExitOk);
  const auto d = parse_csv(out.body);
  REQUIRE(d.size() == 2);
  CHECK(d[1][1] == "0.45");
  CHECK(d[1][2] == "0.36");
  CHECK(d[1][3] == "0.45");
  CHECK(d[1][4] == "0.36");

  cfg.p = 0.0;
  cfg.minimax = false;
  CHECK(parse_csv(run_command(cfg).body)[1] == std::vector<std::string>{"0", "1", "1"});
}

TEST_CASE("error-curve theory columns") {
  RunConfig cfg;
  cfg.command = Command::ErrorCurve;
  cfg.eta = 0.0;
  cfg.events = 200;
  cfg.repetitions = 5;
  const auto rows = parse_csv(run_command(cfg).body);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].size() == 7);
  CHECK(rows[0][5] == "theory_assisted");
  // 1 / (v sqrt(2/2)) with v = 0.9969.
  CHECK(rows[1][5] == "1.00311");
  CHECK(run_command(cfg).body == run_command(cfg).body);
}

TEST_CASE("qpt exact mode and artifacts") {
  RunConfig cfg;
  cfg.command = Command::Qpt;
  cfg.exact = true;
  CommandOutput out = run_command(cfg);
  CHECK(out.exit_code == kExitOk);
  CHECK(parse_csv(out.body)[1] == std::vector<std::string>{"0.5", "1", "0"});
  REQUIRE(out.artifacts.size() == 1);
  const Json chi = Json::parse(out.artifacts[0].second);
  CHECK(chi[0]["chi_th"]["dim_basis"].get<int>() == 16);

  cfg.exact = false;
  cfg.events = 20000;
  cfg.repetitions = 5;
  cfg.channel = ChannelKind::Depolarizing;
  out = run_command(cfg);
  CHECK(out.exit_code == kExitOk);
  CHECK(parse_csv(out.body)[0] == std::vector<std::string>{"noise", "fidelity", "fidelity_std"});
  CHECK(out.artifacts.size() == 2);
}

TEST_CASE("optics-verify reports") {
  RunConfig cfg;
  cfg.command = Command::OpticsVerify;
  cfg.format = OutputFormat::Json;
  const Json ad = Json::parse(run_command(cfg).body);
  CHECK(ad["points"][0]["success_probability"].get<double>() == doctest::Approx(0.5));
  CHECK(ad["points"][0]["process_fidelity"].get<double>() >= 1 - 1e-9);

  cfg.channel = ChannelKind::Pauli;
  cfg.pauli = {1.0, 0.0, 0.0, 0.0};
  const CommandOutput id = run_command(cfg);
  CHECK(id.exit_code == kExitOk);
  CHECK(Json::parse(id.body)["points"][0]["max_residual"].get<double>() <= 1e-10);
}

TEST_CASE("supplement-verify passes on its default grid") {
  RunConfig cfg;
  cfg.command = Command::SupplementVerify;
  const CommandOutput out = run_command(cfg);
  CHECK(out.exit_code == kExitOk);
  const auto rows = parse_csv(out.body);
  CHECK(rows[6][7] == "3");
  CHECK(rows[6][8] == "4");
}

TEST_CASE("invalid configurations") {
  RunConfig cfg;
  cfg.channel = ChannelKind::Pauli;
  CHECK(code_of(cfg) == ErrorCode::InvalidArgument);
  cfg = {};
  cfg.p = 0.4;
  CHECK(code_of(cfg) == ErrorCode::InvalidArgument);
  cfg = {};
  cfg.grid = GridSpec{0.0, 1.5, 0.1};
  CHECK(code_of(cfg) == ErrorCode::InvalidArgument);
  cfg = {};
  cfg.command = Command::ErrorCurve;
  cfg.events = 0;
  CHECK(code_of(cfg) == ErrorCode::InvalidArgument);
  cfg = {};
  cfg.command = Command::OpticsVerify;
  cfg.channel = ChannelKind::Pauli;
  cfg.pauli = {0.5, 0.5, 0.5, 0.0};
  CHECK(code_of(cfg) == ErrorCode::InvalidArgument);
  CHECK(exit_code_for(ErrorCode::InvalidArgument) == kExitInvalidConfig);
  CHECK(exit_code_for(ErrorCode::OptimizerFailure) == kExitVerification);
}
