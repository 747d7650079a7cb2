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
 * JSON and CSV interchange for channels, process matrices, tomography
 * counts and optical networks.
 */

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qmetro/channels.hpp"
#include "qmetro/optics.hpp"
#include "qmetro/tomography.hpp"

namespace qmetro {

using Json = nlohmann::ordered_json;

/// {label, dim, kraus: [[[re, im], ...] row-major, ...]}.
Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j);

/// {dim_basis, re: [...], im: [...]} row-major.
Json chi_to_json(const ChiMatrix& chi);
ChiMatrix chi_from_json(const Json& j);

/// {n_lateral, n_longitudinal, elements: [{kind, angle, modes, ...}]}.
Json network_to_json(const OpticalNetwork& net);

/// %.6g, with "-0" folded to "0".
std::string format_number(double x);

/// Header row plus rows, ',' separated, LF terminated.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;
  Json to_json() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// input_index,basis_index,outcome_index,count.
std::string counts_to_csv(const QptDataset& data);

}  // namespace qmetro
