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

#include "qmetro/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qmetro/error.hpp"

namespace qmetro {

namespace {

Json matrix_rows(const CMat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  return out;
}

}  // namespace

Json channel_to_json(const KrausChannel& ch) {
  Json kraus = Json::array();
  for (const CMat& k : ch.kraus()) kraus.push_back(matrix_rows(k));
  return Json{{"label", ch.label()}, {"dim", ch.dim()}, {"kraus", kraus}};
}

KrausChannel channel_from_json(const Json& j) {
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    require(dim >= 1, ErrorCode::Parse, "channel: dim must be positive");
    std::vector<CMat> kraus;
    for (const Json& op : j.at("kraus")) {
      require(op.is_array() && op.size() == dim * dim, ErrorCode::Parse,
              "channel: Kraus operator has the wrong number of entries");
      CMat k(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
      for (std::size_t i = 0; i < dim * dim; ++i) {
        const Json& e = op[i];
        require(e.is_array() && e.size() == 2, ErrorCode::Parse, "channel: entries are [re, im]");
        k(static_cast<Eigen::Index>(i / dim), static_cast<Eigen::Index>(i % dim)) =
            Complex(e[0].get<double>(), e[1].get<double>());
      }
      kraus.push_back(std::move(k));
    }
    return KrausChannel(std::move(kraus), j.value("label", std::string("channel")));
  } catch (const Json::exception& e) {
    fail(ErrorCode::Parse, std::string("channel: ") + e.what());
  }
}

Json chi_to_json(const ChiMatrix& chi) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < chi.mat.rows(); ++r)
    for (Eigen::Index c = 0; c < chi.mat.cols(); ++c) {
      re.push_back(chi.mat(r, c).real());
      im.push_back(chi.mat(r, c).imag());
    }
  return Json{{"dim_basis", chi.dim_basis}, {"re", re}, {"im", im}};
}

ChiMatrix chi_from_json(const Json& j) {
  try {
    ChiMatrix chi;
    chi.dim_basis = j.at("dim_basis").get<std::size_t>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const std::size_t n = chi.dim_basis;
    require(re.size() == n * n && im.size() == n * n, ErrorCode::Parse,
            "chi: re/im must hold dim_basis^2 entries");
    chi.mat.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n * n; ++i)
      chi.mat(static_cast<Eigen::Index>(i / n), static_cast<Eigen::Index>(i % n)) =
          Complex(re[i].get<double>(), im[i].get<double>());
    return chi;
  } catch (const Json::exception& e) {
    fail(ErrorCode::Parse, std::string("chi: ") + e.what());
  }
}

Json network_to_json(const OpticalNetwork& net) {
  Json elements = Json::array();
  for (const OpticalElement& e : net.elements) {
    Json item{{"kind", to_string(e.kind)}, {"angle", e.angle}, {"modes", e.modes}};
    if (e.kind == ElementKind::Bd) {
      item["polarization"] = e.polarization;
      item["shift"] = e.shift;
    }
    if (e.kind == ElementKind::Dephase) item["blocks"] = e.blocks;
    elements.push_back(std::move(item));
  }
  return Json{{"n_lateral", net.space.n_lateral},
              {"n_longitudinal", net.space.n_longitudinal},
              {"elements", elements}};
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x == 0.0 ? 0.0 : x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  require(!header_.empty(), ErrorCode::InvalidArgument, "csv: empty header");
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  add_row(std::move(cells));
}

void CsvTable::add_row(std::vector<std::string> cells) {
  require(cells.size() == header_.size(), ErrorCode::DimensionMismatch,
          "csv: row width differs from header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

Json CsvTable::to_json() const {
  Json rows = Json::array();
  for (const auto& r : rows_) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < r.size(); ++i) {
      // Numbers stay numbers; the %.6g text keeps JSON and CSV in step.
      char* end = nullptr;
      const double v = std::strtod(r[i].c_str(), &end);
      if (end && *end == '\0' && !r[i].empty())
        obj[header_[i]] = v;
      else
        obj[header_[i]] = r[i];
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

std::string counts_to_csv(const QptDataset& data) {
  std::ostringstream os;
  os << "input_index,basis_index,outcome_index,count\n";
  for (std::size_t i = 0; i < data.input_count; ++i)
    for (std::size_t b = 0; b < data.basis_count; ++b)
      for (std::size_t o = 0; o < data.outcome_count; ++o)
        os << i << ',' << b << ',' << o << ',' << data.counts[data.index(i, b, o)] << '\n';
  return os.str();
}

}  // namespace qmetro
