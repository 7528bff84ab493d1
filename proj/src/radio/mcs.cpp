/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "radio/mcs.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace xdiff::radio {

McsTable::McsTable(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw ConfigError("McsTable: empty table");
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].cqi != static_cast<int>(i) + 1)
      throw ConfigError("McsTable: CQI column must run 1..N");
    if (i > 0) {
      if (rows_[i].spectral_efficiency <= rows_[i - 1].spectral_efficiency)
        throw ConfigError("McsTable: spectral efficiency must be strictly increasing");
      if (rows_[i].sinr_threshold_db <= rows_[i - 1].sinr_threshold_db)
        throw ConfigError("McsTable: SINR thresholds must be strictly increasing");
    }
  }
}

McsTable McsTable::default_table() {
  return McsTable({
      {1, 0, 0.1523, -6.7},
      {2, 2, 0.2344, -4.7},
      {3, 4, 0.3770, -2.3},
      {4, 6, 0.6016, 0.2},
      {5, 8, 0.8770, 2.4},
      {6, 11, 1.1758, 4.3},
      {7, 13, 1.4766, 5.9},
      {8, 15, 1.9141, 8.1},
      {9, 18, 2.4063, 10.3},
      {10, 20, 2.7305, 11.7},
      {11, 22, 3.3223, 14.1},
      {12, 24, 3.9023, 16.3},
      {13, 26, 4.5234, 18.7},
      {14, 27, 5.1152, 21.0},
      {15, 28, 5.5547, 22.7},
  });
}

McsTable McsTable::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("McsTable: cannot open " + path);
  std::vector<Row> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    Row r;
    char c1, c2, c3;
    std::istringstream ss(trimmed);
    if (!(ss >> r.cqi >> c1 >> r.mcs >> c2 >> r.spectral_efficiency >> c3 >>
          r.sinr_threshold_db) ||
        c1 != ',' || c2 != ',' || c3 != ',')
      throw ConfigError("McsTable: parse error at line " + std::to_string(lineno));
    rows.push_back(r);
  }
  return McsTable(std::move(rows));
}

const McsTable::Row& McsTable::row_for_cqi(int cqi) const {
  if (cqi < 1 || cqi > max_cqi())
    throw std::invalid_argument("McsTable: CQI out of range");
  return rows_[cqi - 1];
}

const McsTable::Row& McsTable::row_for_mcs(int mcs) const {
  for (const Row& r : rows_)
    if (r.mcs == mcs) return r;
  throw std::invalid_argument("McsTable: unknown MCS index");
}

int McsTable::cqi_from_sinr(double sinr_db) const {
  int cqi = 0;
  for (const Row& r : rows_) {
    if (r.sinr_threshold_db <= sinr_db)
      cqi = r.cqi;
    else
      break;
  }
  return cqi;
}

long McsTable::rb_bits(int cqi, int rbs, int re_per_rb) const {
  if (cqi <= 0 || rbs <= 0) return 0;
  const Row& r = row_for_cqi(cqi);
  return static_cast<long>(std::floor(static_cast<double>(rbs) * re_per_rb *
                                      r.spectral_efficiency));
}

double McsTable::bler(double sinr_db, int mcs, double slope) const {
  const Row& r = row_for_mcs(mcs);
  const double delta = sinr_db - r.sinr_threshold_db;
  // Guard exp overflow; the curve is pinned to {0,1} far from threshold.
  if (slope * delta > 40.0) return 0.0;
  if (slope * delta < -40.0) return 1.0;
  return 1.0 / (1.0 + std::exp(slope * delta));
}

}  // namespace xdiff::radio
