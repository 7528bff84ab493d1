/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace xdiff::radio {

/// CQI -> MCS / spectral-efficiency / SINR-threshold link adaptation table.
/// Thresholds and efficiencies must be strictly increasing in CQI.
class McsTable {
 public:
  struct Row {
    int cqi = 0;
    int mcs = 0;
    double spectral_efficiency = 0.0;  // bits per resource element
    double sinr_threshold_db = 0.0;
  };

  McsTable() = default;
  explicit McsTable(std::vector<Row> rows);

  /// Built-in 15-row table covering CQI 1..15.
  static McsTable default_table();
  /// Loads "cqi,mcs,se,thr" CSV rows ('#' comments allowed).
  static McsTable load(const std::string& path);

  int max_cqi() const { return static_cast<int>(rows_.size()); }
  const Row& row_for_cqi(int cqi) const;
  const Row& row_for_mcs(int mcs) const;

  /// Largest CQI whose threshold <= sinr_db; 0 when below the lowest.
  int cqi_from_sinr(double sinr_db) const;

  /// Transport capacity of `rbs` resource blocks in one subframe at the given
  /// CQI, floored to integer bits. CQI 0 carries nothing.
  long rb_bits(int cqi, int rbs, int re_per_rb) const;

  /// Logistic block-error curve 1 / (1 + exp(slope * (sinr - threshold))).
  double bler(double sinr_db, int mcs, double slope = 1.0) const;

 private:
  std::vector<Row> rows_;
};

}  // namespace xdiff::radio
