/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <vector>

namespace xdiff::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static line chart; one polyline per series with a legend.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<Series>& series);

/// Empirical CDF chart built from raw samples per series.
void write_cdf_chart(const std::string& path, const std::string& title,
                     const std::string& xlabel,
                     const std::vector<std::pair<std::string, std::vector<double>>>&
                         samples);

}  // namespace xdiff::cli
