/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace xdiff::cli {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 440;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                         "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = 0.0, hi = 1.0;
  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

void chart_frame(std::ostream& os, const std::string& title, const std::string& xlabel,
                 const std::string& ylabel, const Range& xr, const Range& yr) {
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
     << kHeight << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<text x='" << kWidth / 2 << "' y='22' text-anchor='middle' "
     << "font-size='16' font-family='sans-serif'>" << title << "</text>\n";
  const int x0 = kMarginL, x1 = kWidth - kMarginR;
  const int y0 = kHeight - kMarginB, y1 = kMarginT;
  os << "<line x1='" << x0 << "' y1='" << y0 << "' x2='" << x1 << "' y2='" << y0
     << "' stroke='black'/>\n";
  os << "<line x1='" << x0 << "' y1='" << y0 << "' x2='" << x0 << "' y2='" << y1
     << "' stroke='black'/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = xr.lo + (xr.hi - xr.lo) * t / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * t / 4.0;
    const int px = x0 + (x1 - x0) * t / 4;
    const int py = y0 - (y0 - y1) * t / 4;
    os << "<text x='" << px << "' y='" << y0 + 18
       << "' text-anchor='middle' font-size='11' font-family='sans-serif'>" << fmt(fx)
       << "</text>\n";
    os << "<text x='" << x0 - 8 << "' y='" << py + 4
       << "' text-anchor='end' font-size='11' font-family='sans-serif'>" << fmt(fy)
       << "</text>\n";
    os << "<line x1='" << x0 << "' y1='" << py << "' x2='" << x1 << "' y2='" << py
       << "' stroke='#dddddd'/>\n";
  }
  os << "<text x='" << (x0 + x1) / 2 << "' y='" << kHeight - 12
     << "' text-anchor='middle' font-size='13' font-family='sans-serif'>" << xlabel
     << "</text>\n";
  os << "<text x='16' y='" << (y0 + y1) / 2
     << "' text-anchor='middle' font-size='13' font-family='sans-serif' "
     << "transform='rotate(-90 16 " << (y0 + y1) / 2 << ")'>" << ylabel << "</text>\n";
}

void polyline(std::ostream& os, const std::vector<double>& x,
              const std::vector<double>& y, const Range& xr, const Range& yr,
              const char* color) {
  const int x0 = kMarginL, x1 = kWidth - kMarginR;
  const int y0 = kHeight - kMarginB, y1 = kMarginT;
  const double xs = (xr.hi > xr.lo) ? (x1 - x0) / (xr.hi - xr.lo) : 0.0;
  const double ys = (yr.hi > yr.lo) ? (y0 - y1) / (yr.hi - yr.lo) : 0.0;
  os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
  for (size_t i = 0; i < x.size(); ++i) {
    const double px = x0 + (x[i] - xr.lo) * xs;
    const double py = y0 - (y[i] - yr.lo) * ys;
    os << px << "," << py << " ";
  }
  os << "'/>\n";
}

void legend(std::ostream& os, const std::vector<std::string>& labels) {
  int y = kMarginT + 6;
  for (size_t i = 0; i < labels.size(); ++i) {
    const char* color = kColors[i % 8];
    os << "<line x1='" << kWidth - 170 << "' y1='" << y << "' x2='" << kWidth - 145
       << "' y2='" << y << "' stroke='" << color << "' stroke-width='2'/>\n";
    os << "<text x='" << kWidth - 140 << "' y='" << y + 4
       << "' font-size='12' font-family='sans-serif'>" << labels[i] << "</text>\n";
    y += 18;
  }
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<Series>& series) {
  Range xr{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  Range yr = xr;
  for (const Series& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      xr.expand(s.x[i]);
      yr.expand(s.y[i]);
    }
  if (xr.lo > xr.hi) xr = {0, 1};
  if (yr.lo > yr.hi) yr = {0, 1};
  if (yr.lo == yr.hi) yr.hi = yr.lo + 1.0;

  std::ofstream os(path);
  chart_frame(os, title, xlabel, ylabel, xr, yr);
  std::vector<std::string> labels;
  for (size_t i = 0; i < series.size(); ++i) {
    polyline(os, series[i].x, series[i].y, xr, yr, kColors[i % 8]);
    labels.push_back(series[i].label);
  }
  legend(os, labels);
  os << "</svg>\n";
}

void write_cdf_chart(
    const std::string& path, const std::string& title, const std::string& xlabel,
    const std::vector<std::pair<std::string, std::vector<double>>>& samples) {
  std::vector<Series> series;
  for (const auto& [label, raw] : samples) {
    Series s;
    s.label = label;
    std::vector<double> v = raw;
    std::sort(v.begin(), v.end());
    for (size_t i = 0; i < v.size(); ++i) {
      s.x.push_back(v[i]);
      s.y.push_back(static_cast<double>(i + 1) / v.size());
    }
    series.push_back(std::move(s));
  }
  write_line_chart(path, title, xlabel, "CDF", series);
}

}  // namespace xdiff::cli
