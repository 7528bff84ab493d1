/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace xdiff::nn {

/// Row-major float matrix. A rows==1 matrix doubles as a vector.
struct MatF {
  int rows = 0;
  int cols = 0;
  std::vector<float> d;

  MatF() = default;
  MatF(int r, int c) : rows(r), cols(c), d(static_cast<size_t>(r) * c, 0.0f) {}

  float* row(int r) { return d.data() + static_cast<size_t>(r) * cols; }
  const float* row(int r) const { return d.data() + static_cast<size_t>(r) * cols; }
  std::span<float> row_span(int r) { return {row(r), static_cast<size_t>(cols)}; }
  std::span<const float> row_span(int r) const { return {row(r), static_cast<size_t>(cols)}; }

  float& at(int r, int c) { return d[static_cast<size_t>(r) * cols + c]; }
  float at(int r, int c) const { return d[static_cast<size_t>(r) * cols + c]; }

  size_t size() const { return d.size(); }
  void fill(float v) { std::fill(d.begin(), d.end(), v); }
};

}  // namespace xdiff::nn
