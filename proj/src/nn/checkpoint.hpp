/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nn/mlp.hpp"

namespace xdiff::nn {

/// Flat binary tensor bundle.
///
/// Layout: magic "XDNN", u32 version (=1), u32 tensor count, then for each
/// tensor a u32 rank, u32 dims[rank], and rank-major (row-major) f32 data.
/// All integers little-endian.
struct TensorBundle {
  struct Entry {
    std::vector<uint32_t> dims;
    std::vector<float> data;
  };
  std::vector<Entry> entries;

  void add(const std::vector<uint32_t>& dims, const float* data, size_t n);
  void add_scalar(float v) { add({1}, &v, 1); }

  void save(const std::string& path) const;
  static TensorBundle load(const std::string& path);
};

/// Appends every parameter tensor of `net` to the bundle (weights then bias,
/// layer by layer).
void append_mlp(TensorBundle& b, const Mlp& net);

/// Restores parameters in the same order append_mlp wrote them; returns the
/// index one past the consumed entries.
size_t restore_mlp(const TensorBundle& b, size_t start, Mlp& net);

}  // namespace xdiff::nn
