/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "core/types.hpp"

namespace xdiff::agent {

/// One (s, a, r, s') record of the online dataset.
struct Transition {
  std::vector<float> state;
  std::vector<float> action;
  float reward = 0.0f;
  std::vector<float> next_state;
};

/// Bounded ring: inserting past capacity evicts exactly the oldest record.
class ReplayDataset {
 public:
  explicit ReplayDataset(size_t capacity) : capacity_(capacity) {}

  void push(Transition t);
  size_t size() const { return data_.size(); }
  size_t capacity() const { return capacity_; }
  uint64_t inserted() const { return inserted_; }
  const Transition& at(size_t i) const { return data_[(head_ + i) % data_.size()]; }

  /// Uniform sample of `n` indices; requires size() >= n.
  std::vector<size_t> sample_indices(size_t n, std::mt19937_64& rng) const;

  /// FNV-1a digest over the stored bytes, for checkpoint metadata.
  uint64_t digest() const;

 private:
  size_t capacity_;
  size_t head_ = 0;  // index of the oldest record
  uint64_t inserted_ = 0;
  std::vector<Transition> data_;
};

}  // namespace xdiff::agent
