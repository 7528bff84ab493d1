/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "agent/replay.hpp"

#include <stdexcept>

namespace xdiff::agent {

void ReplayDataset::push(Transition t) {
  if (t.reward > 0.0f)
    throw std::invalid_argument("ReplayDataset: rewards must be non-positive");
  if (data_.size() < capacity_) {
    data_.push_back(std::move(t));
  } else {
    data_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
  }
  ++inserted_;
}

std::vector<size_t> ReplayDataset::sample_indices(size_t n, std::mt19937_64& rng) const {
  if (size() < n)
    throw std::invalid_argument("ReplayDataset: not enough records to sample");
  std::uniform_int_distribution<size_t> u(0, size() - 1);
  std::vector<size_t> idx(n);
  for (size_t& i : idx) i = u(rng);
  return idx;
}

uint64_t ReplayDataset::digest() const {
  uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* p, size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  for (size_t i = 0; i < size(); ++i) {
    const Transition& t = at(i);
    mix(t.state.data(), t.state.size() * sizeof(float));
    mix(t.action.data(), t.action.size() * sizeof(float));
    mix(&t.reward, sizeof(float));
    mix(t.next_state.data(), t.next_state.size() * sizeof(float));
  }
  return h;
}

}  // namespace xdiff::agent
