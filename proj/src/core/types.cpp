/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "core/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xdiff {

int NetworkConfig::total_ues() const {
  return std::accumulate(ues_per_cell.begin(), ues_per_cell.end(), 0);
}

int NetworkConfig::subframes_per_slot() const {
  return static_cast<int>(std::llround(slot_ms / subframe_ms));
}

int NetworkConfig::ue_index(int cell, int ue_local) const {
  int base = 0;
  for (int k = 0; k < cell; ++k) base += ues_per_cell[k];
  return base + ue_local;
}

int NetworkConfig::action_dim() const { return total_ues() * num_rb_groups; }

void NetworkConfig::validate() const {
  if (num_cells <= 0) throw ConfigError("num_cells must be positive");
  if (static_cast<int>(ues_per_cell.size()) != num_cells)
    throw ConfigError("ues_per_cell must have one entry per cell");
  for (int u : ues_per_cell)
    if (u <= 0) throw ConfigError("ues_per_cell entries must be positive");
  if (num_rbs <= 0) throw ConfigError("num_rbs must be positive");
  if (num_rb_groups <= 0 || num_rb_groups > num_rbs)
    throw ConfigError("num_rb_groups must be in [1, num_rbs]");
  if (subframe_ms <= 0.0) throw ConfigError("subframe_ms must be positive");
  if (slot_ms < 10.0 || slot_ms > 1000.0)
    throw ConfigError("slot_ms must be within [10, 1000] ms");
  const double ratio = slot_ms / subframe_ms;
  if (std::abs(ratio - std::llround(ratio)) > 1e-9)
    throw ConfigError("slot_ms must be an integer multiple of subframe_ms");
  if (gamma <= 0.0 || gamma >= 1.0) throw ConfigError("gamma must be in (0,1)");
  if (static_cast<int>(lambda_p.size()) != num_cells ||
      static_cast<int>(lambda_d.size()) != num_cells)
    throw ConfigError("lambda_p/lambda_d must have one entry per cell");
  for (double l : lambda_p)
    if (l < 0.0) throw ConfigError("lambda_p entries must be non-negative");
  for (double l : lambda_d)
    if (l < 0.0) throw ConfigError("lambda_d entries must be non-negative");
}

int rb_group_of(int rb, int num_rbs, int num_rb_groups) {
  return static_cast<int>((static_cast<long>(rb) * num_rb_groups) / num_rbs);
}

std::vector<int> rb_group_sizes(int num_rbs, int num_rb_groups) {
  std::vector<int> sizes(num_rb_groups, 0);
  for (int j = 0; j < num_rbs; ++j) ++sizes[rb_group_of(j, num_rbs, num_rb_groups)];
  return sizes;
}

std::vector<int> rb_group_bounds(int num_rbs, int num_rb_groups) {
  std::vector<int> bounds(num_rb_groups + 1, 0);
  const auto sizes = rb_group_sizes(num_rbs, num_rb_groups);
  for (int g = 0; g < num_rb_groups; ++g) bounds[g + 1] = bounds[g] + sizes[g];
  return bounds;
}

void UEProfile::validate() const {
  if (tp_demand_bps <= 0.0)
    throw ConfigError("UE throughput demand must be positive");
  if (delay_demand_ms <= 0.0)
    throw ConfigError("UE delay demand must be positive");
  double prev = -1.0;
  for (const TrafficSegment& seg : traffic) {
    if (seg.rate_bps < 0.0) throw ConfigError("traffic rates must be non-negative");
    if (seg.start_ms < prev) throw ConfigError("traffic segments must be time-ordered");
    prev = seg.start_ms;
  }
}

double UEProfile::offered_rate_bps(double t_ms) const {
  if (traffic.empty()) return tp_demand_bps;
  double rate = 0.0;
  for (const TrafficSegment& seg : traffic) {
    if (seg.start_ms > t_ms) break;
    rate = seg.rate_bps;
  }
  return rate;
}

PreferencePolicy::PreferencePolicy(const NetworkConfig& cfg)
    : groups_(cfg.num_rb_groups) {
  cell_ues_ = cfg.ues_per_cell;
  ue_base_.reserve(cfg.total_ues());
  for (int k = 0; k < cfg.num_cells; ++k)
    for (int i = 0; i < cfg.ues_per_cell[k]; ++i)
      ue_base_.push_back(cfg.ue_index(k, i));
  v_.assign(static_cast<size_t>(cfg.total_ues()) * groups_, 0.0f);
}

PreferencePolicy::PreferencePolicy(const NetworkConfig& cfg,
                                   std::span<const float> flat)
    : PreferencePolicy(cfg) {
  if (flat.size() != v_.size())
    throw ShapeError("PreferencePolicy: flat vector has wrong dimension");
  std::copy(flat.begin(), flat.end(), v_.begin());
}

namespace {
inline int flat_ue(const std::vector<int>& cell_ues, int cell, int ue_local) {
  int base = 0;
  for (int k = 0; k < cell; ++k) base += cell_ues[k];
  return base + ue_local;
}
}  // namespace

float PreferencePolicy::value(int cell, int ue_local, int group) const {
  return v_[static_cast<size_t>(flat_ue(cell_ues_, cell, ue_local)) * groups_ + group];
}

float& PreferencePolicy::value(int cell, int ue_local, int group) {
  return v_[static_cast<size_t>(flat_ue(cell_ues_, cell, ue_local)) * groups_ + group];
}

bool PreferencePolicy::is_valid_soft(float tol) const {
  for (float x : v_)
    if (!(x >= -1.0f - tol && x <= 1.0f + tol)) return false;
  return true;
}

bool PreferencePolicy::is_hard() const {
  for (float x : v_)
    if (x != -1.0f && x != 0.0f && x != 1.0f) return false;
  return true;
}

void PreferencePolicy::clamp_soft() {
  for (float& x : v_) x = std::clamp(x, -1.0f, 1.0f);
}

PreferencePolicy PreferencePolicy::quantized_hard() const {
  PreferencePolicy out = *this;
  for (float& x : out.v_) x = (x > 1.0f / 3.0f) ? 1.0f : (x < -1.0f / 3.0f ? -1.0f : 0.0f);
  return out;
}

}  // namespace xdiff
