/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xdiff {

/// Thrown for malformed configs; carries a line/key diagnostic when known.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when vector/tensor dimensions do not match the network config.
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a computation produces non-finite values.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a reward computation is missing a UE sample.
struct IncompleteObservationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Static network-level configuration shared by every module.
struct NetworkConfig {
  int num_cells = 3;
  std::vector<int> ues_per_cell = {4, 3, 3};
  int num_rbs = 106;
  int num_rb_groups = 10;
  double subframe_ms = 1.0;
  double slot_ms = 100.0;
  double gamma = 0.9;
  std::vector<double> lambda_p;  // per cell, >= 0
  std::vector<double> lambda_d;  // per cell, >= 0
  uint64_t rng_seed = 1;

  int total_ues() const;
  int subframes_per_slot() const;
  /// Flat UE index, cell-major.
  int ue_index(int cell, int ue_local) const;
  /// Action coordinate count: total_ues * num_rb_groups.
  int action_dim() const;

  /// Throws ConfigError when any invariant is violated.
  void validate() const;
};

/// RB -> group mapping: group(j) = floor(j * G / num_rbs). Group sizes differ
/// by at most one RB.
int rb_group_of(int rb, int num_rbs, int num_rb_groups);
std::vector<int> rb_group_sizes(int num_rbs, int num_rb_groups);
/// First RB of each group plus a trailing sentinel equal to num_rbs.
std::vector<int> rb_group_bounds(int num_rbs, int num_rb_groups);

/// One segment of an offered-traffic schedule.
struct TrafficSegment {
  double start_ms = 0.0;
  double rate_bps = 0.0;
};

struct UEProfile {
  int cell_id = 0;
  int ue_id = 0;  // local to the cell
  double tp_demand_bps = 0.0;
  double delay_demand_ms = 0.0;
  double pos_x_m = 0.0;
  double pos_y_m = 0.0;
  /// Empty means constant-bit-rate at tp_demand_bps. Segments must be
  /// time-ordered with non-negative rates.
  std::vector<TrafficSegment> traffic;

  void validate() const;
  /// Offered rate at an absolute time; the effective throughput demand
  /// follows the schedule when one is present.
  double offered_rate_bps(double t_ms) const;
};

/// Preference values per (cell, ue, rb-group); the action of the RL problem.
class PreferencePolicy {
 public:
  PreferencePolicy() = default;
  explicit PreferencePolicy(const NetworkConfig& cfg);
  PreferencePolicy(const NetworkConfig& cfg, std::span<const float> flat);

  float value(int cell, int ue_local, int group) const;
  float& value(int cell, int ue_local, int group);
  std::span<const float> flat() const { return v_; }
  std::span<float> flat() { return v_; }
  int groups() const { return groups_; }
  int total_ues() const { return static_cast<int>(ue_base_.size()); }

  bool is_valid_soft(float tol = 1e-6f) const;
  bool is_hard() const;
  void clamp_soft();
  /// Maps each value to {-1, 0, +1} with thresholds at +-1/3.
  PreferencePolicy quantized_hard() const;

 private:
  std::vector<float> v_;
  std::vector<int> ue_base_;   // flat UE index base per cell
  std::vector<int> cell_ues_;  // UEs per cell
  int groups_ = 0;
};

/// Per-UE per-slot QoS measurement.
struct QoSSample {
  double achieved_tp_bps = 0.0;
  double achieved_delay_ms = 0.0;
};

/// Per-cell reward components and their weighted network total, all <= 0.
struct RewardBreakdown {
  std::vector<double> r_tp;
  std::vector<double> r_delay;
  double total = 0.0;
};

}  // namespace xdiff
