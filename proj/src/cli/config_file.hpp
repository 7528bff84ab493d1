/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agent/learner.hpp"
#include "env/scenario.hpp"

namespace xdiff::cli {

/// Key/value config file with scalar, array, and string values.
///
/// Syntax, one entry per line ('#' starts a comment):
///   key = 3.5
///   key = [1, 2, 3]
///   key = some_token
///   traffic entries use start_ms:rate_bps tokens, e.g.  [0:12e6, 30000:24e6]
///
/// Network keys: num_cells, ues_per_cell, num_rbs, num_rb_groups, slot_ms,
/// gamma, lambda_p, lambda_d, rng_seed.
/// Radio keys (prefix radio.): tx_power_dbm, noise_dbm_per_rb, re_per_rb,
/// bler_slope, mcs_margin_db, shadow_sigma_db, shadow_rho, fade_sigma_db,
/// pcmax_dbm, mcs_table (path to a cqi,mcs,se,thr CSV).
/// Env keys (prefix env.): e2_latency_ms, packet_bytes, max_queue_bytes,
/// literal_weight.
/// Learner keys (prefix learner.): denoise_steps, eta, gamma, rho, lr, batch,
/// capacity, hidden, hidden_layers, emb_dim, reward_scale, slots_per_train.
/// Per-UE blocks (prefix ue.N.): cell, tp_demand_bps, delay_demand_ms,
/// position ([x, y]), traffic ([start_ms:rate_bps, ...]),
/// pathloss_db ([per-cell dB]).
/// Geometry (when pathloss_db is not given per UE): cells.x, cells.y,
/// pathloss.exponent, pathloss.wall_db.
class ConfigFile {
 public:
  struct Value {
    int line = 0;
    std::string raw;
  };

  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_text(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  std::string get_string(const std::string& key) const;
  std::vector<double> get_array(const std::string& key) const;
  /// "start:rate" pairs.
  std::vector<TrafficSegment> get_traffic(const std::string& key) const;

  const std::map<std::string, Value>& entries() const { return entries_; }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;
  std::map<std::string, Value> entries_;
  std::string origin_;
};

/// Builds a scenario from a preset name ("lab", "building", or empty for a
/// config-only scenario) plus optional config-file overrides. Validation
/// errors carry key/line diagnostics and fire before any simulation.
envsim::Scenario scenario_from_config(const std::string& preset,
                                      const std::optional<ConfigFile>& cfg,
                                      const envsim::ScenarioOptions& opt = {});

/// Learner configuration for a scenario, with config overrides applied.
agent::LearnerConfig learner_config_for(const envsim::Scenario& sc,
                                        const std::optional<ConfigFile>& cfg);

/// Serializes the resolved scenario back to config syntax (run provenance).
std::string scenario_to_text(const envsim::Scenario& sc);

}  // namespace xdiff::cli
