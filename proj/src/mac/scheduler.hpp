/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/types.hpp"
#include "radio/mcs.hpp"

namespace xdiff::mac {

/// Per-cell scheduler memory: exponentially averaged historical throughput
/// per UE, floored at a small epsilon so the PF ratio stays defined. New UEs
/// start at the floor (maximum initial priority).
struct SchedulerState {
  double ema_horizon_subframes = 100.0;
  double floor_bps = 1000.0;
  std::vector<double> avg_tp_bps;

  void reset(int num_ues);
  void update(int ue_local, double served_bps);
};

/// Scheduler view of one UE for one subframe.
struct UeSchedInput {
  int ue_local = 0;
  int cqi = 0;             // 0 = out of range, carries nothing
  long backlog_bits = 0;   // fresh payload waiting in the queue
  bool retx_pending = false;
  long retx_bits = 0;      // payload of the transport block awaiting retry
  std::span<const float> prefs;  // preference value per RB group
};

/// Result of one cell's subframe allocation.
struct Allocation {
  std::vector<int> rb_owner;        // per RB, local UE index or -1
  std::vector<int> scheduled_rbs;   // per local UE
  std::vector<long> tb_bits;        // transport-block payload bits per UE
  std::vector<uint8_t> tb_is_retx;  // per UE
  std::vector<uint8_t> group_used;  // per group: >=1 RB allocated

  int total_scheduled_rbs() const;
};

/// Static context shared by the allocators.
struct CellSchedContext {
  int num_rbs = 106;
  int num_rb_groups = 10;
  const radio::McsTable* mcs = nullptr;
  int re_per_rb = 288;
  double subframe_ms = 1.0;
  /// False (default): w = |{j : p >= 0}| / G, the favorable fraction.
  /// True: w = |{j : p < 0}| / G, the literal unfavorable-count reading.
  bool literal_weight = false;
};

double pf_metric(double inst_rate_bps, double avg_tp_bps);

/// Fraction of RB groups this policy marks usable for the UE, in [0,1].
double preference_weight(std::span<const float> prefs, bool literal = false);

double weighted_pf_metric(double inst_rate_bps, double avg_tp_bps, double w);

/// CQI-predicted achievable rate over a nominal RB-group worth of RBs.
double predicted_rate_bps(const radio::McsTable& mcs, int cqi, int nominal_rbs,
                          int re_per_rb, double subframe_ms);

/// Preference-weighted PF allocation for one cell and one subframe.
///
/// UEs are served in descending weighted-PF order, retransmissions first.
/// Each UE first draws RBs from its non-negatively preferred groups
/// (descending preference, ties to the lower group index). Leftover RBs may
/// then spill into negatively preferred groups, but only once every UE
/// holding a favorable claim is covered, so avoided spectrum stays clear
/// while anyone still needs its preferred share. Allocation for a UE stops
/// as soon as its backlog is covered. avg_tp is EMA-updated afterwards.
Allocation allocate_subframe(const CellSchedContext& ctx,
                             const std::vector<UeSchedInput>& ues,
                             SchedulerState& state);

/// Hard-policy allocation per the {-1, 0, +1} recommendation semantics:
/// +1 RBs go to the marked UE first (conflicts resolved by plain PF metric),
/// 0 RBs fall back to plain PF order, -1 RBs are never given to that UE.
Allocation hard_policy_allocate(const CellSchedContext& ctx,
                                const std::vector<UeSchedInput>& ues,
                                SchedulerState& state);

}  // namespace xdiff::mac
