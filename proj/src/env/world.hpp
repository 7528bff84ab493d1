/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <deque>
#include <optional>
#include <random>
#include <vector>

#include "core/reward.hpp"
#include "core/types.hpp"
#include "env/observation.hpp"
#include "env/traffic.hpp"
#include "mac/scheduler.hpp"
#include "radio/channel.hpp"
#include "radio/mcs.hpp"

namespace xdiff::envsim {

/// Environment knobs beyond NetworkConfig/RadioParams.
struct EnvParams {
  double e2_latency_ms = 0.0;
  int packet_bytes = 1500;
  long max_queue_bytes = 64L * 1024 * 1024;  // tail drop beyond this
  bool hard_allocator = false;               // hard-policy DU scheduling
  bool literal_weight = false;               // Eq-weight reading switch
  // Disconnection model: slot BLER > threshold and delivered TP < 1% of
  // demand for `disconnect_slots` consecutive slots flags the UE offline for
  // `reconnect_slots`; its queue is flushed (counted as dropped).
  double disconnect_bler = 0.9;
  int disconnect_slots = 3;
  int reconnect_slots = 10;
  /// CSI interference-measurement window: a cell counts as an interferer
  /// for link adaptation if it transmitted on the group within this many
  /// subframes. Transport-block outcomes always use the concurrent set.
  int csi_window_sf = 10;
};

/// Ordered, latency-bearing policy channel between the RIC and the DUs.
class E2Link {
 public:
  explicit E2Link(double latency_ms = 0.0) : latency_ms_(latency_ms) {}

  void submit(PreferencePolicy policy, double now_ms, double extra_delay_ms = 0.0);
  /// Delivers every message due at or before `now_ms`, in order; returns the
  /// latest delivered policy if any.
  std::optional<PreferencePolicy> poll(double now_ms);
  double latency_ms() const { return latency_ms_; }

 private:
  struct InFlight {
    double deliver_ms;
    PreferencePolicy policy;
  };
  double latency_ms_;
  std::deque<InFlight> in_flight_;
};

/// Per-UE per-slot outcome, denormalized for traces and rewards.
struct UeSlotStats {
  double tp_bps = 0.0;
  double delay_ms = 0.0;
  double bler = 0.0;
  double mean_prbs = 0.0;
  double mean_mcs = 0.0;
  double offered_bps = 0.0;
  bool disconnected = false;
};

struct SlotResult {
  SlotObservation obs;
  RewardBreakdown reward;
  std::vector<UeSlotStats> ue_stats;
};

/// Byte ledger per UE; conservation (in == delivered + queued + dropped) is
/// asserted at every slot boundary.
struct ByteAccounting {
  long bytes_in = 0;
  long bytes_delivered = 0;
  long bytes_dropped = 0;
};

/// Radio configuration plus the channel geometry for World construction.
struct RadioParamsBundle {
  radio::RadioParams params;
  radio::McsTable mcs = radio::McsTable::default_table();
  /// pathloss_db[cell * num_ues + ue]; must cover every (cell, ue) pair.
  std::vector<double> pathloss_db;
};

/// The simulated multi-cell network: 1 ms DU scheduling under the policy in
/// force, slot-periodic observation/reward emission toward the RIC.
class World {
 public:
  World(NetworkConfig cfg, std::vector<UEProfile> profiles, RadioParamsBundle radio,
        EnvParams env, uint64_t seed);

  /// Delivers `action` through the E2 link, advances one slot of subframes,
  /// and returns the slot observation and reward.
  SlotResult step_slot(const PreferencePolicy& action, double staleness_ms = 0.0);

  const NetworkConfig& config() const { return cfg_; }
  const std::vector<UEProfile>& profiles() const { return profiles_; }
  const std::vector<ByteAccounting>& accounting() const { return accounts_; }
  int slot_index() const { return slot_; }
  double now_ms() const { return now_ms_; }
  const radio::ChannelState& channel() const { return channel_; }
  radio::ChannelState& channel_mut() { return channel_; }

  /// Verifies bytes_in == delivered + queued + dropped for every UE.
  void check_conservation() const;

 private:
  struct UeState {
    UEQueue queue;
    long retx_bits = 0;
    int retx_tries = 0;
    double wideband_sinr_db = 0.0;
    int last_mcs = 0;
    int disconnected_until_slot = -1;
    int consecutive_bad_slots = 0;
    int out_of_range_sf = 0;  // backlogged but no feasible MCS, this slot
  };

  void step_subframe(std::vector<std::vector<SubframeSample>>& samples);
  double isolated_sinr_db(int ue) const;
  int cell_of(int ue) const { return profiles_[ue].cell_id; }

  NetworkConfig cfg_;
  std::vector<UEProfile> profiles_;
  radio::RadioParams rp_;
  radio::McsTable mcs_;
  EnvParams ep_;
  radio::ChannelState channel_;
  E2Link e2_;
  PreferencePolicy active_policy_;
  std::vector<mac::SchedulerState> sched_;
  std::vector<UeState> ues_;
  std::vector<TrafficSource> traffic_;
  std::vector<ByteAccounting> accounts_;
  std::vector<int> group_bounds_;
  std::vector<long> last_active_sf_;  // [cell][group], -1 when never
  std::mt19937_64 rng_;
  double now_ms_ = 0.0;
  long subframe_ = 0;
  int slot_ = 0;
};

}  // namespace xdiff::envsim
