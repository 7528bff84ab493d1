/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "env/world.hpp"

#include <algorithm>
#include <cmath>

namespace xdiff::envsim {

void E2Link::submit(PreferencePolicy policy, double now_ms, double extra_delay_ms) {
  in_flight_.push_back({now_ms + latency_ms_ + extra_delay_ms, std::move(policy)});
}

std::optional<PreferencePolicy> E2Link::poll(double now_ms) {
  std::optional<PreferencePolicy> latest;
  while (!in_flight_.empty() && in_flight_.front().deliver_ms <= now_ms + 1e-9) {
    latest = std::move(in_flight_.front().policy);
    in_flight_.pop_front();
  }
  return latest;
}

World::World(NetworkConfig cfg, std::vector<UEProfile> profiles,
             RadioParamsBundle radio, EnvParams env, uint64_t seed)
    : cfg_(std::move(cfg)),
      profiles_(std::move(profiles)),
      rp_(radio.params),
      mcs_(std::move(radio.mcs)),
      ep_(env),
      channel_(cfg_.num_cells, cfg_.total_ues(), cfg_.num_rb_groups, radio.params),
      e2_(env.e2_latency_ms),
      active_policy_(cfg_),
      rng_(seed) {
  cfg_.validate();
  if (static_cast<int>(profiles_.size()) != cfg_.total_ues())
    throw ConfigError("World: profile list does not match ues_per_cell");
  for (const UEProfile& p : profiles_) p.validate();
  if (radio.pathloss_db.size() != channel_.pathloss_db.size())
    throw ConfigError("World: pathloss matrix has wrong shape");
  channel_.pathloss_db = radio.pathloss_db;
  channel_.validate();

  sched_.resize(cfg_.num_cells);
  for (int k = 0; k < cfg_.num_cells; ++k) sched_[k].reset(cfg_.ues_per_cell[k]);
  ues_.resize(cfg_.total_ues());
  accounts_.resize(cfg_.total_ues());
  traffic_.reserve(cfg_.total_ues());
  for (const UEProfile& p : profiles_)
    traffic_.emplace_back(&p, ep_.packet_bytes);
  group_bounds_ = rb_group_bounds(cfg_.num_rbs, cfg_.num_rb_groups);
  last_active_sf_.assign(static_cast<size_t>(cfg_.num_cells) * cfg_.num_rb_groups, -1);
  for (int u = 0; u < cfg_.total_ues(); ++u)
    ues_[u].wideband_sinr_db = isolated_sinr_db(u);
}

double World::isolated_sinr_db(int ue) const {
  // Interference-free wideband SNR, ignoring fast fading.
  const double s = channel_.tx_power_dbm[cell_of(ue)] -
                   channel_.pathloss(cell_of(ue), ue) + channel_.shadow(cell_of(ue), ue);
  return std::clamp(s - channel_.noise_dbm_per_rb, -rp_.sinr_clamp_db, rp_.sinr_clamp_db);
}

void World::step_subframe(std::vector<std::vector<SubframeSample>>& samples) {
  const double dt = cfg_.subframe_ms;

  // Traffic arrivals; packets for disconnected UEs are refused at the DU.
  for (int u = 0; u < cfg_.total_ues(); ++u) {
    const int packets = traffic_[u].poll(now_ms_, dt);
    const long bytes = static_cast<long>(packets) * ep_.packet_bytes;
    if (bytes == 0) continue;
    accounts_[u].bytes_in += bytes;
    if (slot_ < ues_[u].disconnected_until_slot) {
      accounts_[u].bytes_dropped += bytes;
      continue;
    }
    long accepted = bytes;
    const long room = ep_.max_queue_bytes - ues_[u].queue.total_bytes();
    if (accepted > room) {
      accounts_[u].bytes_dropped += accepted - std::max(room, 0L);
      accepted = std::max(room, 0L);
    }
    if (accepted > 0) ues_[u].queue.push(now_ms_, accepted);
  }

  redraw_fast_fading(channel_, rp_, rng_);

  // DU scheduling, one cell at a time (cells are independent within a
  // subframe).
  mac::CellSchedContext ctx;
  ctx.num_rbs = cfg_.num_rbs;
  ctx.num_rb_groups = cfg_.num_rb_groups;
  ctx.mcs = &mcs_;
  ctx.re_per_rb = rp_.re_per_rb;
  ctx.subframe_ms = cfg_.subframe_ms;
  ctx.literal_weight = ep_.literal_weight;

  std::vector<mac::Allocation> allocs(cfg_.num_cells);
  std::vector<std::vector<mac::UeSchedInput>> inputs(cfg_.num_cells);
  std::vector<std::vector<int>> cell_ue_global(cfg_.num_cells);
  std::vector<std::vector<float>> pref_rows(cfg_.total_ues());

  for (int k = 0; k < cfg_.num_cells; ++k) {
    for (int i = 0; i < cfg_.ues_per_cell[k]; ++i) {
      const int u = cfg_.ue_index(k, i);
      if (slot_ < ues_[u].disconnected_until_slot) continue;
      mac::UeSchedInput in;
      in.ue_local = i;
      const double sinr_for_mcs = ues_[u].wideband_sinr_db - rp_.mcs_margin_db;
      in.cqi = mcs_.cqi_from_sinr(sinr_for_mcs);
      in.backlog_bits = ues_[u].queue.total_bytes() * 8;
      in.retx_pending = ues_[u].retx_bits > 0;
      in.retx_bits = ues_[u].retx_bits;
      pref_rows[u].resize(cfg_.num_rb_groups);
      for (int g = 0; g < cfg_.num_rb_groups; ++g)
        pref_rows[u][g] = active_policy_.value(k, i, g);
      in.prefs = pref_rows[u];
      inputs[k].push_back(in);
      cell_ue_global[k].push_back(u);
    }
    allocs[k] = ep_.hard_allocator ? mac::hard_policy_allocate(ctx, inputs[k], sched_[k])
                                   : mac::allocate_subframe(ctx, inputs[k], sched_[k]);
  }

  // Interference coupling is group-granular. Outcomes see the concurrent
  // transmitters; CSI measurement sees any cell active within the window,
  // which keeps link adaptation conservative under bursty overlap.
  for (int c = 0; c < cfg_.num_cells; ++c)
    for (int g = 0; g < cfg_.num_rb_groups; ++g)
      if (allocs[c].group_used[g])
        last_active_sf_[static_cast<size_t>(c) * cfg_.num_rb_groups + g] = subframe_;
  auto interferer_set = [&](int serving, int group) {
    std::vector<int> set;
    for (int c = 0; c < cfg_.num_cells; ++c)
      if (c != serving && allocs[c].group_used[group]) set.push_back(c);
    return set;
  };
  auto measured_interferer_set = [&](int serving, int group) {
    std::vector<int> set;
    for (int c = 0; c < cfg_.num_cells; ++c) {
      if (c == serving) continue;
      const long last = last_active_sf_[static_cast<size_t>(c) * cfg_.num_rb_groups +
                                        group];
      if (last >= 0 && subframe_ - last < ep_.csi_window_sf) set.push_back(c);
    }
    return set;
  };

  // Transmission outcomes.
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < cfg_.num_cells; ++k) {
    for (size_t ci = 0; ci < inputs[k].size(); ++ci) {
      const int u = cell_ue_global[k][ci];
      const mac::UeSchedInput& in = inputs[k][ci];
      SubframeSample s;
      s.sched_rbs = allocs[k].scheduled_rbs[ci];
      s.prbs = s.sched_rbs;

      long payload_bits = allocs[k].tb_bits[ci];
      payload_bits -= payload_bits % 8;
      double tb_sinr_db = 0.0;
      if (payload_bits > 0 && in.cqi > 0) {
        // Effective SINR over the owned RBs: RB-weighted linear mean of the
        // per-group SINR under the concurrent allocation pattern.
        double lin_sum = 0.0;
        int rb_count = 0;
        for (int g = 0; g < cfg_.num_rb_groups; ++g) {
          int owned = 0;
          for (int rb = group_bounds_[g]; rb < group_bounds_[g + 1]; ++rb)
            if (allocs[k].rb_owner[rb] == static_cast<int>(ci)) ++owned;
          if (owned == 0) continue;
          const double sdb =
              radio::sinr_db(channel_, k, u, g, interferer_set(k, g), rp_.sinr_clamp_db);
          lin_sum += owned * std::pow(10.0, sdb / 10.0);
          rb_count += owned;
        }
        const double eff_sinr_db = 10.0 * std::log10(lin_sum / rb_count);
        tb_sinr_db = eff_sinr_db;
        const int mcs_idx = mcs_.row_for_cqi(in.cqi).mcs;
        const double p_err = mcs_.bler(eff_sinr_db, mcs_idx, rp_.bler_slope);
        const bool failed = unif(rng_) < p_err;
        s.attempted = true;
        s.failed = failed;
        s.mcs = mcs_idx;
        ues_[u].last_mcs = mcs_idx;

        std::vector<double> delays;
        if (!failed) {
          const long bytes = payload_bits / 8;
          const long popped = ues_[u].queue.pop_bytes(bytes, now_ms_ + dt, &delays);
          accounts_[u].bytes_delivered += popped;
          s.delivered_bits = static_cast<double>(popped) * 8.0;
          if (allocs[k].tb_is_retx[ci]) {
            ues_[u].retx_bits = 0;
            ues_[u].retx_tries = 0;
          }
        } else if (allocs[k].tb_is_retx[ci]) {
          // Second failure: the block is dropped and the delay clock moves on.
          const long bytes = payload_bits / 8;
          accounts_[u].bytes_dropped += ues_[u].queue.drop_bytes(bytes);
          ues_[u].retx_bits = 0;
          ues_[u].retx_tries = 0;
        } else {
          ues_[u].retx_bits = payload_bits;
          ues_[u].retx_tries = 1;
        }
        if (!delays.empty()) {
          double sum = 0.0;
          for (double d : delays) sum += d;
          s.delay_ms = sum / delays.size();
        } else {
          s.delay_ms = ues_[u].queue.head_age_ms(now_ms_ + dt);
        }
      } else {
        s.delay_ms = ues_[u].queue.head_age_ms(now_ms_ + dt);
        s.mcs = 0;
      }

      // Link-adaptation feedback: when a TB flew, the UE measures the SINR
      // of its own allocation; otherwise it falls back to the windowed CSI
      // wideband, which also lets a dead link recover once interference
      // leaves.
      double meas_db;
      if (s.attempted) {
        meas_db = tb_sinr_db;
      } else {
        double lin = 0.0;
        for (int g = 0; g < cfg_.num_rb_groups; ++g) {
          const double sdb = radio::sinr_db(channel_, k, u, g,
                                            measured_interferer_set(k, g),
                                            rp_.sinr_clamp_db);
          lin += std::pow(10.0, sdb / 10.0);
        }
        meas_db = 10.0 * std::log10(lin / cfg_.num_rb_groups);
      }
      ues_[u].wideband_sinr_db =
          std::clamp(meas_db, -rp_.sinr_clamp_db, rp_.sinr_clamp_db);
      if (in.cqi == 0 && in.backlog_bits + in.retx_bits > 0) ++ues_[u].out_of_range_sf;

      const double pl = channel_.pathloss(k, u) + channel_.shadow(k, u);
      s.ul_snr_db = rp_.pcmax_dbm - pl - channel_.noise_dbm_per_rb - 40.0;
      s.phr_db = std::clamp(rp_.pcmax_dbm - channel_.noise_dbm_per_rb - 10.0 - pl, 0.0,
                            60.0);
      samples[u].push_back(s);
    }
  }

  now_ms_ += dt;
  ++subframe_;
}

SlotResult World::step_slot(const PreferencePolicy& action, double staleness_ms) {
  if (action.flat().size() != static_cast<size_t>(cfg_.action_dim()))
    throw ShapeError("step_slot: action dimension mismatch");
  e2_.submit(action, now_ms_, staleness_ms);

  std::vector<std::vector<SubframeSample>> samples(cfg_.total_ues());
  std::vector<double> offered_sum(cfg_.total_ues(), 0.0);
  const int n_sf = cfg_.subframes_per_slot();
  for (int sf = 0; sf < n_sf; ++sf) {
    if (auto p = e2_.poll(now_ms_)) active_policy_ = std::move(*p);
    for (int u = 0; u < cfg_.total_ues(); ++u)
      offered_sum[u] += traffic_[u].offered_rate_bps(now_ms_);
    step_subframe(samples);
  }
  evolve_shadowing(channel_, rp_, rng_);

  SlotResult res;
  res.obs = build_observation(cfg_, samples);
  res.ue_stats.resize(cfg_.total_ues());

  const double slot_s = cfg_.slot_ms / 1000.0;
  std::vector<std::optional<QoSSample>> qos(cfg_.total_ues());
  std::vector<double> demand(cfg_.total_ues(), 0.0);
  for (int u = 0; u < cfg_.total_ues(); ++u) {
    UeSlotStats& st = res.ue_stats[u];
    double bits = 0.0, mcs_sum = 0.0, prbs = 0.0;
    long attempts = 0, failures = 0;
    std::vector<double> slot_delays;
    for (const SubframeSample& s : samples[u]) {
      bits += s.delivered_bits;
      prbs += s.prbs;
      if (s.attempted) {
        ++attempts;
        mcs_sum += s.mcs;
        if (s.failed) ++failures;
      }
    }
    st.tp_bps = bits / slot_s;
    st.bler = attempts ? static_cast<double>(failures) / attempts : 0.0;
    st.mean_prbs = samples[u].empty() ? 0.0 : prbs / samples[u].size();
    st.mean_mcs = attempts ? mcs_sum / attempts : 0.0;
    st.offered_bps = offered_sum[u] / n_sf;
    st.disconnected = slot_ < ues_[u].disconnected_until_slot;

    // Slot-level delay: mean sojourn of packets dequeued during the slot;
    // if none left the queue, the age of the head packet; zero when idle.
    // The DU's measurement saturates at the 5 s reporting cap.
    double delay_sum = 0.0;
    long delay_count = 0;
    for (const SubframeSample& s : samples[u])
      if (s.delivered_bits > 0) {
        delay_sum += s.delay_ms;
        ++delay_count;
      }
    if (delay_count > 0)
      st.delay_ms = delay_sum / delay_count;
    else
      st.delay_ms = ues_[u].queue.head_age_ms(now_ms_);
    st.delay_ms = std::min(st.delay_ms, kDelayNormMs);

    qos[u] = QoSSample{st.tp_bps, st.delay_ms};
    demand[u] = st.offered_bps;
  }
  res.reward = compute_rewards(cfg_, qos, profiles_, &demand);

  // Disconnection model (see EnvParams). Sustained near-total block errors
  // or a dead link (no feasible MCS while backlogged) both count.
  for (int u = 0; u < cfg_.total_ues(); ++u) {
    const int oor = ues_[u].out_of_range_sf;
    ues_[u].out_of_range_sf = 0;
    if (slot_ < ues_[u].disconnected_until_slot) continue;
    const UeSlotStats& st = res.ue_stats[u];
    const bool link_dead = oor > 9 * n_sf / 10;
    const bool starved = (st.bler > ep_.disconnect_bler || link_dead) &&
                         st.tp_bps < 0.01 * std::max(demand[u], 1.0);
    if (starved && demand[u] > 0.0)
      ++ues_[u].consecutive_bad_slots;
    else
      ues_[u].consecutive_bad_slots = 0;
    if (ues_[u].consecutive_bad_slots >= ep_.disconnect_slots) {
      ues_[u].disconnected_until_slot = slot_ + 1 + ep_.reconnect_slots;
      ues_[u].consecutive_bad_slots = 0;
      accounts_[u].bytes_dropped += ues_[u].queue.total_bytes();
      ues_[u].queue.clear();
      ues_[u].retx_bits = 0;
      ues_[u].retx_tries = 0;
    }
  }

  check_conservation();
  ++slot_;
  return res;
}

void World::check_conservation() const {
  for (int u = 0; u < cfg_.total_ues(); ++u) {
    const ByteAccounting& a = accounts_[u];
    const long queued = ues_[u].queue.total_bytes();
    if (a.bytes_in != a.bytes_delivered + queued + a.bytes_dropped)
      throw NumericError("byte conservation violated for UE " + std::to_string(u));
  }
}

}  // namespace xdiff::envsim
