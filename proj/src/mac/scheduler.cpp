/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "mac/scheduler.hpp"

#include <algorithm>
#include <cmath>

namespace xdiff::mac {

void SchedulerState::reset(int num_ues) {
  avg_tp_bps.assign(num_ues, floor_bps);
}

void SchedulerState::update(int ue_local, double served_bps) {
  const double a = 1.0 / ema_horizon_subframes;
  double& avg = avg_tp_bps[ue_local];
  avg = std::max((1.0 - a) * avg + a * served_bps, floor_bps);
}

int Allocation::total_scheduled_rbs() const {
  int n = 0;
  for (int s : scheduled_rbs) n += s;
  return n;
}

double pf_metric(double inst_rate_bps, double avg_tp_bps) {
  return inst_rate_bps / avg_tp_bps;
}

double preference_weight(std::span<const float> prefs, bool literal) {
  if (prefs.empty()) return 0.0;
  int count = 0;
  for (float p : prefs) {
    if (literal ? (p < 0.0f) : (p >= 0.0f)) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(prefs.size());
}

double weighted_pf_metric(double inst_rate_bps, double avg_tp_bps, double w) {
  return pf_metric(inst_rate_bps, avg_tp_bps) * w;
}

double predicted_rate_bps(const radio::McsTable& mcs, int cqi, int nominal_rbs,
                          int re_per_rb, double subframe_ms) {
  return static_cast<double>(mcs.rb_bits(cqi, nominal_rbs, re_per_rb)) *
         (1000.0 / subframe_ms);
}

namespace {

struct Ranked {
  size_t idx;       // into the input vector
  bool retx;
  double metric;
  int ue_local;
};

struct AllocScratch {
  std::vector<int> free_in_group;  // free RB count per group
  std::vector<int> next_rb;        // next free RB index per group
};

// Takes up to `max_rbs` RBs from `group` for UE `ue`, in RB-index order.
int take_rbs(Allocation& out, AllocScratch& sc, const std::vector<int>& bounds,
             int group, int ue, int max_rbs) {
  int taken = 0;
  int rb = std::max(sc.next_rb[group], bounds[group]);
  while (taken < max_rbs && sc.free_in_group[group] > 0 && rb < bounds[group + 1]) {
    if (out.rb_owner[rb] < 0) {
      out.rb_owner[rb] = ue;
      ++out.scheduled_rbs[ue];
      --sc.free_in_group[group];
      ++taken;
    }
    ++rb;
  }
  sc.next_rb[group] = rb;
  return taken;
}

std::vector<Ranked> rank_ues(const CellSchedContext& ctx,
                             const std::vector<UeSchedInput>& ues,
                             const SchedulerState& state, bool use_weight) {
  const int nominal = (ctx.num_rbs + ctx.num_rb_groups - 1) / ctx.num_rb_groups;
  std::vector<Ranked> order;
  order.reserve(ues.size());
  for (size_t i = 0; i < ues.size(); ++i) {
    const UeSchedInput& u = ues[i];
    const double rate =
        predicted_rate_bps(*ctx.mcs, u.cqi, nominal, ctx.re_per_rb, ctx.subframe_ms);
    double m = pf_metric(rate, state.avg_tp_bps[u.ue_local]);
    if (use_weight) m *= preference_weight(u.prefs, ctx.literal_weight);
    order.push_back({i, u.retx_pending, m, u.ue_local});
  }
  std::sort(order.begin(), order.end(), [](const Ranked& a, const Ranked& b) {
    if (a.retx != b.retx) return a.retx;
    if (a.metric != b.metric) return a.metric > b.metric;
    return a.ue_local < b.ue_local;
  });
  return order;
}

// Groups sorted by descending preference, ties to the lower index, filtered
// by `pick`.
template <typename Pred>
std::vector<int> pref_order(std::span<const float> prefs, Pred pick) {
  std::vector<int> gs;
  for (int g = 0; g < static_cast<int>(prefs.size()); ++g)
    if (pick(prefs[g])) gs.push_back(g);
  std::stable_sort(gs.begin(), gs.end(), [&](int a, int b) {
    if (prefs[a] != prefs[b]) return prefs[a] > prefs[b];
    return a < b;
  });
  return gs;
}

Allocation make_empty(const CellSchedContext& ctx, size_t num_ues) {
  Allocation out;
  out.rb_owner.assign(ctx.num_rbs, -1);
  out.scheduled_rbs.assign(num_ues, 0);
  out.tb_bits.assign(num_ues, 0);
  out.tb_is_retx.assign(num_ues, 0);
  out.group_used.assign(ctx.num_rb_groups, 0);
  return out;
}

void finish_allocation(const CellSchedContext& ctx,
                       const std::vector<UeSchedInput>& ues, Allocation& out,
                       SchedulerState& state) {
  for (int rb = 0; rb < ctx.num_rbs; ++rb)
    if (out.rb_owner[rb] >= 0)
      out.group_used[rb_group_of(rb, ctx.num_rbs, ctx.num_rb_groups)] = 1;
  for (size_t i = 0; i < ues.size(); ++i) {
    const UeSchedInput& u = ues[i];
    const long need = u.retx_pending ? u.retx_bits : u.backlog_bits;
    const long cap = ctx.mcs->rb_bits(u.cqi, out.scheduled_rbs[i], ctx.re_per_rb);
    out.tb_bits[i] = std::min<long>(cap, need);
    out.tb_is_retx[i] = u.retx_pending && out.tb_bits[i] > 0;
  }
  for (size_t i = 0; i < ues.size(); ++i) {
    const double served_bps =
        static_cast<double>(out.tb_bits[i]) * (1000.0 / ctx.subframe_ms);
    state.update(ues[i].ue_local, served_bps);
  }
}

// Shared allocation engine: serves UEs in `order`; each UE draws RBs from
// the groups `phase_groups(ue)` returns until its pending payload is covered.
template <typename GroupsFn>
void alloc_phase(const CellSchedContext& ctx, const std::vector<UeSchedInput>& ues,
                 const std::vector<Ranked>& order, Allocation& out,
                 AllocScratch& sc, std::vector<long>& still_needed,
                 GroupsFn phase_groups) {
  const auto bounds = rb_group_bounds(ctx.num_rbs, ctx.num_rb_groups);
  for (const Ranked& r : order) {
    const UeSchedInput& u = ues[r.idx];
    if (still_needed[r.idx] <= 0) continue;
    const long bits_per_rb = ctx.mcs->rb_bits(u.cqi, 1, ctx.re_per_rb);
    if (bits_per_rb <= 0) continue;
    for (int g : phase_groups(u)) {
      if (still_needed[r.idx] <= 0) break;
      const int want = static_cast<int>(
          (still_needed[r.idx] + bits_per_rb - 1) / bits_per_rb);
      const int got = take_rbs(out, sc, bounds, g, static_cast<int>(r.idx), want);
      still_needed[r.idx] -= static_cast<long>(got) * bits_per_rb;
    }
  }
}

}  // namespace

Allocation allocate_subframe(const CellSchedContext& ctx,
                             const std::vector<UeSchedInput>& ues,
                             SchedulerState& state) {
  Allocation out = make_empty(ctx, ues.size());
  AllocScratch sc;
  sc.free_in_group = rb_group_sizes(ctx.num_rbs, ctx.num_rb_groups);
  sc.next_rb.assign(ctx.num_rb_groups, 0);

  const auto order = rank_ues(ctx, ues, state, /*use_weight=*/true);
  std::vector<long> need(ues.size());
  for (size_t i = 0; i < ues.size(); ++i)
    need[i] = ues[i].retx_pending ? ues[i].retx_bits : ues[i].backlog_bits;

  // Favorable groups first.
  alloc_phase(ctx, ues, order, out, sc, need, [](const UeSchedInput& u) {
    return pref_order(u.prefs, [](float p) { return p >= 0.0f; });
  });
  // Leftover RBs spill into avoided groups only once every UE that holds a
  // favorable claim is covered; an uncovered claimant keeps the avoided
  // spectrum off-limits for the whole cell this subframe.
  bool spill_allowed = true;
  for (size_t i = 0; i < ues.size(); ++i) {
    bool has_claim = false;
    for (float p : ues[i].prefs)
      if (p >= 0.0f) has_claim = true;
    if (has_claim && need[i] > 0 &&
        ctx.mcs->rb_bits(ues[i].cqi, 1, ctx.re_per_rb) > 0)
      spill_allowed = false;
  }
  if (spill_allowed) {
    alloc_phase(ctx, ues, order, out, sc, need, [](const UeSchedInput& u) {
      return pref_order(u.prefs, [](float) { return true; });
    });
  }

  finish_allocation(ctx, ues, out, state);
  return out;
}

Allocation hard_policy_allocate(const CellSchedContext& ctx,
                                const std::vector<UeSchedInput>& ues,
                                SchedulerState& state) {
  Allocation out = make_empty(ctx, ues.size());
  AllocScratch sc;
  sc.free_in_group = rb_group_sizes(ctx.num_rbs, ctx.num_rb_groups);
  sc.next_rb.assign(ctx.num_rb_groups, 0);

  const auto order = rank_ues(ctx, ues, state, /*use_weight=*/false);
  std::vector<long> need(ues.size());
  for (size_t i = 0; i < ues.size(); ++i)
    need[i] = ues[i].retx_pending ? ues[i].retx_bits : ues[i].backlog_bits;

  // Claimed (+1) groups first, then no-preference (0) groups; -1 never.
  alloc_phase(ctx, ues, order, out, sc, need, [](const UeSchedInput& u) {
    return pref_order(u.prefs, [](float p) { return p > 0.0f; });
  });
  alloc_phase(ctx, ues, order, out, sc, need, [](const UeSchedInput& u) {
    return pref_order(u.prefs, [](float p) { return p == 0.0f; });
  });

  finish_allocation(ctx, ues, out, state);
  return out;
}

}  // namespace xdiff::mac
