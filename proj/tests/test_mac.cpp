/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/types.hpp"
#include "mac/scheduler.hpp"

using namespace xdiff;
using mac::Allocation;
using mac::CellSchedContext;
using mac::SchedulerState;
using mac::UeSchedInput;

namespace {

CellSchedContext make_ctx(const radio::McsTable& mcs, int rbs = 106, int groups = 10) {
  CellSchedContext ctx;
  ctx.num_rbs = rbs;
  ctx.num_rb_groups = groups;
  ctx.mcs = &mcs;
  ctx.re_per_rb = 288;
  ctx.subframe_ms = 1.0;
  return ctx;
}

// Brute-force verifier for the ordering semantics: every RB a UE owns in a
// lower-priority phase/group must be justified, i.e. whenever UE A precedes
// UE B, B never holds an RB from a group A still wanted.
long owned_bits(const CellSchedContext& ctx, const Allocation& a, int ue, int cqi) {
  return ctx.mcs->rb_bits(cqi, a.scheduled_rbs[ue], ctx.re_per_rb);
}

}  // namespace

TEST_CASE("pf metric basics") {
  CHECK(mac::pf_metric(100.0, 50.0) == 2.0);
  CHECK(mac::pf_metric(0.0, 50.0) == 0.0);
  CHECK(mac::pf_metric(7.0, 3.0) == mac::pf_metric(7.0, 3.0));
}

TEST_CASE("preference weight: favorable fraction and literal switch") {
  std::vector<float> all_pos(10, 1.0f), all_neg(10, -1.0f), half(10, -1.0f);
  for (int g = 0; g < 5; ++g) half[g] = 0.0f;
  CHECK(mac::preference_weight(all_pos) == 1.0);
  CHECK(mac::preference_weight(all_neg) == 0.0);
  CHECK(mac::preference_weight(half) == 0.5);
  // Literal unfavorable-count reading, kept behind the switch.
  CHECK(mac::preference_weight(all_neg, /*literal=*/true) == 1.0);
  CHECK(mac::preference_weight(half, /*literal=*/true) == 0.5);
}

TEST_CASE("weighted pf metric") {
  CHECK(mac::weighted_pf_metric(100.0, 50.0, 0.0) == 0.0);
  CHECK(mac::weighted_pf_metric(100.0, 50.0, 1.0) == mac::pf_metric(100.0, 50.0));
  CHECK(mac::weighted_pf_metric(100.0, 50.0, 0.5) == 1.0);
}

TEST_CASE("argmax invariance: scaling all rates preserves the order") {
  const auto mcs = radio::McsTable::default_table();
  SchedulerState st;
  st.reset(3);
  st.avg_tp_bps = {5e6, 2e6, 9e6};
  std::vector<double> rates = {10e6, 8e6, 30e6};
  std::vector<int> order1(3), order2(3);
  auto rank = [&](double scale, std::vector<int>& order) {
    std::vector<std::pair<double, int>> m;
    for (int i = 0; i < 3; ++i)
      m.push_back({mac::pf_metric(rates[i] * scale, st.avg_tp_bps[i]), i});
    std::sort(m.begin(), m.end(), std::greater<>());
    for (int i = 0; i < 3; ++i) order[i] = m[i].second;
  };
  rank(1.0, order1);
  rank(17.3, order2);
  CHECK(order1 == order2);
}

TEST_CASE("single UE with capacity-exceeding backlog owns all RBs") {
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  SchedulerState st;
  st.reset(1);
  std::vector<float> prefs(10, 0.0f);
  std::vector<UeSchedInput> ues(1);
  ues[0].ue_local = 0;
  ues[0].cqi = 15;
  ues[0].backlog_bits = 100'000'000;
  ues[0].prefs = prefs;
  const Allocation a = mac::allocate_subframe(ctx, ues, st);
  CHECK(a.scheduled_rbs[0] == 106);
  CHECK(a.total_scheduled_rbs() == 106);
  for (uint8_t used : a.group_used) CHECK(used == 1);
}

TEST_CASE("mirror preferences split the band between two saturated UEs") {
  // Hand-trace of the allocation ordering, checked exhaustively below.
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  SchedulerState st;
  st.reset(2);
  std::vector<float> p1(10), p2(10);
  for (int g = 0; g < 10; ++g) {
    p1[g] = g < 5 ? 1.0f : -1.0f;
    p2[g] = g < 5 ? -1.0f : 1.0f;
  }
  std::vector<UeSchedInput> ues(2);
  for (int i = 0; i < 2; ++i) {
    ues[i].ue_local = i;
    ues[i].cqi = 15;
    ues[i].backlog_bits = 100'000'000;
  }
  ues[0].prefs = p1;
  ues[1].prefs = p2;
  const Allocation a = mac::allocate_subframe(ctx, ues, st);
  const auto bounds = rb_group_bounds(106, 10);
  for (int rb = 0; rb < 106; ++rb) {
    const int g = rb_group_of(rb, 106, 10);
    CHECK(a.rb_owner[rb] == (g < 5 ? 0 : 1));
    (void)bounds;
  }
}

TEST_CASE("all-negative policy defers a UE behind everyone else") {
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  SchedulerState st;
  st.reset(2);
  std::vector<float> neg(10, -1.0f), neutral(10, 0.0f);
  std::vector<UeSchedInput> ues(2);
  ues[0] = {0, 15, 100'000'000, false, 0, neg};
  ues[1] = {1, 15, 40'000, false, 0, neutral};  // small backlog, fully served
  const Allocation a = mac::allocate_subframe(ctx, ues, st);
  // UE1's demand is covered first; UE0 only gets leftovers.
  CHECK(owned_bits(ctx, a, 1, 15) >= 40'000);
  CHECK(a.scheduled_rbs[0] + a.scheduled_rbs[1] <= 106);
  CHECK(a.scheduled_rbs[0] > 0);  // leftovers do flow to the deferred UE

  // With the other UE saturated, the all-negative UE receives nothing.
  ues[1].backlog_bits = 100'000'000;
  SchedulerState st2;
  st2.reset(2);
  const Allocation b = mac::allocate_subframe(ctx, ues, st2);
  CHECK(b.scheduled_rbs[0] == 0);
  CHECK(b.scheduled_rbs[1] == 106);
}

TEST_CASE("conservation: never more than num_rbs assigned") {
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<float> up(-1.0f, 1.0f);
  std::uniform_int_distribution<int> ucqi(0, 15);
  std::uniform_int_distribution<long> ub(0, 3'000'000);
  for (int trial = 0; trial < 50; ++trial) {
    SchedulerState st;
    st.reset(4);
    std::vector<std::vector<float>> prefs(4, std::vector<float>(10));
    std::vector<UeSchedInput> ues(4);
    for (int i = 0; i < 4; ++i) {
      for (auto& v : prefs[i]) v = up(rng);
      ues[i].ue_local = i;
      ues[i].cqi = ucqi(rng);
      ues[i].backlog_bits = ub(rng);
      ues[i].prefs = prefs[i];
    }
    const Allocation a = mac::allocate_subframe(ctx, ues, st);
    CHECK(a.total_scheduled_rbs() <= 106);
    int owned = 0;
    for (int rb = 0; rb < 106; ++rb)
      if (a.rb_owner[rb] >= 0) ++owned;
    CHECK(owned == a.total_scheduled_rbs());
  }
}

TEST_CASE("retransmission-pending UEs are served first") {
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  SchedulerState st;
  st.reset(2);
  st.avg_tp_bps = {1e9, 1e3};  // UE0 has terrible PF metric
  std::vector<float> neutral(10, 0.0f);
  std::vector<UeSchedInput> ues(2);
  ues[0] = {0, 15, 0, true, 50'000, neutral};
  ues[1] = {1, 15, 100'000'000, false, 0, neutral};
  const Allocation a = mac::allocate_subframe(ctx, ues, st);
  CHECK(a.tb_is_retx[0] == 1);
  CHECK(owned_bits(ctx, a, 0, 15) >= 50'000);
  // Retransmission TB carries exactly the pending payload.
  CHECK(a.tb_bits[0] == 50'000);
}

TEST_CASE("fairness: identical UEs converge to equal long-run throughput") {
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  SchedulerState st;
  st.reset(2);
  std::vector<float> neutral(10, 0.0f);
  double served[2] = {0.0, 0.0};
  for (int sf = 0; sf < 10000; ++sf) {
    std::vector<UeSchedInput> ues(2);
    for (int i = 0; i < 2; ++i) {
      ues[i].ue_local = i;
      ues[i].cqi = 12;
      ues[i].backlog_bits = 100'000'000;
      ues[i].prefs = neutral;
    }
    const Allocation a = mac::allocate_subframe(ctx, ues, st);
    served[0] += static_cast<double>(a.tb_bits[0]);
    served[1] += static_cast<double>(a.tb_bits[1]);
  }
  const double ratio = served[0] / served[1];
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("hard policy: all-zero equals plain PF") {
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  std::vector<float> zero(10, 0.0f);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> ub(0, 2'000'000);
  for (int trial = 0; trial < 20; ++trial) {
    SchedulerState s1, s2;
    s1.reset(3);
    s2.reset(3);
    std::vector<UeSchedInput> ues(3);
    for (int i = 0; i < 3; ++i) {
      ues[i].ue_local = i;
      ues[i].cqi = 10 + i;
      ues[i].backlog_bits = ub(rng);
      ues[i].prefs = zero;
    }
    const Allocation soft = mac::allocate_subframe(ctx, ues, s1);
    const Allocation hard = mac::hard_policy_allocate(ctx, ues, s2);
    CHECK(soft.rb_owner == hard.rb_owner);
    CHECK(soft.tb_bits == hard.tb_bits);
  }
}

TEST_CASE("hard policy: +1 groups come first, -1 groups never") {
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  SchedulerState st;
  st.reset(2);
  std::vector<float> claim3(10, 0.0f), nothing(10, -1.0f);
  claim3[3] = 1.0f;
  std::vector<UeSchedInput> ues(2);
  ues[0] = {0, 15, 200'000, false, 0, claim3};
  ues[1] = {1, 15, 100'000'000, false, 0, nothing};
  const Allocation a = mac::hard_policy_allocate(ctx, ues, st);
  // UE0's allocation starts with group 3.
  const auto bounds = rb_group_bounds(106, 10);
  CHECK(a.rb_owner[bounds[3]] == 0);
  // UE1 is fully excluded.
  CHECK(a.scheduled_rbs[1] == 0);
}

TEST_CASE("hard policy: conflicting +1 claims resolved by PF metric") {
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  SchedulerState st;
  st.reset(2);
  st.avg_tp_bps = {1e3, 1e6};  // UE0 wins the PF comparison
  std::vector<float> both(10, -1.0f);
  both[2] = 1.0f;
  std::vector<UeSchedInput> ues(2);
  ues[0] = {0, 15, 100'000'000, false, 0, both};
  ues[1] = {1, 15, 100'000'000, false, 0, both};
  const Allocation a = mac::hard_policy_allocate(ctx, ues, st);
  const auto bounds = rb_group_bounds(106, 10);
  for (int rb = bounds[2]; rb < bounds[3]; ++rb) CHECK(a.rb_owner[rb] == 0);
}

TEST_CASE("starvation exclusion: zero-weight UE only gets leftovers") {
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> ub(10'000, 400'000);
  for (int trial = 0; trial < 30; ++trial) {
    SchedulerState st;
    st.reset(3);
    std::vector<float> neg(10, -1.0f), neutral(10, 0.0f);
    std::vector<UeSchedInput> ues(3);
    ues[0] = {0, 15, 100'000'000, false, 0, neg};  // w = 0
    ues[1] = {1, 15, ub(rng), false, 0, neutral};
    ues[2] = {2, 15, ub(rng), false, 0, neutral};
    const Allocation a = mac::allocate_subframe(ctx, ues, st);
    if (a.scheduled_rbs[0] > 0) {
      // Positive-weight UEs' backlogs must already be fully covered.
      CHECK(owned_bits(ctx, a, 1, 15) >= ues[1].backlog_bits);
      CHECK(owned_bits(ctx, a, 2, 15) >= ues[2].backlog_bits);
    }
  }
}

TEST_CASE("empty backlogs produce an empty allocation") {
  const auto mcs = radio::McsTable::default_table();
  const auto ctx = make_ctx(mcs);
  SchedulerState st;
  st.reset(2);
  std::vector<float> neutral(10, 0.0f);
  std::vector<UeSchedInput> ues(2);
  ues[0] = {0, 15, 0, false, 0, neutral};
  ues[1] = {1, 15, 0, false, 0, neutral};
  const Allocation a = mac::allocate_subframe(ctx, ues, st);
  CHECK(a.total_scheduled_rbs() == 0);
  for (int o : a.rb_owner) CHECK(o == -1);
}

TEST_CASE("scheduler state: floor and EMA update") {
  SchedulerState st;
  st.reset(2);
  CHECK(st.avg_tp_bps[0] == st.floor_bps);
  st.update(0, 1e6);
  CHECK(st.avg_tp_bps[0] > st.floor_bps);
  for (int i = 0; i < 2000; ++i) st.update(1, 0.0);
  CHECK(st.avg_tp_bps[1] == st.floor_bps);  // never below the floor
}
