/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/reward.hpp"
#include "core/types.hpp"

using namespace xdiff;

namespace {

NetworkConfig small_cfg(int cells = 2, std::vector<int> ues = {1, 1}) {
  NetworkConfig cfg;
  cfg.num_cells = cells;
  cfg.ues_per_cell = std::move(ues);
  cfg.lambda_p.assign(cells, 1.0);
  cfg.lambda_d.assign(cells, 1.0);
  return cfg;
}

std::vector<UEProfile> profiles_for(const NetworkConfig& cfg, double demand_bps,
                                    double demand_ms) {
  std::vector<UEProfile> ps;
  for (int k = 0; k < cfg.num_cells; ++k)
    for (int i = 0; i < cfg.ues_per_cell[k]; ++i) {
      UEProfile p;
      p.cell_id = k;
      p.ue_id = i;
      p.tp_demand_bps = demand_bps;
      p.delay_demand_ms = demand_ms;
      ps.push_back(p);
    }
  return ps;
}

}  // namespace

TEST_CASE("throughput regret") {
  CHECK(ue_throughput_regret(50e6, 50e6) == 0.0);
  CHECK(ue_throughput_regret(25e6, 50e6) == 0.5);
  CHECK(ue_throughput_regret(80e6, 50e6) == 0.0);
  CHECK_THROWS_AS(ue_throughput_regret(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ue_throughput_regret(1.0, -5.0), std::invalid_argument);
}

TEST_CASE("delay regret") {
  CHECK(ue_delay_regret(1.0, 5.0) == 0.0);
  CHECK(ue_delay_regret(10.0, 5.0) == 1.0);
  CHECK(ue_delay_regret(5.0, 5.0) == 0.0);
  CHECK_THROWS_AS(ue_delay_regret(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("regret scale invariance") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 100.0);
  for (int i = 0; i < 200; ++i) {
    const double rho = u(rng), p = u(rng), c = u(rng);
    CHECK(ue_throughput_regret(rho, p) ==
          doctest::Approx(ue_throughput_regret(c * rho, c * p)).epsilon(1e-12));
  }
}

TEST_CASE("compute_rewards: all demands met gives zero") {
  const auto cfg = small_cfg();
  const auto profs = profiles_for(cfg, 50e6, 10.0);
  std::vector<std::optional<QoSSample>> samples(2);
  samples[0] = QoSSample{60e6, 5.0};
  samples[1] = QoSSample{50e6, 10.0};
  const auto r = compute_rewards(cfg, samples, profs);
  CHECK(r.total == 0.0);
  for (double v : r.r_tp) CHECK(v == 0.0);
  for (double v : r.r_delay) CHECK(v == 0.0);
}

TEST_CASE("compute_rewards: single-term sum") {
  auto cfg = small_cfg(1, {1});
  const auto profs = profiles_for(cfg, 50e6, 7.0);
  std::vector<std::optional<QoSSample>> samples(1);
  samples[0] = QoSSample{25e6, 7.0};
  const auto r = compute_rewards(cfg, samples, profs);
  CHECK(r.total == doctest::Approx(-0.5));
  CHECK(r.r_tp[0] == doctest::Approx(-0.5));
  CHECK(r.r_delay[0] == 0.0);
}

TEST_CASE("compute_rewards: weighted two-cell sum") {
  // Hand-summed oracle over the weighted total: regrets (-0.5, -0.2) with
  // throughput weights (2, 1) and zero delay regret -> -1.2.
  auto cfg = small_cfg();
  cfg.lambda_p = {2.0, 1.0};
  cfg.lambda_d = {1.0, 1.0};
  const auto profs = profiles_for(cfg, 100e6, 50.0);
  std::vector<std::optional<QoSSample>> samples(2);
  samples[0] = QoSSample{50e6, 1.0};  // regret 0.5
  samples[1] = QoSSample{80e6, 1.0};  // regret 0.2
  const auto r = compute_rewards(cfg, samples, profs);
  const double oracle = 2.0 * -0.5 + 1.0 * -0.2;
  CHECK(r.total == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("compute_rewards: missing sample raises") {
  const auto cfg = small_cfg();
  const auto profs = profiles_for(cfg, 50e6, 10.0);
  std::vector<std::optional<QoSSample>> samples(2);
  samples[0] = QoSSample{50e6, 1.0};
  CHECK_THROWS_AS(compute_rewards(cfg, samples, profs), IncompleteObservationError);
}

TEST_CASE("reward monotonicity in rho and tau") {
  auto cfg = small_cfg();
  const auto profs = profiles_for(cfg, 100e6, 20.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 200e6);
  std::uniform_real_distribution<double> ud(0.0, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::optional<QoSSample>> s(2);
    s[0] = QoSSample{u(rng), ud(rng)};
    s[1] = QoSSample{u(rng), ud(rng)};
    const double base = compute_rewards(cfg, s, profs).total;
    auto s2 = s;
    s2[0]->achieved_tp_bps += 10e6;
    CHECK(compute_rewards(cfg, s2, profs).total >= base);
    auto s3 = s;
    s3[1]->achieved_delay_ms += 10.0;
    CHECK(compute_rewards(cfg, s3, profs).total <= base);
  }
}

TEST_CASE("rewards are never positive") {
  auto cfg = small_cfg();
  const auto profs = profiles_for(cfg, 10e6, 5.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 30e6);
  std::uniform_real_distribution<double> ud(0.0, 30.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::optional<QoSSample>> s(2);
    s[0] = QoSSample{u(rng), ud(rng)};
    s[1] = QoSSample{u(rng), ud(rng)};
    const auto r = compute_rewards(cfg, s, profs);
    CHECK(r.total <= 0.0);
    for (double v : r.r_tp) CHECK(v <= 0.0);
    for (double v : r.r_delay) CHECK(v <= 0.0);
  }
}

TEST_CASE("network config invariants") {
  auto cfg = small_cfg();
  CHECK_NOTHROW(cfg.validate());
  auto bad = cfg;
  bad.slot_ms = 100.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.num_rb_groups = 200;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.lambda_p = {1.0, -0.1};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.gamma = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("rb grouping: near-equal deterministic groups") {
  const auto sizes = rb_group_sizes(106, 10);
  int total = 0, lo = 1 << 30, hi = 0;
  for (int s : sizes) {
    total += s;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(total == 106);
  CHECK(hi - lo <= 1);
  int prev = 0;
  for (int j = 0; j < 106; ++j) {
    const int g = rb_group_of(j, 106, 10);
    CHECK(g >= prev);
    CHECK(g < 10);
    prev = g;
  }
  const auto bounds = rb_group_bounds(106, 10);
  CHECK(bounds.front() == 0);
  CHECK(bounds.back() == 106);
}

TEST_CASE("preference policy validity and quantization") {
  const auto cfg = small_cfg();
  PreferencePolicy p(cfg);
  CHECK(p.is_valid_soft());
  CHECK(p.is_hard());  // all zeros is a valid hard policy
  p.value(0, 0, 3) = 0.7f;
  CHECK(p.is_valid_soft());
  CHECK_FALSE(p.is_hard());
  const auto q = p.quantized_hard();
  CHECK(q.is_hard());
  CHECK(q.value(0, 0, 3) == 1.0f);
  // Every valid hard policy is a valid soft policy.
  CHECK(q.is_valid_soft());

  p.value(1, 0, 0) = 1.8f;
  CHECK_FALSE(p.is_valid_soft());
  p.clamp_soft();
  CHECK(p.value(1, 0, 0) == 1.0f);
  CHECK(p.is_valid_soft());

  std::vector<float> wrong(5, 0.0f);
  CHECK_THROWS_AS(PreferencePolicy(cfg, wrong), ShapeError);
}

TEST_CASE("traffic schedule lookup") {
  UEProfile p;
  p.tp_demand_bps = 10e6;
  p.delay_demand_ms = 50;
  CHECK(p.offered_rate_bps(0.0) == 10e6);
  p.traffic = {{0.0, 5e6}, {1000.0, 20e6}};
  CHECK(p.offered_rate_bps(0.0) == 5e6);
  CHECK(p.offered_rate_bps(999.0) == 5e6);
  CHECK(p.offered_rate_bps(1000.0) == 20e6);
  CHECK(p.offered_rate_bps(5000.0) == 20e6);
  p.traffic = {{100.0, 5e6}, {50.0, 1e6}};
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
