/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
// Acceptance suite: one end-to-end check per release criterion. Every check
// prints a single [PASS]/[FAIL] line; the binary exits non-zero if any
// executed check fails. Run with a criterion number (1..10) to execute one,
// or with no arguments for all.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../bandit.hpp"
#include "../gradcheck.hpp"
#include "../sim_helpers.hpp"
#include "agent/critics.hpp"
#include "agent/learner.hpp"
#include "baselines/ddpg.hpp"
#include "baselines/ddqn.hpp"
#include "cli/config_file.hpp"
#include "cli/runner.hpp"
#include "diffusion/policy.hpp"
#include "env/scenario.hpp"

using namespace xdiff;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.empty() ? 0.0 : v[v.size() / 2];
}

agent::LearnerConfig lab_learner(const envsim::Scenario& sc, uint64_t seed) {
  agent::LearnerConfig lc;
  lc.state_dim = sc.cfg.total_ues() * envsim::kFeatCount;
  lc.action_dim = sc.cfg.action_dim();
  lc.gamma = static_cast<float>(sc.cfg.gamma);
  lc.reward_scale = static_cast<float>(sc.cfg.total_ues()) / 4.0f;
  lc.seed = seed;
  return lc;
}

cli::RunSummary run_provider(const envsim::Scenario& sc, const std::string& provider,
                             uint64_t seed, int slots, bool latency_coupling = false,
                             int demand_shift = -1) {
  envsim::Scenario scenario = sc;
  if (demand_shift >= 0) {
    envsim::ScenarioOptions so;
    so.demand_shift_slot = demand_shift;
    scenario = envsim::make_lab_scenario(so);
  }
  cli::RunOptions opt;
  opt.provider = provider;
  opt.slots = slots;
  opt.seed = seed;
  opt.latency_coupling = latency_coupling;
  return cli::run_single(scenario, lab_learner(scenario, seed), opt);
}

// ---------------------------------------------------------------------------
// C1: gradient integrity for every trained network.
Outcome c1() {
  std::mt19937_64 rng(11);
  std::ostringstream note;
  bool ok = true;

  // Epsilon-net through the denoising loss.
  {
    const auto sch = diffusion::DenoiseSchedule::make(4);
    const int adim = 3, sdim = 2, B = 4;
    diffusion::EpsilonNet net(adim, sdim, 6, 8, 2, rng);
    std::uniform_real_distribution<float> u(-0.2f, 0.2f);
    for (auto& t : net.net().params())
      for (size_t j = 0; j < t.n; ++j)
        if (t.p[j] == 0.0f) t.p[j] = u(rng);
    nn::MatF S(B, sdim), A(B, adim);
    for (auto& v : S.d) v = u(rng);
    for (auto& v : A.d) v = u(rng);

    auto loss_double = [&]() {
      std::mt19937_64 r(101);
      std::uniform_int_distribution<int> uk(1, sch.steps);
      std::vector<int> ks(B);
      for (int& k : ks) k = uk(r);
      std::normal_distribution<float> n(0.0f, 1.0f);
      nn::MatF noise(B, adim);
      for (auto& v : noise.d) v = n(r);
      double loss = 0.0;
      for (int b = 0; b < B; ++b) {
        std::vector<double> in;
        const double sab = std::sqrt(static_cast<double>(sch.abar(ks[b])));
        const double snb = std::sqrt(1.0 - static_cast<double>(sch.abar(ks[b])));
        for (int c = 0; c < adim; ++c)
          in.push_back(sab * A.at(b, c) + snb * noise.at(b, c));
        for (int c = 0; c < sdim; ++c) in.push_back(S.at(b, c));
        for (float v : nn::timestep_embedding(ks[b], net.emb_dim())) in.push_back(v);
        const auto pred = test::mlp_forward_double(net.net(), in);
        for (int c = 0; c < adim; ++c) {
          const double e = pred[c] - noise.at(b, c);
          loss += e * e;
        }
      }
      return loss / B;
    };
    nn::MlpGrads g = net.net().make_grads();
    std::mt19937_64 r(101);
    diffusion::diffusion_loss(net, S, A, sch, r, &g);
    const auto res = test::finite_diff_check(net.net().params(),
                                             test::flatten_grads(g), loss_double);
    note << "eps-net " << res.rel_l2;
    ok = ok && res.rel_l2 < 1e-4;
  }

  // Both critics through the MSE loss.
  {
    agent::CriticPair critics(4, 3, 10, 2, 1e-3f, rng);
    std::uniform_real_distribution<float> u(-1.0f, 1.0f);
    nn::MatF S(5, 4), A(5, 3);
    for (auto& v : S.d) v = u(rng);
    for (auto& v : A.d) v = u(rng);
    std::vector<float> y(5);
    for (auto& v : y) v = u(rng) - 1.0f;
    const nn::MatF in = agent::stack_sa(S, A);
    for (nn::Mlp* net : {&critics.q1, &critics.q2}) {
      auto loss_double = [&]() {
        double loss = 0.0;
        for (int r2 = 0; r2 < in.rows; ++r2) {
          std::vector<double> row(in.row(r2), in.row(r2) + in.cols);
          const double e = test::mlp_forward_double(*net, row)[0] - y[r2];
          loss += e * e;
        }
        return loss / in.rows;
      };
      nn::MlpGrads g = net->make_grads();
      agent::critic_gradients(*net, in, y, g);
      const auto res =
          test::finite_diff_check(net->params(), test::flatten_grads(g), loss_double);
      note << " critic " << res.rel_l2;
      ok = ok && res.rel_l2 < 1e-4;
    }
  }

  // DDPG actor through -mean Q(s, actor(s)).
  {
    nn::Mlp actor({3, 8, 2}, nn::Act::mish, nn::Act::tanh_, rng);
    nn::Mlp critic({5, 8, 1}, nn::Act::mish, nn::Act::identity, rng);
    nn::MatF S(4, 3);
    std::uniform_real_distribution<float> u(-1.0f, 1.0f);
    for (auto& v : S.d) v = u(rng);
    nn::MlpGrads g = actor.make_grads();
    baselines::DdpgProvider::actor_gradients(actor, critic, S, 3, 2, g);
    auto loss_double = [&]() {
      double loss = 0.0;
      for (int r2 = 0; r2 < S.rows; ++r2) {
        std::vector<double> in(S.row(r2), S.row(r2) + S.cols);
        const auto a = test::mlp_forward_double(actor, in);
        std::vector<double> qin = in;
        qin.insert(qin.end(), a.begin(), a.end());
        loss -= test::mlp_forward_double(critic, qin)[0];
      }
      return loss / S.rows;
    };
    const auto res =
        test::finite_diff_check(actor.params(), test::flatten_grads(g), loss_double);
    note << " actor " << res.rel_l2;
    ok = ok && res.rel_l2 < 1e-4;
  }

  // Through-the-sampler guidance gradient (interior operating point).
  {
    const auto sch = diffusion::DenoiseSchedule::make(3, 0.05f, 1.0f);
    const int adim = 2, sdim = 2, B = 3;
    diffusion::EpsilonNet net(adim, sdim, 4, 8, 2, rng);
    std::uniform_real_distribution<float> u(-0.15f, 0.15f);
    for (auto& t : net.net().params())
      for (size_t j = 0; j < t.n; ++j)
        if (t.p[j] == 0.0f) t.p[j] = u(rng);
    nn::Mlp critic({sdim + adim, 6, 1}, nn::Act::mish, nn::Act::identity, rng);
    nn::MatF S(B, sdim);
    for (auto& v : S.d) v = u(rng);
    diffusion::ChainNoise noise = diffusion::ChainNoise::draw(B, adim, sch.steps, rng);
    for (auto& m : noise.draws)
      for (float& v : m.d) v *= 0.2f;
    const float denom = 0.9f;

    auto value_double = [&]() {
      std::vector<std::vector<double>> a(B, std::vector<double>(adim));
      for (int b = 0; b < B; ++b)
        for (int c = 0; c < adim; ++c) a[b][c] = noise.draws[0].at(b, c);
      size_t zi = 1;
      for (int k = sch.steps; k >= 1; --k) {
        const auto emb = nn::timestep_embedding(k, net.emb_dim());
        auto next = a;
        const double coeff = static_cast<double>(sch.b(k)) / std::sqrt(1.0 - sch.abar(k));
        const double inv_sa = 1.0 / std::sqrt(static_cast<double>(sch.a(k)));
        const double sigma = k > 1 ? std::sqrt(static_cast<double>(sch.b(k))) : 0.0;
        for (int b = 0; b < B; ++b) {
          std::vector<double> in;
          for (int c = 0; c < adim; ++c) in.push_back(a[b][c]);
          for (int c = 0; c < sdim; ++c) in.push_back(S.at(b, c));
          for (float v : emb) in.push_back(v);
          const auto pred = test::mlp_forward_double(net.net(), in);
          for (int c = 0; c < adim; ++c) {
            double v = (a[b][c] - coeff * pred[c]) * inv_sa;
            if (k > 1) v += sigma * noise.draws[zi].at(b, c);
            next[b][c] = v;
          }
        }
        if (k > 1) ++zi;
        a = std::move(next);
      }
      double sum = 0.0;
      for (int b = 0; b < B; ++b) {
        std::vector<double> in;
        for (int c = 0; c < sdim; ++c) in.push_back(S.at(b, c));
        for (int c = 0; c < adim; ++c) in.push_back(std::clamp(a[b][c], -1.0, 1.0));
        sum += test::mlp_forward_double(critic, in)[0];
      }
      return sum / B / denom;
    };
    nn::MlpGrads g = net.net().make_grads();
    std::mt19937_64 r(1);
    diffusion::q_guidance(net, critic, S, denom, sch, r, &g, nullptr, &noise);
    const auto res = test::finite_diff_check(net.net().params(),
                                             test::flatten_grads(g), value_double,
                                             1e-3f);
    note << " guidance " << res.rel_l2;
    ok = ok && res.rel_l2 < 1e-3;
  }
  return {ok, "rel L2 errors: " + note.str()};
}

// ---------------------------------------------------------------------------
// C2: diffusion correctness suite.
Outcome c2() {
  std::ostringstream note;
  bool ok = true;
  std::mt19937_64 rng(5);

  // alpha_bar strictly decreasing for a range of K.
  for (int K : {1, 2, 5, 10, 20}) {
    const auto sch = diffusion::DenoiseSchedule::make(K);
    for (int k = 2; k <= K; ++k) ok = ok && sch.abar(k) < sch.abar(k - 1);
  }
  note << "abar monotone";

  // q_sample mean/variance Monte Carlo, 1e5 draws, 3% tolerance.
  {
    const auto sch = diffusion::DenoiseSchedule::make(5);
    std::normal_distribution<float> n(0.0f, 1.0f);
    const float a0 = 0.4f;
    for (int k : {1, 3, 5}) {
      double sum = 0.0, sum2 = 0.0;
      const int N = 100000;
      for (int i = 0; i < N; ++i) {
        float noise = n(rng), out;
        diffusion::q_sample({&a0, 1}, k, {&noise, 1}, sch, {&out, 1});
        sum += out;
        sum2 += static_cast<double>(out) * out;
      }
      const double mean = sum / N;
      const double var = sum2 / N - mean * mean;
      const double mean_expect = std::sqrt(sch.abar(k)) * a0;
      const double var_expect = 1.0 - sch.abar(k);
      ok = ok && std::abs(mean - mean_expect) < 0.03 * std::max(1.0, std::abs(mean_expect));
      ok = ok && std::abs(var - var_expect) / var_expect < 0.03;
    }
    note << ", q_sample MC ok";
  }

  // Epsilon-oracle reverse chain recovers a point mass within L-inf 0.05.
  {
    const auto sch = diffusion::DenoiseSchedule::make(5);
    struct Oracle : diffusion::EpsPredictor {
      std::vector<float> target;
      diffusion::DenoiseSchedule sch;
      int action_dim() const override { return static_cast<int>(target.size()); }
      nn::MatF predict(const nn::MatF& a_k, const nn::MatF&,
                       std::span<const int> ks) const override {
        nn::MatF out(a_k.rows, a_k.cols);
        for (int r = 0; r < a_k.rows; ++r) {
          const float sab = std::sqrt(sch.abar(ks[r]));
          const float snb = std::sqrt(1.0f - sch.abar(ks[r]));
          for (int c = 0; c < a_k.cols; ++c)
            out.at(r, c) = (a_k.at(r, c) - sab * target[c]) / snb;
        }
        return out;
      }
    } oracle;
    oracle.target = {0.6f, -0.4f, 0.15f, -0.9f};
    oracle.sch = sch;
    nn::MatF S(16, 3);
    double max_err = 0.0;
    const nn::MatF out = diffusion::sample_actions(oracle, S, sch, rng);
    for (int r = 0; r < out.rows; ++r)
      for (int c = 0; c < out.cols; ++c)
        max_err = std::max(max_err,
                           std::abs(static_cast<double>(out.at(r, c)) - oracle.target[c]));
    ok = ok && max_err < 0.05;
    note << ", point-mass Linf " << max_err;
  }

  // All sampled actions within [-1, 1].
  {
    const auto sch = diffusion::DenoiseSchedule::make(5);
    diffusion::EpsilonNet net(6, 4, 8, 16, 2, rng);
    bool bounded = true;
    for (int i = 0; i < 1000; ++i) {
      nn::MatF s(1, 4);
      std::uniform_real_distribution<float> u(0.0f, 1.0f);
      for (auto& v : s.d) v = u(rng);
      for (float v : diffusion::sample_action(net, s.row_span(0), sch, rng))
        bounded = bounded && v >= -1.0f && v <= 1.0f;
    }
    ok = ok && bounded;
    note << ", bounds ok";
  }
  return {ok, note.str()};
}

// ---------------------------------------------------------------------------
// C3: toy bandit multimodality.
Outcome c3() {
  const test::Bandit twin = test::Bandit::twin();
  const auto oracle = test::grid_oracle(twin);

  int xdiff_ok = 0, ddpg_collapsed = 0;
  std::ostringstream note;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    auto learner = test::train_xdiff_bandit(twin, seed, 2500, oracle.best_value);
    const std::vector<float> state = {0.5f, 0.5f};
    int near = 0;
    for (int i = 0; i < 300; ++i) {
      const auto a = learner.act(state);
      const float da = std::hypot(a[0] - 0.6f, a[1] - 0.6f);
      const float db = std::hypot(a[0] + 0.6f, a[1] + 0.6f);
      if (std::min(da, db) < 0.2f) ++near;
    }
    if (near >= 240) ++xdiff_ok;  // 80% of draws

    auto ddpg = test::train_ddpg_bandit(twin, seed, 2500, oracle.best_value,
                                        test::bandit_net_config());
    const float v = twin.value(ddpg.actor_mean(state));
    if (v < 0.8f * oracle.best_value) ++ddpg_collapsed;
    note << " s" << seed << ":" << near << "/300,v=" << v;
  }
  const bool pass = xdiff_ok >= 4 && ddpg_collapsed >= 3;
  return {pass, "xdiff>=80% in " + std::to_string(xdiff_ok) + "/5 seeds; ddpg below 0.8*opt in " +
                    std::to_string(ddpg_collapsed) + "/5;" + note.str()};
}

// ---------------------------------------------------------------------------
// C4: Fig.-2-style two-cell reproduction.
Outcome c4() {
  const envsim::Scenario sc = envsim::make_two_cell_scenario();
  std::ostringstream note;

  envsim::World split_world = envsim::make_world(sc, 17);
  const auto split = test::run_fixed_policy(split_world, test::split_policy(sc.cfg), 150);
  double worst_split = 0.0;
  for (int s = 50; s < 150; ++s)
    for (double d : split.delay_ms[s]) worst_split = std::max(worst_split, d);

  envsim::World neutral_world = envsim::make_world(sc, 17);
  const auto neutral =
      test::run_fixed_policy(neutral_world, PreferencePolicy(sc.cfg), 300);
  double worst_neutral = 0.0;
  for (const auto& slot : neutral.delay_ms)
    for (double d : slot) worst_neutral = std::max(worst_neutral, d);

  note << "split max delay " << worst_split << " ms (limit 50); neutral max delay "
       << worst_neutral << " ms within 30 s (need > 1000)";
  return {worst_split < 50.0 && worst_neutral > 1000.0, note.str()};
}

// ---------------------------------------------------------------------------
// C5: soft vs hard policy representation.
Outcome c5() {
  const envsim::Scenario sc = envsim::make_lab_scenario();
  int soft_wins = 0;
  std::ostringstream note;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const auto soft = run_provider(sc, "xdiff", seed, 3000);
    const auto hard = run_provider(sc, "xdiff-hard", seed, 3000);
    if (soft.mean_reward_last_third > hard.mean_reward_last_third) ++soft_wins;
    note << " s" << seed << ": soft " << soft.mean_reward_last_third << " vs hard "
         << hard.mean_reward_last_third;
  }
  return {soft_wins >= 4, "soft wins " + std::to_string(soft_wins) + "/5;" + note.str()};
}

// ---------------------------------------------------------------------------
// C6: ablation ordering and recovery after a demand shift.
Outcome c6() {
  const int slots = 3000, shift = 1500;
  std::ostringstream note;
  int xdiff_ge_ddpg = 0, xdiff_ge_ddqn = 0;
  std::vector<double> rec_xdiff, rec_ddpg, rec_ddqn;

  auto recovery_slots = [&](const cli::RunSummary& s) {
    double pre = 0.0;
    for (int i = shift - 300; i < shift; ++i) pre += s.reward_per_slot[i];
    pre /= 300.0;
    const double target = pre - 0.1 * std::abs(pre);
    double trail = 0.0;
    for (int i = shift; i < slots; ++i) {
      trail += s.reward_per_slot[i];
      if (i - shift >= 99) {
        if (i - shift > 99) trail -= s.reward_per_slot[i - 100];
        if (trail / 100.0 >= target) return static_cast<double>(i - shift);
      }
    }
    return static_cast<double>(slots - shift);
  };

  const envsim::Scenario sc = envsim::make_lab_scenario();
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const auto xd = run_provider(sc, "xdiff", seed, slots, false, shift);
    const auto dp = run_provider(sc, "ddpg", seed, slots, false, shift);
    const auto dq = run_provider(sc, "ddqn", seed, slots, false, shift);
    if (xd.mean_reward_last_third >= dp.mean_reward_last_third) ++xdiff_ge_ddpg;
    if (xd.mean_reward_last_third >= dq.mean_reward_last_third) ++xdiff_ge_ddqn;
    rec_xdiff.push_back(recovery_slots(xd));
    rec_ddpg.push_back(recovery_slots(dp));
    rec_ddqn.push_back(recovery_slots(dq));
    note << " s" << seed << ": xd " << xd.mean_reward_last_third << " dp "
         << dp.mean_reward_last_third << " dq " << dq.mean_reward_last_third;
  }
  const double mx = median(rec_xdiff), mp = median(rec_ddpg), mq = median(rec_ddqn);
  note << "; recovery medians xd " << mx << " dp " << mp << " dq " << mq;
  const bool pass = xdiff_ge_ddpg >= 4 && xdiff_ge_ddqn >= 4 && mx <= mp && mx <= mq;
  return {pass, "xd>=ddpg " + std::to_string(xdiff_ge_ddpg) + "/5, xd>=ddqn " +
                    std::to_string(xdiff_ge_ddqn) + "/5;" + note.str()};
}

// ---------------------------------------------------------------------------
// C7: rule-based baseline comparison on both presets.
Outcome c7() {
  std::ostringstream note;
  const envsim::Scenario lab = envsim::make_lab_scenario();
  int beats_cira = 0, beats_otfr = 0;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const auto xd = run_provider(lab, "xdiff", seed, 3000);
    const auto ci = run_provider(lab, "cira", seed, 3000);
    const auto ot = run_provider(lab, "otfr", seed, 3000);
    if (xd.mean_reward_last_third > ci.mean_reward_last_third) ++beats_cira;
    if (xd.mean_reward_last_third > ot.mean_reward_last_third) ++beats_otfr;
    note << " s" << seed << ": xd " << xd.mean_reward_last_third << " cira "
         << ci.mean_reward_last_third << " otfr " << ot.mean_reward_last_third;
  }

  const envsim::Scenario bld = envsim::make_building_scenario();
  const std::vector<std::string> providers = {"xdiff", "xdiff-hard", "ddqn", "ddpg",
                                              "cira",  "otfr",      "csrs"};
  int delay_lowest = 0;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    double best = 1e18;
    std::string who;
    double xd_delay = 0.0;
    for (const auto& p : providers) {
      const auto s = run_provider(bld, p, seed, 2000);
      if (p == "xdiff") xd_delay = s.mean_delay_ms;
      if (s.mean_delay_ms < best) {
        best = s.mean_delay_ms;
        who = p;
      }
    }
    if (who == "xdiff") ++delay_lowest;
    note << " | bld s" << seed << ": best " << who << " (xd " << xd_delay << " ms)";
  }
  const bool pass = beats_cira >= 4 && beats_otfr >= 4 && delay_lowest >= 3;
  return {pass, "lab xd>cira " + std::to_string(beats_cira) + "/5, xd>otfr " +
                    std::to_string(beats_otfr) + "/5; building delay lowest " +
                    std::to_string(delay_lowest) + "/5;" + note.str()};
}

// ---------------------------------------------------------------------------
// C8: hyperparameter sweep shape.
Outcome c8() {
  const envsim::Scenario sc = envsim::make_lab_scenario();
  std::ostringstream note;
  const int slots = 2000;

  auto median_reward = [&](int K, float eta, bool coupling) {
    std::vector<double> finals;
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      agent::LearnerConfig lc = lab_learner(sc, seed);
      lc.denoise_steps = K;
      lc.eta = eta;
      cli::RunOptions opt;
      opt.provider = "xdiff";
      opt.slots = slots;
      opt.seed = seed;
      opt.latency_coupling = coupling;
      finals.push_back(cli::run_single(sc, lc, opt).mean_reward_last_third);
    }
    return median(finals);
  };

  const double k2 = median_reward(2, 1.0f, true);
  const double k5 = median_reward(5, 1.0f, true);
  const double k10 = median_reward(10, 1.0f, true);
  const double k20 = median_reward(20, 1.0f, true);
  note << "K sweep (coupling on): K2 " << k2 << ", K5 " << k5 << ", K10 " << k10
       << ", K20 " << k20;

  const double e05 = median_reward(5, 0.5f, false);
  const double e1 = median_reward(5, 1.0f, false);
  const double e2 = median_reward(5, 2.0f, false);
  note << "; eta sweep: 0.5 -> " << e05 << ", 1 -> " << e1 << ", 2 -> " << e2;

  const bool pass = k5 > k2 && k5 >= k20 && e1 >= e05 && e1 >= e2;
  return {pass, note.str()};
}

// ---------------------------------------------------------------------------
// C9: inference latency.
Outcome c9() {
  const envsim::Scenario sc = envsim::make_lab_scenario();
  agent::LearnerConfig lc = lab_learner(sc, 1);
  agent::DiffusionLearner learner(lc);
  std::vector<float> state(lc.state_dim, 0.3f);
  std::vector<double> lat;
  for (int i = 0; i < 200; ++i) {
    learner.act(state);
  }
  lat = learner.act_latencies_ms();
  const double p50 = cli::percentile(lat, 50.0);
  return {p50 < 50.0, "act() p50 " + std::to_string(p50) + " ms on the 3-cell/10-UE/K=5 config"};
}

// ---------------------------------------------------------------------------
// C10: determinism and byte conservation.
Outcome c10() {
  namespace fs = std::filesystem;
  std::ostringstream note;
  bool ok = true;
  const envsim::Scenario sc = envsim::make_lab_scenario();
  for (const std::string prov : {std::string("xdiff"), std::string("cira")}) {
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = fs::temp_directory_path() / ("xdiff_accept_det_" + prov +
                                                        "_" + std::to_string(rep));
      fs::remove_all(dir);
      cli::RunOptions opt;
      opt.provider = prov;
      opt.slots = 150;
      opt.seed = 7;
      opt.out_dir = dir.string();
      const auto sum = cli::run_single(sc, lab_learner(sc, 7), opt);
      ok = ok && sum.conservation_ok;
      std::ifstream is(dir / "trace.csv");
      std::stringstream ss;
      ss << is.rdbuf();
      if (rep == 0)
        first = ss.str();
      else
        ok = ok && first == ss.str();
      fs::remove_all(dir);
    }
    note << prov << " trace identical + conserved; ";
  }
  return {ok, note.str()};
}

struct Criterion {
  int id;
  const char* title;
  Outcome (*fn)();
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "gradient integrity", c1},
      {2, "diffusion correctness suite", c2},
      {3, "toy bandit multimodality", c3},
      {4, "two-cell interference reproduction", c4},
      {5, "soft vs hard policy", c5},
      {6, "ablation ordering and recovery", c6},
      {7, "baseline comparison", c7},
      {8, "hyperparameter sweep shape", c8},
      {9, "inference latency", c9},
      {10, "determinism and conservation", c10},
  };
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all_ok = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = Clock::now();
    const Outcome res = c.fn();
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.1f s) - %s\n", res.pass ? "PASS" : "FAIL",
                c.id, c.title, secs, res.detail.c_str());
    std::fflush(stdout);
    all_ok = all_ok && res.pass;
  }
  return all_ok ? 0 : 1;
}
