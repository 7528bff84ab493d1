/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

// 2-dimensional continuous-armed bandit fixtures with Gaussian value bumps.
// The twin variant has two symmetric optimal actions; a unimodal Gaussian
// policy's mean collapses between them while a diffusion policy can keep
// both modes. Optima are verified by the exhaustive grid oracle below.

#include <array>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "agent/learner.hpp"
#include "baselines/ddpg.hpp"

namespace xdiff::test {

struct Bandit {
  std::vector<std::array<float, 2>> centers;
  float sigma = 0.45f;

  float value(std::span<const float> a) const {
    float v = 0.0f;
    for (const auto& c : centers) {
      const float dx = a[0] - c[0];
      const float dy = a[1] - c[1];
      v += std::exp(-(dx * dx + dy * dy) / (2.0f * sigma * sigma));
    }
    return v;
  }

  /// Wide basin: a hill-climbing deterministic actor reaches the top.
  static Bandit single() { return {{{0.5f, 0.5f}}, 0.45f}; }
  /// Narrow symmetric modes with a flat plateau between them: a unimodal
  /// actor started between the modes stays there.
  static Bandit twin() { return {{{0.6f, 0.6f}, {-0.6f, -0.6f}}, 0.16f}; }
};

struct GridOracleResult {
  float best_value = 0.0f;
  std::vector<std::array<float, 2>> argmax;  // all grid points within 1e-3
};

/// Exhaustive grid search over [-1,1]^2.
inline GridOracleResult grid_oracle(const Bandit& b, int steps = 201) {
  GridOracleResult res;
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j) {
      const float a[2] = {-1.0f + 2.0f * i / (steps - 1),
                          -1.0f + 2.0f * j / (steps - 1)};
      const float v = b.value(a);
      if (v > res.best_value) res.best_value = v;
    }
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j) {
      const float a[2] = {-1.0f + 2.0f * i / (steps - 1),
                          -1.0f + 2.0f * j / (steps - 1)};
      if (b.value(a) > res.best_value - 1e-3f) res.argmax.push_back({a[0], a[1]});
    }
  return res;
}

inline agent::LearnerConfig bandit_learner_config(uint64_t seed) {
  agent::LearnerConfig lc;
  lc.state_dim = 2;
  lc.action_dim = 2;
  lc.hidden = 64;
  lc.hidden_layers = 2;
  lc.gamma = 0.0f;  // single-step problem
  lc.batch = 64;
  lc.capacity = 512;  // quick turnover keeps the replay on-policy-ish
  lc.lr = 1e-3f;
  lc.seed = seed;
  return lc;
}

/// Online-trains the diffusion learner on the bandit for `iters` slots.
inline agent::DiffusionLearner train_xdiff_bandit(const Bandit& b, uint64_t seed,
                                                  int iters, float best_value) {
  agent::DiffusionLearner learner(bandit_learner_config(seed));
  const std::vector<float> state = {0.5f, 0.5f};
  for (int i = 0; i < iters; ++i) {
    const auto a = learner.act(state);
    const float r = b.value(a) - best_value;  // regret form, always <= 0
    learner.observe(state, a, std::min(r, 0.0f), state);
  }
  return learner;
}

/// Online-trains DDPG on the bandit with its own exploration noise.
inline baselines::DdpgProvider train_ddpg_bandit(const Bandit& b, uint64_t seed,
                                                 int iters, float best_value,
                                                 const NetworkConfig& cfg) {
  baselines::DdpgProvider ddpg(cfg, bandit_learner_config(seed));
  std::mt19937_64 rng(seed * 7919 + 5);
  std::normal_distribution<float> noise(0.0f, 0.1f);
  const int B = 64;
  std::vector<std::array<float, 2>> actions;
  std::vector<float> rewards;
  const std::vector<float> state = {0.5f, 0.5f};
  for (int i = 0; i < iters; ++i) {
    auto a = ddpg.actor_mean(state);
    for (auto& v : a) v = std::clamp(v + noise(rng), -1.0f, 1.0f);
    actions.push_back({a[0], a[1]});
    rewards.push_back(std::min(b.value(a) - best_value, 0.0f));
    if (static_cast<int>(actions.size()) >= B) {
      nn::MatF S(B, 2), A(B, 2), S2(B, 2);
      std::vector<float> r(B);
      std::uniform_int_distribution<size_t> pick(0, actions.size() - 1);
      for (int k = 0; k < B; ++k) {
        const size_t idx = pick(rng);
        S.at(k, 0) = state[0];
        S.at(k, 1) = state[1];
        S2.at(k, 0) = state[0];
        S2.at(k, 1) = state[1];
        A.at(k, 0) = actions[idx][0];
        A.at(k, 1) = actions[idx][1];
        r[k] = rewards[idx];
      }
      ddpg.update_from_batch(S, A, r, S2);
    }
  }
  return ddpg;
}

/// A minimal 2-coordinate NetworkConfig so PreferencePolicy shapes line up
/// when providers need one (1 cell, 1 UE, 2 groups).
inline NetworkConfig bandit_net_config() {
  NetworkConfig cfg;
  cfg.num_cells = 1;
  cfg.ues_per_cell = {1};
  cfg.num_rbs = 2;
  cfg.num_rb_groups = 2;
  cfg.lambda_p = {1.0};
  cfg.lambda_d = {1.0};
  return cfg;
}

}  // namespace xdiff::test
