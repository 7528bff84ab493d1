/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <random>

#include "agent/critics.hpp"
#include "agent/replay.hpp"
#include "baselines/provider.hpp"
#include "nn/adam.hpp"

namespace xdiff::baselines {

/// Deterministic actor-critic ablation: tanh actor with Gaussian exploration
/// noise, twin critics with EMA targets identical to the diffusion learner.
class DdpgProvider : public PolicyProvider {
 public:
  DdpgProvider(const NetworkConfig& cfg, const agent::LearnerConfig& lc,
               float explore_sigma = 0.1f);

  std::string name() const override { return "ddpg"; }
  void observe(const envsim::SlotObservation& obs,
               const std::optional<RewardBreakdown>& reward) override;
  PreferencePolicy propose() override;
  std::optional<agent::IterationMetrics> metrics() const override { return metrics_; }
  void save_checkpoint(const std::string& path) const override;

  /// Noiseless actor output (exposed for tests and the bandit studies).
  std::vector<float> actor_mean(std::span<const float> state) const;
  void train_step();
  nn::Mlp& actor() { return actor_; }
  agent::CriticPair& critics() { return critics_; }
  agent::ReplayDataset& replay() { return replay_; }

  /// One actor/critic update from an externally supplied batch (bandit use).
  void update_from_batch(const nn::MatF& states, const nn::MatF& actions,
                         std::span<const float> rewards, const nn::MatF& next_states);

  /// Gradient of the actor loss -mean Q(s, actor(s)); the path the actor
  /// optimizer steps along. Returns the loss value.
  static float actor_gradients(const nn::Mlp& actor, const nn::Mlp& critic,
                               const nn::MatF& states, int state_dim, int action_dim,
                               nn::MlpGrads& g);

 private:
  NetworkConfig cfg_;
  agent::LearnerConfig lc_;
  float explore_sigma_;
  nn::Mlp actor_, target_actor_;
  agent::CriticPair critics_;
  nn::Adam actor_opt_;
  agent::ReplayDataset replay_;
  std::mt19937_64 rng_;
  agent::IterationMetrics metrics_;
  std::vector<float> last_state_;
  std::vector<float> pending_action_;
  bool has_pending_ = false;
  long iteration_ = 0;
};

}  // namespace xdiff::baselines
