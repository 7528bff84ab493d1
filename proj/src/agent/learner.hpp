/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <string>

#include "agent/critics.hpp"
#include "agent/replay.hpp"
#include "diffusion/policy.hpp"
#include "nn/adam.hpp"

namespace xdiff::agent {

struct LearnerConfig {
  int state_dim = 0;
  int action_dim = 0;
  int hidden = 256;
  int hidden_layers = 3;  // plus the linear head = 4 weight layers
  int emb_dim = 16;
  int denoise_steps = 5;  // K
  float beta_min = 0.1f;
  float beta_max = 10.0f;
  float eta = 1.0f;       // Q-guidance weight
  float gamma = 0.9f;
  float rho = 0.05f;      // EMA rate for all target networks
  float lr = 1e-3f;
  /// Critic learning rate; <= 0 means "same as lr".
  float critic_lr = 3e-3f;
  int batch = 64;
  size_t capacity = 600;
  /// Rewards are divided by this before storage; trace rewards stay raw.
  float reward_scale = 1.0f;
  /// Play quantized {-1,0,1} actions (the hard policy representation).
  bool hard_quantize = false;
  /// Environment slots per gradient step (1 = fully online).
  int slots_per_train = 1;
  /// Gradient steps per training event.
  int updates_per_slot = 1;
  /// Global gradient-norm clip applied before each optimizer step.
  float max_grad_norm = 10.0f;
  uint64_t seed = 1;
};

struct IterationMetrics {
  long iteration = 0;
  bool trained = false;
  float critic_loss = 0.0f;
  float denoise_loss = 0.0f;
  float guidance = 0.0f;
  float mean_q = 0.0f;
  float reward = 0.0f;
  double act_ms = 0.0;
};

/// Online diffusion-policy learner: conditional DDPM actor, twin critics
/// with EMA targets, one gradient step per environment slot once the replay
/// dataset holds a full minibatch.
class DiffusionLearner {
 public:
  explicit DiffusionLearner(const LearnerConfig& cfg);

  /// Deployment path: samples the target policy, clamps (and quantizes in
  /// hard mode). Wall-clock per call is recorded.
  std::vector<float> act(std::span<const float> state);

  /// Stores the transition and, outside warm-up, runs one training
  /// iteration.
  void observe(std::span<const float> state, std::span<const float> action,
               float reward, std::span<const float> next_state);

  bool in_warmup() const { return replay_.size() < static_cast<size_t>(cfg_.batch); }
  const IterationMetrics& last_metrics() const { return metrics_; }
  const std::vector<double>& act_latencies_ms() const { return act_ms_; }
  const ReplayDataset& replay() const { return replay_; }
  const diffusion::EpsilonNet& policy() const { return policy_; }
  const diffusion::EpsilonNet& target_policy() const { return target_policy_; }
  CriticPair& critics() { return critics_; }
  const diffusion::DenoiseSchedule& schedule() const { return schedule_; }

  void save_checkpoint(const std::string& path) const;
  void load_checkpoint(const std::string& path);

  /// One gradient step on a sampled minibatch (exposed for tests).
  void train_step();

 private:
  std::vector<float> sample_policy(const diffusion::EpsilonNet& net,
                                   std::span<const float> state);

  LearnerConfig cfg_;
  diffusion::DenoiseSchedule schedule_;
  diffusion::EpsilonNet policy_;
  diffusion::EpsilonNet target_policy_;
  CriticPair critics_;
  nn::Adam policy_opt_;
  ReplayDataset replay_;
  std::mt19937_64 rng_;
  IterationMetrics metrics_;
  std::vector<double> act_ms_;
  long iteration_ = 0;
  int slots_since_train_ = 0;
};

}  // namespace xdiff::agent
