/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <random>

#include "agent/replay.hpp"
#include "baselines/provider.hpp"
#include "nn/adam.hpp"

namespace xdiff::baselines {

/// Double-DQN ablation over the quantized preference lattice {-1, 0, +1}.
///
/// The action space is factored per (ue, group) coordinate: one network maps
/// the state to 3 values per coordinate, actions are per-coordinate argmax
/// (ties to the lower value index, i.e. -1 before 0 before +1), exploration
/// is epsilon-greedy, and targets use the online argmax evaluated by the
/// EMA target network.
class DdqnProvider : public PolicyProvider {
 public:
  DdqnProvider(const NetworkConfig& cfg, const agent::LearnerConfig& lc);

  std::string name() const override { return "ddqn"; }
  void observe(const envsim::SlotObservation& obs,
               const std::optional<RewardBreakdown>& reward) override;
  PreferencePolicy propose() override;
  bool wants_hard_allocator() const override { return false; }
  std::optional<agent::IterationMetrics> metrics() const override { return metrics_; }
  void save_checkpoint(const std::string& path) const override;

  /// Greedy lattice action for a state (exposed for tests).
  std::vector<float> greedy_action(std::span<const float> state) const;
  void train_step();
  float epsilon() const { return eps_; }
  void set_epsilon(float e) { eps_ = e; }

 private:
  std::vector<float> select_action(std::span<const float> state);

  NetworkConfig cfg_;
  agent::LearnerConfig lc_;
  nn::Mlp online_, target_;
  nn::Adam opt_;
  agent::ReplayDataset replay_;
  std::mt19937_64 rng_;
  agent::IterationMetrics metrics_;
  std::vector<float> last_state_;
  std::vector<float> pending_action_;
  bool has_pending_ = false;
  float eps_ = 1.0f;
  float eps_end_ = 0.05f;
  int eps_decay_iters_ = 500;
  long iteration_ = 0;
};

}  // namespace xdiff::baselines
