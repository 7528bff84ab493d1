/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <random>
#include <span>
#include <vector>

#include "nn/adam.hpp"
#include "nn/mlp.hpp"

namespace xdiff::agent {

/// Twin Q-networks with EMA target copies, mapping (s, a) -> scalar.
struct CriticPair {
  nn::Mlp q1, q2;
  nn::Mlp target_q1, target_q2;
  nn::Adam opt1, opt2;

  CriticPair() = default;
  CriticPair(int state_dim, int action_dim, int hidden, int hidden_layers, float lr,
             std::mt19937_64& rng);

  int state_dim = 0;
  int action_dim = 0;
  float max_grad_norm = 10.0f;

  /// Q values of one network for a batch of (s, a) rows.
  static std::vector<float> values(const nn::Mlp& net, const nn::MatF& states,
                                   const nn::MatF& actions);

  void ema_update(float rho);
};

/// Double-Q target y = r + gamma * min_i targetQ_i(s', a'), elementwise.
std::vector<float> target_q(const CriticPair& critics, const nn::MatF& next_states,
                            const nn::MatF& next_actions,
                            std::span<const float> rewards, float gamma);

/// Sum over both critics of the mean squared error to the shared target;
/// applies one optimizer step to each critic. Returns the loss value and,
/// through `q1_values`, the pre-update Q1 of the batch (the Q-guidance
/// denominator scale).
float critic_update(CriticPair& critics, const nn::MatF& states,
                    const nn::MatF& actions, std::span<const float> y,
                    std::vector<float>* q1_values = nullptr);

/// Loss only (no optimizer step); used by tests.
float critic_loss_value(const CriticPair& critics, const nn::MatF& states,
                        const nn::MatF& actions, std::span<const float> y);

/// Mean-squared-error gradients of one critic toward target y: the exact
/// path critic_update steps along. Returns the loss.
float critic_gradients(const nn::Mlp& net, const nn::MatF& in,
                       std::span<const float> y, nn::MlpGrads& g,
                       std::vector<float>* values = nullptr);

/// Stacks states and actions into the critics' (s, a) input layout.
nn::MatF stack_sa(const nn::MatF& states, const nn::MatF& actions);

}  // namespace xdiff::agent
