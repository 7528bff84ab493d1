/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "agent/critics.hpp"

#include <algorithm>
#include <cstring>

namespace xdiff::agent {

CriticPair::CriticPair(int state_dim_, int action_dim_, int hidden, int hidden_layers,
                       float lr, std::mt19937_64& rng)
    : state_dim(state_dim_), action_dim(action_dim_) {
  std::vector<int> dims;
  dims.push_back(state_dim + action_dim);
  for (int i = 0; i < hidden_layers; ++i) dims.push_back(hidden);
  dims.push_back(1);
  q1 = nn::Mlp(dims, nn::Act::mish, nn::Act::identity, rng);
  q2 = nn::Mlp(dims, nn::Act::mish, nn::Act::identity, rng);
  target_q1 = q1;
  target_q2 = q2;
  opt1 = nn::Adam(q1.param_count(), lr);
  opt2 = nn::Adam(q2.param_count(), lr);
}

nn::MatF stack_sa(const nn::MatF& states, const nn::MatF& actions) {
  nn::MatF in(states.rows, states.cols + actions.cols);
  for (int r = 0; r < states.rows; ++r) {
    std::memcpy(in.row(r), states.row(r), sizeof(float) * states.cols);
    std::memcpy(in.row(r) + states.cols, actions.row(r), sizeof(float) * actions.cols);
  }
  return in;
}

std::vector<float> CriticPair::values(const nn::Mlp& net, const nn::MatF& states,
                                      const nn::MatF& actions) {
  const nn::MatF out = net.forward(stack_sa(states, actions));
  return out.d;
}

void CriticPair::ema_update(float rho) {
  nn::Mlp::ema_update(target_q1, q1, rho);
  nn::Mlp::ema_update(target_q2, q2, rho);
}

std::vector<float> target_q(const CriticPair& critics, const nn::MatF& next_states,
                            const nn::MatF& next_actions,
                            std::span<const float> rewards, float gamma) {
  const auto v1 = CriticPair::values(critics.target_q1, next_states, next_actions);
  const auto v2 = CriticPair::values(critics.target_q2, next_states, next_actions);
  std::vector<float> y(v1.size());
  for (size_t i = 0; i < y.size(); ++i)
    y[i] = rewards[i] + gamma * std::min(v1[i], v2[i]);
  return y;
}

float critic_gradients(const nn::Mlp& net, const nn::MatF& in,
                       std::span<const float> y, nn::MlpGrads& g,
                       std::vector<float>* values) {
  nn::MlpCache cache;
  const nn::MatF out = net.forward(in, cache);
  const int batch = out.rows;
  double loss = 0.0;
  nn::MatF dy(batch, 1);
  for (int r = 0; r < batch; ++r) {
    const float e = out.at(r, 0) - y[r];
    loss += static_cast<double>(e) * e;
    dy.at(r, 0) = 2.0f * e / static_cast<float>(batch);
  }
  if (values) *values = out.d;
  net.backward(cache, dy, g);
  return static_cast<float>(loss / batch);
}

namespace {

float mse_step(nn::Mlp& net, nn::Adam& opt, const nn::MatF& in,
               std::span<const float> y, std::vector<float>* values,
               float max_grad_norm) {
  nn::MlpGrads g = net.make_grads();
  const float loss = critic_gradients(net, in, y, g, values);
  nn::clip_grad_norm(g.tensors(), max_grad_norm);
  opt.step(net.params(), g.tensors());
  return loss;
}

}  // namespace

float critic_update(CriticPair& critics, const nn::MatF& states,
                    const nn::MatF& actions, std::span<const float> y,
                    std::vector<float>* q1_values) {
  const nn::MatF in = stack_sa(states, actions);
  const float l1 = mse_step(critics.q1, critics.opt1, in, y, q1_values,
                            critics.max_grad_norm);
  const float l2 = mse_step(critics.q2, critics.opt2, in, y, nullptr,
                            critics.max_grad_norm);
  return l1 + l2;
}

float critic_loss_value(const CriticPair& critics, const nn::MatF& states,
                        const nn::MatF& actions, std::span<const float> y) {
  const nn::MatF in = stack_sa(states, actions);
  float total = 0.0f;
  for (const nn::Mlp* net : {&critics.q1, &critics.q2}) {
    const nn::MatF out = net->forward(in);
    double loss = 0.0;
    for (int r = 0; r < out.rows; ++r) {
      const float e = out.at(r, 0) - y[r];
      loss += static_cast<double>(e) * e;
    }
    total += static_cast<float>(loss / out.rows);
  }
  return total;
}

}  // namespace xdiff::agent
