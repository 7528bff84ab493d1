/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "baselines/ddpg.hpp"

#include <algorithm>
#include <cstring>

#include "nn/checkpoint.hpp"

namespace xdiff::baselines {

DdpgProvider::DdpgProvider(const NetworkConfig& cfg, const agent::LearnerConfig& lc,
                           float explore_sigma)
    : cfg_(cfg), lc_(lc), explore_sigma_(explore_sigma), replay_(lc.capacity),
      rng_(lc.seed) {
  std::vector<int> dims;
  dims.push_back(lc.state_dim);
  for (int i = 0; i < lc.hidden_layers; ++i) dims.push_back(lc.hidden);
  dims.push_back(lc.action_dim);
  actor_ = nn::Mlp(dims, nn::Act::mish, nn::Act::tanh_, rng_, /*zero_last=*/true);
  target_actor_ = actor_;
  critics_ = agent::CriticPair(lc.state_dim, lc.action_dim, lc.hidden,
                               lc.hidden_layers, lc.lr, rng_);
  actor_opt_ = nn::Adam(actor_.param_count(), lc.lr);
  last_state_.assign(lc.state_dim, 0.0f);
}

std::vector<float> DdpgProvider::actor_mean(std::span<const float> state) const {
  nn::MatF s(1, lc_.state_dim);
  std::copy(state.begin(), state.end(), s.d.begin());
  return actor_.forward(s).d;
}

PreferencePolicy DdpgProvider::propose() {
  std::vector<float> a = actor_mean(last_state_);
  std::normal_distribution<float> n(0.0f, explore_sigma_);
  for (float& v : a) v = std::clamp(v + n(rng_), -1.0f, 1.0f);
  pending_action_ = a;
  has_pending_ = true;
  return PreferencePolicy(cfg_, pending_action_);
}

void DdpgProvider::observe(const envsim::SlotObservation& obs,
                           const std::optional<RewardBreakdown>& reward) {
  std::vector<float> state(obs.features.begin(), obs.features.end());
  if (has_pending_ && reward.has_value()) {
    agent::Transition t;
    t.state = last_state_;
    t.action = pending_action_;
    t.reward = static_cast<float>(reward->total) / lc_.reward_scale;
    t.next_state = state;
    replay_.push(std::move(t));
    ++iteration_;
    metrics_.iteration = iteration_;
    metrics_.reward = static_cast<float>(reward->total);
    metrics_.trained = false;
    if (replay_.size() >= static_cast<size_t>(lc_.batch)) train_step();
  }
  last_state_ = std::move(state);
}

void DdpgProvider::train_step() {
  const int B = lc_.batch;
  const auto idx = replay_.sample_indices(B, rng_);
  nn::MatF S(B, lc_.state_dim), A(B, lc_.action_dim), S2(B, lc_.state_dim);
  std::vector<float> r(B);
  for (int b = 0; b < B; ++b) {
    const agent::Transition& t = replay_.at(idx[b]);
    std::memcpy(S.row(b), t.state.data(), sizeof(float) * lc_.state_dim);
    std::memcpy(A.row(b), t.action.data(), sizeof(float) * lc_.action_dim);
    std::memcpy(S2.row(b), t.next_state.data(), sizeof(float) * lc_.state_dim);
    r[b] = t.reward;
  }
  update_from_batch(S, A, r, S2);
  metrics_.trained = true;
}

void DdpgProvider::update_from_batch(const nn::MatF& S, const nn::MatF& A,
                                     std::span<const float> r, const nn::MatF& S2) {
  const int B = S.rows;

  // Critic step with next actions from the target actor.
  const nn::MatF A2 = target_actor_.forward(S2);
  const std::vector<float> y = agent::target_q(critics_, S2, A2, r, lc_.gamma);
  std::vector<float> q1_vals;
  metrics_.critic_loss = agent::critic_update(critics_, S, A, y, &q1_vals);
  double qm = 0.0;
  for (float v : q1_vals) qm += v;
  metrics_.mean_q = static_cast<float>(qm / q1_vals.size());

  // Actor step: maximize Q1(s, actor(s)).
  nn::MlpGrads ag = actor_.make_grads();
  actor_gradients(actor_, critics_.q1, S, lc_.state_dim, lc_.action_dim, ag);
  actor_opt_.step(actor_.params(), ag.tensors());

  nn::Mlp::ema_update(target_actor_, actor_, lc_.rho);
  critics_.ema_update(lc_.rho);
}

float DdpgProvider::actor_gradients(const nn::Mlp& actor, const nn::Mlp& critic,
                                    const nn::MatF& S, int state_dim, int action_dim,
                                    nn::MlpGrads& g) {
  const int B = S.rows;
  nn::MlpCache acache;
  const nn::MatF api = actor.forward(S, acache);
  nn::MlpCache qcache;
  const nn::MatF qin = agent::stack_sa(S, api);
  const nn::MatF qv = critic.forward(qin, qcache);
  double loss = 0.0;
  for (float v : qv.d) loss -= v;
  loss /= B;
  nn::MatF dq(B, 1);
  dq.fill(-1.0f / static_cast<float>(B));  // gradient of -mean(Q)
  nn::MlpGrads qg = critic.make_grads();   // critic stays frozen here
  const nn::MatF dqin = critic.backward(qcache, dq, qg);
  nn::MatF da(B, action_dim);
  for (int b = 0; b < B; ++b)
    std::memcpy(da.row(b), dqin.row(b) + state_dim, sizeof(float) * action_dim);
  actor.backward(acache, da, g);
  return static_cast<float>(loss);
}

void DdpgProvider::save_checkpoint(const std::string& path) const {
  nn::TensorBundle b;
  append_mlp(b, actor_);
  append_mlp(b, target_actor_);
  append_mlp(b, critics_.q1);
  append_mlp(b, critics_.q2);
  append_mlp(b, critics_.target_q1);
  append_mlp(b, critics_.target_q2);
  b.add_scalar(static_cast<float>(iteration_));
  b.save(path);
}

}  // namespace xdiff::baselines
