/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "baselines/ddqn.hpp"

#include <algorithm>
#include <cstring>

#include "nn/checkpoint.hpp"

namespace xdiff::baselines {

namespace {
constexpr float kLattice[3] = {-1.0f, 0.0f, 1.0f};

int value_to_index(float v) { return v < -0.5f ? 0 : (v > 0.5f ? 2 : 1); }

int argmax3(const float* q) {
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (q[i] > q[best]) best = i;
  return best;
}
}  // namespace

DdqnProvider::DdqnProvider(const NetworkConfig& cfg, const agent::LearnerConfig& lc)
    : cfg_(cfg), lc_(lc), replay_(lc.capacity), rng_(lc.seed) {
  std::vector<int> dims;
  dims.push_back(lc.state_dim);
  for (int i = 0; i < lc.hidden_layers; ++i) dims.push_back(lc.hidden);
  dims.push_back(3 * lc.action_dim);
  online_ = nn::Mlp(dims, nn::Act::mish, nn::Act::identity, rng_);
  target_ = online_;
  opt_ = nn::Adam(online_.param_count(), lc.lr);
  last_state_.assign(lc.state_dim, 0.0f);
}

std::vector<float> DdqnProvider::greedy_action(std::span<const float> state) const {
  nn::MatF s(1, lc_.state_dim);
  std::copy(state.begin(), state.end(), s.d.begin());
  const nn::MatF q = online_.forward(s);
  std::vector<float> a(lc_.action_dim);
  for (int c = 0; c < lc_.action_dim; ++c)
    a[c] = kLattice[argmax3(q.row(0) + 3 * c)];
  return a;
}

std::vector<float> DdqnProvider::select_action(std::span<const float> state) {
  std::vector<float> a = greedy_action(state);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::uniform_int_distribution<int> pick(0, 2);
  for (float& v : a)
    if (u(rng_) < eps_) v = kLattice[pick(rng_)];
  return a;
}

PreferencePolicy DdqnProvider::propose() {
  pending_action_ = select_action(last_state_);
  has_pending_ = true;
  return PreferencePolicy(cfg_, pending_action_);
}

void DdqnProvider::observe(const envsim::SlotObservation& obs,
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
    eps_ = std::max(eps_end_, 1.0f - static_cast<float>(iteration_) /
                                        static_cast<float>(eps_decay_iters_));
    if (replay_.size() >= static_cast<size_t>(lc_.batch)) train_step();
  }
  last_state_ = std::move(state);
}

void DdqnProvider::train_step() {
  const int B = lc_.batch;
  const int A = lc_.action_dim;
  const auto idx = replay_.sample_indices(B, rng_);
  nn::MatF S(B, lc_.state_dim), S2(B, lc_.state_dim);
  std::vector<float> r(B);
  std::vector<const agent::Transition*> batch(B);
  for (int b = 0; b < B; ++b) {
    batch[b] = &replay_.at(idx[b]);
    std::memcpy(S.row(b), batch[b]->state.data(), sizeof(float) * lc_.state_dim);
    std::memcpy(S2.row(b), batch[b]->next_state.data(), sizeof(float) * lc_.state_dim);
    r[b] = batch[b]->reward;
  }

  // Double-DQN target: online argmax, target evaluation, per coordinate.
  const nn::MatF q2_online = online_.forward(S2);
  const nn::MatF q2_target = target_.forward(S2);
  nn::MlpCache cache;
  const nn::MatF q = online_.forward(S, cache);

  nn::MatF dq(B, 3 * A);
  double loss = 0.0;
  const float scale = 2.0f / static_cast<float>(B * A);
  for (int b = 0; b < B; ++b) {
    for (int c = 0; c < A; ++c) {
      const int astar = argmax3(q2_online.row(b) + 3 * c);
      const float y = r[b] + lc_.gamma * q2_target.at(b, 3 * c + astar);
      const int ai = value_to_index(batch[b]->action[c]);
      const float e = q.at(b, 3 * c + ai) - y;
      loss += static_cast<double>(e) * e;
      dq.at(b, 3 * c + ai) = scale * e;
    }
  }
  loss /= static_cast<double>(B) * A;

  nn::MlpGrads g = online_.make_grads();
  online_.backward(cache, dq, g);
  opt_.step(online_.params(), g.tensors());
  nn::Mlp::ema_update(target_, online_, lc_.rho);

  metrics_.critic_loss = static_cast<float>(loss);
  double qm = 0.0;
  for (float v : q.d) qm += v;
  metrics_.mean_q = static_cast<float>(qm / q.size());
  metrics_.trained = true;
}

void DdqnProvider::save_checkpoint(const std::string& path) const {
  nn::TensorBundle b;
  append_mlp(b, online_);
  append_mlp(b, target_);
  b.add_scalar(static_cast<float>(iteration_));
  b.save(path);
}

}  // namespace xdiff::baselines
