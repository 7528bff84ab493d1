/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "agent/learner.hpp"

#include <chrono>
#include <cmath>
#include <cstring>

#include "nn/checkpoint.hpp"

namespace xdiff::agent {

namespace {
float quantize_lattice(float v) {
  return v > 1.0f / 3.0f ? 1.0f : (v < -1.0f / 3.0f ? -1.0f : 0.0f);
}
}  // namespace

DiffusionLearner::DiffusionLearner(const LearnerConfig& cfg)
    : cfg_(cfg),
      schedule_(diffusion::DenoiseSchedule::make(cfg.denoise_steps, cfg.beta_min,
                                                 cfg.beta_max)),
      replay_(cfg.capacity),
      rng_(cfg.seed) {
  if (cfg.state_dim <= 0 || cfg.action_dim <= 0)
    throw ConfigError("DiffusionLearner: state/action dims must be positive");
  policy_ = diffusion::EpsilonNet(cfg.action_dim, cfg.state_dim, cfg.emb_dim,
                                  cfg.hidden, cfg.hidden_layers, rng_);
  target_policy_ = policy_;
  critics_ = CriticPair(cfg.state_dim, cfg.action_dim, cfg.hidden, cfg.hidden_layers,
                        cfg.critic_lr > 0.0f ? cfg.critic_lr : cfg.lr, rng_);
  policy_opt_ = nn::Adam(policy_.net().param_count(), cfg.lr);
}

std::vector<float> DiffusionLearner::sample_policy(const diffusion::EpsilonNet& net,
                                                   std::span<const float> state) {
  std::vector<float> a = diffusion::sample_action(net, state, schedule_, rng_);
  if (cfg_.hard_quantize)
    for (float& v : a) v = quantize_lattice(v);
  return a;
}

std::vector<float> DiffusionLearner::act(std::span<const float> state) {
  if (static_cast<int>(state.size()) != cfg_.state_dim)
    throw ShapeError("act: state dimension mismatch");
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<float> a = sample_policy(target_policy_, state);
  const auto t1 = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  act_ms_.push_back(ms);
  metrics_.act_ms = ms;
  return a;
}

void DiffusionLearner::observe(std::span<const float> state,
                               std::span<const float> action, float reward,
                               std::span<const float> next_state) {
  if (static_cast<int>(state.size()) != cfg_.state_dim ||
      static_cast<int>(next_state.size()) != cfg_.state_dim ||
      static_cast<int>(action.size()) != cfg_.action_dim)
    throw ShapeError("observe: transition dimension mismatch");
  // The slot that completes the warm-up minibatch is stored, not trained on.
  const bool warm = in_warmup();
  Transition t;
  t.state.assign(state.begin(), state.end());
  t.action.assign(action.begin(), action.end());
  t.reward = reward / cfg_.reward_scale;
  t.next_state.assign(next_state.begin(), next_state.end());
  replay_.push(std::move(t));

  ++iteration_;
  metrics_.iteration = iteration_;
  metrics_.reward = reward;
  metrics_.trained = false;
  if (!warm && ++slots_since_train_ >= cfg_.slots_per_train) {
    slots_since_train_ = 0;
    for (int i = 0; i < cfg_.updates_per_slot; ++i) train_step();
  }
}

void DiffusionLearner::train_step() {
  const int B = cfg_.batch;
  const auto idx = replay_.sample_indices(B, rng_);
  nn::MatF S(B, cfg_.state_dim), A(B, cfg_.action_dim), S2(B, cfg_.state_dim);
  std::vector<float> r(B);
  for (int b = 0; b < B; ++b) {
    const Transition& t = replay_.at(idx[b]);
    std::memcpy(S.row(b), t.state.data(), sizeof(float) * cfg_.state_dim);
    std::memcpy(A.row(b), t.action.data(), sizeof(float) * cfg_.action_dim);
    std::memcpy(S2.row(b), t.next_state.data(), sizeof(float) * cfg_.state_dim);
    r[b] = t.reward;
  }

  // Target actions from the target diffusion policy.
  nn::MatF A2 = diffusion::sample_actions(target_policy_, S2, schedule_, rng_);
  if (cfg_.hard_quantize)
    for (float& v : A2.d) v = quantize_lattice(v);
  const std::vector<float> y = target_q(critics_, S2, A2, r, cfg_.gamma);

  std::vector<float> q1_vals;
  metrics_.critic_loss = critic_update(critics_, S, A, y, &q1_vals);

  double qsum = 0.0, qabs = 0.0;
  for (float q : q1_vals) {
    qsum += q;
    qabs += std::fabs(q);
  }
  metrics_.mean_q = static_cast<float>(qsum / q1_vals.size());
  const float denom = static_cast<float>(qabs / q1_vals.size());

  nn::MlpGrads g = policy_.net().make_grads();
  const auto loss = diffusion::combined_loss(policy_, critics_.q1, S, A, denom,
                                             schedule_, cfg_.eta, rng_, &g);
  nn::clip_grad_norm(g.tensors(), cfg_.max_grad_norm);
  policy_opt_.step(policy_.net().params(), g.tensors());
  metrics_.denoise_loss = loss.denoise;
  metrics_.guidance = loss.guidance;

  nn::Mlp::ema_update(target_policy_.net(), policy_.net(), cfg_.rho);
  critics_.ema_update(cfg_.rho);
  metrics_.trained = true;
}

void DiffusionLearner::save_checkpoint(const std::string& path) const {
  nn::TensorBundle b;
  append_mlp(b, policy_.net());
  append_mlp(b, target_policy_.net());
  append_mlp(b, critics_.q1);
  append_mlp(b, critics_.q2);
  append_mlp(b, critics_.target_q1);
  append_mlp(b, critics_.target_q2);
  // Optimizer moments and counters.
  auto add_opt = [&b](const nn::Adam& opt) {
    auto& m = const_cast<nn::Adam&>(opt).moments1();
    auto& v = const_cast<nn::Adam&>(opt).moments2();
    b.add({static_cast<uint32_t>(m.size())}, m.data(), m.size());
    b.add({static_cast<uint32_t>(v.size())}, v.data(), v.size());
    b.add_scalar(static_cast<float>(opt.t));
  };
  add_opt(policy_opt_);
  add_opt(critics_.opt1);
  add_opt(critics_.opt2);
  b.add_scalar(static_cast<float>(iteration_));
  b.add_scalar(static_cast<float>(replay_.size()));
  const uint64_t dig = replay_.digest();
  const float dig_parts[2] = {static_cast<float>(dig >> 32),
                              static_cast<float>(dig & 0xffffffffULL)};
  b.add({2}, dig_parts, 2);
  b.save(path);
}

void DiffusionLearner::load_checkpoint(const std::string& path) {
  const nn::TensorBundle b = nn::TensorBundle::load(path);
  size_t at = 0;
  at = restore_mlp(b, at, policy_.net());
  at = restore_mlp(b, at, target_policy_.net());
  at = restore_mlp(b, at, critics_.q1);
  at = restore_mlp(b, at, critics_.q2);
  at = restore_mlp(b, at, critics_.target_q1);
  at = restore_mlp(b, at, critics_.target_q2);
  auto load_opt = [&](nn::Adam& opt) {
    auto& m = opt.moments1();
    auto& v = opt.moments2();
    if (b.entries[at].data.size() != m.size())
      throw std::runtime_error("checkpoint: optimizer shape mismatch");
    std::memcpy(m.data(), b.entries[at++].data.data(), m.size() * sizeof(float));
    std::memcpy(v.data(), b.entries[at++].data.data(), v.size() * sizeof(float));
    opt.t = static_cast<long>(b.entries[at++].data[0]);
  };
  load_opt(policy_opt_);
  load_opt(critics_.opt1);
  load_opt(critics_.opt2);
  iteration_ = static_cast<long>(b.entries[at++].data[0]);
}

}  // namespace xdiff::agent
