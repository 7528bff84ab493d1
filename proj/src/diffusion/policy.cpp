/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "diffusion/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace xdiff::diffusion {

EpsilonNet::EpsilonNet(int action_dim, int state_dim, int emb_dim, int hidden,
                       int hidden_layers, std::mt19937_64& rng)
    : action_dim_(action_dim), state_dim_(state_dim), emb_dim_(emb_dim) {
  std::vector<int> dims;
  dims.push_back(action_dim + state_dim + emb_dim);
  for (int i = 0; i < hidden_layers; ++i) dims.push_back(hidden);
  dims.push_back(action_dim);
  net_ = nn::Mlp(dims, nn::Act::mish, nn::Act::identity, rng, /*zero_last=*/true);
}

const std::vector<float>& EpsilonNet::embedding(int k) const {
  if (k >= static_cast<int>(emb_cache_.size())) emb_cache_.resize(k + 1);
  if (emb_cache_[k].empty()) emb_cache_[k] = nn::timestep_embedding(k, emb_dim_);
  return emb_cache_[k];
}

nn::MatF EpsilonNet::assemble_input(const nn::MatF& a_k, const nn::MatF& states,
                                    std::span<const int> k_step) const {
  if (a_k.cols != action_dim_ || states.cols != state_dim_ ||
      a_k.rows != states.rows || static_cast<int>(k_step.size()) != a_k.rows)
    throw ShapeError("EpsilonNet: inconsistent batch shapes");
  nn::MatF in(a_k.rows, action_dim_ + state_dim_ + emb_dim_);
  for (int r = 0; r < a_k.rows; ++r) {
    float* dst = in.row(r);
    std::memcpy(dst, a_k.row(r), sizeof(float) * action_dim_);
    std::memcpy(dst + action_dim_, states.row(r), sizeof(float) * state_dim_);
    std::memcpy(dst + action_dim_ + state_dim_, embedding(k_step[r]).data(),
                sizeof(float) * emb_dim_);
  }
  return in;
}

nn::MatF EpsilonNet::predict(const nn::MatF& a_k, const nn::MatF& states,
                             std::span<const int> k_step) const {
  return net_.forward(assemble_input(a_k, states, k_step));
}

nn::MatF EpsilonNet::forward_train(const nn::MatF& a_k, const nn::MatF& states,
                                   std::span<const int> k_step,
                                   nn::MlpCache& cache) const {
  return net_.forward(assemble_input(a_k, states, k_step), cache);
}

nn::MatF EpsilonNet::backward_train(const nn::MlpCache& cache, const nn::MatF& dpred,
                                    nn::MlpGrads& g) const {
  nn::MatF din = net_.backward(cache, dpred, g);
  nn::MatF da(din.rows, action_dim_);
  for (int r = 0; r < din.rows; ++r)
    std::memcpy(da.row(r), din.row(r), sizeof(float) * action_dim_);
  return da;
}

void q_sample(std::span<const float> a0, int k, std::span<const float> noise,
              const DenoiseSchedule& sch, std::span<float> out) {
  const float sab = std::sqrt(sch.abar(k));
  const float snb = std::sqrt(1.0f - sch.abar(k));
  for (size_t i = 0; i < a0.size(); ++i) out[i] = sab * a0[i] + snb * noise[i];
}

void p_sample_step(std::span<const float> a_k, std::span<const float> eps_hat, int k,
                   const DenoiseSchedule& sch, std::span<const float> z,
                   std::span<float> out) {
  const float coeff = sch.b(k) / std::sqrt(1.0f - sch.abar(k));
  const float inv_sa = 1.0f / std::sqrt(sch.a(k));
  const float sigma = k > 1 ? std::sqrt(sch.b(k)) : 0.0f;
  for (size_t i = 0; i < a_k.size(); ++i) {
    float v = (a_k[i] - coeff * eps_hat[i]) * inv_sa;
    if (k > 1) v += sigma * z[i];
    out[i] = v;
  }
}

namespace {

void check_finite(const nn::MatF& m, const char* what) {
  for (float v : m.d)
    if (!std::isfinite(v))
      throw NumericError(std::string("diffusion: non-finite values in ") + what);
}

nn::MatF normal_matrix(int rows, int cols, std::mt19937_64& rng) {
  nn::MatF m(rows, cols);
  std::normal_distribution<float> n(0.0f, 1.0f);
  for (float& v : m.d) v = n(rng);
  return m;
}

}  // namespace

nn::MatF sample_actions(const EpsPredictor& eps, const nn::MatF& states,
                        const DenoiseSchedule& sch, std::mt19937_64& rng, bool clamp) {
  const int batch = states.rows;
  const int adim = eps.action_dim();
  nn::MatF a = normal_matrix(batch, adim, rng);
  std::vector<int> ks(batch);
  for (int k = sch.steps; k >= 1; --k) {
    std::fill(ks.begin(), ks.end(), k);
    const nn::MatF pred = eps.predict(a, states, ks);
    check_finite(pred, "noise prediction");
    nn::MatF z;
    if (k > 1) z = normal_matrix(batch, adim, rng);
    nn::MatF next(batch, adim);
    for (int r = 0; r < batch; ++r)
      p_sample_step(a.row_span(r), pred.row_span(r), k, sch,
                    k > 1 ? z.row_span(r) : std::span<const float>{}, next.row_span(r));
    a = std::move(next);
    check_finite(a, "reverse chain");
  }
  if (clamp)
    for (float& v : a.d) v = std::clamp(v, -1.0f, 1.0f);
  return a;
}

std::vector<float> sample_action(const EpsPredictor& eps, std::span<const float> state,
                                 const DenoiseSchedule& sch, std::mt19937_64& rng,
                                 bool clamp) {
  nn::MatF s(1, static_cast<int>(state.size()));
  std::copy(state.begin(), state.end(), s.d.begin());
  nn::MatF a = sample_actions(eps, s, sch, rng, clamp);
  return a.d;
}

float diffusion_loss(const EpsilonNet& net, const nn::MatF& states,
                     const nn::MatF& actions, const DenoiseSchedule& sch,
                     std::mt19937_64& rng, nn::MlpGrads* grads) {
  const int batch = states.rows;
  const int adim = net.action_dim();
  std::uniform_int_distribution<int> uk(1, sch.steps);
  std::vector<int> ks(batch);
  for (int& k : ks) k = uk(rng);
  nn::MatF noise = normal_matrix(batch, adim, rng);
  nn::MatF noisy(batch, adim);
  for (int r = 0; r < batch; ++r)
    q_sample(actions.row_span(r), ks[r], noise.row_span(r), sch, noisy.row_span(r));

  nn::MlpCache cache;
  const nn::MatF pred = net.forward_train(noisy, states, ks, cache);

  double loss = 0.0;
  nn::MatF dpred(batch, adim);
  for (size_t i = 0; i < pred.size(); ++i) {
    const float r = pred.d[i] - noise.d[i];
    loss += static_cast<double>(r) * r;
    dpred.d[i] = 2.0f * r / static_cast<float>(batch);
  }
  loss /= batch;
  if (grads) net.backward_train(cache, dpred, *grads);
  return static_cast<float>(loss);
}

ChainNoise ChainNoise::draw(int batch, int action_dim, int steps,
                            std::mt19937_64& rng) {
  ChainNoise n;
  n.draws.push_back(normal_matrix(batch, action_dim, rng));  // a_K
  for (int k = steps; k >= 2; --k)
    n.draws.push_back(normal_matrix(batch, action_dim, rng));
  return n;
}

float q_guidance(const EpsilonNet& net, const nn::Mlp& critic, const nn::MatF& states,
                 float denom, const DenoiseSchedule& sch, std::mt19937_64& rng,
                 nn::MlpGrads* grads, nn::MatF* sampled_actions,
                 const ChainNoise* noise) {
  const int batch = states.rows;
  const int adim = net.action_dim();
  const int sdim = net.state_dim();
  denom = std::max(denom, 1e-6f);

  ChainNoise local;
  if (!noise) {
    local = ChainNoise::draw(batch, adim, sch.steps, rng);
    noise = &local;
  }

  // Forward chain with per-step caches; noise draws are fixed so gradients
  // flow through the means only (reparameterization). The caches are
  // thread-local scratch reused across calls.
  thread_local std::vector<nn::MlpCache> caches;
  caches.resize(sch.steps);
  nn::MatF a = noise->draws[0];
  std::vector<int> ks(batch);
  size_t zi = 1;
  for (int k = sch.steps; k >= 1; --k) {
    std::fill(ks.begin(), ks.end(), k);
    const nn::MatF pred = net.forward_train(a, states, ks, caches[k - 1]);
    check_finite(pred, "guidance noise prediction");
    nn::MatF next(batch, adim);
    const nn::MatF* z = k > 1 ? &noise->draws[zi++] : nullptr;
    for (int r = 0; r < batch; ++r)
      p_sample_step(a.row_span(r), pred.row_span(r), k, sch,
                    z ? z->row_span(r) : std::span<const float>{}, next.row_span(r));
    a = std::move(next);
    check_finite(a, "guidance reverse chain");
  }
  // The critic scores the action as played: clamped to the box. Inside the
  // chain nothing is clamped; the clamp here is the final operation and its
  // subgradient is zero on saturated coordinates.
  nn::MatF a_play = a;
  for (float& v : a_play.d) v = std::clamp(v, -1.0f, 1.0f);
  if (sampled_actions) *sampled_actions = a_play;

  nn::MatF qin(batch, sdim + adim);
  for (int r = 0; r < batch; ++r) {
    std::memcpy(qin.row(r), states.row(r), sizeof(float) * sdim);
    std::memcpy(qin.row(r) + sdim, a_play.row(r), sizeof(float) * adim);
  }
  nn::MlpCache qcache;
  const nn::MatF qv = critic.forward(qin, qcache);
  double qsum = 0.0;
  for (float v : qv.d) qsum += v;
  const float value = static_cast<float>(qsum / batch / denom);

  if (!grads) return value;

  // d value / d a0 via the critic, then back through the chain. On
  // coordinates outside the box the gradient is projected: components
  // pushing further out are dropped (the played action cannot move there),
  // inward pulls pass through.
  nn::MatF dq(batch, 1);
  dq.fill(1.0f / (static_cast<float>(batch) * denom));
  thread_local nn::MlpGrads qg;  // discarded: critic is frozen here
  if (qg.dw.size() != critic.num_layers()) qg = critic.make_grads();
  nn::MatF dqin = critic.backward(qcache, dq, qg);
  nn::MatF g(batch, adim);
  for (int r = 0; r < batch; ++r)
    for (int c = 0; c < adim; ++c) {
      const float raw = a.at(r, c);
      float gv = dqin.at(r, sdim + c);
      if ((raw > 1.0f && gv > 0.0f) || (raw < -1.0f && gv < 0.0f)) gv = 0.0f;
      g.at(r, c) = gv;
    }

  for (int k = 1; k <= sch.steps; ++k) {
    const float coeff = sch.b(k) / std::sqrt(1.0f - sch.abar(k));
    const float inv_sa = 1.0f / std::sqrt(sch.a(k));
    nn::MatF dpred(batch, adim);
    for (size_t i = 0; i < g.size(); ++i) dpred.d[i] = -coeff * inv_sa * g.d[i];
    const nn::MatF gin_a = net.backward_train(caches[k - 1], dpred, *grads);
    for (size_t i = 0; i < g.size(); ++i) g.d[i] = inv_sa * g.d[i] + gin_a.d[i];
  }
  return value;
}

CombinedLoss combined_loss(const EpsilonNet& net, const nn::Mlp& critic,
                           const nn::MatF& states, const nn::MatF& actions,
                           float denom, const DenoiseSchedule& sch, float eta,
                           std::mt19937_64& rng, nn::MlpGrads* grads) {
  CombinedLoss out;
  if (eta == 0.0f) {
    // Reduces exactly to the denoising loss; skip the chain.
    out.denoise = diffusion_loss(net, states, actions, sch, rng, grads);
    out.guidance = 0.0f;
    out.total = out.denoise;
    return out;
  }
  // The reported values follow the L_d - eta*Q composition. For the update
  // direction the denoising gradient is averaged per action coordinate:
  // the squared-norm convention grows with the action dimension and would
  // otherwise bury the normalized guidance gradient at wide actions.
  nn::MlpGrads gl = net.net().make_grads();
  out.denoise = diffusion_loss(net, states, actions, sch, rng, grads ? &gl : nullptr);
  nn::MlpGrads gq = net.net().make_grads();
  out.guidance =
      q_guidance(net, critic, states, denom, sch, rng, grads ? &gq : nullptr);
  if (grads) {
    const float ld_scale = 1.0f / static_cast<float>(net.action_dim());
    auto dst = grads->tensors();
    auto srcl = gl.tensors();
    auto srcq = gq.tensors();
    for (size_t i = 0; i < dst.size(); ++i)
      for (size_t j = 0; j < dst[i].n; ++j)
        dst[i].p[j] += ld_scale * srcl[i].p[j] - eta * srcq[i].p[j];
  }
  out.total = out.denoise - eta * out.guidance;
  return out;
}

}  // namespace xdiff::diffusion
