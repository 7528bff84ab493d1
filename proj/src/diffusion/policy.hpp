/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <functional>
#include <random>
#include <span>
#include <vector>

#include "diffusion/schedule.hpp"
#include "nn/mlp.hpp"

namespace xdiff::diffusion {

/// Conditional noise predictor interface; lets tests substitute analytic
/// oracles for the learned network.
class EpsPredictor {
 public:
  virtual ~EpsPredictor() = default;
  virtual int action_dim() const = 0;
  /// a_k and states are batched [B x A], [B x S]; k_step holds the per-sample
  /// diffusion index in 1..K. Returns the predicted noise [B x A].
  virtual nn::MatF predict(const nn::MatF& a_k, const nn::MatF& states,
                           std::span<const int> k_step) const = 0;
};

/// MLP noise model conditioned on (noisy action, state, timestep embedding).
class EpsilonNet : public EpsPredictor {
 public:
  EpsilonNet() = default;
  /// dims: {action+state+emb, hidden x hidden_layers, action}; the output
  /// layer starts at zero so an untrained policy is a pure noise chain.
  EpsilonNet(int action_dim, int state_dim, int emb_dim, int hidden,
             int hidden_layers, std::mt19937_64& rng);

  int action_dim() const override { return action_dim_; }
  int state_dim() const { return state_dim_; }
  int emb_dim() const { return emb_dim_; }

  nn::MatF predict(const nn::MatF& a_k, const nn::MatF& states,
                   std::span<const int> k_step) const override;

  /// Training-path forward keeping the cache for backward_train.
  nn::MatF forward_train(const nn::MatF& a_k, const nn::MatF& states,
                         std::span<const int> k_step, nn::MlpCache& cache) const;
  /// Accumulates parameter grads for upstream dL/dpred and returns dL/da_k.
  nn::MatF backward_train(const nn::MlpCache& cache, const nn::MatF& dpred,
                          nn::MlpGrads& g) const;

  nn::Mlp& net() { return net_; }
  const nn::Mlp& net() const { return net_; }

 private:
  nn::MatF assemble_input(const nn::MatF& a_k, const nn::MatF& states,
                          std::span<const int> k_step) const;
  const std::vector<float>& embedding(int k) const;

  nn::Mlp net_;
  int action_dim_ = 0;
  int state_dim_ = 0;
  int emb_dim_ = 0;
  mutable std::vector<std::vector<float>> emb_cache_;  // indexed by k
};

/// Forward noising a_k = sqrt(abar_k) a0 + sqrt(1 - abar_k) eps.
void q_sample(std::span<const float> a0, int k, std::span<const float> noise,
              const DenoiseSchedule& sch, std::span<float> out);

/// One reverse step a_{k-1} from a_k and the predicted noise. `z` supplies
/// the stochastic term for k > 1 (sigma_k = sqrt(beta_k)); the final step
/// (k = 1) is deterministic and ignores z.
void p_sample_step(std::span<const float> a_k, std::span<const float> eps_hat, int k,
                   const DenoiseSchedule& sch, std::span<const float> z,
                   std::span<float> out);

/// Full reverse chain from standard-normal a_K, batched over states.
/// Clamps the result to [-1, 1] unless `clamp` is false. Throws NumericError
/// on non-finite intermediates.
nn::MatF sample_actions(const EpsPredictor& eps, const nn::MatF& states,
                        const DenoiseSchedule& sch, std::mt19937_64& rng,
                        bool clamp = true);

/// Single-state convenience wrapper.
std::vector<float> sample_action(const EpsPredictor& eps, std::span<const float> state,
                                 const DenoiseSchedule& sch, std::mt19937_64& rng,
                                 bool clamp = true);

/// Denoising loss: per-sample uniform k and standard-normal noise, mean over
/// the batch of the squared prediction residual norm. Gradients are
/// accumulated into `grads` when non-null.
float diffusion_loss(const EpsilonNet& net, const nn::MatF& states,
                     const nn::MatF& actions, const DenoiseSchedule& sch,
                     std::mt19937_64& rng, nn::MlpGrads* grads);

/// Noise draws of one reverse chain: index 0 is a_K, then z for k = K..2.
struct ChainNoise {
  std::vector<nn::MatF> draws;
  static ChainNoise draw(int batch, int action_dim, int steps, std::mt19937_64& rng);
};

/// Q-guidance value E[Q(s, a0)] / denom with a0 drawn through the fully
/// differentiable reverse chain (fixed noise draws, gradients through the
/// means; no clamping inside the chain). `denom` is the detached mean |Q|
/// scale. Gradients w.r.t. the policy parameters are accumulated into
/// `grads` when non-null. `noise` pins the chain's stochastic draws (tests);
/// when null they come from `rng`. Returns the guidance value.
float q_guidance(const EpsilonNet& net, const nn::Mlp& critic, const nn::MatF& states,
                 float denom, const DenoiseSchedule& sch, std::mt19937_64& rng,
                 nn::MlpGrads* grads, nn::MatF* sampled_actions = nullptr,
                 const ChainNoise* noise = nullptr);

struct CombinedLoss {
  float total = 0.0f;
  float denoise = 0.0f;
  float guidance = 0.0f;
};

/// L(theta) = L_d(theta) - eta * Q(theta); gradients of both terms are
/// accumulated into `grads`.
CombinedLoss combined_loss(const EpsilonNet& net, const nn::Mlp& critic,
                           const nn::MatF& states, const nn::MatF& actions,
                           float denom, const DenoiseSchedule& sch, float eta,
                           std::mt19937_64& rng, nn::MlpGrads* grads);

}  // namespace xdiff::diffusion
