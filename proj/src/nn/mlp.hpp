/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "nn/matrix.hpp"

namespace xdiff::nn {

enum class Act : uint8_t { identity, mish, tanh_ };

float mish(float x);
float mish_grad(float x);

/// One dense layer. Weights are stored (in x out) so the batched forward is a
/// plain row-major GEMM.
struct DenseLayer {
  MatF w;                // in x out
  std::vector<float> b;  // out
  Act act = Act::identity;
};

/// Mutable view over one parameter (or gradient) tensor.
struct TensorView {
  float* p = nullptr;
  size_t n = 0;
};

/// Gradient store whose shapes mirror an Mlp's parameters.
struct MlpGrads {
  std::vector<MatF> dw;
  std::vector<std::vector<float>> db;

  void zero();
  std::vector<TensorView> tensors();
};

/// Forward cache: layer inputs and pre-activations, needed by backward().
struct MlpCache {
  std::vector<MatF> x;  // input to layer l
  std::vector<MatF> z;  // pre-activation of layer l
};

/// Plain fully connected network with manual reverse-mode gradients.
class Mlp {
 public:
  Mlp() = default;

  /// dims = {in, h1, ..., out}; hidden layers get `hidden_act`, the output
  /// layer `out_act`. Weights are fan-in uniform; `zero_last` zeroes the
  /// output layer (weights and bias).
  Mlp(const std::vector<int>& dims, Act hidden_act, Act out_act,
      std::mt19937_64& rng, bool zero_last = false);

  int in_dim() const { return layers_.empty() ? 0 : layers_.front().w.rows; }
  int out_dim() const { return layers_.empty() ? 0 : layers_.back().w.cols; }
  size_t num_layers() const { return layers_.size(); }
  const DenseLayer& layer(size_t i) const { return layers_[i]; }

  /// Batched forward, x is [B x in]. The cache overload records what
  /// backward() needs.
  MatF forward(const MatF& x) const;
  MatF forward(const MatF& x, MlpCache& cache) const;

  /// Reverse-mode pass. `dy` is dL/d(output) [B x out]; gradients are
  /// accumulated into `g` and dL/d(input) is returned.
  MatF backward(const MlpCache& cache, const MatF& dy, MlpGrads& g) const;

  MlpGrads make_grads() const;
  size_t param_count() const;
  std::vector<TensorView> params();
  std::vector<TensorView> params_const() const;

  /// target <- rho * online + (1 - rho) * target, elementwise over all params.
  static void ema_update(Mlp& target, const Mlp& online, float rho);

 private:
  std::vector<DenseLayer> layers_;
};

/// Sinusoidal position embedding of an integer step index: interleaved
/// sin/cos at geometrically spaced frequencies, dimension `dim` (even).
std::vector<float> timestep_embedding(int k, int dim);

}  // namespace xdiff::nn
