/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace xdiff::nn {

Adam::Adam(size_t param_count, float lr_, float beta1_, float beta2_, float eps_)
    : lr(lr_), beta1(beta1_), beta2(beta2_), eps(eps_),
      m_(param_count, 0.0f), v_(param_count, 0.0f) {}

void Adam::step(std::vector<TensorView> params, std::vector<TensorView> grads) {
  if (params.size() != grads.size())
    throw std::invalid_argument("Adam::step: mismatched tensor lists");
  ++t;
  const float bc1 = 1.0f - std::pow(beta1, static_cast<float>(t));
  const float bc2 = 1.0f - std::pow(beta2, static_cast<float>(t));
  size_t off = 0;
  for (size_t i = 0; i < params.size(); ++i) {
    if (params[i].n != grads[i].n)
      throw std::invalid_argument("Adam::step: mismatched tensor shapes");
    float* p = params[i].p;
    const float* g = grads[i].p;
    for (size_t j = 0; j < params[i].n; ++j) {
      const size_t s = off + j;
      m_[s] = beta1 * m_[s] + (1.0f - beta1) * g[j];
      v_[s] = beta2 * v_[s] + (1.0f - beta2) * g[j] * g[j];
      const float mhat = m_[s] / bc1;
      const float vhat = v_[s] / bc2;
      p[j] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
    off += params[i].n;
  }
  if (off != m_.size()) throw std::invalid_argument("Adam::step: size drift");
}

void clip_grad_norm(std::vector<TensorView> tensors, float max_norm) {
  if (max_norm <= 0.0f) return;
  double norm2 = 0.0;
  for (const auto& t : tensors)
    for (size_t j = 0; j < t.n; ++j) norm2 += static_cast<double>(t.p[j]) * t.p[j];
  const double norm = std::sqrt(norm2);
  if (norm <= max_norm) return;
  const float scale = static_cast<float>(max_norm / norm);
  for (auto& t : tensors)
    for (size_t j = 0; j < t.n; ++j) t.p[j] *= scale;
}

}  // namespace xdiff::nn
