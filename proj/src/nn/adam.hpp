/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstddef>
#include <vector>

#include "nn/mlp.hpp"

namespace xdiff::nn {

/// Adaptive-moment optimizer with bias correction.
class Adam {
 public:
  Adam() = default;
  explicit Adam(size_t param_count, float lr = 3e-4f, float beta1 = 0.9f,
                float beta2 = 0.999f, float eps = 1e-8f);

  /// Applies one update. `params` and `grads` must cover the same layout the
  /// optimizer was sized for.
  void step(std::vector<TensorView> params, std::vector<TensorView> grads);

  float lr = 3e-4f;
  float beta1 = 0.9f;
  float beta2 = 0.999f;
  float eps = 1e-8f;
  long t = 0;

  std::vector<float>& moments1() { return m_; }
  std::vector<float>& moments2() { return v_; }

 private:
  std::vector<float> m_, v_;
};

/// Scales `tensors` in place so the global L2 norm is at most max_norm.
void clip_grad_norm(std::vector<TensorView> tensors, float max_norm);

}  // namespace xdiff::nn
