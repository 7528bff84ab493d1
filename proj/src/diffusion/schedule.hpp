/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <vector>

#include "core/types.hpp"

namespace xdiff::diffusion {

/// Variance-preserving noise schedule over K denoising steps.
///
/// beta_k = 1 - exp(-beta_min/K - (beta_max - beta_min) (2k - 1) / (2 K^2)),
/// which keeps alpha_bar_K = exp(-(beta_min + beta_max)/2) independent of K,
/// so very small K still noises the action almost completely.
struct DenoiseSchedule {
  int steps = 0;  // K
  std::vector<float> beta;       // [K], beta[k-1] is beta_k
  std::vector<float> alpha;      // 1 - beta
  std::vector<float> alpha_bar;  // running product of alpha

  static DenoiseSchedule make(int K, float beta_min = 0.1f, float beta_max = 10.0f);

  float b(int k) const { return beta[k - 1]; }
  float a(int k) const { return alpha[k - 1]; }
  float abar(int k) const { return alpha_bar[k - 1]; }
};

}  // namespace xdiff::diffusion
