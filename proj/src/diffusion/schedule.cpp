/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "diffusion/schedule.hpp"

#include <cmath>

namespace xdiff::diffusion {

DenoiseSchedule DenoiseSchedule::make(int K, float beta_min, float beta_max) {
  if (K < 1) throw ConfigError("DenoiseSchedule: K must be >= 1");
  if (!(beta_min > 0.0f) || !(beta_max > beta_min))
    throw ConfigError("DenoiseSchedule: need 0 < beta_min < beta_max");
  DenoiseSchedule s;
  s.steps = K;
  s.beta.resize(K);
  s.alpha.resize(K);
  s.alpha_bar.resize(K);
  double prod = 1.0;
  for (int k = 1; k <= K; ++k) {
    const double x = beta_min / K +
                     (beta_max - beta_min) * (2.0 * k - 1.0) / (2.0 * K * K);
    const double b = 1.0 - std::exp(-x);
    s.beta[k - 1] = static_cast<float>(b);
    s.alpha[k - 1] = static_cast<float>(1.0 - b);
    prod *= 1.0 - b;
    s.alpha_bar[k - 1] = static_cast<float>(prod);
  }
  return s;
}

}  // namespace xdiff::diffusion
