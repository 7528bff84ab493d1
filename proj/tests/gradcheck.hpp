/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

// Finite-difference gradient oracle.
//
// The loss functionals are re-evaluated in double precision (reading the
// float32 parameters exactly), and each perturbation is measured as the
// actually-applied float difference, so the oracle's own error is pure
// O(h^2) truncation. The aggregate metric is the relative L2 error
// ||g_fd - g_analytic|| / max(||g_fd||, ||g_analytic||).

#include <cmath>
#include <functional>
#include <vector>

#include "nn/mlp.hpp"

namespace xdiff::test {

inline double mish_d(double x) {
  double sp;
  if (x > 20.0)
    sp = x;
  else if (x < -20.0)
    sp = std::exp(x);
  else
    sp = std::log1p(std::exp(x));
  return x * std::tanh(sp);
}

/// Double-precision re-evaluation of an Mlp forward pass.
inline std::vector<double> mlp_forward_double(const nn::Mlp& net,
                                              const std::vector<double>& input) {
  std::vector<double> cur = input;
  for (size_t l = 0; l < net.num_layers(); ++l) {
    const nn::DenseLayer& lay = net.layer(l);
    std::vector<double> next(lay.w.cols, 0.0);
    for (int o = 0; o < lay.w.cols; ++o) {
      double s = static_cast<double>(lay.b[o]);
      for (int i = 0; i < lay.w.rows; ++i)
        s += cur[i] * static_cast<double>(lay.w.at(i, o));
      next[o] = s;
    }
    for (double& v : next) {
      switch (lay.act) {
        case nn::Act::identity: break;
        case nn::Act::mish: v = mish_d(v); break;
        case nn::Act::tanh_: v = std::tanh(v); break;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

struct GradCheckResult {
  double rel_l2 = 0.0;        // aggregate relative L2 error
  double max_abs_diff = 0.0;  // worst absolute component difference
};

/// Central differences of `loss_fn` (a double-precision functional of the
/// float parameters) against `analytic`, flattened in params() order.
/// `stride` subsamples parameters on large nets.
template <typename LossFn>
GradCheckResult finite_diff_check(std::vector<nn::TensorView> params,
                                  const std::vector<float>& analytic, LossFn loss_fn,
                                  float h = 1e-3f, size_t stride = 1) {
  double dot_diff = 0.0, norm_fd = 0.0, norm_an = 0.0, max_abs = 0.0;
  size_t flat = 0;
  for (auto& t : params) {
    for (size_t j = 0; j < t.n; ++j, ++flat) {
      if (flat % stride != 0) continue;
      const float saved = t.p[j];
      const float pp = saved + h;
      const float pm = saved - h;
      t.p[j] = pp;
      const double lp = loss_fn();
      t.p[j] = pm;
      const double lm = loss_fn();
      t.p[j] = saved;
      const double eff_h = static_cast<double>(pp) - static_cast<double>(pm);
      const double num = (lp - lm) / eff_h;
      const double ana = analytic[flat];
      dot_diff += (num - ana) * (num - ana);
      norm_fd += num * num;
      norm_an += ana * ana;
      max_abs = std::max(max_abs, std::abs(num - ana));
    }
  }
  GradCheckResult res;
  const double denom = std::max({std::sqrt(norm_fd), std::sqrt(norm_an), 1e-12});
  res.rel_l2 = std::sqrt(dot_diff) / denom;
  res.max_abs_diff = max_abs;
  return res;
}

/// Flattens an MlpGrads store into params() order.
inline std::vector<float> flatten_grads(nn::MlpGrads& g) {
  std::vector<float> out;
  for (auto& t : g.tensors()) out.insert(out.end(), t.p, t.p + t.n);
  return out;
}

}  // namespace xdiff::test
