/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nn/mlp.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "kernels/gemm.hpp"

namespace xdiff::nn {

namespace {

// Branch-free expf (Cephes-style degree-5 polynomial plus exponent
// splicing), accurate to ~2 ulp over the clamped range and vectorizable.
inline float fast_expf(float x) {
  x = std::min(std::max(x, -87.0f), 88.0f);
  const float z = x * 1.44269504f;  // x / ln 2
  float n = z + (z >= 0.0f ? 0.5f : -0.5f);
  n = static_cast<float>(static_cast<int>(n));
  const float r = x - n * 0.693359375f + n * 2.12194440e-4f;
  float p = 1.9875691500e-4f;
  p = p * r + 1.3981999507e-3f;
  p = p * r + 8.3334519073e-3f;
  p = p * r + 4.1665795894e-2f;
  p = p * r + 1.6666665459e-1f;
  p = p * r + 5.0000001201e-1f;
  p = p * r * r + r + 1.0f;
  const int32_t bits = (static_cast<int32_t>(n) + 127) << 23;
  return p * std::bit_cast<float>(bits);
}

}  // namespace

// x * tanh(softplus(x)). With z = 1 + e^x, tanh(log z) = (z^2 - 1)/(z^2 + 1),
// so one expf covers both the value and the derivative. For x > 20 the
// function is the identity to float precision.
float mish(float x) {
  const float z = 1.0f + fast_expf(x);
  const float z2 = z * z;
  const float v = x * (z2 - 1.0f) / (z2 + 1.0f);
  return x > 20.0f ? x : v;  // identity to float precision past 20
}

float mish_grad(float x) {
  const float u = fast_expf(x);
  const float z = 1.0f + u;
  const float z2p1 = z * z + 1.0f;
  const float t = (z * z - 1.0f) / z2p1;
  const float g = t + x * 4.0f * z * u / (z2p1 * z2p1);
  return x > 20.0f ? 1.0f : g;
}

namespace {

inline float act_fwd(Act a, float x) {
  switch (a) {
    case Act::identity: return x;
    case Act::mish: return mish(x);
    case Act::tanh_: return std::tanh(x);
  }
  return x;
}

inline float act_grad(Act a, float z) {
  switch (a) {
    case Act::identity: return 1.0f;
    case Act::mish: return mish_grad(z);
    case Act::tanh_: {
      const float t = std::tanh(z);
      return 1.0f - t * t;
    }
  }
  return 1.0f;
}

}  // namespace

Mlp::Mlp(const std::vector<int>& dims, Act hidden_act, Act out_act,
         std::mt19937_64& rng, bool zero_last) {
  if (dims.size() < 2) throw std::invalid_argument("Mlp needs at least one layer");
  layers_.resize(dims.size() - 1);
  for (size_t l = 0; l < layers_.size(); ++l) {
    DenseLayer& lay = layers_[l];
    lay.w = MatF(dims[l], dims[l + 1]);
    lay.b.assign(dims[l + 1], 0.0f);
    lay.act = (l + 1 == layers_.size()) ? out_act : hidden_act;
    const bool last = (l + 1 == layers_.size());
    if (last && zero_last) continue;
    const float bound = std::sqrt(1.0f / static_cast<float>(dims[l]));
    std::uniform_real_distribution<float> u(-bound, bound);
    for (auto& v : lay.w.d) v = u(rng);
    for (auto& v : lay.b) v = u(rng);
  }
}

MatF Mlp::forward(const MatF& x) const {
  MlpCache scratch;
  return forward(x, scratch);
}

MatF Mlp::forward(const MatF& x, MlpCache& cache) const {
  assert(x.cols == in_dim());
  const size_t L = layers_.size();
  cache.x.resize(L);
  cache.z.resize(L);
  cache.x[0] = x;
  MatF out;
  for (size_t l = 0; l < L; ++l) {
    const DenseLayer& lay = layers_[l];
    const MatF& in = cache.x[l];
    MatF& z = cache.z[l];
    z.rows = in.rows;
    z.cols = lay.w.cols;
    z.d.resize(static_cast<size_t>(z.rows) * z.cols);
    kern::gemm_nn(in.rows, lay.w.cols, lay.w.rows, in.d.data(), lay.w.d.data(),
                  z.d.data());
    for (int r = 0; r < z.rows; ++r) {
      float* zr = z.row(r);
      const float* b = lay.b.data();
#pragma omp simd
      for (int c = 0; c < z.cols; ++c) zr[c] += b[c];
    }
    MatF& dst = (l + 1 < L) ? cache.x[l + 1] : out;
    dst.rows = z.rows;
    dst.cols = z.cols;
    dst.d.resize(z.size());
    if (lay.act == Act::identity) {
      std::copy(z.d.begin(), z.d.end(), dst.d.begin());
    } else if (lay.act == Act::mish) {
      const float* zi = z.d.data();
      float* co = dst.d.data();
      const size_t nel = z.size();
#pragma omp simd
      for (size_t i = 0; i < nel; ++i) co[i] = mish(zi[i]);
    } else {
      for (size_t i = 0; i < z.size(); ++i) dst.d[i] = act_fwd(lay.act, z.d[i]);
    }
  }
  return out;
}

MatF Mlp::backward(const MlpCache& cache, const MatF& dy, MlpGrads& g) const {
  assert(cache.x.size() == layers_.size());
  assert(g.dw.size() == layers_.size());
  MatF dz = dy;
  for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l) {
    const DenseLayer& lay = layers_[l];
    const MatF& z = cache.z[l];
    const MatF& xin = cache.x[l];
    if (lay.act == Act::mish) {
      float* dzi = dz.d.data();
      const float* zi = z.d.data();
      const size_t nel = dz.size();
#pragma omp simd
      for (size_t i = 0; i < nel; ++i) dzi[i] *= mish_grad(zi[i]);
    } else if (lay.act != Act::identity) {
      for (size_t i = 0; i < dz.size(); ++i) dz.d[i] *= act_grad(lay.act, z.d[i]);
    }
    // dW = X^T dZ, db = column sums of dZ, dX = dZ W^T
    kern::gemm_tn(lay.w.rows, lay.w.cols, dz.rows, xin.d.data(), dz.d.data(),
                  g.dw[l].d.data(), /*accumulate=*/true);
    for (int r = 0; r < dz.rows; ++r) {
      const float* zr = dz.row(r);
      for (int c = 0; c < dz.cols; ++c) g.db[l][c] += zr[c];
    }
    MatF dx(dz.rows, lay.w.rows);
    kern::gemm_nt(dz.rows, lay.w.rows, lay.w.cols, dz.d.data(), lay.w.d.data(),
                  dx.d.data());
    dz = std::move(dx);
  }
  return dz;
}

MlpGrads Mlp::make_grads() const {
  MlpGrads g;
  g.dw.reserve(layers_.size());
  g.db.reserve(layers_.size());
  for (const DenseLayer& lay : layers_) {
    g.dw.emplace_back(lay.w.rows, lay.w.cols);
    g.db.emplace_back(lay.b.size(), 0.0f);
  }
  return g;
}

void MlpGrads::zero() {
  for (auto& m : dw) m.fill(0.0f);
  for (auto& v : db) std::fill(v.begin(), v.end(), 0.0f);
}

std::vector<TensorView> MlpGrads::tensors() {
  std::vector<TensorView> out;
  for (size_t l = 0; l < dw.size(); ++l) {
    out.push_back({dw[l].d.data(), dw[l].size()});
    out.push_back({db[l].data(), db[l].size()});
  }
  return out;
}

size_t Mlp::param_count() const {
  size_t n = 0;
  for (const DenseLayer& lay : layers_) n += lay.w.size() + lay.b.size();
  return n;
}

std::vector<TensorView> Mlp::params() {
  std::vector<TensorView> out;
  for (DenseLayer& lay : layers_) {
    out.push_back({lay.w.d.data(), lay.w.size()});
    out.push_back({lay.b.data(), lay.b.size()});
  }
  return out;
}

std::vector<TensorView> Mlp::params_const() const {
  return const_cast<Mlp*>(this)->params();
}

void Mlp::ema_update(Mlp& target, const Mlp& online, float rho) {
  auto tp = target.params();
  auto op = online.params_const();
  assert(tp.size() == op.size());
  for (size_t i = 0; i < tp.size(); ++i) {
    assert(tp[i].n == op[i].n);
    for (size_t j = 0; j < tp[i].n; ++j)
      tp[i].p[j] = rho * op[i].p[j] + (1.0f - rho) * tp[i].p[j];
  }
}

std::vector<float> timestep_embedding(int k, int dim) {
  if (dim <= 0 || dim % 2 != 0)
    throw std::invalid_argument("timestep_embedding: dim must be positive and even");
  const int half = dim / 2;
  std::vector<float> e(dim);
  const float lmax = std::log(10000.0f);
  for (int i = 0; i < half; ++i) {
    const float freq = std::exp(-lmax * static_cast<float>(i) / half);
    e[2 * i] = std::sin(k * freq);
    e[2 * i + 1] = std::cos(k * freq);
  }
  return e;
}

}  // namespace xdiff::nn
