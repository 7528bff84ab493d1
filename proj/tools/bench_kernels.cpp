/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
// Benchmarks the tiled GEMM kernels against the serial references on the
// matrix shapes the training loop actually hits.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "kernels/gemm.hpp"

using Clock = std::chrono::steady_clock;

namespace {

using GemmFn = void (*)(int, int, int, const float*, const float*, float*, bool);

double time_gemm(GemmFn fn, int m, int n, int k, int reps) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  std::vector<float> a(static_cast<size_t>(m) * k), b(static_cast<size_t>(k) * n),
      c(static_cast<size_t>(m) * n);
  for (auto& v : a) v = u(rng);
  for (auto& v : b) v = u(rng);
  fn(m, n, k, a.data(), b.data(), c.data(), false);  // warm up
  const auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) fn(m, n, k, a.data(), b.data(), c.data(), false);
  const auto t1 = Clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void bench_shape(const char* name, int m, int n, int k) {
  const double flops = 2.0 * m * n * k;
  int reps = static_cast<int>(2e9 / flops);
  reps = std::max(3, std::min(reps, 2000));
  const double ts = time_gemm(xdiff::kern::gemm_nn_ref, m, n, k, std::max(3, reps / 8));
  const double tp = time_gemm(xdiff::kern::gemm_nn, m, n, k, reps);
  std::printf("%-22s %4dx%4dx%4d  serial %8.3f ms (%6.2f GFLOP/s)   tiled %8.3f ms "
              "(%6.2f GFLOP/s)   speedup %5.2fx\n",
              name, m, n, k, ts * 1e3, flops / ts * 1e-9, tp * 1e3, flops / tp * 1e-9,
              ts / tp);
}

}  // namespace

int main() {
  std::printf("GEMM kernels, tiled+OpenMP vs serial reference\n");
  bench_shape("policy fwd (B=64)", 64, 256, 206);
  bench_shape("hidden fwd (B=64)", 64, 256, 256);
  bench_shape("head fwd   (B=64)", 64, 100, 256);
  bench_shape("critic fwd (B=64)", 64, 256, 190);
  bench_shape("grad dW    (256)", 256, 256, 64);
  bench_shape("single act (B=1)", 1, 256, 206);
  bench_shape("square      256", 256, 256, 256);
  bench_shape("square      512", 512, 512, 512);
  return 0;
}
