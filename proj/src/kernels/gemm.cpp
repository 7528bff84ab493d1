/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "kernels/gemm.hpp"

#include <algorithm>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xdiff::kern {

namespace {

constexpr int kRowTile = 4;
// Work below this is not worth a thread team.
constexpr long kParallelMinFlops = 1L << 21;

inline void zero(float* c, int m, int n) { std::memset(c, 0, sizeof(float) * m * n); }

}  // namespace

void gemm_nn_ref(int m, int n, int k, const float* a, const float* b, float* c,
                 bool accumulate) {
  if (!accumulate) zero(c, m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      float s = c[i * n + j];
      for (int p = 0; p < k; ++p) s += a[i * k + p] * b[p * n + j];
      c[i * n + j] = s;
    }
}

void gemm_nt_ref(int m, int n, int k, const float* a, const float* b, float* c,
                 bool accumulate) {
  if (!accumulate) zero(c, m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      float s = c[i * n + j];
      for (int p = 0; p < k; ++p) s += a[i * k + p] * b[j * k + p];
      c[i * n + j] = s;
    }
}

void gemm_tn_ref(int m, int n, int k, const float* a, const float* b, float* c,
                 bool accumulate) {
  if (!accumulate) zero(c, m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      float s = c[i * n + j];
      for (int p = 0; p < k; ++p) s += a[p * m + i] * b[p * n + j];
      c[i * n + j] = s;
    }
}

namespace {

// 4x16 register micro-kernel: four C rows accumulate against 16-wide B
// panels, giving the compiler eight independent FMA chains.
template <int MR>
inline void micro_nn(int n16, int k, const float* a, int lda, const float* b,
                     int ldb, float* c, int ldc) {
  for (int j = 0; j < n16; j += 16) {
    float acc[MR][16];
    for (int r = 0; r < MR; ++r)
      for (int x = 0; x < 16; ++x) acc[r][x] = c[r * ldc + j + x];
    for (int p = 0; p < k; ++p) {
      const float* brow = b + static_cast<long>(p) * ldb + j;
      for (int r = 0; r < MR; ++r) {
        const float av = a[r * static_cast<long>(lda) + p];
#pragma omp simd
        for (int x = 0; x < 16; ++x) acc[r][x] += av * brow[x];
      }
    }
    for (int r = 0; r < MR; ++r)
      for (int x = 0; x < 16; ++x) c[r * ldc + j + x] = acc[r][x];
  }
}

}  // namespace

// Row-tiled form with a 4x16 register micro-kernel on the aligned interior;
// ragged edges fall back to the saxpy loop.
void gemm_nn(int m, int n, int k, const float* a, const float* b, float* c,
             bool accumulate) {
  if (!accumulate) zero(c, m, n);
  const long flops = 2L * m * n * k;
  const int n16 = n - n % 16;
#pragma omp parallel for schedule(static) if (flops > kParallelMinFlops)
  for (int i0 = 0; i0 < m; i0 += kRowTile) {
    const int i1 = std::min(i0 + kRowTile, m);
    const bool full_tile = (i1 - i0 == kRowTile);
    if (full_tile && n16 > 0)
      micro_nn<kRowTile>(n16, k, a + static_cast<long>(i0) * k, k, b, n,
                         c + static_cast<long>(i0) * n, n);
    const int jstart = full_tile ? n16 : 0;
    if (jstart == n) continue;
    for (int p = 0; p < k; ++p) {
      for (int i = i0; i < i1; ++i) {
        const float av = a[i * k + p];
        const float* brow = b + p * n;
        float* crow = c + i * n;
#pragma omp simd
        for (int j = jstart; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
}

namespace {

// Scratch for the transpose-and-reuse paths below.
thread_local std::vector<float> tls_scratch;

constexpr long kTransposeMinFlops = 1L << 19;

void transpose_into(const float* src, int rows, int cols, float* dst) {
  // dst is cols x rows.
  for (int r = 0; r < rows; ++r)
    for (int j = 0; j < cols; ++j) dst[static_cast<long>(j) * rows + r] = src[static_cast<long>(r) * cols + j];
}

}  // namespace

void gemm_nt(int m, int n, int k, const float* a, const float* b, float* c,
             bool accumulate) {
  const long flops = 2L * m * n * k;
  if (flops > kTransposeMinFlops) {
    // Transposing B once turns this into the fast nn kernel.
    tls_scratch.resize(static_cast<size_t>(k) * n);
    transpose_into(b, n, k, tls_scratch.data());
    gemm_nn(m, n, k, a, tls_scratch.data(), c, accumulate);
    return;
  }
  if (!accumulate) zero(c, m, n);
  for (int i = 0; i < m; ++i) {
    const float* arow = a + i * k;
    for (int j = 0; j < n; ++j) {
      const float* brow = b + j * k;
      float s = 0.0f;
#pragma omp simd reduction(+ : s)
      for (int p = 0; p < k; ++p) s += arow[p] * brow[p];
      c[i * n + j] += s;
    }
  }
}

void gemm_tn(int m, int n, int k, const float* a, const float* b, float* c,
             bool accumulate) {
  const long flops = 2L * m * n * k;
  if (flops > kTransposeMinFlops) {
    tls_scratch.resize(static_cast<size_t>(k) * m);
    transpose_into(a, k, m, tls_scratch.data());
    gemm_nn(m, n, k, tls_scratch.data(), b, c, accumulate);
    return;
  }
  if (!accumulate) zero(c, m, n);
  for (int i0 = 0; i0 < m; i0 += kRowTile) {
    const int i1 = std::min(i0 + kRowTile, m);
    for (int p = 0; p < k; ++p) {
      const float* arow = a + p * m;
      const float* brow = b + p * n;
      for (int i = i0; i < i1; ++i) {
        const float av = arow[i];
        float* crow = c + i * n;
#pragma omp simd
        for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
}

}  // namespace xdiff::kern
