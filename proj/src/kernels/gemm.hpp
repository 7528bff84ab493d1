/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cstddef>

namespace xdiff::kern {

/// Dense single-precision matrix kernels, row-major storage.
///
/// Each kernel exists twice: the tiled, OpenMP-parallel production version
/// and a naive serial reference (`*_ref`) kept for testing and benchmarking.
/// Within one output element the accumulation order over k is ascending in
/// both versions, so results are reproducible for any thread count.

/// C[M,N] = A[M,K] * B[K,N], or += when accumulate is set.
void gemm_nn(int m, int n, int k, const float* a, const float* b, float* c,
             bool accumulate = false);

/// C[M,N] = A[M,K] * B[N,K]^T.
void gemm_nt(int m, int n, int k, const float* a, const float* b, float* c,
             bool accumulate = false);

/// C[M,N] = A[K,M]^T * B[K,N].
void gemm_tn(int m, int n, int k, const float* a, const float* b, float* c,
             bool accumulate = false);

void gemm_nn_ref(int m, int n, int k, const float* a, const float* b, float* c,
                 bool accumulate = false);
void gemm_nt_ref(int m, int n, int k, const float* a, const float* b, float* c,
                 bool accumulate = false);
void gemm_tn_ref(int m, int n, int k, const float* a, const float* b, float* c,
                 bool accumulate = false);

}  // namespace xdiff::kern
