// SPDX-License-Identifier: Apache-2.0
//
// Dense double-precision kernels used by the tensor engine. A scalar
// reference implementation always exists; an AVX2 variant is selected at
// runtime when the CPU supports it. Set SGRU_KERNELS=scalar|avx2 to force
// a backend.

#pragma once

#include <cstddef>

namespace sgru::kernels {

struct Ops {
  // y[i] = sum_j a[i*n + j] * x[j], row-major a of size m x n
  void (*matvec)(const double* a, const double* x, double* y, int m, int n);
  // dx[j] += sum_i a[i*n + j] * g[i]
  void (*matvec_t_acc)(const double* a, const double* g, double* dx, int m,
                       int n);
  // da[i*n + j] += g[i] * x[j]
  void (*ger_acc)(double* da, const double* g, const double* x, int m, int n);
  void (*add)(const double* a, const double* b, double* out, int n);
  void (*sub)(const double* a, const double* b, double* out, int n);
  void (*mul)(const double* a, const double* b, double* out, int n);
  // out[i] += a[i] * b[i]
  void (*mul_acc)(const double* a, const double* b, double* out, int n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, int n);
  double (*dot)(const double* a, const double* b, int n);
  double (*sum)(const double* a, int n);
};

const Ops& scalar_ops();

// nullptr when the CPU lacks AVX2.
const Ops* avx2_ops();

// Backend chosen at first use (env override, then CPU detection).
const Ops& active();
const char* active_name();

// Test hook. Throws std::invalid_argument for unknown/unavailable names.
void force_backend(const char* name);

}  // namespace sgru::kernels
