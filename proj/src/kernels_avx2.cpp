// SPDX-License-Identifier: Apache-2.0
//
// AVX2 variants. Compiled with -mavx2 in its own translation unit; callers
// must check avx2_ops() for nullptr before use. Multiply and add are kept
// separate (no FMA contraction) so results differ from the scalar kernels
// only by summation order.

#include "sgru/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SGRU_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define SGRU_HAVE_AVX2_TU 0
#endif

namespace sgru::kernels {

#if SGRU_HAVE_AVX2_TU

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void matvec_avx2(const double* a, const double* x, double* y, int m, int n) {
  for (int i = 0; i < m; ++i) {
    const double* row = a + static_cast<std::size_t>(i) * n;
    __m256d acc = _mm256_setzero_pd();
    int j = 0;
    for (; j + 4 <= n; j += 4) {
      __m256d r = _mm256_loadu_pd(row + j);
      __m256d v = _mm256_loadu_pd(x + j);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(r, v));
    }
    double s = hsum(acc);
    for (; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void matvec_t_acc_avx2(const double* a, const double* g, double* dx, int m,
                       int n) {
  for (int i = 0; i < m; ++i) {
    const double* row = a + static_cast<std::size_t>(i) * n;
    const __m256d gi = _mm256_set1_pd(g[i]);
    int j = 0;
    for (; j + 4 <= n; j += 4) {
      __m256d d = _mm256_loadu_pd(dx + j);
      __m256d r = _mm256_loadu_pd(row + j);
      _mm256_storeu_pd(dx + j, _mm256_add_pd(d, _mm256_mul_pd(r, gi)));
    }
    for (; j < n; ++j) dx[j] += row[j] * g[i];
  }
}

void ger_acc_avx2(double* da, const double* g, const double* x, int m, int n) {
  for (int i = 0; i < m; ++i) {
    double* row = da + static_cast<std::size_t>(i) * n;
    const __m256d gi = _mm256_set1_pd(g[i]);
    int j = 0;
    for (; j + 4 <= n; j += 4) {
      __m256d d = _mm256_loadu_pd(row + j);
      __m256d v = _mm256_loadu_pd(x + j);
      _mm256_storeu_pd(row + j, _mm256_add_pd(d, _mm256_mul_pd(gi, v)));
    }
    for (; j < n; ++j) row[j] += g[i] * x[j];
  }
}

void add_avx2(const double* a, const double* b, double* out, int n) {
  int i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_avx2(const double* a, const double* b, double* out, int n) {
  int i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void mul_avx2(const double* a, const double* b, double* out, int n) {
  int i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                            _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_acc_avx2(const double* a, const double* b, double* out, int n) {
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d o = _mm256_loadu_pd(out + i);
    __m256d p = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(o, p));
  }
  for (; i < n; ++i) out[i] += a[i] * b[i];
}

void axpy_avx2(double alpha, const double* x, double* y, int n) {
  const __m256d av = _mm256_set1_pd(alpha);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    __m256d xv = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(av, xv)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double dot_avx2(const double* a, const double* b, int n) {
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                           _mm256_loadu_pd(b + i)));
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_avx2(const double* a, int n) {
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i];
  return s;
}

}  // namespace

const Ops* avx2_ops() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Ops ops{matvec_avx2, matvec_t_acc_avx2, ger_acc_avx2,
                       add_avx2,    sub_avx2,          mul_avx2,
                       mul_acc_avx2, axpy_avx2,        dot_avx2,
                       sum_avx2};
  return &ops;
}

#else

const Ops* avx2_ops() { return nullptr; }

#endif  // SGRU_HAVE_AVX2_TU

}  // namespace sgru::kernels
