// SPDX-License-Identifier: Apache-2.0

#include "sgru/kernels.hpp"

namespace sgru::kernels {
namespace {

void matvec_scalar(const double* a, const double* x, double* y, int m, int n) {
  for (int i = 0; i < m; ++i) {
    const double* row = a + static_cast<std::size_t>(i) * n;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void matvec_t_acc_scalar(const double* a, const double* g, double* dx, int m,
                         int n) {
  for (int i = 0; i < m; ++i) {
    const double* row = a + static_cast<std::size_t>(i) * n;
    const double gi = g[i];
    for (int j = 0; j < n; ++j) dx[j] += row[j] * gi;
  }
}

void ger_acc_scalar(double* da, const double* g, const double* x, int m,
                    int n) {
  for (int i = 0; i < m; ++i) {
    double* row = da + static_cast<std::size_t>(i) * n;
    const double gi = g[i];
    for (int j = 0; j < n; ++j) row[j] += gi * x[j];
  }
}

void add_scalar(const double* a, const double* b, double* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_scalar(const double* a, const double* b, double* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void mul_scalar(const double* a, const double* b, double* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void mul_acc_scalar(const double* a, const double* b, double* out, int n) {
  for (int i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void axpy_scalar(double alpha, const double* x, double* y, int n) {
  for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double dot_scalar(const double* a, const double* b, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_scalar(const double* a, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += a[i];
  return acc;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{matvec_scalar, matvec_t_acc_scalar, ger_acc_scalar,
                       add_scalar,    sub_scalar,          mul_scalar,
                       mul_acc_scalar, axpy_scalar,        dot_scalar,
                       sum_scalar};
  return ops;
}

}  // namespace sgru::kernels
