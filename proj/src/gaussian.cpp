// SPDX-License-Identifier: Apache-2.0

#include "sgru/gaussian.hpp"

#include <cmath>
#include <numbers>

namespace sgru {

namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727;  // 1/2 log(2 pi)

void check_sigma(const char* op, const Tensor& sigma) {
  for (double s : sigma.values())
    if (!(s > 0.0) || !std::isfinite(s))
      throw NumericError(std::string(op) + ": sigma must be strictly positive "
                                           "and finite");
}

void check_dims(const char* op, const Tensor& a, const Tensor& b) {
  if (a.rows() != b.rows() || a.cols() != 1 || b.cols() != 1)
    throw ShapeError(std::string(op) + ": dimension mismatch (" +
                     std::to_string(a.rows()) + " vs " +
                     std::to_string(b.rows()) + ")");
}

}  // namespace

GaussianDiag make_gaussian(Tensor mu, Tensor sigma) {
  check_dims("make_gaussian", mu, sigma);
  check_sigma("make_gaussian", sigma);
  return {std::move(mu), std::move(sigma)};
}

Tensor reparameterize(const GaussianDiag& d, const Tensor& eps) {
  check_dims("reparameterize", d.mu, eps);
  Tensor noise = eps.requires_grad() ? eps.detach() : eps;
  return add(d.mu, hadamard(d.sigma, noise));
}

Tensor log_density(const GaussianDiag& d, const Tensor& value) {
  check_dims("log_density", d.mu, value);
  check_sigma("log_density", d.sigma);
  Tensor diff = sub(value, d.mu);
  Tensor quad = divide(hadamard(diff, diff),
                       affine(hadamard(d.sigma, d.sigma), 2.0, 0.0));
  Tensor per_dim = sub(affine(log_op(d.sigma), -1.0, -kHalfLog2Pi), quad);
  return sum(per_dim);
}

Tensor kl_diag(const GaussianDiag& q, const GaussianDiag& p) {
  check_dims("kl_diag", q.mu, p.mu);
  check_sigma("kl_diag", q.sigma);
  check_sigma("kl_diag", p.sigma);
  Tensor log_ratio = sub(log_op(p.sigma), log_op(q.sigma));
  Tensor dmu = sub(q.mu, p.mu);
  Tensor num = add(hadamard(q.sigma, q.sigma), hadamard(dmu, dmu));
  Tensor den = affine(hadamard(p.sigma, p.sigma), 2.0, 0.0);
  Tensor per_dim = affine(add(log_ratio, divide(num, den)), 1.0, -0.5);
  return sum(per_dim);
}

}  // namespace sgru
