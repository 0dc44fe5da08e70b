// SPDX-License-Identifier: Apache-2.0
//
// Diagonal-Gaussian algebra on graph tensors: reparameterized sampling,
// log-density, and the closed-form KL divergence between two diagonal
// Gaussians.

#pragma once

#include "sgru/tensor.hpp"

namespace sgru {

struct GaussianDiag {
  Tensor mu;
  Tensor sigma;  // strictly positive, same length as mu

  int dim() const { return mu.rows(); }
};

// Validates lengths and sigma positivity on current values.
GaussianDiag make_gaussian(Tensor mu, Tensor sigma);

// mu + sigma ⊙ eps. Gradient flows to mu and sigma; eps is treated as data.
Tensor reparameterize(const GaussianDiag& d, const Tensor& eps);

// sum_i [ -1/2 log(2 pi) - log sigma_i - (v_i - mu_i)^2 / (2 sigma_i^2) ]
Tensor log_density(const GaussianDiag& d, const Tensor& value);

// sum_i [ log(sp_i/sq_i) + (sq_i^2 + (muq_i - mup_i)^2) / (2 sp_i^2) - 1/2 ]
Tensor kl_diag(const GaussianDiag& q, const GaussianDiag& p);

}  // namespace sgru
