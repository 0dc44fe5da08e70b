// SPDX-License-Identifier: Apache-2.0
//
// Generative network (latent prior, stochastic GRU transition, Gaussian
// emission), inference network (GRU over observed targets with a Gaussian
// posterior head), and the per-sequence ELBO with one reparameterized latent
// sample per step.

#pragma once

#include <span>
#include <vector>

#include "sgru/gaussian.hpp"
#include "sgru/layers.hpp"

namespace sgru {

struct MlpSpec {
  int layers = 2;  // hidden layers
  int width = 32;  // units per hidden layer
};

struct ModelDims {
  int input = 1;   // covariate dimension
  int hidden = 16; // h_t
  int latent = 4;  // z_t
  int g = 16;      // inference hidden state g_t
  MlpSpec prior;
  MlpSpec emission;
};

struct GenerativeParams {
  MLP prior;               // hidden -> 2*latent (mean ++ raw scale)
  StochasticGRUCell cell;
  MLP emission;            // hidden -> 2 (mean, raw scale)
  ModelDims dims;

  static GenerativeParams init(const ModelDims& dims, std::mt19937_64& rng);
  std::vector<Tensor> params() const;
};

struct InferenceParams {
  DeterministicGRUCell gru;  // scalar target input, hidden size dims.g
  MLP posterior;             // g -> 2*latent
  ModelDims dims;

  static InferenceParams init(const ModelDims& dims, std::mt19937_64& rng);
  std::vector<Tensor> params() const;
};

GaussianDiag prior_z(const GenerativeParams& gen, const Tensor& h_prev);
GaussianDiag posterior_z(const InferenceParams& inf, const Tensor& g_t);
Tensor inference_step(const InferenceParams& inf, const Tensor& g_prev,
                      double y_t);
GaussianDiag emission(const GenerativeParams& gen, const Tensor& h_t);

struct ElboBreakdown {
  double total = 0.0;              // sum(recon) - sum(kl)
  std::vector<double> recon;       // per-step log-likelihood
  std::vector<double> kl;          // per-step KL, each >= 0
  Tensor objective;                // scalar graph node; maximize
  Tensor h_final;
  Tensor g_final;
};

// Single-sample SGVB estimate over a subsequence. eps holds one standard
// normal draw per step (L x latent); freezing it makes elbo deterministic.
ElboBreakdown elbo(const GenerativeParams& gen, const InferenceParams& inf,
                   std::span<const double> y,
                   const std::vector<std::vector<double>>& x,
                   const Tensor& h_init, const Tensor& g_init,
                   const std::vector<std::vector<double>>& eps);

}  // namespace sgru
