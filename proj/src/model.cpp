// SPDX-License-Identifier: Apache-2.0

#include "sgru/model.hpp"

#include <cmath>
#include <numeric>

namespace sgru {

namespace {

std::vector<int> mlp_dims(int in, const MlpSpec& spec, int out) {
  std::vector<int> dims{in};
  for (int i = 0; i < spec.layers; ++i) dims.push_back(spec.width);
  dims.push_back(out);
  return dims;
}

// Split a (mean ++ raw scale) head into a diagonal Gaussian; the scale half
// goes through softplus with a small positive floor.
GaussianDiag split_head(const Tensor& out, int dim) {
  Tensor mu = slice(out, 0, dim);
  Tensor sigma = affine(softplus(slice(out, dim, dim)), 1.0, kScaleFloor);
  return {mu, sigma};
}

void check_finite(const Tensor& t, const char* what, int step) {
  for (double v : t.values())
    if (!std::isfinite(v))
      throw NumericError(std::string("elbo: non-finite ") + what +
                         " at step " + std::to_string(step));
}

}  // namespace

GenerativeParams GenerativeParams::init(const ModelDims& dims,
                                        std::mt19937_64& rng) {
  GenerativeParams g;
  g.dims = dims;
  g.prior = MLP::init(mlp_dims(dims.hidden, dims.prior, 2 * dims.latent),
                      Activation::kTanh, Head::kIdentity, rng);
  g.cell = StochasticGRUCell::init(dims.hidden, dims.input, dims.latent, rng);
  g.emission = MLP::init(mlp_dims(dims.hidden, dims.emission, 2),
                         Activation::kTanh, Head::kIdentity, rng);
  return g;
}

std::vector<Tensor> GenerativeParams::params() const {
  std::vector<Tensor> p = prior.params();
  for (Tensor& t : cell.params()) p.push_back(t);
  for (Tensor& t : emission.params()) p.push_back(t);
  return p;
}

InferenceParams InferenceParams::init(const ModelDims& dims,
                                      std::mt19937_64& rng) {
  InferenceParams i;
  i.dims = dims;
  i.gru = DeterministicGRUCell::init(dims.g, /*input=*/1, rng);
  i.posterior = MLP::init(mlp_dims(dims.g, dims.prior, 2 * dims.latent),
                          Activation::kTanh, Head::kIdentity, rng);
  return i;
}

std::vector<Tensor> InferenceParams::params() const {
  std::vector<Tensor> p = gru.params();
  for (Tensor& t : posterior.params()) p.push_back(t);
  return p;
}

GaussianDiag prior_z(const GenerativeParams& gen, const Tensor& h_prev) {
  return split_head(mlp_forward(gen.prior, h_prev), gen.dims.latent);
}

GaussianDiag posterior_z(const InferenceParams& inf, const Tensor& g_t) {
  return split_head(mlp_forward(inf.posterior, g_t), inf.dims.latent);
}

Tensor inference_step(const InferenceParams& inf, const Tensor& g_prev,
                      double y_t) {
  if (!std::isfinite(y_t))
    throw NumericError("inference_step: non-finite target value");
  return gru_step(inf.gru, g_prev, Tensor::scalar(y_t));
}

GaussianDiag emission(const GenerativeParams& gen, const Tensor& h_t) {
  return split_head(mlp_forward(gen.emission, h_t), 1);
}

ElboBreakdown elbo(const GenerativeParams& gen, const InferenceParams& inf,
                   std::span<const double> y,
                   const std::vector<std::vector<double>>& x,
                   const Tensor& h_init, const Tensor& g_init,
                   const std::vector<std::vector<double>>& eps) {
  const std::size_t steps = y.size();
  if (steps == 0) throw ShapeError("elbo: empty sequence");
  if (x.size() != steps || eps.size() != steps)
    throw ShapeError("elbo: y, x and eps lengths differ (" +
                     std::to_string(steps) + ", " + std::to_string(x.size()) +
                     ", " + std::to_string(eps.size()) + ")");

  ElboBreakdown b;
  b.recon.reserve(steps);
  b.kl.reserve(steps);

  Tensor h = h_init;
  Tensor g = g_init;
  Tensor acc;
  for (std::size_t t = 0; t < steps; ++t) {
    g = inference_step(inf, g, y[t]);
    GaussianDiag q = posterior_z(inf, g);
    Tensor z = reparameterize(q, Tensor::vector(eps[t]));
    GaussianDiag pz = prior_z(gen, h);
    Tensor h_next = sgru_step(gen.cell, h, Tensor::vector(x[t]), z);
    check_finite(h_next, "hidden state", static_cast<int>(t));

    Tensor recon_t =
        log_density(emission(gen, h_next), Tensor::scalar(y[t]));
    Tensor kl_t = kl_diag(q, pz);
    if (!std::isfinite(recon_t.value()) || !std::isfinite(kl_t.value()))
      throw NumericError("elbo: non-finite objective term at step " +
                         std::to_string(t));

    Tensor term = sub(recon_t, kl_t);
    acc = acc.defined() ? add(acc, term) : term;
    b.recon.push_back(recon_t.value());
    b.kl.push_back(kl_t.value());
    h = h_next;
  }

  b.objective = acc;
  b.h_final = h;
  b.g_final = g;
  b.total = std::accumulate(b.recon.begin(), b.recon.end(), 0.0) -
            std::accumulate(b.kl.begin(), b.kl.end(), 0.0);
  return b;
}

}  // namespace sgru
