// SPDX-License-Identifier: Apache-2.0

#include "sgru/forecast.hpp"

#include <algorithm>
#include <cmath>

namespace sgru {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t sim,
                           std::uint64_t purpose) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(sim * 2 + purpose)));
}

}  // namespace

Tensor condition(const GenerativeParams& gen, const InferenceParams& inf,
                 std::span<const double> y_cond,
                 const std::vector<std::vector<double>>& x_cond,
                 const Tensor& h_init, const Tensor& g_init,
                 std::mt19937_64& rng, CondLatent mode) {
  if (y_cond.empty())
    throw std::invalid_argument("condition: conditioning window is empty");
  if (x_cond.size() != y_cond.size())
    throw ShapeError("condition: y and x lengths differ (" +
                     std::to_string(y_cond.size()) + " vs " +
                     std::to_string(x_cond.size()) + ")");

  std::normal_distribution<double> normal(0.0, 1.0);
  Tensor h = h_init;
  Tensor g = g_init;
  for (std::size_t t = 0; t < y_cond.size(); ++t) {
    GaussianDiag zdist;
    if (mode == CondLatent::kPosterior) {
      g = inference_step(inf, g, y_cond[t]).detach();
      zdist = posterior_z(inf, g);
    } else {
      zdist = prior_z(gen, h);
    }
    std::vector<double> eps(gen.dims.latent);
    for (double& e : eps) e = normal(rng);
    Tensor z = reparameterize(zdist, Tensor::vector(std::move(eps)));
    h = sgru_step(gen.cell, h, Tensor::vector(x_cond[t]), z).detach();
  }
  return h;
}

std::vector<double> simulate_path(const GenerativeParams& gen,
                                  const Tensor& h_last,
                                  const std::vector<std::vector<double>>& x_future,
                                  const std::vector<std::vector<double>>& z_eps,
                                  std::span<const double> y_eps,
                                  std::vector<std::vector<double>>* h_trace) {
  const std::size_t tau = x_future.size();
  if (tau == 0) throw std::invalid_argument("simulate_path: empty horizon");
  if (z_eps.size() != tau || y_eps.size() != tau)
    throw ShapeError("simulate_path: noise length does not match horizon");

  std::vector<double> path(tau);
  Tensor h = h_last;
  for (std::size_t t = 0; t < tau; ++t) {
    GaussianDiag pz = prior_z(gen, h);
    Tensor z = reparameterize(pz, Tensor::vector(z_eps[t]));
    h = sgru_step(gen.cell, h, Tensor::vector(x_future[t]), z).detach();
    GaussianDiag em = emission(gen, h);
    path[t] = em.mu.values()[0] + em.sigma.values()[0] * y_eps[t];
    if (h_trace) h_trace->push_back(h.values());
  }
  return path;
}

PathSummary summarize(const std::vector<std::vector<double>>& paths,
                      std::span<const double> levels) {
  if (paths.empty()) throw std::invalid_argument("summarize: no paths");
  const std::size_t tau = paths[0].size();
  for (const auto& p : paths)
    if (p.size() != tau) throw ShapeError("summarize: ragged paths");

  PathSummary s;
  s.mean.assign(tau, 0.0);
  for (const auto& p : paths)
    for (std::size_t t = 0; t < tau; ++t) s.mean[t] += p[t];
  for (double& m : s.mean) m /= static_cast<double>(paths.size());

  const std::size_t n = paths.size();
  std::vector<double> col(n);
  s.quantiles.assign(levels.size(), std::vector<double>(tau));
  for (std::size_t t = 0; t < tau; ++t) {
    for (std::size_t i = 0; i < n; ++i) col[i] = paths[i][t];
    std::sort(col.begin(), col.end());
    for (std::size_t li = 0; li < levels.size(); ++li) {
      // nearest rank
      auto rank = static_cast<std::ptrdiff_t>(
          std::ceil(levels[li] * static_cast<double>(n))) - 1;
      rank = std::clamp<std::ptrdiff_t>(rank, 0, static_cast<std::ptrdiff_t>(n) - 1);
      s.quantiles[li][t] = col[static_cast<std::size_t>(rank)];
    }
  }
  return s;
}

ForecastResult predict(const GenerativeParams& gen, const Tensor& h_last,
                       const std::vector<std::vector<double>>& x_future,
                       int n_sims, std::uint64_t seed, const Scaler& scaler,
                       std::span<const double> levels) {
  if (n_sims < 1) throw std::invalid_argument("predict: n_sims must be >= 1");
  const std::size_t tau = x_future.size();
  if (tau == 0) throw std::invalid_argument("predict: horizon must be >= 1");

  ForecastResult r;
  r.n_sims = n_sims;
  r.horizon = static_cast<int>(tau);
  r.levels.assign(levels.begin(), levels.end());
  r.paths.reserve(static_cast<std::size_t>(n_sims));

  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 0; s < n_sims; ++s) {
    auto zrng = stream_rng(seed, static_cast<std::uint64_t>(s), 0);
    auto yrng = stream_rng(seed, static_cast<std::uint64_t>(s), 1);
    std::vector<std::vector<double>> z_eps(
        tau, std::vector<double>(gen.dims.latent));
    std::vector<double> y_eps(tau);
    for (auto& row : z_eps)
      for (double& e : row) e = normal(zrng);
    for (double& e : y_eps) e = normal(yrng);
    std::vector<double> path = simulate_path(gen, h_last, x_future, z_eps, y_eps);
    r.paths.push_back(inverse_transform_y(scaler, path));
  }

  PathSummary s = summarize(r.paths, levels);
  r.mean = std::move(s.mean);
  r.quantiles = std::move(s.quantiles);
  return r;
}

}  // namespace sgru
