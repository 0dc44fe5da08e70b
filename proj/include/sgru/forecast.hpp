// SPDX-License-Identifier: Apache-2.0
//
// Conditioning on observed history and autoregressive Monte-Carlo multistep
// prediction: sample z from the latent prior, advance the stochastic GRU,
// sample the emission, feed the hidden state (never the sampled target)
// forward.

#pragma once

#include <cstdint>
#include <random>

#include "sgru/data_io.hpp"
#include "sgru/model.hpp"

namespace sgru {

enum class CondLatent { kPosterior, kPrior };

struct ForecastResult {
  std::vector<std::vector<double>> paths;      // n_sims x horizon, original units
  std::vector<double> mean;                    // per-step mean of paths
  std::vector<double> levels;                  // quantile levels, ascending
  std::vector<std::vector<double>> quantiles;  // per level, horizon values
  int n_sims = 0;
  int horizon = 0;
};

// Rolls the model over the conditioning window (no parameter updates) and
// returns the final hidden state. The latent comes from the inference
// network by default; CondLatent::kPrior uses the generative prior instead.
Tensor condition(const GenerativeParams& gen, const InferenceParams& inf,
                 std::span<const double> y_cond,
                 const std::vector<std::vector<double>>& x_cond,
                 const Tensor& h_init, const Tensor& g_init,
                 std::mt19937_64& rng,
                 CondLatent mode = CondLatent::kPosterior);

// One rollout with explicit noise (standard-normal draws per step for the
// latent and the emission). Output stays in model (scaled) units. When
// h_trace is given, the hidden-state values after each step are appended.
std::vector<double> simulate_path(const GenerativeParams& gen,
                                  const Tensor& h_last,
                                  const std::vector<std::vector<double>>& x_future,
                                  const std::vector<std::vector<double>>& z_eps,
                                  std::span<const double> y_eps,
                                  std::vector<std::vector<double>>* h_trace = nullptr);

struct PathSummary {
  std::vector<double> mean;
  std::vector<std::vector<double>> quantiles;  // aligned with `levels` input
};

// Per-step mean and nearest-rank empirical quantiles.
PathSummary summarize(const std::vector<std::vector<double>>& paths,
                      std::span<const double> levels);

inline const std::vector<double> kDefaultQuantiles{0.05, 0.5, 0.95};

// Monte-Carlo forecast. Each simulation uses rng streams derived from
// (seed, simulation index), so the path set does not depend on execution
// order. Paths are inverse-transformed to original units via the scaler.
ForecastResult predict(const GenerativeParams& gen, const Tensor& h_last,
                       const std::vector<std::vector<double>>& x_future,
                       int n_sims, std::uint64_t seed, const Scaler& scaler,
                       std::span<const double> levels = kDefaultQuantiles);

}  // namespace sgru
