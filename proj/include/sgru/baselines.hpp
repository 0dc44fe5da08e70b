// SPDX-License-Identifier: Apache-2.0
//
// Comparison models: last-value persistence, a pointwise MLP regression on
// the covariates, and an LSTM forecaster trained on squared error with the
// same windowing protocol as the stochastic model.

#pragma once

#include <cstdint>

#include "sgru/data_io.hpp"
#include "sgru/layers.hpp"

namespace sgru {

// Persistence: every future step equals the last observed value.
std::vector<double> ar1_forecast(double y_last, int tau);

struct MlpRegressorConfig {
  int hidden_layers = 2;  // "3-layer MLP" read as 3 weight layers
  int width = 5;
  int epochs = 400;
  double lr = 1e-3;
};

struct MlpRegressor {
  MLP net;
};

MlpRegressor fit_mlp_regressor(const std::vector<std::vector<double>>& x_train,
                               const std::vector<double>& y_train,
                               const MlpRegressorConfig& cfg,
                               std::uint64_t seed);
std::vector<double> mlp_predict(const MlpRegressor& model,
                                const std::vector<std::vector<double>>& x_future);

struct LstmConfig {
  int hidden = 32;
  int epochs = 300;
  double lr = 1e-3;
  double grad_clip = 10.0;
  int patience = 30;
};

struct LstmForecaster {
  LSTMCell cell;
  Tensor w_out;  // 1 x hidden
  Tensor b_out;  // 1
};

// Trains on the standardized dataset using the plan's subsequences with
// detached state carried across boundaries; keeps the best validation epoch.
LstmForecaster fit_lstm_forecaster(const SeriesDataset& scaled,
                                   const SplitPlan& plan,
                                   const LstmConfig& cfg, std::uint64_t seed);

// Advances the state over observed covariates without emitting predictions.
LSTMState lstm_roll(const LstmForecaster& model, LSTMState state,
                    const std::vector<std::vector<double>>& x_span);

std::vector<double> lstm_forecast(const LstmForecaster& model, LSTMState state,
                                  const std::vector<std::vector<double>>& x_future);

LSTMState lstm_zero_state(const LstmForecaster& model);

}  // namespace sgru
