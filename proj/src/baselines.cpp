// SPDX-License-Identifier: Apache-2.0

#include "sgru/baselines.hpp"

#include <cmath>
#include <limits>

#include "sgru/trainer.hpp"

namespace sgru {

std::vector<double> ar1_forecast(double y_last, int tau) {
  if (tau < 1) throw std::invalid_argument("ar1_forecast: tau must be >= 1");
  if (!std::isfinite(y_last))
    throw NumericError("ar1_forecast: non-finite last value");
  return std::vector<double>(static_cast<std::size_t>(tau), y_last);
}

// ---- MLP regression -----------------------------------------------------------

MlpRegressor fit_mlp_regressor(const std::vector<std::vector<double>>& x_train,
                               const std::vector<double>& y_train,
                               const MlpRegressorConfig& cfg,
                               std::uint64_t seed) {
  if (x_train.empty() || x_train.size() != y_train.size())
    throw DataError("fit_mlp_regressor: empty or misaligned training set");

  std::mt19937_64 rng(seed);
  std::vector<int> dims{static_cast<int>(x_train[0].size())};
  for (int i = 0; i < cfg.hidden_layers; ++i) dims.push_back(cfg.width);
  dims.push_back(1);
  MlpRegressor model{MLP::init(dims, Activation::kRelu, Head::kIdentity, rng)};

  std::vector<Tensor> params = model.net.params();
  Adam opt(params, AdamConfig{.lr = cfg.lr});
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Tensor acc;
    for (std::size_t i = 0; i < x_train.size(); ++i) {
      Tensor d = sub(mlp_forward(model.net, Tensor::vector(x_train[i])),
                     Tensor::scalar(y_train[i]));
      Tensor sq = dot(d, d);
      acc = acc.defined() ? add(acc, sq) : sq;
    }
    Tensor loss = affine(acc, 1.0 / static_cast<double>(x_train.size()), 0.0);
    opt.zero_grad();
    backward(loss);
    opt.step();
  }
  return model;
}

std::vector<double> mlp_predict(const MlpRegressor& model,
                                const std::vector<std::vector<double>>& x_future) {
  std::vector<double> out;
  out.reserve(x_future.size());
  for (const auto& x : x_future)
    out.push_back(mlp_forward(model.net, Tensor::vector(x)).values()[0]);
  return out;
}

// ---- LSTM forecaster -------------------------------------------------------------

namespace {

std::vector<Tensor> lstm_params(const LstmForecaster& m) {
  std::vector<Tensor> p = m.cell.params();
  p.push_back(m.w_out);
  p.push_back(m.b_out);
  return p;
}

Tensor lstm_head(const LstmForecaster& m, const Tensor& h) {
  return add(matvec(m.w_out, h), m.b_out);
}

}  // namespace

LSTMState lstm_zero_state(const LstmForecaster& model) {
  return {Tensor::zeros(model.cell.hidden), Tensor::zeros(model.cell.hidden)};
}

LstmForecaster fit_lstm_forecaster(const SeriesDataset& scaled,
                                   const SplitPlan& plan,
                                   const LstmConfig& cfg, std::uint64_t seed) {
  Windows w = window(scaled, plan);
  if (w.train.empty())
    throw DataError("fit_lstm_forecaster: training span yields no subsequences");

  std::mt19937_64 rng(seed);
  LstmForecaster model;
  model.cell =
      LSTMCell::init(cfg.hidden, static_cast<int>(scaled.covariate_dim()), rng);
  model.w_out = init_weight(1, cfg.hidden, rng);
  model.b_out = Tensor::zeros(1, 1, /*requires_grad=*/true);

  std::vector<Tensor> params = lstm_params(model);
  Adam opt(params, AdamConfig{.lr = cfg.lr});

  auto sse_over = [&](LSTMState& state, const std::vector<double>& y,
                      const std::vector<std::vector<double>>& x) {
    Tensor acc;
    for (std::size_t t = 0; t < y.size(); ++t) {
      state = lstm_step(model.cell, state, Tensor::vector(x[t]));
      Tensor d = sub(lstm_head(model, state.h), Tensor::scalar(y[t]));
      Tensor sq = dot(d, d);
      acc = acc.defined() ? add(acc, sq) : sq;
    }
    return acc;
  };

  double best_val = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best;
  for (const Tensor& p : params) best.push_back(p.values());
  int stall = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    LSTMState state = lstm_zero_state(model);
    for (const Subsequence& sub : w.train) {
      Tensor loss = sse_over(state, sub.y, sub.x);
      opt.zero_grad();
      backward(loss);
      clip_grad_norm(params, cfg.grad_clip);
      opt.step();
      state = {state.h.detach(), state.c.detach()};
    }

    double val = 0.0;
    if (!w.val.y.empty()) {
      LSTMState vstate = {state.h.detach(), state.c.detach()};
      val = sse_over(vstate, w.val.y, w.val.x).value();
    } else {
      LSTMState tstate = lstm_zero_state(model);
      for (const Subsequence& sub : w.train)
        val += sse_over(tstate, sub.y, sub.x).value();
    }

    if (val < best_val) {
      best_val = val;
      for (std::size_t i = 0; i < params.size(); ++i) best[i] = params[i].values();
      stall = 0;
    } else if (++stall >= cfg.patience) {
      break;
    }
  }

  for (std::size_t i = 0; i < params.size(); ++i)
    params[i].mutable_values() = best[i];
  return model;
}

LSTMState lstm_roll(const LstmForecaster& model, LSTMState state,
                    const std::vector<std::vector<double>>& x_span) {
  for (const auto& x : x_span) {
    state = lstm_step(model.cell, state, Tensor::vector(x));
    state = {state.h.detach(), state.c.detach()};
  }
  return state;
}

std::vector<double> lstm_forecast(const LstmForecaster& model, LSTMState state,
                                  const std::vector<std::vector<double>>& x_future) {
  std::vector<double> out;
  out.reserve(x_future.size());
  for (const auto& x : x_future) {
    state = lstm_step(model.cell, state, Tensor::vector(x));
    state = {state.h.detach(), state.c.detach()};
    out.push_back(lstm_head(model, state.h).values()[0]);
  }
  return out;
}

}  // namespace sgru
