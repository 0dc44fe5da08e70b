// SPDX-License-Identifier: Apache-2.0
//
// Baseline models: persistence algebra, MLP regression training oracle, and
// the LSTM forecaster's determinism and zero-weight behaviour.

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sgru/baselines.hpp"
#include "sgru/metrics.hpp"

using namespace sgru;

namespace {

void zero_all(std::vector<Tensor> params) {
  for (Tensor& p : params)
    for (double& v : p.mutable_values()) v = 0.0;
}

}  // namespace

TEST_CASE("ar1_forecast: persistence") {
  CHECK(ar1_forecast(5.0, 3) == std::vector<double>{5.0, 5.0, 5.0});
  CHECK_THROWS_AS(ar1_forecast(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(ar1_forecast(std::nan(""), 2), NumericError);

  // constant series: persistence is exact
  std::vector<double> truth(4, 7.0);
  CHECK(nrmse(truth, ar1_forecast(7.0, 4)) == 0.0);

  // y_t = t, last value 10, two steps ahead: truth {11, 12}
  std::vector<double> ramp{11.0, 12.0};
  auto pred = ar1_forecast(10.0, 2);
  CHECK(pred == std::vector<double>{10.0, 10.0});
  CHECK(rmse(ramp, pred) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
}

TEST_CASE("mlp regressor: zero-target oracle and pointwise contract") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> x(60, std::vector<double>(2));
  for (auto& row : x)
    for (double& v : row) v = u(rng);
  std::vector<double> y(60, 0.0);

  MlpRegressorConfig cfg;  // 3 weight layers, width 5
  auto model = fit_mlp_regressor(x, y, cfg, 11);
  auto pred = mlp_predict(model, x);
  REQUIRE(pred.size() == x.size());
  for (double p : pred) CHECK(std::abs(p) < 1e-2);

  // pointwise map: permuting rows permutes predictions identically
  std::vector<std::vector<double>> xr(x.rbegin(), x.rend());
  auto pr = mlp_predict(model, xr);
  for (std::size_t i = 0; i < pred.size(); ++i)
    CHECK(pr[i] == pred[pred.size() - 1 - i]);

  CHECK_THROWS_AS(fit_mlp_regressor({}, {}, cfg, 1), DataError);
  CHECK_THROWS_AS(fit_mlp_regressor(x, std::vector<double>(3, 0.0), cfg, 1),
                  DataError);
}

TEST_CASE("mlp regressor: learns a simple linear map") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> x(80, std::vector<double>(2));
  std::vector<double> y(80);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = {u(rng), u(rng)};
    y[i] = 0.8 * x[i][0] - 0.4 * x[i][1];
  }
  MlpRegressorConfig cfg;
  cfg.epochs = 2000;
  auto model = fit_mlp_regressor(x, y, cfg, 3);
  auto pred = mlp_predict(model, x);
  CHECK(rmse(y, pred) < 0.1);
}

TEST_CASE("lstm forecaster: determinism and zero-weight path") {
  auto ds = make_synthetic(160, 9);
  SplitPlan plan{96, 32, 8, 16, 24};
  LstmConfig cfg;
  cfg.hidden = 8;
  cfg.epochs = 20;
  cfg.patience = 20;

  auto m1 = fit_lstm_forecaster(ds, plan, cfg, 4);
  auto m2 = fit_lstm_forecaster(ds, plan, cfg, 4);
  auto w = window(ds, plan);

  auto roll_predict = [&](const LstmForecaster& m) {
    LSTMState s = lstm_zero_state(m);
    for (const Subsequence& sub : w.train) s = lstm_roll(m, s, sub.x);
    s = lstm_roll(m, s, w.val.x);
    s = lstm_roll(m, s, w.cond.x);
    return lstm_forecast(m, s, w.pred.x);
  };
  auto p1 = roll_predict(m1);
  auto p2 = roll_predict(m2);
  REQUIRE(p1.size() == 24);
  CHECK(p1 == p2);  // same seed, same path

  // zeroed model: head bias 0 makes every prediction exactly 0, while the
  // cell state decays by the half forget gate
  LstmForecaster z = m1;
  zero_all(z.cell.params());
  zero_all({z.w_out, z.b_out});
  auto pz = lstm_forecast(z, {Tensor::vector(std::vector<double>(8, 0.5)),
                              Tensor::vector(std::vector<double>(8, 1.0))},
                          w.pred.x);
  for (double v : pz) CHECK(v == 0.0);

  LSTMState s{Tensor::zeros(8), Tensor::vector(std::vector<double>(8, 1.0))};
  auto s1 = lstm_step(z.cell, s, Tensor::vector(w.pred.x[0]));
  auto s2 = lstm_step(z.cell, s1, Tensor::vector(w.pred.x[1]));
  CHECK(s1.c.values()[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s2.c.values()[0] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("lstm forecaster: fits the noiseless sinusoid reasonably") {
  // pure sinusoid with phase covariates is easy for the squared-error LSTM
  SeriesDataset ds;
  ds.target_name = "y";
  ds.covariate_names = {"s", "c"};
  for (int t = 0; t < 260; ++t) {
    const double phase = 2.0 * 3.141592653589793 * t / 24.0;
    ds.x.push_back({std::sin(phase), std::cos(phase)});
    ds.y.push_back(std::sin(phase));
  }
  SplitPlan plan{192, 32, 12, 16, 24};
  LstmConfig cfg;
  cfg.hidden = 12;
  cfg.epochs = 60;
  cfg.patience = 60;
  auto m = fit_lstm_forecaster(ds, plan, cfg, 7);
  auto w = window(ds, plan);
  LSTMState s = lstm_zero_state(m);
  for (const Subsequence& sub : w.train) s = lstm_roll(m, s, sub.x);
  s = lstm_roll(m, s, w.val.x);
  s = lstm_roll(m, s, w.cond.x);
  auto pred = lstm_forecast(m, s, w.pred.x);
  CHECK(rmse(w.pred.y, pred) < 0.35);
}
