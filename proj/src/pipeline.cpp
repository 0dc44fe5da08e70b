// SPDX-License-Identifier: Apache-2.0

#include "sgru/pipeline.hpp"

#include <cstdio>
#include <fstream>

#include "sgru/baselines.hpp"
#include "sgru/svg_plot.hpp"

namespace sgru {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write output file: " + p.string());
  return f;
}

std::string dims_str(const ModelDims& d) {
  return "input=" + std::to_string(d.input) + " h=" + std::to_string(d.hidden) +
         " z=" + std::to_string(d.latent) + " g=" + std::to_string(d.g) +
         " prior=(" + std::to_string(d.prior.layers) + "," +
         std::to_string(d.prior.width) + ") emission=(" +
         std::to_string(d.emission.layers) + "," +
         std::to_string(d.emission.width) + ")";
}

bool dims_equal(const ModelDims& a, const ModelDims& b) {
  return a.input == b.input && a.hidden == b.hidden && a.latent == b.latent &&
         a.g == b.g && a.prior.layers == b.prior.layers &&
         a.prior.width == b.prior.width &&
         a.emission.layers == b.emission.layers &&
         a.emission.width == b.emission.width;
}

RunConfig resolve_against(const RunConfig& cfg, const SeriesDataset& ds) {
  RunConfig r = cfg;
  r.dims.input = static_cast<int>(ds.covariate_dim());
  validate_config(r, ds.size());
  return r;
}

std::uint64_t mix(std::uint64_t x, std::uint64_t salt) {
  x ^= salt + 0x9e3779b97f4a7c15ull + (x << 6) + (x >> 2);
  return x;
}

// Conditioning rolls over everything observed before the prediction span.
Tensor condition_on_history(const RunConfig& cfg, const Checkpoint& ck,
                            const SeriesDataset& scaled) {
  const std::size_t n_obs = static_cast<std::size_t>(cfg.split.n_train) +
                            cfg.split.n_val + cfg.split.n_cond;
  std::vector<double> y(scaled.y.begin(), scaled.y.begin() + n_obs);
  std::vector<std::vector<double>> x(scaled.x.begin(),
                                     scaled.x.begin() + n_obs);
  std::mt19937_64 rng(mix(cfg.seed, 0xc0de1ull));
  return condition(ck.gen, ck.inf, y, x, Tensor::zeros(ck.dims.hidden),
                   Tensor::zeros(ck.dims.g), rng, cfg.cond_latent);
}

std::string quantile_label(double level) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "q%02d", static_cast<int>(level * 100 + 0.5));
  return buf;
}

}  // namespace

TrainArtifacts run_train(const RunConfig& cfg,
                         const std::filesystem::path& out_dir) {
  SeriesDataset ds = load_dataset(cfg);
  RunConfig r = resolve_against(cfg, ds);
  auto [scaled, scaler] = standardize(ds, r.split.n_train);

  TrainConfig tc;
  tc.epochs = r.epochs;
  tc.lr = r.lr;
  tc.patience = r.patience;
  tc.grad_clip = r.grad_clip;
  tc.split = r.split;
  tc.dims = r.dims;
  TrainedModel tm = train(scaled, tc, r.seed);

  std::filesystem::create_directories(out_dir);
  TrainArtifacts a;
  a.report = tm.report;
  a.checkpoint = out_dir / "checkpoint.bin";
  a.training_log = out_dir / "training_log.csv";
  a.resolved_config = out_dir / "resolved_config.ini";

  save_checkpoint(tm.gen, tm.inf, scaler, a.checkpoint.string());

  auto log = open_out(a.training_log);
  log << "epoch,train_elbo,val_elbo\n";
  for (std::size_t e = 0; e < tm.report.train_elbo.size(); ++e)
    log << e << "," << num(tm.report.train_elbo[e]) << ","
        << num(tm.report.val_elbo[e]) << "\n";

  open_out(a.resolved_config) << render_config(r);
  return a;
}

ForecastOutput run_forecast_core(const RunConfig& cfg, const Checkpoint& ck) {
  SeriesDataset ds = load_dataset(cfg);
  RunConfig r = resolve_against(cfg, ds);
  if (!dims_equal(r.dims, ck.dims))
    throw ConfigError("checkpoint/config dimension mismatch: config {" +
                      dims_str(r.dims) + "} vs checkpoint {" +
                      dims_str(ck.dims) + "}");

  SeriesDataset scaled = apply_scaler(ds, ck.scaler);
  Windows w = window(scaled, r.split);
  Tensor h_last = condition_on_history(r, ck, scaled);

  ForecastOutput out;
  out.forecast = predict(ck.gen, h_last, w.pred.x, r.n_sims,
                         mix(r.seed, 0xf00dull), ck.scaler, r.quantiles);
  const std::size_t n_obs = w.pred.begin;
  const std::size_t hist_len =
      std::min<std::size_t>(n_obs, static_cast<std::size_t>(3) * r.split.n_pred);
  out.history.assign(ds.y.begin() + (n_obs - hist_len), ds.y.begin() + n_obs);
  out.truth.assign(ds.y.begin() + n_obs, ds.y.begin() + n_obs + r.split.n_pred);
  return out;
}

ForecastArtifacts run_forecast(const RunConfig& cfg,
                               const std::filesystem::path& checkpoint,
                               const std::filesystem::path& out_dir) {
  Checkpoint ck = load_checkpoint(checkpoint.string());
  ForecastOutput out = run_forecast_core(cfg, ck);

  std::filesystem::create_directories(out_dir);
  ForecastArtifacts a;
  a.csv = out_dir / "forecast.csv";
  a.svg = out_dir / "forecast.svg";

  auto f = open_out(a.csv);
  f << "step,mean";
  for (double level : out.forecast.levels) f << "," << quantile_label(level);
  f << "\n";
  for (int t = 0; t < out.forecast.horizon; ++t) {
    f << (t + 1) << "," << num(out.forecast.mean[t]);
    for (const auto& q : out.forecast.quantiles) f << "," << num(q[t]);
    f << "\n";
  }

  write_forecast_svg(a.svg.string(), out.history, out.forecast);
  return a;
}

std::filesystem::path run_evaluate(const RunConfig& cfg,
                                   const std::filesystem::path& checkpoint,
                                   const std::filesystem::path& out_dir) {
  Checkpoint ck = load_checkpoint(checkpoint.string());
  ForecastOutput out = run_forecast_core(cfg, ck);

  EvalReport report;
  report.cutoffs = default_cutoffs(out.forecast.horizon);
  report.models = {"stochastic_gru"};
  report.values.push_back(
      nrmse_at_cutoffs(out.truth, out.forecast.mean, report.cutoffs));

  std::filesystem::create_directories(out_dir);
  auto path = out_dir / "evaluate.csv";
  write_eval_report_csv(report, path);
  return path;
}

EvalReport run_benchmark_core(const RunConfig& cfg) {
  SeriesDataset ds = load_dataset(cfg);
  RunConfig r = resolve_against(cfg, ds);
  auto [scaled, scaler] = standardize(ds, r.split.n_train);
  Windows w = window(scaled, r.split);
  const std::size_t n_obs = w.pred.begin;
  std::vector<double> truth(ds.y.begin() + n_obs,
                            ds.y.begin() + n_obs + r.split.n_pred);

  EvalReport report;
  report.cutoffs = default_cutoffs(r.split.n_pred);

  // ours
  {
    TrainConfig tc;
    tc.epochs = r.epochs;
    tc.lr = r.lr;
    tc.patience = r.patience;
    tc.grad_clip = r.grad_clip;
    tc.split = r.split;
    tc.dims = r.dims;
    TrainedModel tm = train(scaled, tc, r.seed);
    Checkpoint ck{r.dims, scaler, tm.gen, tm.inf};
    Tensor h_last = condition_on_history(r, ck, scaled);
    ForecastResult fc = predict(tm.gen, h_last, w.pred.x, r.n_sims,
                                mix(r.seed, 0xf00dull), scaler, r.quantiles);
    report.models.push_back("stochastic_gru");
    report.values.push_back(nrmse_at_cutoffs(truth, fc.mean, report.cutoffs));
  }

  // persistence: last observed value, original units
  {
    std::vector<double> path = ar1_forecast(ds.y[n_obs - 1], r.split.n_pred);
    report.models.push_back("ar1");
    report.values.push_back(nrmse_at_cutoffs(truth, path, report.cutoffs));
  }

  if (r.run_lstm) {
    LstmConfig lc;
    lc.hidden = r.lstm_hidden;
    lc.epochs = r.lstm_epochs;
    lc.lr = r.lr;
    lc.grad_clip = r.grad_clip;
    lc.patience = r.patience;
    LstmForecaster lstm = fit_lstm_forecaster(scaled, r.split, lc,
                                              mix(r.seed, 0x157e11ull));
    std::vector<std::vector<double>> x_obs(scaled.x.begin(),
                                           scaled.x.begin() + n_obs);
    LSTMState state = lstm_roll(lstm, lstm_zero_state(lstm), x_obs);
    std::vector<double> path =
        inverse_transform_y(scaler, lstm_forecast(lstm, state, w.pred.x));
    report.models.push_back("lstm");
    report.values.push_back(nrmse_at_cutoffs(truth, path, report.cutoffs));
  }

  if (r.run_mlp) {
    MlpRegressorConfig mc;
    mc.hidden_layers = r.mlp_hidden_layers;
    mc.width = r.mlp_width;
    mc.epochs = r.mlp_epochs;
    mc.lr = r.lr;
    std::vector<std::vector<double>> x_train(
        scaled.x.begin(), scaled.x.begin() + r.split.n_train);
    std::vector<double> y_train(scaled.y.begin(),
                                scaled.y.begin() + r.split.n_train);
    MlpRegressor mlp = fit_mlp_regressor(x_train, y_train, mc,
                                         mix(r.seed, 0x1011ull));
    std::vector<double> path =
        inverse_transform_y(scaler, mlp_predict(mlp, w.pred.x));
    report.models.push_back("mlp");
    report.values.push_back(nrmse_at_cutoffs(truth, path, report.cutoffs));
  }

  return report;
}

std::filesystem::path run_benchmark(const RunConfig& cfg,
                                    const std::filesystem::path& out_dir) {
  EvalReport report = run_benchmark_core(cfg);
  std::filesystem::create_directories(out_dir);
  auto path = out_dir / "benchmark.csv";
  write_eval_report_csv(report, path);
  return path;
}

void write_eval_report_csv(const EvalReport& report,
                           const std::filesystem::path& path) {
  auto f = open_out(path);
  f << "model";
  for (int k : report.cutoffs) f << ",step" << k;
  f << "\n";
  for (std::size_t i = 0; i < report.models.size(); ++i) {
    f << report.models[i];
    for (double v : report.values[i]) f << "," << num(v);
    f << "\n";
  }
}

}  // namespace sgru
