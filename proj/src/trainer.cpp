// SPDX-License-Identifier: Apache-2.0

#include "sgru/trainer.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace sgru {

// ---- Adam --------------------------------------------------------------------

Adam::Adam(std::vector<Tensor> params, AdamConfig cfg)
    : params_(std::move(params)), cfg_(cfg) {
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const Tensor& p : params_) {
    m_.emplace_back(p.size(), 0.0);
    v_.emplace_back(p.size(), 0.0);
  }
}

void Adam::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t pi = 0; pi < params_.size(); ++pi) {
    Tensor& p = params_[pi];
    const std::vector<double>& g = p.grad();
    std::vector<double>& val = p.mutable_values();
    std::vector<double>& m = m_[pi];
    std::vector<double>& v = v_[pi];
    for (std::size_t i = 0; i < val.size(); ++i) {
      if (!std::isfinite(g[i]))
        throw NumericError("adam_step: non-finite gradient");
      m[i] = cfg_.beta1 * m[i] + (1.0 - cfg_.beta1) * g[i];
      v[i] = cfg_.beta2 * v[i] + (1.0 - cfg_.beta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      val[i] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
    }
  }
}

void Adam::zero_grad() {
  for (Tensor& p : params_) p.zero_grad();
}

double global_grad_norm(std::span<const Tensor> params) {
  double sq = 0.0;
  for (const Tensor& p : params)
    for (double g : p.grad()) sq += g * g;
  return std::sqrt(sq);
}

void clip_grad_norm(std::span<const Tensor> params, double max_norm) {
  const double norm = global_grad_norm(params);
  if (norm <= max_norm || norm == 0.0) return;
  const double scale = max_norm / norm;
  for (const Tensor& p : params) {
    auto* n = p.node();
    for (double& g : n->grad) g *= scale;
  }
}

// ---- training loop -------------------------------------------------------------

namespace {

std::vector<std::vector<double>> draw_eps(std::size_t steps, int latent,
                                          std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> eps(steps, std::vector<double>(latent));
  for (auto& row : eps)
    for (double& e : row) e = normal(rng);
  return eps;
}

std::vector<std::vector<double>> snapshot(const std::vector<Tensor>& params) {
  std::vector<std::vector<double>> s;
  s.reserve(params.size());
  for (const Tensor& p : params) s.push_back(p.values());
  return s;
}

void restore(std::vector<Tensor>& params,
             const std::vector<std::vector<double>>& s) {
  for (std::size_t i = 0; i < params.size(); ++i)
    params[i].mutable_values() = s[i];
}

}  // namespace

TrainedModel train(const SeriesDataset& scaled, const TrainConfig& cfg,
                   std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  Windows w = window(scaled, cfg.split);
  if (w.train.empty())
    throw DataError("train: training span yields no subsequences");

  std::mt19937_64 rng(seed);
  TrainedModel out{GenerativeParams::init(cfg.dims, rng),
                   InferenceParams::init(cfg.dims, rng),
                   {}};

  std::vector<Tensor> params = out.gen.params();
  for (const Tensor& p : out.inf.params()) params.push_back(p);
  Adam opt(params, AdamConfig{.lr = cfg.lr});

  double best_val = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best_params = snapshot(params);
  int best_epoch = -1;
  int stall = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Tensor h = Tensor::zeros(cfg.dims.hidden);
    Tensor g = Tensor::zeros(cfg.dims.g);
    double train_total = 0.0;

    for (std::size_t si = 0; si < w.train.size(); ++si) {
      const Subsequence& sub = w.train[si];
      auto eps = draw_eps(sub.y.size(), cfg.dims.latent, rng);
      ElboBreakdown b;
      try {
        b = elbo(out.gen, out.inf, sub.y, sub.x, h, g, eps);
        opt.zero_grad();
        backward(neg(b.objective));
        clip_grad_norm(params, cfg.grad_clip);
        opt.step();
      } catch (const NumericError& e) {
        throw NumericError(std::string(e.what()) + " (epoch " +
                           std::to_string(epoch) + ", subsequence " +
                           std::to_string(si) + ")");
      }
      train_total += b.total;
      // truncated backpropagation: carry values, cut the tape
      h = b.h_final.detach();
      g = b.g_final.detach();
    }
    out.report.train_elbo.push_back(train_total);

    double val_total = train_total;
    if (!w.val.y.empty()) {
      std::mt19937_64 vrng(seed ^ (0x9e3779b97f4a7c15ull +
                                   static_cast<std::uint64_t>(epoch)));
      auto veps = draw_eps(w.val.y.size(), cfg.dims.latent, vrng);
      ElboBreakdown vb = elbo(out.gen, out.inf, w.val.y, w.val.x, h, g, veps);
      val_total = vb.total;
    }
    out.report.val_elbo.push_back(val_total);

    if (val_total > best_val) {
      best_val = val_total;
      best_params = snapshot(params);
      best_epoch = epoch;
      stall = 0;
    } else if (++stall >= cfg.patience) {
      break;
    }
  }

  restore(params, best_params);
  out.report.best_epoch = best_epoch;
  out.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

// ---- checkpointing ---------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'S', 'G', 'R', 'U', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

nlohmann::json dims_to_json(const ModelDims& d) {
  return {{"input", d.input},
          {"hidden", d.hidden},
          {"latent", d.latent},
          {"g", d.g},
          {"prior_layers", d.prior.layers},
          {"prior_width", d.prior.width},
          {"emission_layers", d.emission.layers},
          {"emission_width", d.emission.width}};
}

ModelDims dims_from_json(const nlohmann::json& j) {
  ModelDims d;
  d.input = j.at("input");
  d.hidden = j.at("hidden");
  d.latent = j.at("latent");
  d.g = j.at("g");
  d.prior = {j.at("prior_layers"), j.at("prior_width")};
  d.emission = {j.at("emission_layers"), j.at("emission_width")};
  return d;
}

}  // namespace

void save_checkpoint(const GenerativeParams& gen, const InferenceParams& inf,
                     const Scaler& scaler, const std::string& path) {
  std::vector<Tensor> params = gen.params();
  for (const Tensor& p : inf.params()) params.push_back(p);

  nlohmann::json header;
  header["format_version"] = kFormatVersion;
  header["dims"] = dims_to_json(gen.dims);
  header["scaler"] = {{"x_mean", scaler.x_mean},
                      {"x_std", scaler.x_std},
                      {"y_mean", scaler.y_mean},
                      {"y_std", scaler.y_std}};
  nlohmann::json shapes = nlohmann::json::array();
  for (const Tensor& p : params)
    shapes.push_back({{"rows", p.rows()}, {"cols", p.cols()}});
  header["arrays"] = shapes;
  const std::string hs = header.dump();

  std::ofstream f(path, std::ios::binary);
  if (!f) throw CheckpointError("cannot write checkpoint: " + path);
  f.write(kMagic, sizeof(kMagic));
  std::uint32_t ver = kFormatVersion;
  f.write(reinterpret_cast<const char*>(&ver), sizeof(ver));
  std::uint64_t hlen = hs.size();
  f.write(reinterpret_cast<const char*>(&hlen), sizeof(hlen));
  f.write(hs.data(), static_cast<std::streamsize>(hs.size()));
  for (const Tensor& p : params)
    f.write(reinterpret_cast<const char*>(p.values().data()),
            static_cast<std::streamsize>(p.values().size() * sizeof(double)));
  if (!f) throw CheckpointError("write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CheckpointError("cannot open checkpoint: " + path);

  char magic[8];
  f.read(magic, sizeof(magic));
  if (!f || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw CheckpointError("corrupt checkpoint (bad magic): " + path);
  std::uint32_t ver = 0;
  f.read(reinterpret_cast<char*>(&ver), sizeof(ver));
  if (!f || ver != kFormatVersion)
    throw CheckpointError("unsupported checkpoint format version " +
                          std::to_string(ver) + " in " + path);
  std::uint64_t hlen = 0;
  f.read(reinterpret_cast<char*>(&hlen), sizeof(hlen));
  if (!f || hlen == 0 || hlen > (1ull << 24))
    throw CheckpointError("corrupt checkpoint (bad header length): " + path);
  std::string hs(hlen, '\0');
  f.read(hs.data(), static_cast<std::streamsize>(hlen));
  if (!f) throw CheckpointError("corrupt checkpoint (truncated header): " + path);

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(hs);
  } catch (const nlohmann::json::exception&) {
    throw CheckpointError("corrupt checkpoint (bad header JSON): " + path);
  }

  Checkpoint ck;
  ck.dims = dims_from_json(header.at("dims"));
  const auto& sj = header.at("scaler");
  ck.scaler.x_mean = sj.at("x_mean").get<std::vector<double>>();
  ck.scaler.x_std = sj.at("x_std").get<std::vector<double>>();
  ck.scaler.y_mean = sj.at("y_mean");
  ck.scaler.y_std = sj.at("y_std");

  std::mt19937_64 rng(0);
  ck.gen = GenerativeParams::init(ck.dims, rng);
  ck.inf = InferenceParams::init(ck.dims, rng);
  std::vector<Tensor> params = ck.gen.params();
  for (const Tensor& p : ck.inf.params()) params.push_back(p);

  const auto& shapes = header.at("arrays");
  if (shapes.size() != params.size())
    throw CheckpointError("corrupt checkpoint (array count mismatch): " + path);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const int rows = shapes[i].at("rows");
    const int cols = shapes[i].at("cols");
    if (rows != params[i].rows() || cols != params[i].cols())
      throw CheckpointError("corrupt checkpoint (array shape mismatch): " +
                            path);
    std::vector<double>& val = params[i].mutable_values();
    f.read(reinterpret_cast<char*>(val.data()),
           static_cast<std::streamsize>(val.size() * sizeof(double)));
    if (!f) throw CheckpointError("corrupt checkpoint (truncated data): " + path);
  }
  return ck;
}

}  // namespace sgru
