// SPDX-License-Identifier: Apache-2.0

#include "sgru/config.hpp"

#include <fstream>
#include <sstream>

namespace sgru {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos;
    int x = std::stoi(v, &pos);
    if (pos == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("config field '" + key + "': expected integer, got '" + v + "'");
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos;
    double x = std::stod(v, &pos);
    if (pos == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError("config field '" + key + "': expected number, got '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config field '" + key + "': expected boolean, got '" + v + "'");
}

void set_field(RunConfig& cfg, const std::string& section,
               const std::string& key, const std::string& value) {
  const std::string q = section + "." + key;
  if (section == "data") {
    if (key == "path") cfg.dataset_path = value;
    else if (key == "target") cfg.target_col = value;
    else if (key == "covariates") cfg.covariate_cols = split_list(value);
    else if (key == "data_seed") cfg.data_seed = static_cast<std::uint64_t>(to_int(q, value));
    else throw ConfigError("unknown config field '" + q + "'");
  } else if (section == "split") {
    if (key == "train") cfg.split.n_train = to_int(q, value);
    else if (key == "val") cfg.split.n_val = to_int(q, value);
    else if (key == "cond") cfg.split.n_cond = to_int(q, value);
    else if (key == "seq_len") cfg.split.seq_len = to_int(q, value);
    else if (key == "pred") cfg.split.n_pred = to_int(q, value);
    else throw ConfigError("unknown config field '" + q + "'");
  } else if (section == "model") {
    if (key == "z") cfg.dims.latent = to_int(q, value);
    else if (key == "h") cfg.dims.hidden = to_int(q, value);
    else if (key == "g") cfg.dims.g = to_int(q, value);
    else if (key == "prior_layers") cfg.dims.prior.layers = to_int(q, value);
    else if (key == "prior_width") cfg.dims.prior.width = to_int(q, value);
    else if (key == "emission_layers") cfg.dims.emission.layers = to_int(q, value);
    else if (key == "emission_width") cfg.dims.emission.width = to_int(q, value);
    else throw ConfigError("unknown config field '" + q + "'");
  } else if (section == "train") {
    if (key == "epochs") cfg.epochs = to_int(q, value);
    else if (key == "lr") cfg.lr = to_double(q, value);
    else if (key == "patience") cfg.patience = to_int(q, value);
    else if (key == "grad_clip") cfg.grad_clip = to_double(q, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(q, value));
    else throw ConfigError("unknown config field '" + q + "'");
  } else if (section == "forecast") {
    if (key == "n_sims") cfg.n_sims = to_int(q, value);
    else if (key == "cond_latent") {
      if (value == "posterior") cfg.cond_latent = CondLatent::kPosterior;
      else if (value == "prior") cfg.cond_latent = CondLatent::kPrior;
      else throw ConfigError("config field '" + q + "': expected posterior|prior");
    } else if (key == "quantiles") {
      cfg.quantiles.clear();
      for (const std::string& v : split_list(value))
        cfg.quantiles.push_back(to_double(q, v));
    } else {
      throw ConfigError("unknown config field '" + q + "'");
    }
  } else if (section == "baselines") {
    if (key == "lstm") cfg.run_lstm = to_bool(q, value);
    else if (key == "mlp") cfg.run_mlp = to_bool(q, value);
    else if (key == "lstm_hidden") cfg.lstm_hidden = to_int(q, value);
    else if (key == "lstm_epochs") cfg.lstm_epochs = to_int(q, value);
    else if (key == "mlp_hidden_layers") cfg.mlp_hidden_layers = to_int(q, value);
    else if (key == "mlp_width") cfg.mlp_width = to_int(q, value);
    else if (key == "mlp_epochs") cfg.mlp_epochs = to_int(q, value);
    else throw ConfigError("unknown config field '" + q + "'");
  } else {
    throw ConfigError("unknown config section '[" + section + "]'");
  }
}

}  // namespace

std::vector<std::string> known_profiles() {
  return {"options", "pm25", "traffic", "chickenpox", "synthetic"};
}

RunConfig profile_config(const std::string& name) {
  RunConfig c;
  c.profile = name;
  if (name == "options") {
    c.target_col = "option_price";
    c.covariate_cols = {"underlying_price"};
    c.split = {300, 30, 10, 10, 30};
    c.dims = {.input = 1, .hidden = 64, .latent = 50, .g = 64,
              .prior = {4, 64}, .emission = {4, 64}};
    c.lstm_hidden = 64;
  } else if (name == "pm25") {
    c.target_col = "pm2.5";
    c.covariate_cols = {"TEMP", "PRES", "Iws", "DEWP", "Ir", "Is"};
    c.split = {1200, 200, 10, 10, 30};
    c.dims = {.input = 6, .hidden = 64, .latent = 50, .g = 64,
              .prior = {4, 64}, .emission = {4, 64}};
    c.lstm_hidden = 64;
  } else if (name == "traffic") {
    c.target_col = "traffic_volume";
    c.covariate_cols = {"temp", "rain_1h", "snow_1h", "clouds_all"};
    c.split = {1000, 200, 20, 20, 30};
    c.dims = {.input = 4, .hidden = 128, .latent = 30, .g = 128,
              .prior = {4, 128}, .emission = {4, 128}};
    c.lstm_hidden = 128;
  } else if (name == "chickenpox") {
    c.target_col = "BUDAPEST";
    c.covariate_cols = {"PEST", "BACS", "KOMAROM", "HEVES"};
    c.split = {300, 150, 10, 10, 30};
    c.dims = {.input = 4, .hidden = 128, .latent = 50, .g = 128,
              .prior = {4, 128}, .emission = {4, 128}};
    c.lstm_hidden = 128;
  } else if (name == "synthetic") {
    c.target_col = "y";
    c.covariate_cols = {"sin_phase", "cos_phase"};
    c.split = {1000, 200, 20, 20, 30};
    c.dims = {.input = 2, .hidden = 24, .latent = 4, .g = 24,
              .prior = {2, 24}, .emission = {2, 24}};
    c.lstm_hidden = 24;
    c.epochs = 60;
    c.patience = 15;
    c.lstm_epochs = 120;
  } else {
    throw ConfigError("unknown profile '" + name + "'");
  }
  return c;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    if (section.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": key outside any section");
    set_field(cfg, section, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
  }
}

std::string render_config(const RunConfig& cfg) {
  std::ostringstream o;
  o << "# resolved configuration (profile: " << cfg.profile << ")\n";
  o << "[data]\n";
  o << "path = " << cfg.dataset_path << "\n";
  o << "target = " << cfg.target_col << "\n";
  o << "covariates = ";
  for (std::size_t i = 0; i < cfg.covariate_cols.size(); ++i)
    o << (i ? "," : "") << cfg.covariate_cols[i];
  o << "\n";
  o << "data_seed = " << cfg.data_seed << "\n";
  o << "[split]\n";
  o << "train = " << cfg.split.n_train << "\n";
  o << "val = " << cfg.split.n_val << "\n";
  o << "cond = " << cfg.split.n_cond << "\n";
  o << "seq_len = " << cfg.split.seq_len << "\n";
  o << "pred = " << cfg.split.n_pred << "\n";
  o << "[model]\n";
  o << "z = " << cfg.dims.latent << "\n";
  o << "h = " << cfg.dims.hidden << "\n";
  o << "g = " << cfg.dims.g << "\n";
  o << "prior_layers = " << cfg.dims.prior.layers << "\n";
  o << "prior_width = " << cfg.dims.prior.width << "\n";
  o << "emission_layers = " << cfg.dims.emission.layers << "\n";
  o << "emission_width = " << cfg.dims.emission.width << "\n";
  o << "[train]\n";
  o << "epochs = " << cfg.epochs << "\n";
  o << "lr = " << cfg.lr << "\n";
  o << "patience = " << cfg.patience << "\n";
  o << "grad_clip = " << cfg.grad_clip << "\n";
  o << "seed = " << cfg.seed << "\n";
  o << "[forecast]\n";
  o << "n_sims = " << cfg.n_sims << "\n";
  o << "cond_latent = "
    << (cfg.cond_latent == CondLatent::kPosterior ? "posterior" : "prior")
    << "\n";
  o << "quantiles = ";
  for (std::size_t i = 0; i < cfg.quantiles.size(); ++i)
    o << (i ? "," : "") << cfg.quantiles[i];
  o << "\n";
  o << "[baselines]\n";
  o << "lstm = " << (cfg.run_lstm ? "true" : "false") << "\n";
  o << "mlp = " << (cfg.run_mlp ? "true" : "false") << "\n";
  o << "lstm_hidden = " << cfg.lstm_hidden << "\n";
  o << "lstm_epochs = " << cfg.lstm_epochs << "\n";
  o << "mlp_hidden_layers = " << cfg.mlp_hidden_layers << "\n";
  o << "mlp_width = " << cfg.mlp_width << "\n";
  o << "mlp_epochs = " << cfg.mlp_epochs << "\n";
  return o.str();
}

void validate_config(const RunConfig& cfg, std::size_t data_rows) {
  auto positive = [](const char* field, int v) {
    if (v < 1)
      throw ConfigError(std::string("config field '") + field +
                        "' must be positive");
  };
  positive("split.train", cfg.split.n_train);
  positive("split.seq_len", cfg.split.seq_len);
  positive("split.pred", cfg.split.n_pred);
  positive("model.z", cfg.dims.latent);
  positive("model.h", cfg.dims.hidden);
  positive("model.g", cfg.dims.g);
  positive("train.epochs", cfg.epochs);
  positive("forecast.n_sims", cfg.n_sims);
  if (cfg.split.n_val < 0 || cfg.split.n_cond < 0)
    throw ConfigError("config fields 'split.val'/'split.cond' must be >= 0");
  const std::size_t needed = static_cast<std::size_t>(cfg.split.n_train) +
                             cfg.split.n_val + cfg.split.n_cond +
                             cfg.split.n_pred;
  if (needed > data_rows)
    throw ConfigError("split plan needs " + std::to_string(needed) +
                      " rows but dataset has " + std::to_string(data_rows));
}

SeriesDataset load_dataset(const RunConfig& cfg) {
  if (cfg.dataset_path.empty()) {
    if (cfg.profile != "synthetic")
      throw ConfigError("config field 'data.path' is required for profile '" +
                        cfg.profile + "'");
    const std::size_t rows = static_cast<std::size_t>(cfg.split.n_train) +
                             cfg.split.n_val + cfg.split.n_cond +
                             cfg.split.n_pred;
    return make_synthetic(rows, cfg.data_seed);
  }
  return load_csv(cfg.dataset_path, cfg.target_col, cfg.covariate_cols);
}

}  // namespace sgru
