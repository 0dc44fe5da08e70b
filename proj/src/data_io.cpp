// SPDX-License-Identifier: Apache-2.0

#include "sgru/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace sgru {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

// empty cell -> nullopt; anything non-numeric -> DataError
std::optional<double> parse_cell(const std::string& raw,
                                 const std::string& column, std::size_t row) {
  std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size())
    throw DataError("non-numeric cell '" + s + "' in column '" + column +
                    "' at data row " + std::to_string(row + 1));
  return v;
}

}  // namespace

SeriesDataset load_csv(const std::string& path, const std::string& target_col,
                       const std::vector<std::string>& covariate_cols) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path);

  std::string header;
  if (!std::getline(in, header)) throw DataError("empty file: " + path);
  std::vector<std::string> names = split_csv_line(header);
  for (auto& n : names) n = trim(n);

  auto col_index = [&](const std::string& name) -> std::size_t {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw DataError("column '" + name + "' not found in " + path);
    return static_cast<std::size_t>(it - names.begin());
  };

  const std::size_t target_idx = col_index(target_col);
  std::vector<std::size_t> cov_idx;
  for (const auto& c : covariate_cols) cov_idx.push_back(col_index(c));

  SeriesDataset ds;
  ds.target_name = target_col;
  ds.covariate_names = covariate_cols;

  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    auto cell = [&](std::size_t idx,
                    const std::string& col) -> std::optional<double> {
      if (idx >= fields.size()) return std::nullopt;
      return parse_cell(fields[idx], col, row);
    };

    std::optional<double> yv = cell(target_idx, target_col);
    std::vector<std::optional<double>> xs(cov_idx.size());
    for (std::size_t j = 0; j < cov_idx.size(); ++j)
      xs[j] = cell(cov_idx[j], covariate_cols[j]);

    if (row == 0) {
      if (!yv) throw DataError("first data row has a blank target value");
      for (std::size_t j = 0; j < xs.size(); ++j)
        if (!xs[j])
          throw DataError("first data row has a blank value in column '" +
                          covariate_cols[j] + "'");
    }

    // forward fill from the previous row
    ds.y.push_back(yv ? *yv : ds.y.back());
    std::vector<double> xrow(cov_idx.size());
    for (std::size_t j = 0; j < xs.size(); ++j)
      xrow[j] = xs[j] ? *xs[j] : ds.x.back()[j];
    ds.x.push_back(std::move(xrow));
    ++row;
  }

  if (ds.y.empty()) throw DataError("no data rows in " + path);
  return ds;
}

std::pair<SeriesDataset, Scaler> standardize(const SeriesDataset& ds,
                                             int train_len) {
  if (train_len < 1 || static_cast<std::size_t>(train_len) > ds.size())
    throw DataError("standardize: train span must be non-empty and fit the data");
  const std::size_t n = static_cast<std::size_t>(train_len);
  const std::size_t dim = ds.covariate_dim();

  Scaler s;
  s.x_mean.assign(dim, 0.0);
  s.x_std.assign(dim, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    s.y_mean += ds.y[t];
    for (std::size_t j = 0; j < dim; ++j) s.x_mean[j] += ds.x[t][j];
  }
  s.y_mean /= static_cast<double>(n);
  for (std::size_t j = 0; j < dim; ++j) s.x_mean[j] /= static_cast<double>(n);

  double y_var = 0.0;
  std::vector<double> x_var(dim, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    y_var += (ds.y[t] - s.y_mean) * (ds.y[t] - s.y_mean);
    for (std::size_t j = 0; j < dim; ++j)
      x_var[j] += (ds.x[t][j] - s.x_mean[j]) * (ds.x[t][j] - s.x_mean[j]);
  }
  s.y_std = std::sqrt(y_var / static_cast<double>(n));
  if (!(s.y_std > 0.0))
    throw DataError("standardize: target column '" + ds.target_name +
                    "' has zero variance on the train span");
  for (std::size_t j = 0; j < dim; ++j) {
    s.x_std[j] = std::sqrt(x_var[j] / static_cast<double>(n));
    if (!(s.x_std[j] > 0.0))
      throw DataError("standardize: covariate column '" +
                      ds.covariate_names[j] +
                      "' has zero variance on the train span; exclude it");
  }

  SeriesDataset out = ds;
  for (std::size_t t = 0; t < out.size(); ++t) {
    out.y[t] = (out.y[t] - s.y_mean) / s.y_std;
    for (std::size_t j = 0; j < dim; ++j)
      out.x[t][j] = (out.x[t][j] - s.x_mean[j]) / s.x_std[j];
  }
  return {std::move(out), std::move(s)};
}

std::vector<double> inverse_transform_y(const Scaler& s,
                                        const std::vector<double>& scaled) {
  std::vector<double> out(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i)
    out[i] = scaled[i] * s.y_std + s.y_mean;
  return out;
}

SeriesDataset apply_scaler(const SeriesDataset& ds, const Scaler& s) {
  if (s.x_mean.size() != ds.covariate_dim())
    throw DataError("apply_scaler: scaler covers " +
                    std::to_string(s.x_mean.size()) +
                    " covariates but dataset has " +
                    std::to_string(ds.covariate_dim()));
  SeriesDataset out = ds;
  for (std::size_t t = 0; t < out.size(); ++t) {
    out.y[t] = (out.y[t] - s.y_mean) / s.y_std;
    for (std::size_t j = 0; j < s.x_mean.size(); ++j)
      out.x[t][j] = (out.x[t][j] - s.x_mean[j]) / s.x_std[j];
  }
  return out;
}

Windows window(const SeriesDataset& ds, const SplitPlan& plan) {
  if (plan.n_train < 1 || plan.n_val < 0 || plan.n_cond < 0 ||
      plan.seq_len < 1 || plan.n_pred < 0)
    throw DataError("window: split sizes must be positive");
  const std::size_t needed = static_cast<std::size_t>(plan.n_train) +
                             plan.n_val + plan.n_cond + plan.n_pred;
  if (needed > ds.size())
    throw DataError("window: plan needs " + std::to_string(needed) +
                    " rows but dataset has " + std::to_string(ds.size()));

  auto cut = [&](std::size_t begin, std::size_t len) {
    Span s;
    s.begin = begin;
    s.y.assign(ds.y.begin() + begin, ds.y.begin() + begin + len);
    s.x.assign(ds.x.begin() + begin, ds.x.begin() + begin + len);
    return s;
  };

  Windows w;
  const int n_seq = plan.n_train / plan.seq_len;  // tail remainder dropped
  for (int i = 0; i < n_seq; ++i) {
    const std::size_t begin = static_cast<std::size_t>(i) * plan.seq_len;
    Span s = cut(begin, plan.seq_len);
    w.train.push_back({std::move(s.y), std::move(s.x), begin});
  }
  std::size_t pos = static_cast<std::size_t>(plan.n_train);
  w.val = cut(pos, plan.n_val);
  pos += plan.n_val;
  w.cond = cut(pos, plan.n_cond);
  pos += plan.n_cond;
  w.pred = cut(pos, plan.n_pred);
  return w;
}

SeriesDataset make_synthetic(std::size_t rows, std::uint64_t seed) {
  SeriesDataset ds;
  ds.target_name = "y";
  ds.covariate_names = {"sin_phase", "cos_phase"};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double phi = 0.7;
  const double innov_sd = std::sqrt(1.0 - phi * phi);  // unit-variance AR(1)
  double noise = 0.0;
  for (std::size_t t = 0; t < rows; ++t) {
    const double phase =
        2.0 * std::numbers::pi * static_cast<double>(t) / 24.0;
    noise = phi * noise + innov_sd * normal(rng);
    ds.x.push_back({std::sin(phase), std::cos(phase)});
    ds.y.push_back(std::sin(phase) + 0.3 * noise);
  }
  return ds;
}

}  // namespace sgru
