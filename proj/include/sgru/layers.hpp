// SPDX-License-Identifier: Apache-2.0
//
// Neural building blocks: MLP, deterministic GRU, stochastic GRU, and a
// standard LSTM used by the benchmark forecaster.

#pragma once

#include <random>
#include <vector>

#include "sgru/tensor.hpp"

namespace sgru {

// Positivity floor added to softplus scale heads.
inline constexpr double kScaleFloor = 1e-4;

// uniform(-1/sqrt(fan_in), +1/sqrt(fan_in))
Tensor init_weight(int rows, int cols, std::mt19937_64& rng);

// Gated cell with input, latent and recurrent weights per gate. With every
// C set to zero the cell reduces exactly to the deterministic GRU.
struct StochasticGRUCell {
  int hidden = 0, input = 0, latent = 0;
  // update gate u, reset gate r, candidate h~
  Tensor Wu, Cu, Mu, bu;
  Tensor Wr, Cr, Mr, br;
  Tensor Wh, Ch, Mh, bh;

  static StochasticGRUCell init(int hidden, int input, int latent,
                                std::mt19937_64& rng);
  std::vector<Tensor> params() const;
};

struct DeterministicGRUCell {
  int hidden = 0, input = 0;
  Tensor Wu, Mu, bu;
  Tensor Wr, Mr, br;
  Tensor Wh, Mh, bh;

  static DeterministicGRUCell init(int hidden, int input,
                                   std::mt19937_64& rng);
  std::vector<Tensor> params() const;
};

enum class Activation { kTanh, kRelu };
enum class Head { kIdentity, kSoftplus };

struct MLP {
  std::vector<Tensor> weights;  // layer i maps dims[i] -> dims[i+1]
  std::vector<Tensor> biases;
  Activation activation = Activation::kTanh;
  Head head = Head::kIdentity;

  static MLP init(const std::vector<int>& dims, Activation act, Head head,
                  std::mt19937_64& rng);
  std::vector<Tensor> params() const;
  int input_dim() const { return weights.front().cols(); }
  int output_dim() const { return weights.back().rows(); }
};

struct LSTMCell {
  int hidden = 0, input = 0;
  // input gate i, forget gate f, output gate o, candidate c~
  Tensor Wi, Mi, bi;
  Tensor Wf, Mf, bf;
  Tensor Wo, Mo, bo;
  Tensor Wc, Mc, bc;

  static LSTMCell init(int hidden, int input, std::mt19937_64& rng);
  std::vector<Tensor> params() const;
};

struct LSTMState {
  Tensor h;
  Tensor c;
};

Tensor sgru_step(const StochasticGRUCell& cell, const Tensor& h_prev,
                 const Tensor& x, const Tensor& z);
Tensor gru_step(const DeterministicGRUCell& cell, const Tensor& h_prev,
                const Tensor& x);
Tensor mlp_forward(const MLP& mlp, const Tensor& input);
LSTMState lstm_step(const LSTMCell& cell, const LSTMState& state,
                    const Tensor& x);

}  // namespace sgru
