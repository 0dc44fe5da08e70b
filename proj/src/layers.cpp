// SPDX-License-Identifier: Apache-2.0

#include "sgru/layers.hpp"

#include <cmath>

namespace sgru {

namespace {

void require_dim(const char* op, const char* what, int got, int want) {
  if (got != want)
    throw ShapeError(std::string(op) + ": " + what + " has dim " +
                     std::to_string(got) + ", expected " +
                     std::to_string(want));
}

}  // namespace

Tensor init_weight(int rows, int cols, std::mt19937_64& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
  std::uniform_real_distribution<double> u(-bound, bound);
  std::vector<double> v(static_cast<std::size_t>(rows) * cols);
  for (double& x : v) x = u(rng);
  return Tensor::matrix(rows, cols, std::move(v), /*requires_grad=*/true);
}

// ---- stochastic GRU ---------------------------------------------------------

StochasticGRUCell StochasticGRUCell::init(int hidden, int input, int latent,
                                          std::mt19937_64& rng) {
  StochasticGRUCell c;
  c.hidden = hidden;
  c.input = input;
  c.latent = latent;
  auto gate = [&](Tensor& W, Tensor& C, Tensor& M, Tensor& b) {
    W = init_weight(hidden, input, rng);
    C = init_weight(hidden, latent, rng);
    M = init_weight(hidden, hidden, rng);
    b = Tensor::zeros(hidden, 1, /*requires_grad=*/true);
  };
  gate(c.Wu, c.Cu, c.Mu, c.bu);
  gate(c.Wr, c.Cr, c.Mr, c.br);
  gate(c.Wh, c.Ch, c.Mh, c.bh);
  return c;
}

std::vector<Tensor> StochasticGRUCell::params() const {
  return {Wu, Cu, Mu, bu, Wr, Cr, Mr, br, Wh, Ch, Mh, bh};
}

Tensor sgru_step(const StochasticGRUCell& cell, const Tensor& h_prev,
                 const Tensor& x, const Tensor& z) {
  require_dim("sgru_step", "h_prev", h_prev.rows(), cell.hidden);
  require_dim("sgru_step", "x", x.rows(), cell.input);
  require_dim("sgru_step", "z", z.rows(), cell.latent);

  auto preact = [&](const Tensor& W, const Tensor& C, const Tensor& M,
                    const Tensor& b) {
    return add(add(matvec(W, x), matvec(C, z)), add(matvec(M, h_prev), b));
  };
  Tensor u = sigmoid(preact(cell.Wu, cell.Cu, cell.Mu, cell.bu));
  Tensor r = sigmoid(preact(cell.Wr, cell.Cr, cell.Mr, cell.br));
  // reset applied after the recurrent projection
  Tensor cand = tanh_op(add(add(matvec(cell.Wh, x), matvec(cell.Ch, z)),
                            add(hadamard(r, matvec(cell.Mh, h_prev)), cell.bh)));
  Tensor one_minus_u = affine(u, -1.0, 1.0);
  return add(hadamard(u, h_prev), hadamard(one_minus_u, cand));
}

// ---- deterministic GRU -------------------------------------------------------

DeterministicGRUCell DeterministicGRUCell::init(int hidden, int input,
                                                std::mt19937_64& rng) {
  DeterministicGRUCell c;
  c.hidden = hidden;
  c.input = input;
  auto gate = [&](Tensor& W, Tensor& M, Tensor& b) {
    W = init_weight(hidden, input, rng);
    M = init_weight(hidden, hidden, rng);
    b = Tensor::zeros(hidden, 1, /*requires_grad=*/true);
  };
  gate(c.Wu, c.Mu, c.bu);
  gate(c.Wr, c.Mr, c.br);
  gate(c.Wh, c.Mh, c.bh);
  return c;
}

std::vector<Tensor> DeterministicGRUCell::params() const {
  return {Wu, Mu, bu, Wr, Mr, br, Wh, Mh, bh};
}

Tensor gru_step(const DeterministicGRUCell& cell, const Tensor& h_prev,
                const Tensor& x) {
  require_dim("gru_step", "h_prev", h_prev.rows(), cell.hidden);
  require_dim("gru_step", "x", x.rows(), cell.input);

  Tensor u = sigmoid(add(matvec(cell.Wu, x), add(matvec(cell.Mu, h_prev), cell.bu)));
  Tensor r = sigmoid(add(matvec(cell.Wr, x), add(matvec(cell.Mr, h_prev), cell.br)));
  Tensor cand = tanh_op(
      add(matvec(cell.Wh, x), add(hadamard(r, matvec(cell.Mh, h_prev)), cell.bh)));
  return add(hadamard(u, h_prev), hadamard(affine(u, -1.0, 1.0), cand));
}

// ---- MLP ---------------------------------------------------------------------

MLP MLP::init(const std::vector<int>& dims, Activation act, Head head,
              std::mt19937_64& rng) {
  if (dims.size() < 2)
    throw ShapeError("MLP::init: need at least input and output dims");
  MLP m;
  m.activation = act;
  m.head = head;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    m.weights.push_back(init_weight(dims[i + 1], dims[i], rng));
    m.biases.push_back(Tensor::zeros(dims[i + 1], 1, /*requires_grad=*/true));
  }
  return m;
}

std::vector<Tensor> MLP::params() const {
  std::vector<Tensor> p;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    p.push_back(weights[i]);
    p.push_back(biases[i]);
  }
  return p;
}

Tensor mlp_forward(const MLP& mlp, const Tensor& input) {
  require_dim("mlp_forward", "input", input.rows(), mlp.input_dim());
  Tensor h = input;
  for (std::size_t i = 0; i < mlp.weights.size(); ++i) {
    h = add(matvec(mlp.weights[i], h), mlp.biases[i]);
    const bool last = (i + 1 == mlp.weights.size());
    if (!last)
      h = mlp.activation == Activation::kTanh ? tanh_op(h) : relu(h);
  }
  if (mlp.head == Head::kSoftplus) h = softplus(h);
  return h;
}

// ---- LSTM ----------------------------------------------------------------------

LSTMCell LSTMCell::init(int hidden, int input, std::mt19937_64& rng) {
  LSTMCell c;
  c.hidden = hidden;
  c.input = input;
  auto gate = [&](Tensor& W, Tensor& M, Tensor& b) {
    W = init_weight(hidden, input, rng);
    M = init_weight(hidden, hidden, rng);
    b = Tensor::zeros(hidden, 1, /*requires_grad=*/true);
  };
  gate(c.Wi, c.Mi, c.bi);
  gate(c.Wf, c.Mf, c.bf);
  gate(c.Wo, c.Mo, c.bo);
  gate(c.Wc, c.Mc, c.bc);
  return c;
}

std::vector<Tensor> LSTMCell::params() const {
  return {Wi, Mi, bi, Wf, Mf, bf, Wo, Mo, bo, Wc, Mc, bc};
}

LSTMState lstm_step(const LSTMCell& cell, const LSTMState& state,
                    const Tensor& x) {
  require_dim("lstm_step", "h", state.h.rows(), cell.hidden);
  require_dim("lstm_step", "c", state.c.rows(), cell.hidden);
  require_dim("lstm_step", "x", x.rows(), cell.input);

  auto preact = [&](const Tensor& W, const Tensor& M, const Tensor& b) {
    return add(matvec(W, x), add(matvec(M, state.h), b));
  };
  Tensor i = sigmoid(preact(cell.Wi, cell.Mi, cell.bi));
  Tensor f = sigmoid(preact(cell.Wf, cell.Mf, cell.bf));
  Tensor o = sigmoid(preact(cell.Wo, cell.Mo, cell.bo));
  Tensor cand = tanh_op(preact(cell.Wc, cell.Mc, cell.bc));
  Tensor c_next = add(hadamard(f, state.c), hadamard(i, cand));
  Tensor h_next = hadamard(o, tanh_op(c_next));
  return {h_next, c_next};
}

}  // namespace sgru
