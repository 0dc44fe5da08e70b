// SPDX-License-Identifier: Apache-2.0
//
// Reverse-mode automatic differentiation over dense 1-D/2-D float64 tensors.
// Values are computed eagerly; each op node records its parents and a local
// backward rule. backward() on a scalar output sweeps the tape in reverse
// topological order and accumulates gradients into requires-grad leaves.

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sgru {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(int rows, int cols = 1, bool requires_grad = false);
  static Tensor scalar(double v, bool requires_grad = false);
  // Column vector.
  static Tensor vector(std::vector<double> v, bool requires_grad = false);
  // Row-major matrix.
  static Tensor matrix(int rows, int cols, std::vector<double> v,
                       bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  int rows() const;
  int cols() const;
  int size() const;
  bool is_scalar() const { return size() == 1; }

  const std::vector<double>& values() const;
  // Leaf-only mutation hook for the optimizer and grad checking.
  std::vector<double>& mutable_values();
  double value() const;  // scalar tensors

  bool requires_grad() const;
  bool is_leaf() const;
  // Zero-filled until the first backward touches this node.
  const std::vector<double>& grad() const;
  void zero_grad();

  // Value copy with no tape history and no gradient requirement.
  Tensor detach() const;

  struct Node;
  Node* node() const { return node_.get(); }

 private:
  explicit Tensor(std::shared_ptr<Node> n) : node_(std::move(n)) {}
  std::shared_ptr<Node> node_;

  friend Tensor make_op(const char* op, int rows, int cols,
                        std::vector<Tensor> parents,
                        std::function<void(Node&)> backprop);
};

struct Tensor::Node {
  int rows = 0;
  int cols = 0;
  std::vector<double> val;
  std::vector<double> grad;  // allocated on demand
  bool requires_grad = false;
  const char* op = nullptr;  // null for leaves
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backprop;

  int size() const { return rows * cols; }
  void ensure_grad() {
    if (grad.empty()) grad.assign(val.size(), 0.0);
  }
};

// ---- primitives ------------------------------------------------------------

Tensor matvec(const Tensor& a, const Tensor& x);
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor hadamard(const Tensor& a, const Tensor& b);
Tensor divide(const Tensor& a, const Tensor& b);
Tensor neg(const Tensor& a);
Tensor sigmoid(const Tensor& a);
Tensor tanh_op(const Tensor& a);
Tensor relu(const Tensor& a);
Tensor softplus(const Tensor& a);
Tensor exp_op(const Tensor& a);
Tensor log_op(const Tensor& a);
Tensor sum(const Tensor& a);                       // scalar
Tensor dot(const Tensor& a, const Tensor& b);      // scalar
Tensor concat(const Tensor& a, const Tensor& b);   // vectors
Tensor slice(const Tensor& a, int start, int len); // vectors
// Elementwise constant affine map alpha*a + beta.
Tensor affine(const Tensor& a, double alpha, double beta);

// ---- reverse sweep ---------------------------------------------------------

// Accumulates d(output)/d(leaf) into every reachable requires-grad node.
// output must be scalar.
void backward(const Tensor& output);

// ---- finite-difference checking -------------------------------------------

struct GradCheckReport {
  double max_rel_err = 0.0;
  bool pass = false;
};

// Compares backward gradients of f() against central finite differences for
// every coordinate of every listed leaf. f must rebuild its graph from the
// leaves' current values on each call.
GradCheckReport grad_check(const std::function<Tensor()>& f,
                           std::span<const Tensor> leaves, double h,
                           double tol);

}  // namespace sgru
