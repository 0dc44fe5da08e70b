// SPDX-License-Identifier: Apache-2.0

#include "sgru/tensor.hpp"

#include <cmath>
#include <unordered_set>

#include "sgru/kernels.hpp"

namespace sgru {

namespace {

std::string shape_str(const Tensor& t) {
  return "(" + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) + ")";
}

[[noreturn]] void shape_fail(const char* op, const Tensor& a, const Tensor& b) {
  throw ShapeError(std::string(op) + ": incompatible shapes " + shape_str(a) +
                   " and " + shape_str(b));
}

void require_same_shape(const char* op, const Tensor& a, const Tensor& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) shape_fail(op, a, b);
}

void require_vector(const char* op, const Tensor& a) {
  if (a.cols() != 1)
    throw ShapeError(std::string(op) + ": expected a column vector, got " +
                     shape_str(a));
}

double stable_softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace

Tensor make_op(const char* op, int rows, int cols, std::vector<Tensor> parents,
               std::function<void(Tensor::Node&)> backprop) {
  auto n = std::make_shared<Tensor::Node>();
  n->rows = rows;
  n->cols = cols;
  n->val.resize(static_cast<std::size_t>(rows) * cols);
  n->op = op;
  bool rg = false;
  n->parents.reserve(parents.size());
  for (const Tensor& p : parents) {
    rg = rg || p.node_->requires_grad;
    n->parents.push_back(p.node_);
  }
  n->requires_grad = rg;
  if (rg) n->backprop = std::move(backprop);
  return Tensor(std::move(n));
}

// ---- Tensor basics ---------------------------------------------------------

Tensor Tensor::zeros(int rows, int cols, bool requires_grad) {
  if (rows < 1 || cols < 1)
    throw ShapeError("Tensor::zeros: dims must be >= 1");
  auto n = std::make_shared<Node>();
  n->rows = rows;
  n->cols = cols;
  n->val.assign(static_cast<std::size_t>(rows) * cols, 0.0);
  n->requires_grad = requires_grad;
  return Tensor(std::move(n));
}

Tensor Tensor::scalar(double v, bool requires_grad) {
  Tensor t = zeros(1, 1, requires_grad);
  t.node_->val[0] = v;
  return t;
}

Tensor Tensor::vector(std::vector<double> v, bool requires_grad) {
  if (v.empty()) throw ShapeError("Tensor::vector: empty vector");
  auto n = std::make_shared<Node>();
  n->rows = static_cast<int>(v.size());
  n->cols = 1;
  n->val = std::move(v);
  n->requires_grad = requires_grad;
  return Tensor(std::move(n));
}

Tensor Tensor::matrix(int rows, int cols, std::vector<double> v,
                      bool requires_grad) {
  if (rows < 1 || cols < 1 ||
      v.size() != static_cast<std::size_t>(rows) * cols)
    throw ShapeError("Tensor::matrix: value count does not match dims");
  auto n = std::make_shared<Node>();
  n->rows = rows;
  n->cols = cols;
  n->val = std::move(v);
  n->requires_grad = requires_grad;
  return Tensor(std::move(n));
}

int Tensor::rows() const { return node_->rows; }
int Tensor::cols() const { return node_->cols; }
int Tensor::size() const { return node_->size(); }

const std::vector<double>& Tensor::values() const { return node_->val; }

std::vector<double>& Tensor::mutable_values() {
  if (node_->op)
    throw std::logic_error("mutable_values: only leaf tensors are mutable");
  return node_->val;
}

double Tensor::value() const {
  if (!is_scalar())
    throw ShapeError("value: tensor is not scalar, shape " + shape_str(*this));
  return node_->val[0];
}

bool Tensor::requires_grad() const { return node_->requires_grad; }
bool Tensor::is_leaf() const { return node_->op == nullptr; }

const std::vector<double>& Tensor::grad() const {
  node_->ensure_grad();
  return node_->grad;
}

void Tensor::zero_grad() {
  node_->grad.assign(node_->val.size(), 0.0);
}

Tensor Tensor::detach() const {
  auto n = std::make_shared<Node>();
  n->rows = node_->rows;
  n->cols = node_->cols;
  n->val = node_->val;
  return Tensor(std::move(n));
}

// ---- primitives ------------------------------------------------------------

namespace {

using Node = Tensor::Node;

// Accumulate helper guarded on requires_grad.
inline bool wants(Node& p) {
  if (!p.requires_grad) return false;
  p.ensure_grad();
  return true;
}

Tensor elementwise(const char* op, const Tensor& a,
                   const std::function<double(double)>& fwd,
                   // local gradient from (input value, output value)
                   const std::function<double(double, double)>& dfdx) {
  Tensor out = make_op(op, a.rows(), a.cols(), {a}, {});
  Node* an = a.node();
  Node* on = out.node();
  for (int i = 0; i < on->size(); ++i) on->val[i] = fwd(an->val[i]);
  if (on->requires_grad) {
    on->backprop = [an, dfdx](Node& n) {
      if (!wants(*an)) return;
      for (int i = 0; i < n.size(); ++i)
        an->grad[i] += n.grad[i] * dfdx(an->val[i], n.val[i]);
    };
  }
  return out;
}

}  // namespace

Tensor matvec(const Tensor& a, const Tensor& x) {
  require_vector("matvec", x);
  if (a.cols() != x.rows()) shape_fail("matvec", a, x);
  Tensor out = make_op("matvec", a.rows(), 1, {a, x}, {});
  Node* an = a.node();
  Node* xn = x.node();
  kernels::active().matvec(an->val.data(), xn->val.data(),
                           out.node()->val.data(), a.rows(), a.cols());
  if (out.node()->requires_grad) {
    out.node()->backprop = [an, xn](Node& n) {
      const auto& k = kernels::active();
      if (wants(*an))
        k.ger_acc(an->grad.data(), n.grad.data(), xn->val.data(), an->rows,
                  an->cols);
      if (wants(*xn))
        k.matvec_t_acc(an->val.data(), n.grad.data(), xn->grad.data(), an->rows,
                       an->cols);
    };
  }
  return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape("add", a, b);
  Tensor out = make_op("add", a.rows(), a.cols(), {a, b}, {});
  Node* an = a.node();
  Node* bn = b.node();
  kernels::active().add(an->val.data(), bn->val.data(), out.node()->val.data(),
                        a.size());
  if (out.node()->requires_grad) {
    out.node()->backprop = [an, bn](Node& n) {
      const auto& k = kernels::active();
      if (wants(*an)) k.axpy(1.0, n.grad.data(), an->grad.data(), n.size());
      if (wants(*bn)) k.axpy(1.0, n.grad.data(), bn->grad.data(), n.size());
    };
  }
  return out;
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape("sub", a, b);
  Tensor out = make_op("sub", a.rows(), a.cols(), {a, b}, {});
  Node* an = a.node();
  Node* bn = b.node();
  kernels::active().sub(an->val.data(), bn->val.data(), out.node()->val.data(),
                        a.size());
  if (out.node()->requires_grad) {
    out.node()->backprop = [an, bn](Node& n) {
      const auto& k = kernels::active();
      if (wants(*an)) k.axpy(1.0, n.grad.data(), an->grad.data(), n.size());
      if (wants(*bn)) k.axpy(-1.0, n.grad.data(), bn->grad.data(), n.size());
    };
  }
  return out;
}

Tensor hadamard(const Tensor& a, const Tensor& b) {
  require_same_shape("hadamard", a, b);
  Tensor out = make_op("hadamard", a.rows(), a.cols(), {a, b}, {});
  Node* an = a.node();
  Node* bn = b.node();
  kernels::active().mul(an->val.data(), bn->val.data(), out.node()->val.data(),
                        a.size());
  if (out.node()->requires_grad) {
    out.node()->backprop = [an, bn](Node& n) {
      const auto& k = kernels::active();
      if (wants(*an)) k.mul_acc(n.grad.data(), bn->val.data(), an->grad.data(), n.size());
      if (wants(*bn)) k.mul_acc(n.grad.data(), an->val.data(), bn->grad.data(), n.size());
    };
  }
  return out;
}

Tensor divide(const Tensor& a, const Tensor& b) {
  require_same_shape("divide", a, b);
  Tensor out = make_op("divide", a.rows(), a.cols(), {a, b}, {});
  Node* an = a.node();
  Node* bn = b.node();
  Node* on = out.node();
  for (int i = 0; i < on->size(); ++i) on->val[i] = an->val[i] / bn->val[i];
  if (on->requires_grad) {
    on->backprop = [an, bn](Node& n) {
      if (wants(*an))
        for (int i = 0; i < n.size(); ++i)
          an->grad[i] += n.grad[i] / bn->val[i];
      if (wants(*bn))
        for (int i = 0; i < n.size(); ++i)
          bn->grad[i] -= n.grad[i] * n.val[i] / bn->val[i];
    };
  }
  return out;
}

Tensor neg(const Tensor& a) {
  return elementwise("neg", a, [](double x) { return -x; },
                     [](double, double) { return -1.0; });
}

Tensor sigmoid(const Tensor& a) {
  return elementwise(
      "sigmoid", a,
      [](double x) { return 1.0 / (1.0 + std::exp(-x)); },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor tanh_op(const Tensor& a) {
  return elementwise("tanh", a, [](double x) { return std::tanh(x); },
                     [](double, double y) { return 1.0 - y * y; });
}

Tensor relu(const Tensor& a) {
  return elementwise("relu", a, [](double x) { return x > 0.0 ? x : 0.0; },
                     [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

Tensor softplus(const Tensor& a) {
  return elementwise("softplus", a, stable_softplus, [](double x, double) {
    return 1.0 / (1.0 + std::exp(-x));
  });
}

Tensor exp_op(const Tensor& a) {
  return elementwise("exp", a, [](double x) { return std::exp(x); },
                     [](double, double y) { return y; });
}

Tensor log_op(const Tensor& a) {
  return elementwise("log", a, [](double x) { return std::log(x); },
                     [](double x, double) { return 1.0 / x; });
}

Tensor sum(const Tensor& a) {
  Tensor out = make_op("sum", 1, 1, {a}, {});
  Node* an = a.node();
  out.node()->val[0] = kernels::active().sum(an->val.data(), a.size());
  if (out.node()->requires_grad) {
    out.node()->backprop = [an](Node& n) {
      if (!wants(*an)) return;
      const double g = n.grad[0];
      for (int i = 0; i < an->size(); ++i) an->grad[i] += g;
    };
  }
  return out;
}

Tensor dot(const Tensor& a, const Tensor& b) {
  require_same_shape("dot", a, b);
  Tensor out = make_op("dot", 1, 1, {a, b}, {});
  Node* an = a.node();
  Node* bn = b.node();
  out.node()->val[0] =
      kernels::active().dot(an->val.data(), bn->val.data(), a.size());
  if (out.node()->requires_grad) {
    out.node()->backprop = [an, bn](Node& n) {
      const auto& k = kernels::active();
      const double g = n.grad[0];
      if (wants(*an)) k.axpy(g, bn->val.data(), an->grad.data(), an->size());
      if (wants(*bn)) k.axpy(g, an->val.data(), bn->grad.data(), bn->size());
    };
  }
  return out;
}

Tensor concat(const Tensor& a, const Tensor& b) {
  require_vector("concat", a);
  require_vector("concat", b);
  const int na = a.rows();
  const int nb = b.rows();
  Tensor out = make_op("concat", na + nb, 1, {a, b}, {});
  Node* an = a.node();
  Node* bn = b.node();
  Node* on = out.node();
  std::copy(an->val.begin(), an->val.end(), on->val.begin());
  std::copy(bn->val.begin(), bn->val.end(), on->val.begin() + na);
  if (on->requires_grad) {
    on->backprop = [an, bn, na, nb](Node& n) {
      if (wants(*an))
        for (int i = 0; i < na; ++i) an->grad[i] += n.grad[i];
      if (wants(*bn))
        for (int i = 0; i < nb; ++i) bn->grad[i] += n.grad[na + i];
    };
  }
  return out;
}

Tensor slice(const Tensor& a, int start, int len) {
  require_vector("slice", a);
  if (start < 0 || len < 1 || start + len > a.rows())
    throw ShapeError("slice: range [" + std::to_string(start) + ", " +
                     std::to_string(start + len) + ") out of bounds for " +
                     shape_str(a));
  Tensor out = make_op("slice", len, 1, {a}, {});
  Node* an = a.node();
  Node* on = out.node();
  std::copy(an->val.begin() + start, an->val.begin() + start + len,
            on->val.begin());
  if (on->requires_grad) {
    on->backprop = [an, start, len](Node& n) {
      if (!wants(*an)) return;
      for (int i = 0; i < len; ++i) an->grad[start + i] += n.grad[i];
    };
  }
  return out;
}

Tensor affine(const Tensor& a, double alpha, double beta) {
  Tensor out = make_op("affine", a.rows(), a.cols(), {a}, {});
  Node* an = a.node();
  Node* on = out.node();
  for (int i = 0; i < on->size(); ++i) on->val[i] = alpha * an->val[i] + beta;
  if (on->requires_grad) {
    on->backprop = [an, alpha](Node& n) {
      if (!wants(*an)) return;
      kernels::active().axpy(alpha, n.grad.data(), an->grad.data(), n.size());
    };
  }
  return out;
}

// ---- reverse sweep ---------------------------------------------------------

void backward(const Tensor& output) {
  if (!output.defined() || !output.is_scalar())
    throw ShapeError("backward: output must be a defined scalar");
  Node* root = output.node();

  // Iterative postorder DFS: parents of a node precede it in `order`.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  struct Frame {
    Node* n;
    std::size_t next;
  };
  std::vector<Frame> stack{{root, 0}};
  visited.insert(root);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < f.n->parents.size()) {
      Node* p = f.n->parents[f.next++].get();
      if (visited.insert(p).second) stack.push_back({p, 0});
    } else {
      order.push_back(f.n);
      stack.pop_back();
    }
  }

  // Interior gradients are scratch; leaf gradients accumulate across calls.
  for (Node* n : order)
    if (n->op && n->requires_grad) n->grad.assign(n->val.size(), 0.0);

  root->ensure_grad();
  root->grad[0] += 1.0;

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->backprop && n->requires_grad) n->backprop(*n);
  }
}

// ---- finite-difference checking -------------------------------------------

GradCheckReport grad_check(const std::function<Tensor()>& f,
                           std::span<const Tensor> leaves, double h,
                           double tol) {
  if (h <= 0.0) throw std::invalid_argument("grad_check: h must be positive");

  for (const Tensor& l : leaves) l.node()->grad.assign(l.size(), 0.0);
  Tensor out = f();
  if (!std::isfinite(out.value()))
    throw NumericError("grad_check: non-finite function value");
  backward(out);

  std::vector<std::vector<double>> analytic;
  analytic.reserve(leaves.size());
  for (const Tensor& l : leaves) {
    l.node()->ensure_grad();
    analytic.push_back(l.node()->grad);
  }

  GradCheckReport report;
  for (std::size_t li = 0; li < leaves.size(); ++li) {
    Node* n = leaves[li].node();
    for (int i = 0; i < n->size(); ++i) {
      const double v = n->val[i];
      n->val[i] = v + h;
      const double fp = f().value();
      n->val[i] = v - h;
      const double fm = f().value();
      n->val[i] = v;
      if (!std::isfinite(fp) || !std::isfinite(fm))
        throw NumericError("grad_check: non-finite value at perturbed point");
      const double num = (fp - fm) / (2.0 * h);
      const double ana = analytic[li][i];
      const double denom = std::max({std::abs(num), std::abs(ana), 1.0});
      report.max_rel_err =
          std::max(report.max_rel_err, std::abs(num - ana) / denom);
    }
  }
  report.pass = report.max_rel_err < tol;
  return report;
}

}  // namespace sgru
