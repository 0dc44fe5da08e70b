// SPDX-License-Identifier: Apache-2.0
//
// Autodiff engine tests: frozen hand-computed values, finite-difference
// oracles for every primitive, and the backward-sweep contracts.

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "sgru/tensor.hpp"

using namespace sgru;

namespace {

Tensor random_leaf(int n, std::mt19937_64& rng, double lo = -2.0,
                   double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return Tensor::vector(std::move(v), /*requires_grad=*/true);
}

}  // namespace

TEST_CASE("primitive forward values") {
  CHECK(sigmoid(Tensor::scalar(0.0)).value() == doctest::Approx(0.5));

  // identity matvec leaves the vector unchanged
  Tensor I = Tensor::matrix(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  Tensor v = Tensor::vector({0.7, -2.25, 3.125});
  Tensor out = matvec(I, v);
  for (int i = 0; i < 3; ++i) CHECK(out.values()[i] == v.values()[i]);

  Tensor h = hadamard(Tensor::vector({1, 2}), Tensor::vector({3, 4}));
  CHECK(h.values()[0] == 3.0);
  CHECK(h.values()[1] == 8.0);

  CHECK(softplus(Tensor::scalar(0.0)).value() ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));
  // softplus stays finite and accurate far into both tails
  CHECK(softplus(Tensor::scalar(800.0)).value() == doctest::Approx(800.0));
  CHECK(softplus(Tensor::scalar(-800.0)).value() == doctest::Approx(0.0));

  Tensor c = concat(Tensor::vector({1, 2}), Tensor::vector({3}));
  REQUIRE(c.size() == 3);
  CHECK(c.values()[2] == 3.0);
  Tensor s = slice(c, 1, 2);
  CHECK(s.values()[0] == 2.0);
  CHECK(s.values()[1] == 3.0);

  CHECK(affine(Tensor::vector({1, 2}), 2.0, -1.0).values()[1] == 3.0);
  CHECK(dot(Tensor::vector({1, 2}), Tensor::vector({3, 4})).value() == 11.0);
  CHECK(sum(Tensor::vector({1, 2, 3})).value() == 6.0);
}

TEST_CASE("backward: frozen examples") {
  // f(x) = x*x at x=3 -> grad 6 (matches (f(x+h)-f(x-h))/2h)
  Tensor x = Tensor::scalar(3.0, true);
  Tensor f = hadamard(x, x);
  backward(f);
  CHECK(x.grad()[0] == doctest::Approx(6.0).epsilon(1e-12));

  // constant: leaf unused -> grad stays zero
  Tensor y = Tensor::scalar(1.5, true);
  Tensor c = Tensor::scalar(4.0);
  backward(add(c, Tensor::scalar(0.0)));
  CHECK((y.grad().empty() || y.grad()[0] == 0.0));

  // sigma'(0) = 0.25
  Tensor z = Tensor::scalar(0.0, true);
  backward(sigmoid(z));
  CHECK(z.grad()[0] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("backward: fan-in accumulates, repeated sweep is bitwise stable") {
  Tensor x = Tensor::scalar(2.0, true);
  // f = x*x + 3x uses x through two branches
  Tensor f = add(hadamard(x, x), affine(x, 3.0, 0.0));
  backward(f);
  const double g1 = x.grad()[0];
  CHECK(g1 == doctest::Approx(7.0).epsilon(1e-12));

  x.zero_grad();
  backward(f);
  CHECK(x.grad()[0] == g1);  // bitwise identical after reset

  // without reset, gradients accumulate
  backward(f);
  CHECK(x.grad()[0] == doctest::Approx(2.0 * g1).epsilon(1e-12));
}

TEST_CASE("backward is linear in the objective") {
  std::mt19937_64 rng(11);
  Tensor x = random_leaf(4, rng);
  auto f = [&] { return sum(hadamard(x, sigmoid(x))); };
  auto g = [&] { return dot(x, tanh_op(x)); };
  const double a = 1.7, b = -0.4;

  x.zero_grad();
  backward(f());
  std::vector<double> gf = x.grad();
  x.zero_grad();
  backward(g());
  std::vector<double> gg = x.grad();
  x.zero_grad();
  backward(add(affine(f(), a, 0.0), affine(g(), b, 0.0)));
  for (int i = 0; i < 4; ++i)
    CHECK(x.grad()[i] == doctest::Approx(a * gf[i] + b * gg[i]).epsilon(1e-10));
}

TEST_CASE("backward rejects non-scalar outputs") {
  Tensor x = Tensor::vector({1, 2}, true);
  CHECK_THROWS_AS(backward(add(x, x)), ShapeError);
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(add(Tensor::vector({1, 2}), Tensor::vector({1, 2, 3})),
                  ShapeError);
  CHECK_THROWS_AS(matvec(Tensor::matrix(2, 2, {1, 0, 0, 1}),
                         Tensor::vector({1, 2, 3})),
                  ShapeError);
  CHECK_THROWS_AS(slice(Tensor::vector({1, 2}), 1, 5), ShapeError);
  CHECK_THROWS_AS(Tensor::matrix(2, 2, {1, 2, 3}), ShapeError);
}

TEST_CASE("grad_check: frozen examples") {
  // sum of squares at [1,2,3]: analytic gradient 2x
  Tensor p = Tensor::vector({1, 2, 3}, true);
  auto sumsq = [&] { return sum(hadamard(p, p)); };
  auto rep = grad_check(sumsq, std::span<const Tensor>(&p, 1), 1e-5, 1e-6);
  CHECK(rep.pass);
  CHECK(rep.max_rel_err < 1e-6);

  // constant function: both gradients zero
  auto konst = [] { return Tensor::scalar(2.5); };
  auto rep2 = grad_check(konst, std::span<const Tensor>(&p, 1), 1e-5, 1e-6);
  CHECK(rep2.pass);
  CHECK(rep2.max_rel_err == 0.0);
}

TEST_CASE("grad_check: every primitive at random points") {
  std::mt19937_64 rng(42);
  int checks = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Tensor a = random_leaf(3, rng);
    Tensor b = random_leaf(3, rng, 0.2, 2.0);  // positive: safe for log/divide
    Tensor W = Tensor::matrix(2, 3, random_leaf(6, rng).values(), true);
    std::vector<Tensor> leaves{a, b, W};

    std::vector<std::function<Tensor()>> fns{
        [&] { return sum(matvec(W, a)); },
        [&] { return sum(add(a, b)); },
        [&] { return sum(sub(a, b)); },
        [&] { return sum(hadamard(a, b)); },
        [&] { return sum(divide(a, b)); },
        [&] { return sum(neg(a)); },
        [&] { return sum(sigmoid(a)); },
        [&] { return sum(tanh_op(a)); },
        [&] { return sum(softplus(a)); },
        [&] { return sum(exp_op(a)); },
        [&] { return sum(log_op(b)); },
        [&] { return dot(a, b); },
        [&] { return sum(concat(a, b)); },
        [&] { return sum(slice(concat(a, b), 1, 4)); },
        [&] { return sum(affine(a, 1.3, -0.2)); },
    };
    // one function per trial keeps the full sweep fast while covering each
    // primitive at many distinct random points
    auto& f = fns[static_cast<std::size_t>(trial) % fns.size()];
    auto rep = grad_check(f, leaves, 1e-5, 1e-5);
    CHECK(rep.pass);
    ++checks;
  }
  CHECK(checks == 100);
  // relu separately, away from the kink
  Tensor r = Tensor::vector({0.5, -0.75, 1.25}, true);
  auto frelu = [&] { return sum(hadamard(relu(r), r)); };
  CHECK(grad_check(frelu, std::span<const Tensor>(&r, 1), 1e-5, 1e-5).pass);
}

TEST_CASE("detach cuts the tape") {
  Tensor x = Tensor::scalar(2.0, true);
  Tensor d = hadamard(x, x).detach();
  CHECK_FALSE(d.requires_grad());
  CHECK(d.is_leaf());
  backward(hadamard(d, Tensor::scalar(1.0)));
  CHECK((x.grad().empty() || x.grad()[0] == 0.0));
}

TEST_CASE("mutable_values is leaf-only") {
  Tensor x = Tensor::vector({1, 2}, true);
  CHECK_NOTHROW(x.mutable_values());
  Tensor y = add(x, x);
  CHECK_THROWS(y.mutable_values());
}
