// SPDX-License-Identifier: Apache-2.0
//
// Scalar/AVX2 kernel equivalence. The SIMD variants may reassociate sums,
// so comparisons use a tight relative tolerance rather than bit equality.

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgru/kernels.hpp"

using sgru::kernels::Ops;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double denom = std::max({std::abs(a[i]), std::abs(b[i]), 1.0});
    CHECK(std::abs(a[i] - b[i]) / denom < 1e-12);
  }
}

}  // namespace

TEST_CASE("scalar kernels: basic values") {
  const Ops& k = sgru::kernels::scalar_ops();

  // identity matvec
  std::vector<double> eye{1, 0, 0, 0, 1, 0, 0, 0, 1};
  std::vector<double> x{3.0, -1.5, 2.0};
  std::vector<double> y(3);
  k.matvec(eye.data(), x.data(), y.data(), 3, 3);
  check_close(y, x);

  std::vector<double> a{1, 2}, b{3, 4}, out(2);
  k.mul(a.data(), b.data(), out.data(), 2);
  CHECK(out[0] == 3.0);
  CHECK(out[1] == 8.0);

  CHECK(k.dot(a.data(), b.data(), 2) == doctest::Approx(11.0));
  CHECK(k.sum(b.data(), 2) == doctest::Approx(7.0));
}

TEST_CASE("avx2 kernels match scalar reference on random inputs") {
  const Ops* simd = sgru::kernels::avx2_ops();
  if (!simd) {
    MESSAGE("AVX2 not available; skipping equivalence checks");
    return;
  }
  const Ops& ref = sgru::kernels::scalar_ops();
  std::mt19937_64 rng(7);

  // odd sizes exercise the tail loops
  for (int m : {1, 2, 3, 5, 8, 17}) {
    for (int n : {1, 3, 4, 7, 16, 33, 67}) {
      auto A = random_vec(static_cast<std::size_t>(m) * n, rng);
      auto x = random_vec(n, rng);
      auto g = random_vec(m, rng);

      std::vector<double> y_ref(m), y_simd(m);
      ref.matvec(A.data(), x.data(), y_ref.data(), m, n);
      simd->matvec(A.data(), x.data(), y_simd.data(), m, n);
      check_close(y_ref, y_simd);

      auto dx_ref = random_vec(n, rng);
      auto dx_simd = dx_ref;
      ref.matvec_t_acc(A.data(), g.data(), dx_ref.data(), m, n);
      simd->matvec_t_acc(A.data(), g.data(), dx_simd.data(), m, n);
      check_close(dx_ref, dx_simd);

      auto dA_ref = random_vec(A.size(), rng);
      auto dA_simd = dA_ref;
      ref.ger_acc(dA_ref.data(), g.data(), x.data(), m, n);
      simd->ger_acc(dA_simd.data(), g.data(), x.data(), m, n);
      check_close(dA_ref, dA_simd);
    }
  }

  for (int n : {1, 2, 4, 5, 31, 64, 100}) {
    auto a = random_vec(n, rng);
    auto b = random_vec(n, rng);
    std::vector<double> r1(n), r2(n);

    ref.add(a.data(), b.data(), r1.data(), n);
    simd->add(a.data(), b.data(), r2.data(), n);
    check_close(r1, r2);

    ref.sub(a.data(), b.data(), r1.data(), n);
    simd->sub(a.data(), b.data(), r2.data(), n);
    check_close(r1, r2);

    ref.mul(a.data(), b.data(), r1.data(), n);
    simd->mul(a.data(), b.data(), r2.data(), n);
    check_close(r1, r2);

    auto acc1 = random_vec(n, rng);
    auto acc2 = acc1;
    ref.mul_acc(a.data(), b.data(), acc1.data(), n);
    simd->mul_acc(a.data(), b.data(), acc2.data(), n);
    check_close(acc1, acc2);

    auto y1 = random_vec(n, rng);
    auto y2 = y1;
    ref.axpy(1.75, a.data(), y1.data(), n);
    simd->axpy(1.75, a.data(), y2.data(), n);
    check_close(y1, y2);

    const double d1 = ref.dot(a.data(), b.data(), n);
    const double d2 = simd->dot(a.data(), b.data(), n);
    CHECK(std::abs(d1 - d2) / std::max({std::abs(d1), std::abs(d2), 1.0}) < 1e-12);

    const double s1 = ref.sum(a.data(), n);
    const double s2 = simd->sum(a.data(), n);
    CHECK(std::abs(s1 - s2) / std::max({std::abs(s1), std::abs(s2), 1.0}) < 1e-12);
  }
}

TEST_CASE("backend selection") {
  CHECK(sgru::kernels::active_name() != nullptr);
  CHECK_THROWS_AS(sgru::kernels::force_backend("no-such-backend"),
                  std::invalid_argument);
  // force_backend on a valid name persists until reset
  sgru::kernels::force_backend("scalar");
  CHECK(std::string(sgru::kernels::active_name()) == "scalar");
  if (sgru::kernels::avx2_ops()) {
    sgru::kernels::force_backend("avx2");
    CHECK(std::string(sgru::kernels::active_name()) == "avx2");
  }
}
