#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "axivort/error.hpp"
#include "axivort/kernels.hpp"
#include "axivort/verify/oracles.hpp"

using namespace axivort;
using namespace axivort::kernels;
using namespace axivort::kernels::route;

namespace {
const double kPi = std::acos(-1.0);
const double kSqrtPi = std::sqrt(kPi);
}  // namespace

TEST_CASE("F tails follow the classical expansions") {
  const double s = 1e-6;
  CHECK(std::abs(eval_F(s) - (std::log(8.0 / std::sqrt(s)) - 2.0)) <= 0.01);
  CHECK(std::abs(std::pow(1e6, 1.5) * eval_F(1e6) - kPi / 2) <= 0.01);
  CHECK(eval_F_prime(1e-6) == doctest::Approx(-1.0 / (2e-6)).epsilon(0.01));
  CHECK(std::pow(1e6, 2.5) * eval_F_prime(1e6) == doctest::Approx(-3.0 * kPi / 4).epsilon(0.01));
}

TEST_CASE("F and F' in the mid range") {
  CHECK(std::abs(eval_F(4.0) - verify::oracle_F(4.0)) <= 1e-8);
  const double h = 1e-5;
  const double fd = (eval_F(4.0 + h) - eval_F(4.0 - h)) / (2 * h);
  CHECK(std::abs(eval_F_prime(4.0) - fd) <= 1e-6);
}

TEST_CASE("H tails and mid range") {
  CHECK(std::abs(eval_H(1e-4) - (1.0 - 0.75e-4)) <= 2e-3);
  CHECK(std::abs(std::pow(1e4, 1.5) * eval_H(1e4) - kSqrtPi / 4) <= 1e-3);
  CHECK(std::abs(eval_H(1.0) - verify::oracle_H(1.0)) <= 1e-8);

  CHECK(std::abs(eval_H_prime(1e-4) + 0.75) <= 1e-2);
  CHECK(std::abs(std::pow(1e4, 2.5) * eval_H_prime(1e4) + 3.0 * kSqrtPi / 8) <= 1e-2);
  const double h = 1e-5;
  const double fd = (eval_H(1.0 + h) - eval_H(1.0 - h)) / (2 * h);
  CHECK(std::abs(eval_H_prime(1.0) - fd) <= 1e-6);
}

TEST_CASE("K = tau^{3/2} H") {
  CHECK(std::abs(eval_K(1e8) - kSqrtPi / 4) <= 1e-4);
  CHECK(eval_K(1e-8) == doctest::Approx(1e-12).epsilon(0.01));
  CHECK(eval_K(1.0) == eval_H(1.0));
}

TEST_CASE("non-positive and non-finite arguments are rejected") {
  const double bad[] = {0.0, -1.0, std::numeric_limits<double>::quiet_NaN(),
                        std::numeric_limits<double>::infinity()};
  for (double x : bad) {
    CHECK_THROWS_AS(eval_F(x), DomainError);
    CHECK_THROWS_AS(eval_F_prime(x), DomainError);
    CHECK_THROWS_AS(eval_H(x), DomainError);
    CHECK_THROWS_AS(eval_H_prime(x), DomainError);
    CHECK_THROWS_AS(eval_K(x), DomainError);
  }
}

TEST_CASE("policy validation") {
  KernelEvalPolicy p;
  CHECK_NOTHROW(p.validate());
  p.small_arg_threshold = 1e5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.quad_abs_tol = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("F is strictly decreasing on log-uniform samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(std::log(1e-6), std::log(1e6));
  for (int n = 0; n < 500; ++n) {
    double a = std::exp(u(rng)), b = std::exp(u(rng));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    CHECK(eval_F(a) > eval_F(b));
  }
}

TEST_CASE("weighted sups of F, F', H, H' stay bounded") {
  double worst = 0.0;
  for (int n = 0; n <= 240; ++n) {
    const double x = std::pow(10.0, -6.0 + 12.0 * n / 240.0);
    for (double a : {0.5, 1.0, 1.5}) worst = std::max(worst, std::pow(x, a) * std::abs(eval_F(x)));
    for (double b : {1.0, 2.5}) worst = std::max(worst, std::pow(x, b) * std::abs(eval_F_prime(x)));
    for (double a : {0.0, 1.5}) worst = std::max(worst, std::pow(x, a) * std::abs(eval_H(x)));
    for (double b : {0.0, 2.5}) worst = std::max(worst, std::pow(x, b) * std::abs(eval_H_prime(x)));
  }
  CHECK(std::isfinite(worst));
  CHECK(worst < 10.0);
}

TEST_CASE("no visible seam between quadrature and tail series") {
  const KernelEvalPolicy p;
  const double tol = 10 * p.quad_abs_tol;
  CHECK(std::abs(F_quadrature(p.small_arg_threshold) - F_small(p.small_arg_threshold)) <= tol);
  CHECK(std::abs(F_quadrature(p.large_arg_threshold) - F_large(p.large_arg_threshold)) <= tol);
  CHECK(std::abs(H_quadrature(p.small_arg_threshold) - H_small(p.small_arg_threshold)) <= tol);
  CHECK(std::abs(H_quadrature(p.large_arg_threshold) - H_large(p.large_arg_threshold)) <= tol);
}
