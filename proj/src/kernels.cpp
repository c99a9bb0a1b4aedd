#include "axivort/kernels.hpp"

#include <array>
#include <cmath>
#include <string>

#include "axivort/error.hpp"
#include "axivort/quadrature.hpp"

namespace axivort::kernels {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kQuarterPi = 0.25 * kPi;
constexpr double kRelFloor = 1e-15;  // below this the quadrature only chases roundoff

// W_n = int_0^{pi/2} sin^{2n}(phi) dphi and J_n = int_0^{pi/2} cos(2 phi) sin^{2n}(phi) dphi.
constexpr int kMaxTerms = 40;

struct Moments {
  std::array<double, kMaxTerms + 1> W{};
  std::array<double, kMaxTerms + 1> J{};
  Moments() {
    W[0] = 0.5 * kPi;
    for (int n = 1; n <= kMaxTerms; ++n) W[n] = W[n - 1] * (2.0 * n - 1.0) / (2.0 * n);
    for (int n = 0; n <= kMaxTerms; ++n) J[n] = -W[n] * n / (n + 1.0);
  }
};

const Moments& moments() {
  static const Moments m;
  return m;
}

void check_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + " requires a positive finite argument, got " +
                      std::to_string(x));
  }
}

// Complete elliptic integrals near k' -> 0 (logarithmic expansions), returning
// K, E at modulus k with complementary k'^2 = kp2.
struct Elliptic {
  double K, E;
};

Elliptic elliptic_near_one(double kp2) {
  constexpr int M = 7;
  const double L = -0.5 * std::log(kp2);  // ln(1/k')
  double K = 0.0;
  double E = 1.0;
  double a = 1.0;       // [(1/2)_m / m!]^2
  double b = 0.5;       // (1/2) (1/2)_m (3/2)_m / ((2)_m m!)
  double harmonic = 0.0;
  double odd = 0.0;
  double kp2m = 1.0;
  for (int m = 0; m < M; ++m) {
    if (m > 0) {
      harmonic += 1.0 / m;
      odd += 1.0 / (2.0 * m - 1.0);
      a *= ((m - 0.5) / m) * ((m - 0.5) / m);
      b *= (m - 0.5) * (m + 0.5) / ((m + 1.0) * m);
    }
    // psi(1 + m) - psi(1/2 + m)
    const double d = harmonic + 2.0 * std::log(2.0) - 2.0 * odd;
    K += a * kp2m * (L + d);
    E += b * kp2m * kp2 * (L + d - 1.0 / ((2.0 * m + 1.0) * (2.0 * m + 2.0)));
    kp2m *= kp2;
  }
  return {K, E};
}

}  // namespace

void KernelEvalPolicy::validate() const {
  if (!(small_arg_threshold > 0.0) || !(small_arg_threshold <= 1e-2)) {
    throw ConfigError("small_arg_threshold must lie in (0, 1e-2]");
  }
  if (!(large_arg_threshold >= 16.0) || !std::isfinite(large_arg_threshold)) {
    throw ConfigError("large_arg_threshold must be finite and at least 16");
  }
  if (!(quad_abs_tol > 0.0)) throw ConfigError("quad_abs_tol must be positive");
  if (quad_max_subdiv < 1) throw ConfigError("quad_max_subdiv must be at least 1");
}

namespace route {

double F_quadrature(double s, const KernelEvalPolicy& policy) {
  check_positive(s, "F");
  const double a = 0.25 * s;
  const double tol = 0.5 * policy.quad_abs_tol;
  // [0, pi/4] with sin(phi) = sqrt(a) sinh(u): integrand cos(2 phi) / cos(phi).
  const double U = std::asinh(std::sqrt(0.5 / a));
  auto inner = [a](double u) {
    const double sh2 = std::sinh(u) * std::sinh(u);
    return (1.0 - 2.0 * a * sh2) / std::sqrt(1.0 - a * sh2);
  };
  auto outer = [a](double phi) {
    const double sn = std::sin(phi);
    return std::cos(2.0 * phi) / std::sqrt(sn * sn + a);
  };
  const auto r1 = quad::integrate(inner, 0.0, U, tol, policy.quad_max_subdiv, kRelFloor);
  const auto r2 =
      quad::integrate(outer, kQuarterPi, 0.5 * kPi, tol, policy.quad_max_subdiv, kRelFloor);
  return r1.value + r2.value;
}

double F_prime_quadrature(double s, const KernelEvalPolicy& policy) {
  check_positive(s, "F'");
  const double a = 0.25 * s;
  const double tol = 0.5 * policy.quad_abs_tol;
  const double U = std::asinh(std::sqrt(0.5 / a));
  auto inner = [a](double u) {
    const double sh = std::sinh(u);
    const double ch = std::cosh(u);
    return (1.0 - 2.0 * a * sh * sh) / (std::sqrt(1.0 - a * sh * sh) * ch * ch);
  };
  auto outer = [a](double phi) {
    const double sn = std::sin(phi);
    const double q = sn * sn + a;
    return std::cos(2.0 * phi) / (q * std::sqrt(q));
  };
  const auto r1 = quad::integrate(inner, 0.0, U, 8.0 * a * tol, policy.quad_max_subdiv, kRelFloor);
  const auto r2 =
      quad::integrate(outer, kQuarterPi, 0.5 * kPi, 8.0 * tol, policy.quad_max_subdiv, kRelFloor);
  return -0.125 * (r1.value / a + r2.value);
}

double H_quadrature(double tau, const KernelEvalPolicy& policy) {
  check_positive(tau, "H");
  const double tol = 0.5 * policy.quad_abs_tol;
  // [0, pi/4] with sin(phi) = sqrt(tau) x; the Gaussian makes x > 8 negligible.
  const double X = std::min(std::sqrt(0.5 / tau), 8.0);
  auto inner = [tau](double x) {
    const double t = tau * x * x;
    return std::exp(-x * x) * (1.0 - 2.0 * t) / std::sqrt(1.0 - t);
  };
  auto outer = [tau](double phi) {
    const double sn = std::sin(phi);
    return std::exp(-sn * sn / tau) * std::cos(2.0 * phi);
  };
  const double c_outer = 2.0 / std::sqrt(kPi * tau);
  const auto r1 = quad::integrate(inner, 0.0, X, tol * kSqrtPi / 2.0, policy.quad_max_subdiv,
                                  kRelFloor);
  double part2 = 0.0;
  if (0.5 / tau < 745.0) {
    part2 = c_outer * quad::integrate(outer, kQuarterPi, 0.5 * kPi, tol / c_outer,
                                      policy.quad_max_subdiv, kRelFloor)
                          .value;
  }
  return 2.0 / kSqrtPi * r1.value + part2;
}

double H_prime_quadrature(double tau, const KernelEvalPolicy& policy) {
  check_positive(tau, "H'");
  const double tol = 0.5 * policy.quad_abs_tol;
  const double X = std::min(std::sqrt(0.5 / tau), 8.0);
  auto inner = [tau](double x) {
    const double x2 = x * x;
    const double t = tau * x2;
    return (x2 - 0.5) * std::exp(-x2) * (1.0 - 2.0 * t) / std::sqrt(1.0 - t);
  };
  auto outer = [tau](double phi) {
    const double sn2 = std::sin(phi) * std::sin(phi);
    return (sn2 / (tau * tau) - 0.5 / tau) * std::exp(-sn2 / tau) * std::cos(2.0 * phi);
  };
  const double c_outer = 2.0 / std::sqrt(kPi * tau);
  const auto r1 = quad::integrate(inner, 0.0, X, tol * tau * kSqrtPi / 2.0,
                                  policy.quad_max_subdiv, kRelFloor);
  double part2 = 0.0;
  if (0.5 / tau < 745.0) {
    part2 = c_outer * quad::integrate(outer, kQuarterPi, 0.5 * kPi, tol / c_outer,
                                      policy.quad_max_subdiv, kRelFloor)
                          .value;
  }
  return 2.0 / kSqrtPi * r1.value / tau + part2;
}

double F_small(double s) {
  const double a = 0.25 * s;
  const double k = 1.0 / std::sqrt(1.0 + a);
  const auto [K, E] = elliptic_near_one(a / (1.0 + a));
  return ((2.0 - k * k) * K - 2.0 * E) / k;
}

double F_prime_small(double s) {
  const double a = 0.25 * s;
  const double k = 1.0 / std::sqrt(1.0 + a);
  const double k2 = k * k;
  const double kp2 = a / (1.0 + a);
  const auto [K, E] = elliptic_near_one(kp2);
  const double dK = (E - kp2 * K) / (k * kp2);
  const double dE = (E - K) / k;
  const double G = (2.0 - k2) * K - 2.0 * E;
  const double dG = -2.0 * k * K + (2.0 - k2) * dK - 2.0 * dE;
  const double dFdk = (dG * k - G) / k2;
  return -0.125 * k2 * k * dFdk;
}

double F_large(double s) {
  const auto& m = moments();
  const double q = 4.0 / s;
  double coef = 1.0;  // binom(-1/2, n) q^n
  double sum = 0.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    coef *= -(n - 0.5) / n * q;
    const double term = coef * m.J[n];
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return 2.0 / std::sqrt(s) * sum;
}

double F_prime_large(double s) {
  const auto& m = moments();
  const double q = 4.0 / s;
  double coef = 1.0;
  double sum = 0.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    coef *= -(n - 0.5) / n * q;
    const double term = -(n + 0.5) * coef * m.J[n];
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return 2.0 / (s * std::sqrt(s)) * sum;
}

namespace {

// H(tau) ~ sum_n c_n (2n-1)!! / 2^n tau^n with c_n = b_n - 2 b_{n-1},
// b_n = (2n)! / (4^n n!^2).
constexpr int kSmallTerms = 8;

std::array<double, kSmallTerms> small_tau_coefficients() {
  std::array<double, kSmallTerms> out{};
  double b_prev = 0.0;
  double b = 1.0;
  double dfact = 1.0;  // (2n-1)!! / 2^n
  for (int n = 0; n < kSmallTerms; ++n) {
    if (n > 0) {
      b_prev = b;
      b *= (2.0 * n - 1.0) / (2.0 * n);
      dfact *= (2.0 * n - 1.0) / 2.0;
    }
    out[n] = (b - 2.0 * b_prev) * dfact;
  }
  return out;
}

const std::array<double, kSmallTerms>& small_tau() {
  static const auto c = small_tau_coefficients();
  return c;
}

}  // namespace

double H_small(double tau) {
  const auto& c = small_tau();
  double sum = 0.0;
  for (int n = kSmallTerms - 1; n >= 0; --n) sum = sum * tau + c[n];
  return sum;
}

double H_prime_small(double tau) {
  const auto& c = small_tau();
  double sum = 0.0;
  for (int n = kSmallTerms - 1; n >= 1; --n) sum = sum * tau + n * c[n];
  return sum;
}

double H_large(double tau) {
  const auto& m = moments();
  const double inv = 1.0 / tau;
  double fac = 1.0;  // (-1)^n tau^{-n} / n!
  double sum = 0.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    fac *= -inv / n;
    const double term = fac * m.J[n];
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return 2.0 / kSqrtPi * sum / std::sqrt(tau);
}

double H_prime_large(double tau) {
  const auto& m = moments();
  const double inv = 1.0 / tau;
  double fac = 1.0;
  double sum = 0.0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    fac *= -inv / n;
    const double term = -(n + 0.5) * fac * m.J[n];
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return 2.0 / kSqrtPi * sum / (tau * std::sqrt(tau));
}

}  // namespace route

double eval_F(double s, const KernelEvalPolicy& policy) {
  check_positive(s, "F");
  if (s < policy.small_arg_threshold) return route::F_small(s);
  if (s > policy.large_arg_threshold) return route::F_large(s);
  return route::F_quadrature(s, policy);
}

double eval_F_prime(double s, const KernelEvalPolicy& policy) {
  check_positive(s, "F'");
  if (s < policy.small_arg_threshold) return route::F_prime_small(s);
  if (s > policy.large_arg_threshold) return route::F_prime_large(s);
  return route::F_prime_quadrature(s, policy);
}

double eval_H(double tau, const KernelEvalPolicy& policy) {
  check_positive(tau, "H");
  if (tau < policy.small_arg_threshold) return route::H_small(tau);
  if (tau > policy.large_arg_threshold) return route::H_large(tau);
  return route::H_quadrature(tau, policy);
}

double eval_H_prime(double tau, const KernelEvalPolicy& policy) {
  check_positive(tau, "H'");
  if (tau < policy.small_arg_threshold) return route::H_prime_small(tau);
  if (tau > policy.large_arg_threshold) return route::H_prime_large(tau);
  return route::H_prime_quadrature(tau, policy);
}

double eval_K(double tau, const KernelEvalPolicy& policy) {
  return tau * std::sqrt(tau) * eval_H(tau, policy);
}

}  // namespace axivort::kernels
