#include "axivort/verify/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace axivort::verify {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Integrand concentrated in a layer of width `scale` at the left end: split
// geometrically so every piece is resolved.
template <class Fn>
double layered(Fn f, double a, double b, double scale, double tol) {
  std::vector<double> cuts{a};
  for (double x = scale; a + x < b; x *= 4.0) cuts.push_back(a + x);
  cuts.push_back(b);
  double sum = 0.0;
  for (std::size_t n = 0; n + 1 < cuts.size(); ++n) {
    sum += gauss_kronrod<double, 61>::integrate(f, cuts[n], cuts[n + 1], 12, tol);
  }
  return sum;
}

}  // namespace

double oracle_F(double s, double tol) {
  if (!(s > 0.0)) throw std::domain_error("oracle_F: s must be positive");
  auto f = [s](double phi) { return std::cos(phi) / std::sqrt(2.0 * (1.0 - std::cos(phi)) + s); };
  return layered(f, 0.0, std::numbers::pi, std::min(0.5, std::sqrt(s)), tol);
}

double oracle_F_prime(double s, double tol) {
  if (!(s > 0.0)) throw std::domain_error("oracle_F_prime: s must be positive");
  auto f = [s](double phi) {
    const double d = 2.0 * (1.0 - std::cos(phi)) + s;
    return -0.5 * std::cos(phi) / (d * std::sqrt(d));
  };
  return layered(f, 0.0, std::numbers::pi, std::min(0.5, std::sqrt(s)), tol);
}

double oracle_H(double tau, double tol) {
  if (!(tau > 0.0)) throw std::domain_error("oracle_H: tau must be positive");
  auto f = [tau](double phi) {
    const double sn = std::sin(phi);
    return std::exp(-sn * sn / tau) * std::cos(2.0 * phi);
  };
  const double half = layered(f, 0.0, std::numbers::pi / 2, std::min(0.5, std::sqrt(tau)), tol);
  return 2.0 * half / std::sqrt(std::numbers::pi * tau);
}

double oracle_heat3d(const std::function<double(double, double)>& omega0, double t, double r,
                     double z, double rb_max, double zb_min, double zb_max) {
  const double pi = std::numbers::pi;
  auto over_theta = [&](double rb, double zb) {
    auto g = [&](double th) {
      const double sn = std::sin(th / 2);
      const double d2 = (r - rb) * (r - rb) + (z - zb) * (z - zb) + 4.0 * r * rb * sn * sn;
      return std::exp(-d2 / (4.0 * t)) * std::cos(th);
    };
    return 2.0 * gauss_kronrod<double, 61>::integrate(g, 0.0, pi, 15, 1e-13);
  };
  auto over_zb = [&](double rb) {
    auto h = [&](double zb) { return over_theta(rb, zb) * omega0(rb, zb) * rb; };
    return gauss_kronrod<double, 31>::integrate(h, zb_min, zb_max, 10, 1e-12);
  };
  const double v = gauss_kronrod<double, 31>::integrate(over_zb, 0.0, rb_max, 10, 1e-12);
  return v / std::pow(4.0 * pi * t, 1.5);
}

}  // namespace axivort::verify
