#include <cmath>
#include <random>

#include <doctest.h>

#include "axivort/biot_savart.hpp"
#include "axivort/diagnostics.hpp"
#include "axivort/error.hpp"
#include "axivort/initial_data.hpp"
#include "axivort/verify/oracles.hpp"

using namespace axivort;

namespace {

const double kPi = std::acos(-1.0);

ScalarField ring(const HalfPlaneGrid& g) {
  GaussianRing p;
  p.radius = 2.0;
  p.width = 0.8;
  p.l1_target = 1.0;
  return gaussian_ring(g, p);
}

}  // namespace

TEST_CASE("kernel_G structure") {
  CHECK(kernel_G(1.0, 0.3, 2.5, 0.3).G_r == 0.0);
  CHECK_THROWS_AS(kernel_G(1.0, 0.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(kernel_G(0.0, 0.0, 1.0, 0.0), DomainError);
}

TEST_CASE("kernel_G against the formulas with quadrature F, F'") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ur(0.05, 5.0), uz(-3.0, 3.0);
  for (int n = 0; n < 10; ++n) {
    const double r = ur(rng), z = uz(rng), rb = ur(rng), zb = uz(rng);
    const double xi2 = ((r - rb) * (r - rb) + (z - zb) * (z - zb)) / (r * rb);
    const double F = verify::oracle_F(xi2), Fp = verify::oracle_F_prime(xi2);
    const double a = 1.0 / (kPi * std::pow(r, 1.5) * std::sqrt(rb));
    const double Gr = -(z - zb) * a * Fp;
    const double Gz = (r - rb) * a * Fp + std::sqrt(rb) / (4 * kPi * std::pow(r, 1.5)) * (F - 2 * xi2 * Fp);
    const KernelG g = kernel_G(r, z, rb, zb);
    CHECK(std::abs(g.G_r - Gr) <= 1e-8 * std::max(1.0, std::abs(Gr)));
    CHECK(std::abs(g.G_z - Gz) <= 1e-8 * std::max(1.0, std::abs(Gz)));
  }
}

TEST_CASE("kernel_G is dominated by C / dist") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ur(0.01, 10.0), uz(-10.0, 10.0);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double r = ur(rng), z = uz(rng), rb = ur(rng), zb = uz(rng);
    const KernelG g = kernel_G(r, z, rb, zb);
    const double dist = std::hypot(r - rb, z - zb);
    worst = std::max(worst, (std::abs(g.G_r) + std::abs(g.G_z)) * dist);
  }
  MESSAGE("max (|G_r| + |G_z|) dist = " << worst);
  CHECK(std::isfinite(worst));
  CHECK(worst < 1.0);
}

TEST_CASE("velocity of z-even vorticity") {
  const HalfPlaneGrid g(24, 48, 8.0, 8.0);
  const ScalarField w = ring(g);
  const VelocityField u = velocity(w);
  double scale = u.sup_norm(), worst_r = 0.0, worst_z = 0.0;
  for (int i = 0; i < g.n_r(); ++i)
    for (int k = 0; k < g.n_z(); ++k) {
      const auto a = g.index(i, k), b = g.index(i, g.n_z() - 1 - k);
      worst_r = std::max(worst_r, std::abs(u.u_r[a] + u.u_r[b]));
      worst_z = std::max(worst_z, std::abs(u.u_z[a] - u.u_z[b]));
    }
  CHECK(worst_r <= 1e-13 * scale);
  CHECK(worst_z <= 1e-13 * scale);

  double moment = 0.0;
  for (int i = 0; i < g.n_r(); ++i)
    for (int k = 0; k < g.n_z(); ++k) moment += g.r(i) * u.u_r[g.index(i, k)] * w(i, k);
  moment *= g.cell_area();
  CHECK(std::abs(moment) <= 1e-10 * weighted_l1(w, 1.0) * scale);
}

TEST_CASE("table-driven and direct velocity agree") {
  const HalfPlaneGrid g(12, 24, 6.0, 6.0);
  const ScalarField w = ring(g);
  BiotSavartOptions plain;
  plain.antisymmetrize = false;
  const VelocityField a = velocity(w, plain), b = velocity_direct(w, plain);
  double worst = 0.0;
  for (std::size_t n = 0; n < a.u_r.size(); ++n) {
    worst = std::max({worst, std::abs(a.u_r[n] - b.u_r[n]), std::abs(a.u_z[n] - b.u_z[n])});
  }
  CHECK(worst <= 1e-7 * a.sup_norm());
}

TEST_CASE("a concentrated density approaches the filament velocity") {
  const Point far{1.0, 3.0};
  const KernelG exact = kernel_G(far.r, far.z, 2.0, 0.0);
  double prev = kInf;
  for (int n : {16, 32, 64}) {
    const HalfPlaneGrid g(n, 2 * n, 4.0, 4.0);
    // unit circulation spread over the four cells around (2, 0)
    std::vector<double> v(g.size(), 0.0);
    for (int i : {n / 2 - 1, n / 2})
      for (int k : {n - 1, n}) v[g.index(i, k)] = 0.25 / g.cell_area();
    VortexMeasure mu;
    mu.density = ScalarField(g, v, Quantity::omega_theta);
    const auto u = velocity_from_measure(mu, {far})[0];
    const double err = std::hypot(u[0] - exact.G_r, u[1] - exact.G_z);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-2 * std::hypot(exact.G_r, exact.G_z));
}

TEST_CASE("velocity_from_measure") {
  VortexMeasure pair;
  pair.atoms = {{2.0, 1.0, 1.0}, {2.0, -1.0, 1.0}};
  const auto u = velocity_from_measure(pair, {{0.5, 0.0}, {3.0, 0.0}, {7.0, 0.0}});
  for (const auto& v : u) CHECK(std::abs(v[0]) <= 1e-15);

  VortexMeasure one;
  one.atoms = {{1.5, 0.5, 2.0}};
  const auto v = velocity_from_measure(one, {{4.0, -2.0}})[0];
  const KernelG G = kernel_G(4.0, -2.0, 1.5, 0.5);
  CHECK(v[0] == doctest::Approx(2.0 * G.G_r));
  CHECK(v[1] == doctest::Approx(2.0 * G.G_z));
  CHECK_THROWS_AS(velocity_from_measure(one, {{1.5, 0.5}}), DomainError);

  const HalfPlaneGrid g(10, 20, 5.0, 5.0);
  VortexMeasure dens;
  dens.density = ring(g);
  const VelocityField ug = velocity(*dens.density);
  const auto at = velocity_from_measure(dens, {{g.r(3), g.z(7)}})[0];
  CHECK(at[0] == doctest::Approx(ug.u_r[g.index(3, 7)]).epsilon(1e-13));
  CHECK(at[1] == doctest::Approx(ug.u_z[g.index(3, 7)]).epsilon(1e-13));
}

TEST_CASE("stream function") {
  const HalfPlaneGrid g(32, 64, 8.0, 8.0);
  CHECK(norm_2d(stream_function(ScalarField(g, Quantity::omega_theta)), kInf) == 0.0);

  const ScalarField w = ring(g);
  const ScalarField psi = stream_function(w);
  const VelocityField u = velocity(w);
  const double hr = g.h_r(), hz = g.h_z();
  double worst = 0.0;
  for (int i = 2; i < g.n_r() - 2; ++i)
    for (int k = 2; k < g.n_z() - 2; ++k) {
      const double ur = -(psi(i, k + 1) - psi(i, k - 1)) / (2 * hz) / g.r(i);
      const double uz = (psi(i + 1, k) - psi(i - 1, k)) / (2 * hr) / g.r(i);
      worst = std::max({worst, std::abs(ur - u.u_r[g.index(i, k)]), std::abs(uz - u.u_z[g.index(i, k)])});
    }
  MESSAGE("max |grad psi / r - u| = " << worst << " against |u|_inf = " << u.sup_norm());
  CHECK(worst <= 0.05 * u.sup_norm());

  double psi_max = norm_2d(psi, kInf);
  for (int k = 0; k < g.n_z(); ++k) {
    // psi ~ r^2 at the axis: quadratic extrapolation through the first
    // cells to r = 0
    const double p0 = psi(0, k), p1 = psi(1, k), p2 = psi(2, k);
    CHECK(std::abs((15 * p0 - 10 * p1 + 3 * p2) / 8) <= 1e-2 * psi_max);
  }
}

TEST_CASE("options and tags") {
  BiotSavartOptions o;
  o.self_cell_subdiv = 1;
  CHECK_THROWS_AS(o.validate(), ConfigError);
  const HalfPlaneGrid g(4, 4, 1.0, 1.0);
  CHECK_THROWS_AS(velocity(ScalarField(g, Quantity::eta)), UsageError);
}
