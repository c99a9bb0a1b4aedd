#include <cmath>
#include <random>

#include <doctest.h>

#include "axivort/diagnostics.hpp"
#include "axivort/error.hpp"
#include "axivort/initial_data.hpp"
#include "axivort/semigroup.hpp"

using namespace axivort;

namespace {

const HalfPlaneGrid kGrid(48, 96, 12.0, 12.0);

ScalarField ring(const HalfPlaneGrid& g) {
  GaussianRing p;
  p.l1_target = 1.0;
  return gaussian_ring(g, p);
}

}  // namespace

TEST_CASE("time arguments") {
  const ScalarField w = ring(kGrid);
  CHECK_THROWS_AS(apply_S(-1.0, w), DomainError);
  CHECK(apply_S(0.0, w).values() == w.values());
  CHECK_THROWS_AS(apply_S(0.1 * resolution_floor(kGrid), w), ResolutionError);
  CHECK_THROWS_AS(apply_S_div(0.0, w, w), DomainError);
  CHECK_THROWS_AS(semigroup_defect(0.0, 1.0, w), DomainError);
  CHECK_THROWS_AS(SemigroupOperator(kGrid, -0.5), DomainError);
}

TEST_CASE("positivity, L1 contraction and impulse") {
  const ScalarField w = ring(kGrid);
  for (double t : {0.05, 0.5, 2.0}) {
    const ScalarField s = apply_S(t, w);
    double lo = 0.0;
    for (double v : s.values()) lo = std::min(lo, v);
    CHECK(lo >= -1e-14 * norm_2d(s, kInf));
    CHECK(norm_2d(s, 1.0) <= norm_2d(w, 1.0) * (1.0 + 1e-6));
    CHECK(impulse(s) == doctest::Approx(impulse(w)).epsilon(5e-3));
  }
}

TEST_CASE("L1 -> Linf smoothing with one constant") {
  const ScalarField w = ring(kGrid);
  double lo = kInf, hi = 0.0;
  for (double t : {0.1, 1.0, 10.0}) {
    const double c = t * norm_2d(apply_S(t, w), kInf) / norm_2d(w, 1.0);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  MESSAGE("t |S(t)w|_inf / |w|_1 in [" << lo << ", " << hi << "]");
  CHECK(hi < 1.0);
}

TEST_CASE("values vanish linearly at the axis") {
  const ScalarField s = apply_S(1.0, ring(kGrid));
  const int k = kGrid.n_z() / 2;
  const double slope = std::log(s(1, k) / s(0, k)) / std::log(kGrid.r(1) / kGrid.r(0));
  CHECK(slope == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("semigroup law") {
  const HalfPlaneGrid coarse_grid(24, 48, 12.0, 12.0);
  const ScalarField w = ring(kGrid), wc = ring(coarse_grid);
  const double fine = semigroup_defect(1.0, 1.0, w);
  const double coarse = semigroup_defect(1.0, 1.0, wc);
  CHECK(fine <= 1e-3 * norm_2d(w, 1.0));
  MESSAGE("defect order " << std::log2(coarse / fine));
  CHECK(std::log2(coarse / fine) >= 1.8);

  // The grid operators commute only up to discretization error, so the two
  // orderings agree to that order rather than to roundoff.
  const double asym_fine = std::abs(semigroup_defect(1.0, 0.5, w) - semigroup_defect(0.5, 1.0, w));
  const double asym_coarse = std::abs(semigroup_defect(1.0, 0.5, wc) - semigroup_defect(0.5, 1.0, wc));
  MESSAGE("ordering asymmetry " << asym_coarse << " -> " << asym_fine);
  CHECK(asym_fine <= 1e-5 * norm_2d(w, 1.0));
  CHECK(asym_fine < asym_coarse / 3.5);
}

TEST_CASE("divergence form agrees with S applied to a finite-difference divergence") {
  auto fr = [](double r, double z) { return r * r * std::exp(-((r - 4) * (r - 4) + z * z) / 2); };
  auto fz = [](double r, double z) { return r * z * std::exp(-((r - 4) * (r - 4) + z * z) / 2); };
  double prev = kInf;
  for (int n : {32, 64}) {
    const HalfPlaneGrid g(n, 2 * n, 12.0, 12.0);
    const ScalarField f_r = ScalarField::sample(g, Quantity::omega_theta, fr);
    const ScalarField f_z = ScalarField::sample(g, Quantity::omega_theta, fz);
    const double hr = g.h_r(), hz = g.h_z();
    // fourth-order centred differences of the exact functions
    const ScalarField div = ScalarField::sample(g, Quantity::omega_theta, [&](double r, double z) {
      const double dr = (-fr(r + 2 * hr, z) + 8 * fr(r + hr, z) - 8 * fr(r - hr, z) + fr(r - 2 * hr, z)) / (12 * hr);
      const double dz = (-fz(r, z + 2 * hz) + 8 * fz(r, z + hz) - 8 * fz(r, z - hz) + fz(r, z - 2 * hz)) / (12 * hz);
      return dr + dz;
    });
    const ScalarField a = apply_S_div(1.0, f_r, f_z), b = apply_S(1.0, div);
    const double err = norm_2d(a - b, 1.0) / norm_2d(b, 1.0);
    MESSAGE(n << ": relative L1 difference " << err);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-2);
}

TEST_CASE("S div_* smoothing with one constant") {
  const HalfPlaneGrid g(48, 96, 12.0, 12.0);
  const ScalarField f = ring(g);
  double hi = 0.0;
  for (double t : {0.05, 0.5, 5.0}) {
    const double c = std::sqrt(t) * norm_2d(apply_S_div(t, f, f), 1.0) / (2 * norm_2d(f, 1.0));
    hi = std::max(hi, c);
  }
  CHECK(hi < 2.0);
}

TEST_CASE("Gaussian domination of the kernels") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ur(0.05, 8.0), uz(-8.0, 8.0), ut(-2.0, 1.0);
  double c0 = 0.0, c1 = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double t = std::pow(10.0, ut(rng));
    const double r = ur(rng), z = uz(rng), rb = ur(rng), zb = uz(rng);
    const double d2 = (r - rb) * (r - rb) + (z - zb) * (z - zb);
    const double env = std::exp(-d2 / (5 * t));
    if (env < 1e-250) continue;
    c0 = std::max(c0, semigroup_kernel(t, r, z, rb, zb) * t / env);
    const auto a = semigroup_div_kernel(t, r, z, rb, zb);
    c1 = std::max(c1, std::hypot(a[0], a[1]) * std::pow(t, 1.5) / env);
  }
  MESSAGE("fitted constants " << c0 << ", " << c1);
  CHECK(std::isfinite(c0));
  CHECK(std::isfinite(c1));
  CHECK(c0 < 1.0);
  CHECK(c1 < 10.0);
}

TEST_CASE("linear flow of a filament") {
  VortexMeasure mu;
  mu.atoms = {{1.0, 0.0, 1.0}};
  const HalfPlaneGrid g(64, 128, 16.0, 16.0);
  const ScalarField s = apply_S_measure(1.0, mu, g);
  CHECK(mass(s) <= 1.0 + 1e-6);
  CHECK(impulse(s) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(s(3, 60) == doctest::Approx(semigroup_kernel(1.0, g.r(3), g.z(60), 1.0, 0.0)));

  // t^{1-1/p} |S(t) delta|_p does not vanish as t -> 0
  const HalfPlaneGrid fine(256, 256, 2.0, 1.0);
  const double a = 0.01 * norm_2d(apply_S_measure(0.01, mu, fine), kInf);
  const double b = 0.02 * norm_2d(apply_S_measure(0.02, mu, fine), kInf);
  CHECK(a > 0.03);
  CHECK(a == doctest::Approx(b).epsilon(0.1));
}

TEST_CASE("options") {
  SemigroupOptions o;
  o.truncation_sigmas = 0.0;
  CHECK_THROWS_AS(o.validate(), ConfigError);
}
