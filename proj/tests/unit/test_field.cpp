#include <cmath>
#include <filesystem>
#include <sstream>

#include <doctest.h>

#include "axivort/diagnostics.hpp"
#include "axivort/error.hpp"
#include "axivort/field.hpp"
#include "axivort/field_io.hpp"
#include "axivort/initial_data.hpp"

using namespace axivort;

namespace {

const double kSqrtPi = std::sqrt(std::acos(-1.0));

ScalarField gaussian(const HalfPlaneGrid& g) {
  return ScalarField::sample(g, Quantity::omega_theta,
                             [](double r, double z) { return r * std::exp(-(r * r + z * z) / 4); });
}

}  // namespace

TEST_CASE("grid geometry") {
  const HalfPlaneGrid g(4, 6, 2.0, 3.0);
  CHECK(g.h_r() == 0.5);
  CHECK(g.h_z() == 1.0);
  CHECK(g.r(0) == 0.25);
  CHECK(g.z(0) == -2.5);
  CHECK(g.z(5) == 2.5);
  CHECK(g.index(1, 2) == 8);
  CHECK_THROWS_AS(HalfPlaneGrid(0, 4, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(HalfPlaneGrid(4, 4, -1.0, 1.0), ConfigError);
}

TEST_CASE("fields reject non-finite values and wrong sizes") {
  const HalfPlaneGrid g(2, 2, 1.0, 1.0);
  CHECK_THROWS_AS(ScalarField(g, {1.0, 2.0}, Quantity::omega_theta), DomainError);
  CHECK_THROWS_AS(ScalarField(g, {1.0, NAN, 0.0, 0.0}, Quantity::omega_theta), DomainError);
}

TEST_CASE("norms of simple fields") {
  const HalfPlaneGrid g(4, 4, 4.0, 2.0);  // unit cells
  const ScalarField zero(g, Quantity::omega_theta);
  for (double p : {1.0, 4.0 / 3, 2.0, kInf}) CHECK(norm_2d(zero, p) == 0.0);
  CHECK(norm_3d(zero, 1.0) == 0.0);

  std::vector<double> v(g.size(), 0.0);
  v[g.index(3, 1)] = 1.0;
  const ScalarField block(g, v, Quantity::omega_theta);
  CHECK(norm_2d(block, 1.0) == doctest::Approx(1.0));
  CHECK(norm_2d(block, 2.0) == doctest::Approx(1.0));
  CHECK(norm_2d(block, kInf) == 1.0);
  CHECK_THROWS_AS(norm_2d(block, 0.5), DomainError);
  CHECK_THROWS_AS(norm_3d(block, 0.0), DomainError);

  CHECK(mass(block) == doctest::Approx(1.0));
  CHECK(impulse(block) == doctest::Approx(g.r(3) * g.r(3)));
  CHECK(mass(zero) == 0.0);
  CHECK(impulse(zero) == 0.0);

  const ScalarField c(g, std::vector<double>(g.size(), 3.0), Quantity::omega_theta);
  CHECK(norm_3d(c, 1.0) == doctest::Approx(3.0 * 16.0 / 2 * 4.0));
}

TEST_CASE("Gaussian L1 norms converge to 4 sqrt(pi) at second order") {
  const double exact = 4 * kSqrtPi;
  double e_prev = 0.0;
  for (int n : {16, 32, 64}) {
    const HalfPlaneGrid g(n, 2 * n, 14.0, 14.0);
    const double e2 = std::abs(norm_2d(gaussian(g), 1.0) - exact);
    const ScalarField eta = ScalarField::sample(
        g, Quantity::eta, [](double r, double z) { return std::exp(-(r * r + z * z) / 4); });
    const double e3 = std::abs(norm_3d(eta, 1.0) - exact);
    CHECK(e3 == doctest::Approx(e2).epsilon(1e-9));
    if (e_prev > 0.0) CHECK(std::log2(e_prev / e2) >= 1.9);
    e_prev = e2;
  }
}

TEST_CASE("profile moments") {
  const HalfPlaneGrid g(160, 320, 16.0, 16.0);
  const ScalarField phi = profile(1.0, g);
  CHECK(mass(phi) == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(impulse(phi) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(norm_2d(profile(0.0, g), kInf) == 0.0);
}

TEST_CASE("omega <-> eta") {
  const HalfPlaneGrid g(12, 16, 6.0, 6.0);
  const ScalarField w = gaussian(g);
  const ScalarField eta = omega_to_eta(w);
  CHECK(eta.tag() == Quantity::eta);
  CHECK(eta_to_omega(eta).values() == w.values());
  CHECK(eta(3, 5) == doctest::Approx(std::exp(-(g.r(3) * g.r(3) + g.z(5) * g.z(5)) / 4)));
  CHECK(norm_3d(eta, 1.0) == doctest::Approx(norm_2d(w, 1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(omega_to_eta(eta), UsageError);
  CHECK_THROWS_AS(eta_to_omega(w), UsageError);
  CHECK_THROWS_AS(impulse(eta), UsageError);

  const ScalarField phi_eta = omega_to_eta(profile(1.0, g));
  const double c = 1.0 / (16 * kSqrtPi);
  CHECK(phi_eta(2, 7) == doctest::Approx(c * std::exp(-(g.r(2) * g.r(2) + g.z(7) * g.z(7)) / 4)));
}

TEST_CASE("self-similar rescaling") {
  const HalfPlaneGrid g(40, 80, 10.0, 10.0);
  const ScalarField w = gaussian(g);
  const ScalarField same = rescale_to_selfsimilar(w, 1.0, g);
  for (std::size_t n = 0; n < w.values().size(); ++n) {
    CHECK(same.values()[n] == doctest::Approx(w.values()[n]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(rescale_to_selfsimilar(w, 0.0, g), DomainError);

  const HalfPlaneGrid src(160, 320, 40.0, 40.0);
  const ScalarField back = rescale_to_selfsimilar(selfsimilar_field(src, 1.0, 4.0), 4.0, g);
  const double err = norm_2d(back - profile(1.0, g), 1.0) / norm_2d(profile(1.0, g), 1.0);
  CHECK(err < 1e-2);
}

TEST_CASE("measure validation") {
  VortexMeasure mu;
  mu.atoms = {{1.0, 0.0, 0.5}, {2.0, 1.0, -0.25}};
  CHECK_NOTHROW(mu.validate());
  CHECK(mu.total_variation() == 0.75);
  CHECK(mu.atomic_variation() == 0.75);
  mu.atoms.push_back({0.0, 0.0, 1.0});
  CHECK_THROWS_AS(mu.validate(), DomainError);
  VortexMeasure eta_density;
  eta_density.density = ScalarField(HalfPlaneGrid(2, 2, 1.0, 1.0), Quantity::eta);
  CHECK_THROWS_AS(eta_density.validate(), UsageError);
}

TEST_CASE("field files round-trip bit for bit") {
  const HalfPlaneGrid g(7, 9, 3.0, 2.0);
  const ScalarField w = gaussian(g);
  const auto path = std::filesystem::temp_directory_path() / "axivort_field_roundtrip.bin";
  io::write_field(path, w, 2.5);
  const io::StoredField back = io::read_field(path);
  CHECK(back.time == 2.5);
  CHECK(back.field.grid() == g);
  CHECK(back.field.tag() == Quantity::omega_theta);
  CHECK(back.field.values() == w.values());
  std::filesystem::remove(path);

  std::ostringstream csv;
  io::write_csv(csv, w);
  CHECK(csv.str().rfind("r,z,", 0) == 0);
}
