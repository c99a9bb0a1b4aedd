#include <cmath>

#include <doctest.h>

#include "axivort/diagnostics.hpp"
#include "axivort/error.hpp"
#include "axivort/initial_data.hpp"
#include "axivort/parallel.hpp"

using namespace axivort;

TEST_CASE("self-similar distance") {
  const HalfPlaneGrid src(160, 320, 40.0, 40.0);
  const ScalarField w = selfsimilar_field(src, 2.0, 4.0);
  const double d = selfsimilar_distance(w, 4.0, 2.0, 1.0);
  CHECK(d <= 1e-2 * norm_2d(profile(2.0, default_reference_grid()), 1.0));

  Trajectory tr;
  tr.initial_impulse = 2.0;
  tr.snapshots.emplace_back(4.0, w);
  CHECK(selfsimilar_distance(tr, 4.0, 1.0) == d);
  CHECK_THROWS_AS(selfsimilar_distance(tr, 5.0, 1.0), UsageError);
}

TEST_CASE("confinement radius") {
  const HalfPlaneGrid g(20, 40, 10.0, 10.0);
  std::vector<double> v(g.size(), 0.0);
  v[g.index(2, 20)] = 1.0;  // one cell at distance hypot(1.25, 0.25)
  const ScalarField w(g, v, Quantity::omega_theta);
  const double total = norm_2d(w, 1.0);
  const double rho = confinement_radius(w, 0.5 * total);
  // radii live on cell-centre distances: the first shell beyond the mass
  const double d0 = std::hypot(g.r(2), g.z(20));
  CHECK(rho > d0);
  CHECK(rho - d0 < g.h_r());
  CHECK(confinement_radius(w, total) == 0.0);
  CHECK_THROWS_AS(confinement_radius(w, 0.0), DomainError);
  CHECK_THROWS_AS(confinement_radius(w, 2 * total), DomainError);

  const ConfinementFit fit = fit_confinement({{1.0, 3.0}, {4.0, 4.0}, {9.0, 5.0}});
  CHECK(fit.K3 == doctest::Approx(2.0));
  CHECK(fit.K4 == doctest::Approx(1.0));
  CHECK(fit.max_excess <= 1e-12);
}

TEST_CASE("final-decade slope fits") {
  std::vector<std::pair<double, double>> s;
  for (int n = 1; n <= 20; ++n) s.emplace_back(n, 3.0 * std::pow(n, -1.5));
  const SlopeFit fit = fit_final_decade(s);
  CHECK(fit.valid);
  CHECK(fit.slope == doctest::Approx(-1.5));
  CHECK(fit.t_begin >= 2.0);

  const std::vector<std::pair<double, double>> few{{1, 1}, {2, 1}, {5, 1}, {10, 1}};
  CHECK_FALSE(fit_final_decade(few).valid);
}

TEST_CASE("decay report on the exact self-similar family") {
  const HalfPlaneGrid g(96, 192, 24.0, 24.0);
  Trajectory tr;
  tr.initial_impulse = 1.0;
  for (int n = 0; n <= 12; ++n) {
    const double t = 1.0 + 0.75 * n;
    tr.records.push_back(make_record(t, selfsimilar_field(g, 1.0, t), nullptr));
  }
  const DecayReport rep = decay_report(tr, {1.0, 2.0, kInf});
  CHECK(rep.interpolation_violations == 0);
  REQUIRE(rep.columns.size() == 3);
  for (std::size_t n = 0; n < tr.records.size(); ++n) CHECK(rep.columns[0].norm[n] == tr.records[n].l1_2d);
  for (const auto& col : rep.columns) {
    CHECK(col.fit.valid);
    CHECK(col.decreasing_final_decade);
    const double first = col.impulse_scaled.front();
    for (double v : col.impulse_scaled) CHECK(v == doctest::Approx(first).epsilon(2e-2));
  }
  CHECK_THROWS(decay_report(tr, {3.0}));
}

TEST_CASE("gradient norm") {
  const HalfPlaneGrid g(128, 256, 12.0, 12.0);
  const ScalarField w = ScalarField::sample(
      g, Quantity::omega_theta, [](double r, double z) { return r * std::exp(-(r * r + z * z) / 4); });
  // |grad w|^2 integrates in closed form: int (1 - r^2/2)^2 + r^2 z^2 / 4 e^{-(r^2+z^2)/2}
  double exact = 0.0;
  const HalfPlaneGrid fine(1024, 2048, 12.0, 12.0);
  for (int i = 0; i < fine.n_r(); ++i)
    for (int k = 0; k < fine.n_z(); ++k) {
      const double r = fine.r(i), z = fine.z(k);
      const double e = std::exp(-(r * r + z * z) / 4);
      const double gr = (1 - r * r / 2) * e, gz = -r * z / 2 * e;
      exact += (gr * gr + gz * gz) * fine.cell_area();
    }
  CHECK(gradient_norm(w, 2.0) == doctest::Approx(std::sqrt(exact)).epsilon(5e-3));
}

TEST_CASE("estimate names") {
  for (Estimate e : all_estimates()) CHECK(estimate_from_string(to_string(e)) == e);
  CHECK_THROWS_AS(estimate_from_string("nope"), ConfigError);
}

TEST_CASE("samplers are reproducible whatever the thread count") {
  SamplerOptions o;
  o.grid = HalfPlaneGrid(24, 48, 10.0, 10.0);
  o.eta_grid = HalfPlaneGrid(16, 32, 10.0, 10.0);
  const auto a = random_bumps(o.grid, 42, 3);
  const auto b = random_bumps(o.grid, 42, 3);
  CHECK(a.values() == b.values());
  CHECK(random_bumps(o.grid, 42, 4).values() != a.values());

  for (Estimate e : {Estimate::biot_savart_lpq, Estimate::semigroup_div}) {
    set_num_threads(1);
    const SamplerReport one = inequality_sampler(e, 4, 7, o);
    set_num_threads(0);
    const SamplerReport many = inequality_sampler(e, 4, 7, o);
    CHECK(one.ratios == many.ratios);
    for (double r : one.ratios) CHECK(std::isfinite(r));
    CHECK(one.max_ratio >= one.mean_ratio);
    CHECK(one.mean_ratio >= one.min_ratio);
  }
}
