#include <cmath>

#include <doctest.h>

#include "axivort/error.hpp"
#include "axivort/fd_solver.hpp"
#include "axivort/initial_data.hpp"
#include "axivort/semigroup.hpp"

using namespace axivort;

namespace {

ScalarField ring(const HalfPlaneGrid& g, double l1 = 0.1) {
  GaussianRing p;
  p.l1_target = l1;
  return gaussian_ring(g, p);
}

}  // namespace

TEST_CASE("step bound") {
  const HalfPlaneGrid g(32, 64, 12.0, 12.0);
  const double bound = fd_max_dt(g, nullptr);
  CHECK(bound == doctest::Approx(1.0 / (4 / (g.h_r() * g.h_r()) + 2 / (g.h_z() * g.h_z()))));
  const ScalarField eta = omega_to_eta(ring(g));
  CHECK_THROWS_AS(fd_eta_solve(eta, 0.5, 1.5 * bound, {}), ConfigError);
  CHECK_THROWS_AS(fd_eta_solve(ring(g), 0.5, 0.5 * bound, {}), UsageError);
}

TEST_CASE("nonnegative data stay nonnegative") {
  const HalfPlaneGrid g(32, 64, 12.0, 12.0);
  const ScalarField eta = omega_to_eta(ring(g, 1.0));
  const Trajectory tr = fd_eta_solve(eta, 1.0, 0.9 * fd_max_dt(g, nullptr) / 2, {});
  for (const auto& [t, f] : tr.snapshots) {
    for (double v : f.values()) CHECK(v >= 0.0);
  }
  for (std::size_t n = 1; n < tr.records.size(); ++n) CHECK(tr.records[n].l1_2d <= tr.records[n - 1].l1_2d);
}

TEST_CASE("without advection the oracle reproduces the linear semigroup") {
  double prev = kInf;
  for (int n : {24, 48}) {
    const HalfPlaneGrid g(n, 2 * n, 12.0, 12.0);
    FdConfig fc;
    fc.advection = false;
    const ScalarField w = ring(g);
    const Trajectory tr = fd_eta_solve(omega_to_eta(w), 1.0, 0.5 * fd_max_dt(g, nullptr), fc);
    const ScalarField fd = eta_to_omega(tr.snapshots.back().second);
    const ScalarField s = apply_S(1.0, w);
    const double err = norm_2d(fd - s, 1.0) / norm_2d(s, 1.0);
    MESSAGE(n << ": relative L1 difference " << err);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-2);
}

TEST_CASE("cross-validation on small ring data") {
  const HalfPlaneGrid g(32, 64, 12.0, 12.0);
  SolverConfig c;
  c.dt = 0.2;
  c.snapshot_times = {0.4};
  const CrossValidationReport rep = cross_validate(ring(g), 1.0, c, {});
  REQUIRE(rep.times.size() == 2);
  CHECK(rep.times.back() == doctest::Approx(1.0));
  for (double e : rep.l1_relative) CHECK(e <= 0.02);
}

TEST_CASE("Nash-type decay of eta") {
  const HalfPlaneGrid g(40, 80, 12.0, 12.0);
  const ScalarField eta = omega_to_eta(ring(g, 1.0));
  FdConfig fc;
  fc.snapshot_times = {0.5, 1.0};
  const Trajectory tr = fd_eta_solve(eta, 2.0, 0.5 * fd_max_dt(g, nullptr), fc);
  const double l1 = norm_3d(eta, 1.0);
  double hi = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    const ScalarField* f = tr.snapshot_at(t);
    REQUIRE(f != nullptr);
    hi = std::max(hi, std::pow(t, 1.5) * norm_2d(*f, kInf) / l1);
  }
  CHECK(hi < 1.0);
}
