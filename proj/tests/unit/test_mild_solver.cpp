#include <cmath>

#include <doctest.h>

#include "axivort/error.hpp"
#include "axivort/initial_data.hpp"
#include "axivort/mild_solver.hpp"
#include "axivort/semigroup.hpp"

using namespace axivort;

namespace {

// Coarse enough to be quick; dt = 0.2 keeps the semigroup in its sampled
// regime (h = 0.375).
const HalfPlaneGrid kGrid(32, 64, 12.0, 12.0);

ScalarField small_ring(double l1 = 0.1) {
  GaussianRing p;
  p.l1_target = l1;
  return gaussian_ring(kGrid, p);
}

SolverConfig config(double dt = 0.2) {
  SolverConfig c;
  c.dt = dt;
  return c;
}

}  // namespace

TEST_CASE("configuration validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.picard_tol = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.snapshot_times = {1.0, 1.0};
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("zero stays zero") {
  const ScalarField zero(kGrid, Quantity::omega_theta);
  const Trajectory tr = evolve(zero, 1.0, config());
  for (const auto& r : tr.records) CHECK(r.l1_2d == 0.0);
  CHECK(tr.snapshots.back().second.values() == zero.values());
}

TEST_CASE("without the nonlinear term a step is the linear flow") {
  SolverConfig c = config();
  c.nonlinear = false;
  const ScalarField w = small_ring();
  const ScalarField a = duhamel_step(w, c.dt, c);
  const ScalarField b = apply_S(c.dt, w, c.semigroup);
  for (std::size_t n = 0; n < a.values().size(); ++n) CHECK(a.values()[n] == b.values()[n]);
}

TEST_CASE("Picard converges within five sweeps for small data") {
  const SolverConfig c = config();
  StepInfo info;
  duhamel_step(small_ring(), c.dt, c, &info);
  CHECK(info.iterations <= 5);
  CHECK(info.increments.back() <= c.picard_tol);
  for (std::size_t n = 1; n < info.increments.size(); ++n) {
    CHECK(info.increments[n] < info.increments[n - 1]);
  }
  CHECK(info.node_times.size() == static_cast<std::size_t>(c.duhamel_nodes));
  for (std::size_t n = 1; n < info.node_times.size(); ++n) {
    CHECK(info.node_times[n] > info.node_times[n - 1]);
  }
}

TEST_CASE("step failures and the resolution floor") {
  SolverConfig c = config();
  c.picard_max_iter = 1;
  const DuhamelStepper stepper(kGrid, c.dt, c);
  const auto res = stepper.try_step(small_ring(1.0));
  CHECK_FALSE(res.converged);
  CHECK(res.residual > 0.0);
  CHECK_THROWS_AS(stepper.step(small_ring(1.0)), StepFailure);
  CHECK_THROWS_AS(duhamel_step(small_ring(), 0.5 * resolution_floor(kGrid), config()), ResolutionError);
}

TEST_CASE("trajectory bookkeeping and conservation") {
  SolverConfig c = config();
  c.snapshot_times = {0.4, 1.0};
  int calls = 0;
  const Trajectory tr = evolve(small_ring(), 2.0, c, [&](const DiagnosticsRecord&, const ScalarField&) { ++calls; });
  CHECK(calls == static_cast<int>(tr.records.size()));
  CHECK(tr.records.size() == 11);
  CHECK(tr.snapshots.size() == 4);
  CHECK(tr.snapshots.front().first == 0.0);
  CHECK(tr.snapshot_at(0.4) != nullptr);
  CHECK(tr.snapshot_at(2.0) != nullptr);
  CHECK(tr.snapshot_at(0.6) == nullptr);
  for (std::size_t n = 1; n < tr.records.size(); ++n) {
    CHECK(tr.records[n].time > tr.records[n - 1].time);
    CHECK(tr.records[n].l1_2d < tr.records[n - 1].l1_2d);
    CHECK(tr.records[n].impulse == doctest::Approx(tr.initial_impulse).epsilon(5e-3));
    CHECK(std::sqrt(tr.records[n].time) * tr.records[n].u_sup < 1.0);
  }
  CHECK(tr.xt_norm_history.size() == tr.records.size() - 1);
}

TEST_CASE("reflection symmetry in z") {
  // Under z -> -z the velocity of z-odd vorticity keeps its parity and the
  // equation maps the odd class into itself (two rings colliding head on).
  // Even data stay even only for the linear flow: a single ring translates.
  auto max_abs = [](const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
  };
  auto parity_defect = [&](const ScalarField& f, double sign) {
    double worst = 0.0;
    for (int i = 0; i < kGrid.n_r(); ++i)
      for (int k = 0; k < kGrid.n_z(); ++k)
        worst = std::max(worst, std::abs(f(i, k) - sign * f(i, kGrid.n_z() - 1 - k)));
    return worst / max_abs(f);
  };

  GaussianRing up;
  up.z0 = 2.0;
  up.l1_target = 0.5;
  GaussianRing down = up;
  down.z0 = -2.0;
  const ScalarField odd = gaussian_ring(kGrid, up) - gaussian_ring(kGrid, down);
  const Trajectory tr = evolve(odd, 1.0, config());
  CHECK(parity_defect(tr.snapshots.back().second, -1.0) <= 1e-13);

  SolverConfig lin = config();
  lin.nonlinear = false;
  const Trajectory even = evolve(small_ring(0.5), 1.0, lin);
  CHECK(parity_defect(even.snapshots.back().second, 1.0) <= 1e-13);
}

TEST_CASE("an off-centre ring drifts along the axis") {
  GaussianRing p;
  p.l1_target = 0.5;
  const ScalarField w = gaussian_ring(kGrid, p);
  const Trajectory tr = evolve(w, 1.0, config());
  const ScalarField& end = tr.snapshots.back().second;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < kGrid.n_r(); ++i)
    for (int k = 0; k < kGrid.n_z(); ++k) {
      num += kGrid.r(i) * kGrid.r(i) * kGrid.z(k) * end(i, k);
      den += kGrid.r(i) * kGrid.r(i) * end(i, k);
    }
  CHECK(num / den > 0.0);  // positive circulation moves the ring towards +z
}

TEST_CASE("measure data") {
  VortexMeasure mu;
  mu.atoms = {{3.0, 0.0, 0.1}};
  const Trajectory tr = evolve(mu, kGrid, 1.0, config());
  CHECK(tr.records.front().time == doctest::Approx(0.2));
  CHECK(tr.warnings.size() == 1);
  mu.atoms[0].strength = 2.0;
  SolverConfig c = config();
  c.atom_warning_eps = 0.5;
  CHECK_THROWS_AS(evolve(mu, kGrid, 0.1, c), ConfigError);
}

TEST_CASE("single-horizon Picard solve") {
  SolverConfig c = config();
  c.xt_horizon = 0.4;
  const PicardHorizonReport rep = picard_horizon(small_ring(), c);
  CHECK(rep.converged);
  CHECK(rep.xt_norm > 0.0);
  CHECK(rep.xt_norm_history.size() == static_cast<std::size_t>(c.duhamel_nodes) + 1);
  const ScalarField stepped = duhamel_step(small_ring(), 0.4, c);
  for (std::size_t n = 0; n < stepped.values().size(); ++n) {
    CHECK(rep.final_field.values()[n] == doctest::Approx(stepped.values()[n]).epsilon(1e-12));
  }
}
