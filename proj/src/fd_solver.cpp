#include "axivort/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "axivort/error.hpp"
#include "axivort/parallel.hpp"

namespace axivort {

void FdConfig::validate() const {
  for (std::size_t n = 0; n < snapshot_times.size(); ++n) {
    if (!(snapshot_times[n] > 0.0)) throw ConfigError("fd snapshot times must be positive");
    if (n > 0 && !(snapshot_times[n] > snapshot_times[n - 1])) {
      throw ConfigError("fd snapshot times must be strictly increasing");
    }
  }
  biot_savart.validate();
}

double fd_max_dt(const HalfPlaneGrid& grid, const VelocityField* u) {
  const double hr = grid.h_r(), hz = grid.h_z();
  double ur = 0.0, uz = 0.0;
  if (u) {
    for (double v : u->u_r) ur = std::max(ur, std::abs(v));
    for (double v : u->u_z) uz = std::max(uz, std::abs(v));
  }
  return 1.0 / (4.0 / (hr * hr) + 2.0 / (hz * hz) + ur / hr + uz / hz);
}

namespace {

// One explicit Euler step of size dt, eta -> out.
void euler_step(const HalfPlaneGrid& g, const std::vector<double>& eta, const VelocityField* u,
                double dt, std::vector<double>& out) {
  const int nr = g.n_r(), nz = g.n_z();
  const double hr = g.h_r(), hz = g.h_z();
  const double ihr2 = 1.0 / (hr * hr), ihz2 = 1.0 / (hz * hz);
  parallel_for(nr, [&](int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
      const double r = g.r(i);
      const double* row = eta.data() + g.index(i, 0);
      const double* below = i > 0 ? eta.data() + g.index(i - 1, 0) : row;  // mirror ghost
      const double* above = i + 1 < nr ? eta.data() + g.index(i + 1, 0) : nullptr;
      const double c_up = ihr2 + 1.5 / (r * hr), c_dn = ihr2 - 1.5 / (r * hr);
      for (int k = 0; k < nz; ++k) {
        const double e = row[k];
        const double ep = above ? above[k] : 0.0;
        const double em = below[k];
        const double zp = k + 1 < nz ? row[k + 1] : 0.0;
        const double zm = k > 0 ? row[k - 1] : 0.0;
        double rhs = c_up * ep + c_dn * em - 2.0 * ihr2 * e + ihz2 * (zp - 2.0 * e + zm);
        if (u) {
          const std::size_t n = g.index(i, k);
          const double ur = u->u_r[n], uz = u->u_z[n];
          rhs -= ur > 0.0 ? ur * (e - em) / hr : ur * (ep - e) / hr;
          rhs -= uz > 0.0 ? uz * (e - zm) / hz : uz * (zp - e) / hz;
        }
        out[g.index(i, k)] = e + dt * rhs;
      }
    }
  });
}

ScalarField eta_to_omega_field(const std::vector<double>& eta, const HalfPlaneGrid& g) {
  return eta_to_omega(ScalarField(g, eta, Quantity::eta));
}

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

Trajectory fd_eta_solve(const ScalarField& initial_eta, double t_final, double fd_dt,
                        const FdConfig& fd_config) {
  fd_config.validate();
  require_tag(initial_eta, Quantity::eta, "fd_eta_solve");
  if (!(t_final > 0.0)) throw ConfigError("t_final must be positive");
  if (!(fd_dt > 0.0)) throw ConfigError("fd_dt must be positive");
  const HalfPlaneGrid& g = initial_eta.grid();
  auto bs = fd_config.advection ? BiotSavartOperator::cached(g, fd_config.biot_savart) : nullptr;

  Trajectory tr;
  std::vector<double> eta = initial_eta.values(), next(eta.size());
  ScalarField omega = eta_to_omega(initial_eta);
  tr.initial_impulse = impulse(omega);
  VelocityField u;
  if (bs) u = bs->velocity(omega);

  auto log = [&](double t) {
    DiagnosticsRecord rec = make_record(t, omega, bs ? &u : nullptr);
    tr.records.push_back(rec);
    if (t > 0.0) tr.xt_norm_history.emplace_back(t, std::pow(t, 0.25) * rec.lp_2d.at(4.0 / 3.0));
  };
  log(0.0);
  tr.snapshots.emplace_back(0.0, initial_eta);

  std::vector<double> stops;
  for (double s : fd_config.snapshot_times) {
    if (s < t_final && !same_time(s, t_final)) stops.push_back(s);
  }
  stops.push_back(t_final);

  double t = 0.0;
  for (double stop : stops) {
    const int n = std::max(1, static_cast<int>(std::ceil((stop - t) / fd_dt - 1e-9)));
    const double dt = (stop - t) / n;
    for (int s = 0; s < n; ++s) {
      const double bound = fd_max_dt(g, bs ? &u : nullptr);
      if (dt > bound * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "fd_dt = " << dt << " violates the step bound " << bound << " at t = " << t;
        throw ConfigError(msg.str());
      }
      euler_step(g, eta, bs ? &u : nullptr, dt, next);
      eta.swap(next);
      t = s + 1 == n ? stop : t + dt;
      omega = eta_to_omega_field(eta, g);
      if (bs) u = bs->velocity(omega);
      log(t);
    }
    tr.snapshots.emplace_back(t, ScalarField(g, eta, Quantity::eta));
  }
  return tr;
}

CrossValidationReport cross_validate(const ScalarField& initial, double t_final,
                                     const SolverConfig& config, const FdConfig& fd_config,
                                     double fd_dt) {
  require_tag(initial, Quantity::omega_theta, "cross_validate");
  SolverConfig mc = config;
  mc.nonlinear = fd_config.advection && config.nonlinear;
  FdConfig fc = fd_config;
  fc.advection = mc.nonlinear;
  fc.snapshot_times = config.snapshot_times;
  if (fd_dt <= 0.0) {
    VelocityField u0;
    if (fc.advection) u0 = BiotSavartOperator::cached(initial.grid(), fc.biot_savart)->velocity(initial);
    // Leave headroom for the velocity to grow during the run.
    fd_dt = 0.8 * fd_max_dt(initial.grid(), fc.advection ? &u0 : nullptr);
  }
  const Trajectory mild = evolve(initial, t_final, mc);
  const Trajectory fd = fd_eta_solve(omega_to_eta(initial), t_final, fd_dt, fc);

  CrossValidationReport rep;
  for (const auto& [t, eta] : fd.snapshots) {
    if (t <= 0.0) continue;
    const ScalarField* w = mild.snapshot_at(t);
    if (!w) continue;
    const ScalarField diff = *w - eta_to_omega(eta);
    rep.times.push_back(t);
    rep.l1_relative.push_back(norm_2d(diff, 1.0) / norm_2d(*w, 1.0));
    rep.linf_relative.push_back(norm_2d(diff, kInf) / norm_2d(*w, kInf));
  }
  return rep;
}

}  // namespace axivort
