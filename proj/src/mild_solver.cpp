#include "axivort/mild_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "axivort/error.hpp"
#include "axivort/parallel.hpp"
#include "axivort/quadrature.hpp"

namespace axivort {

namespace {

double l1_distance(const std::vector<double>& a, const std::vector<double>& b, double area) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += std::abs(a[n] - b[n]);
  return s * area;
}

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("solver.dt must be positive");
  if (duhamel_nodes < 1 || duhamel_nodes > 16) {
    throw ConfigError("solver.duhamel_nodes must lie in [1, 16]");
  }
  if (!(picard_tol > 0.0)) throw ConfigError("solver.picard_tol must be positive");
  if (picard_max_iter < 1) throw ConfigError("solver.picard_max_iter must be at least 1");
  if (!(xt_horizon > 0.0)) throw ConfigError("solver.xt_horizon must be positive");
  if (max_halvings < 0) throw ConfigError("solver.max_halvings must be nonnegative");
  for (std::size_t n = 0; n < snapshot_times.size(); ++n) {
    if (!(snapshot_times[n] > 0.0)) throw ConfigError("snapshot times must be positive");
    if (n > 0 && !(snapshot_times[n] > snapshot_times[n - 1])) {
      throw ConfigError("snapshot times must be strictly increasing");
    }
  }
  biot_savart.validate();
  semigroup.validate();
}

const ScalarField* Trajectory::snapshot_at(double t) const {
  for (const auto& [time, field] : snapshots) {
    if (same_time(time, t)) return &field;
  }
  return nullptr;
}

DiagnosticsRecord make_record(double time, const ScalarField& omega, const VelocityField* u) {
  DiagnosticsRecord rec;
  rec.time = time;
  rec.l1_2d = norm_2d(omega, 1.0);
  rec.mass = mass(omega);
  rec.impulse = impulse(omega);
  rec.u_sup = u ? u->sup_norm() : 0.0;
  for (double p : {4.0 / 3.0, 2.0, 4.0, kInf}) rec.lp_2d[p] = norm_2d(omega, p);
  if (time > 0.0) {
    rec.scaled_norms[1.0] = rec.l1_2d;
    for (const auto& [p, v] : rec.lp_2d) {
      rec.scaled_norms[p] = std::pow(time, 1.0 - (std::isinf(p) ? 0.0 : 1.0 / p)) * v;
    }
  }
  return rec;
}

DuhamelStepper::DuhamelStepper(const HalfPlaneGrid& grid, double dt, const SolverConfig& config)
    : grid_(grid), dt_(dt), config_(config) {
  config_.validate();
  if (!(dt > 0.0)) throw DomainError("Duhamel step needs dt > 0");
  S_end_ = std::make_unique<SemigroupOperator>(grid_, dt_, config_.semigroup);
  if (!config_.nonlinear) return;

  bs_ = BiotSavartOperator::cached(grid_, config_.biot_savart);
  const int m = config_.duhamel_nodes;
  const auto rule = quad::gauss_legendre_unit(m);
  sigma_ = rule.nodes;
  weight_ = rule.weights;
  // s_j = dt (1 - sigma_j^2); store them ascending in time.
  std::vector<int> order(m);
  for (int j = 0; j < m; ++j) order[j] = m - 1 - j;
  std::vector<double> sig(m), w(m);
  for (int j = 0; j < m; ++j) {
    sig[j] = sigma_[order[j]];
    w[j] = weight_[order[j]];
  }
  sigma_ = sig;
  weight_ = w;
  node_times_.resize(m);
  for (int j = 0; j < m; ++j) node_times_[j] = dt_ * (1.0 - sigma_[j] * sigma_[j]);

  for (int j = 0; j < m; ++j) {
    S_node_.push_back(std::make_unique<SemigroupOperator>(grid_, node_times_[j], config_.semigroup));
    Sdiv_end_.push_back(
        std::make_unique<SemigroupOperator>(grid_, dt_ * sigma_[j] * sigma_[j], config_.semigroup));
  }
  std::vector<double> T(m + 1, 0.0);
  for (int j = 0; j < m; ++j) T[j + 1] = node_times_[j];
  Sdiv_node_.resize(m);
  lagrange_.assign(m, std::vector<std::vector<double>>(m, std::vector<double>(m + 1, 0.0)));
  for (int j = 0; j < m; ++j) {
    for (int l = 0; l < m; ++l) {
      const double sj = node_times_[j];
      Sdiv_node_[j].push_back(
          std::make_unique<SemigroupOperator>(grid_, sj * sigma_[l] * sigma_[l], config_.semigroup));
      const double x = sj * (1.0 - sigma_[l] * sigma_[l]);
      for (int p = 0; p <= m; ++p) {
        double L = 1.0;
        for (int q = 0; q <= m; ++q) {
          if (q != p) L *= (x - T[q]) / (T[p] - T[q]);
        }
        lagrange_[j][l][p] = L;
      }
    }
  }
}

DuhamelStepper::Flux DuhamelStepper::flux(const ScalarField& omega, const VelocityField* u) const {
  VelocityField local;
  if (!u) {
    local = bs_->velocity(omega);
    u = &local;
  }
  const auto& w = omega.values();
  Flux f{std::vector<double>(w.size()), std::vector<double>(w.size())};
  for (std::size_t n = 0; n < w.size(); ++n) {
    f.r[n] = u->u_r[n] * w[n];
    f.z[n] = u->u_z[n] * w[n];
  }
  return f;
}

DuhamelStepper::Result DuhamelStepper::try_step(const ScalarField& omega, const VelocityField* u0,
                                                StepInfo* info) const {
  require_tag(omega, Quantity::omega_theta, "duhamel_step");
  if (!(omega.grid() == grid_)) throw UsageError("duhamel_step: field grid differs from stepper");
  if (!config_.nonlinear) {
    if (info) *info = StepInfo{};
    return {S_end_->apply(omega), true, 0.0};
  }
  const int m = config_.duhamel_nodes;
  const std::size_t N = grid_.size();
  const double area = grid_.cell_area();

  std::vector<Flux> f(m + 1);
  f[0] = flux(omega, u0);
  std::vector<double> base_end(N);
  S_end_->apply(omega.values().data(), base_end.data());
  std::vector<std::vector<double>> base_node(m, std::vector<double>(N));
  for (int j = 0; j < m; ++j) S_node_[j]->apply(omega.values().data(), base_node[j].data());

  std::vector<std::vector<double>> nodes = base_node;
  std::vector<double> end = base_end;
  std::vector<std::vector<double>> new_nodes(m, std::vector<double>(N));
  std::vector<double> new_end(N);
  std::vector<double> fr(N), fz(N);
  std::vector<double> increments;
  double residual = kInf;
  int it = 0;
  bool converged = false;
  while (it < config_.picard_max_iter) {
    ++it;
    for (int p = 1; p <= m; ++p) {
      f[p] = flux(ScalarField(grid_, nodes[p - 1], Quantity::omega_theta), nullptr);
    }
    for (int j = 0; j < m; ++j) {
      new_nodes[j] = base_node[j];
      const double sj = node_times_[j];
      for (int l = 0; l < m; ++l) {
        std::fill(fr.begin(), fr.end(), 0.0);
        std::fill(fz.begin(), fz.end(), 0.0);
        for (int p = 0; p <= m; ++p) {
          const double L = lagrange_[j][l][p];
          for (std::size_t n = 0; n < N; ++n) {
            fr[n] += L * f[p].r[n];
            fz[n] += L * f[p].z[n];
          }
        }
        const double c = -2.0 * sj * sigma_[l] * weight_[l];
        Sdiv_node_[j][l]->apply_div(fr.data(), fz.data(), new_nodes[j].data(), c, true);
      }
    }
    new_end = base_end;
    for (int l = 0; l < m; ++l) {
      const double c = -2.0 * dt_ * sigma_[l] * weight_[l];
      Sdiv_end_[l]->apply_div(f[l + 1].r.data(), f[l + 1].z.data(), new_end.data(), c, true);
    }
    residual = l1_distance(new_end, end, area);
    for (int j = 0; j < m; ++j) residual = std::max(residual, l1_distance(new_nodes[j], nodes[j], area));
    nodes.swap(new_nodes);
    end.swap(new_end);
    increments.push_back(residual);
    for (double v : end) {
      if (!std::isfinite(v)) {
        residual = kInf;
        break;
      }
    }
    if (!std::isfinite(residual)) break;
    if (residual <= config_.picard_tol) {
      converged = true;
      break;
    }
  }
  if (info) {
    info->iterations = it;
    info->increments = increments;
    info->node_times = node_times_;
    info->node_values.clear();
    for (int j = 0; j < m; ++j) {
      bool finite = std::all_of(nodes[j].begin(), nodes[j].end(), [](double v) { return std::isfinite(v); });
      if (finite) info->node_values.emplace_back(grid_, nodes[j], Quantity::omega_theta);
    }
  }
  if (!std::all_of(end.begin(), end.end(), [](double v) { return std::isfinite(v); })) {
    return {ScalarField(grid_, Quantity::omega_theta), false, kInf};
  }
  return {ScalarField(grid_, std::move(end), Quantity::omega_theta), converged, residual};
}

ScalarField DuhamelStepper::step(const ScalarField& omega, const VelocityField* u0,
                                 StepInfo* info) const {
  StepInfo local;
  StepInfo* used = info ? info : &local;
  Result r = try_step(omega, u0, used);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "Picard iteration did not converge in " << used->iterations << " sweeps (dt = " << dt_
        << ", last increment " << r.residual << ")";
    throw StepFailure(msg.str(), r.residual, used->iterations);
  }
  return std::move(r.omega);
}

ScalarField duhamel_step(const ScalarField& omega, double dt, const SolverConfig& config,
                         StepInfo* info) {
  if (dt < resolution_floor(omega.grid())) {
    throw ResolutionError("dt is below the grid resolution floor");
  }
  return DuhamelStepper(omega.grid(), dt, config).step(omega, nullptr, info);
}

namespace {

class Evolver {
 public:
  Evolver(const HalfPlaneGrid& grid, const SolverConfig& config) : grid_(grid), config_(config) {}

  const DuhamelStepper& stepper(double h) {
    for (auto& s : cache_) {
      if (s->dt() == h) return *s;
    }
    cache_.push_back(std::make_unique<DuhamelStepper>(grid_, h, config_));
    if (cache_.size() > 6) cache_.erase(cache_.begin());
    return *cache_.back();
  }

  /// Advances by h, halving on Picard failure; returns the Picard sweep count.
  ScalarField advance(const ScalarField& omega, const VelocityField& u, double h, int depth,
                      int& sweeps) {
    StepInfo info;
    auto result = stepper(h).try_step(omega, &u, &info);
    sweeps += info.iterations;
    if (result.converged) return std::move(result.omega);
    if (depth >= config_.max_halvings || h / 2 < resolution_floor(grid_)) {
      std::ostringstream msg;
      msg << "step failed after " << depth << " halvings (dt = " << h << ", last increment "
          << result.residual << ")";
      throw StepFailure(msg.str(), result.residual, info.iterations);
    }
    ScalarField half = advance(omega, u, h / 2, depth + 1, sweeps);
    const VelocityField u_half = config_.nonlinear
                                     ? BiotSavartOperator::cached(grid_, config_.biot_savart)->velocity(half)
                                     : VelocityField{};
    return advance(half, u_half, h / 2, depth + 1, sweeps);
  }

 private:
  HalfPlaneGrid grid_;
  SolverConfig config_;
  std::vector<std::unique_ptr<DuhamelStepper>> cache_;
};

void evolve_from(Trajectory& tr, ScalarField omega, double t0, double t_final,
                 const SolverConfig& config, const StepCallback& on_step) {
  const auto& grid = omega.grid();
  auto bs = BiotSavartOperator::cached(grid, config.biot_savart);
  Evolver ev(grid, config);
  const double hmax = std::max(grid.h_r(), grid.h_z());
  if (config.dt < config.semigroup.nystrom_ratio * hmax * hmax) {
    tr.warnings.push_back(
        "dt is below the sampled-kernel threshold of the grid; every step then smooths the data "
        "by its linear interpolant, an O(h^2) diffusion error per step");
  }
  VelocityField u = bs->velocity(omega);

  auto log = [&](double t) {
    DiagnosticsRecord rec = make_record(t, omega, &u);
    tr.records.push_back(rec);
    if (t > 0.0) {
      tr.xt_norm_history.emplace_back(t, std::pow(t, 0.25) * rec.lp_2d.at(4.0 / 3.0));
    }
    if (on_step) on_step(rec, omega);
  };
  log(t0);
  tr.snapshots.emplace_back(t0, omega);

  std::vector<double> stops;
  for (double s : config.snapshot_times) {
    if (s > t0 && s < t_final && !same_time(s, t_final)) stops.push_back(s);
  }
  stops.push_back(t_final);
  std::size_t next = 0;
  double t = t0;
  while (next < stops.size()) {
    const double stop = stops[next];
    double target = t + config.dt;
    // Land on the stop exactly, absorbing a short remainder into this step.
    if (target >= stop || stop - target < 0.25 * config.dt) target = stop;
    int sweeps = 0;
    omega = ev.advance(omega, u, target - t, 0, sweeps);
    t = target;
    u = bs->velocity(omega);
    tr.picard_iterations.push_back(sweeps);
    log(t);
    if (same_time(t, stop)) {
      tr.snapshots.emplace_back(t, omega);
      ++next;
    }
  }
}

}  // namespace

Trajectory evolve(const ScalarField& initial, double t_final, const SolverConfig& config,
                  const StepCallback& on_step) {
  config.validate();
  require_tag(initial, Quantity::omega_theta, "evolve");
  if (!(t_final > 0.0)) throw ConfigError("t_final must be positive");
  Trajectory tr;
  tr.initial_impulse = impulse(initial);
  evolve_from(tr, initial, 0.0, t_final, config, on_step);
  return tr;
}

Trajectory evolve(const VortexMeasure& initial, const HalfPlaneGrid& grid, double t_final,
                  const SolverConfig& config, const StepCallback& on_step) {
  config.validate();
  initial.validate();
  if (!(t_final > config.dt)) throw ConfigError("t_final must exceed dt for measure data");
  Trajectory tr;
  double imp = initial.density ? impulse(*initial.density) : 0.0;
  for (const auto& a : initial.atoms) imp += a.r * a.r * a.strength;
  tr.initial_impulse = imp;
  if (initial.atomic_variation() > config.atom_warning_eps) {
    std::ostringstream msg;
    msg << "atomic part has total variation " << initial.atomic_variation()
        << " above the smallness threshold " << config.atom_warning_eps
        << "; convergence is not guaranteed";
    tr.warnings.push_back(msg.str());
  }
  if (!initial.atoms.empty()) {
    tr.warnings.push_back(
        "atoms are mollified by one linear step S(dt); the trajectory starts at t = dt");
  }
  ScalarField first = apply_S_measure(config.dt, initial, grid, config.semigroup);
  evolve_from(tr, std::move(first), config.dt, t_final, config, on_step);
  return tr;
}

PicardHorizonReport picard_horizon(const ScalarField& initial, const SolverConfig& config) {
  SolverConfig c = config;
  c.nonlinear = true;
  DuhamelStepper stepper(initial.grid(), c.xt_horizon, c);
  StepInfo info;
  auto result = stepper.try_step(initial, nullptr, &info);
  PicardHorizonReport rep{std::move(result.omega), info.increments, {}, 0.0, result.converged};
  for (std::size_t j = 0; j < info.node_values.size(); ++j) {
    const double t = info.node_times[j];
    rep.xt_norm_history.emplace_back(t, std::pow(t, 0.25) * norm_2d(info.node_values[j], 4.0 / 3.0));
  }
  rep.xt_norm_history.emplace_back(c.xt_horizon,
                                   std::pow(c.xt_horizon, 0.25) * norm_2d(rep.final_field, 4.0 / 3.0));
  for (const auto& [t, v] : rep.xt_norm_history) rep.xt_norm = std::max(rep.xt_norm, v);
  return rep;
}

}  // namespace axivort
