#include "axivort/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>

#include "axivort/biot_savart.hpp"
#include "axivort/error.hpp"
#include "axivort/fd_solver.hpp"
#include "axivort/parallel.hpp"
#include "axivort/semigroup.hpp"

namespace axivort {

ScalarField profile(double impulse, const HalfPlaneGrid& grid) {
  const double c = impulse / (16.0 * std::sqrt(std::numbers::pi));
  return ScalarField::sample(grid, Quantity::omega_theta, [c](double r, double z) {
    return c * r * std::exp(-(r * r + z * z) / 4.0);
  });
}

HalfPlaneGrid default_reference_grid() { return HalfPlaneGrid(80, 160, 10.0, 10.0); }

double selfsimilar_distance(const ScalarField& omega, double t, double impulse, double p,
                            const HalfPlaneGrid& reference) {
  const ScalarField w = rescale_to_selfsimilar(omega, t, reference);
  return norm_2d(w - profile(impulse, reference), p);
}

double selfsimilar_distance(const Trajectory& traj, double t, double p,
                            const HalfPlaneGrid& reference) {
  const ScalarField* w = traj.snapshot_at(t);
  if (!w) throw UsageError("selfsimilar_distance: no snapshot stored at the requested time");
  return selfsimilar_distance(*w, t, traj.initial_impulse, p, reference);
}

double confinement_radius(const ScalarField& omega, double epsilon) {
  const double total = norm_2d(omega, 1.0);
  if (!(epsilon > 0.0) || !(epsilon <= total)) {
    throw DomainError("confinement_radius: epsilon must lie in (0, ||omega||_1]");
  }
  if (epsilon >= total) return 0.0;
  const auto& g = omega.grid();
  std::vector<std::pair<double, double>> cells;  // (rho, |omega| area)
  cells.reserve(g.size());
  for (int i = 0; i < g.n_r(); ++i) {
    for (int k = 0; k < g.n_z(); ++k) {
      cells.emplace_back(std::hypot(g.r(i), g.z(k)), std::abs(omega(i, k)) * g.cell_area());
    }
  }
  std::sort(cells.begin(), cells.end());
  // Move whole shells (equal rho) outside while their mass stays within epsilon.
  double outside = 0.0;
  std::size_t m = cells.size();
  while (m > 0) {
    std::size_t s = m - 1;
    double shell = cells[s].second;
    while (s > 0 && cells[s - 1].first == cells[m - 1].first) shell += cells[--s].second;
    if (outside + shell > epsilon) break;
    outside += shell;
    m = s;
  }
  if (m == cells.size()) return std::nextafter(cells.back().first, kInf);
  return cells[m].first;
}

ConfinementFit fit_confinement(const std::vector<std::pair<double, double>>& t_rho) {
  if (t_rho.size() < 2) throw UsageError("fit_confinement needs at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(t_rho.size());
  for (const auto& [t, rho] : t_rho) {
    const double x = std::sqrt(t);
    sx += x;
    sy += rho;
    sxx += x * x;
    sxy += x * rho;
  }
  const double den = n * sxx - sx * sx;
  ConfinementFit fit;
  fit.K4 = den > 0 ? (n * sxy - sx * sy) / den : 0.0;
  fit.K3 = (sy - fit.K4 * sx) / n;
  auto excess = [&] {
    double e = -kInf;
    for (const auto& [t, rho] : t_rho) e = std::max(e, rho - fit.K3 - fit.K4 * std::sqrt(t));
    return e;
  };
  fit.K3 += std::max(0.0, excess());
  fit.max_excess = excess();
  return fit;
}

SlopeFit fit_final_decade(const std::vector<std::pair<double, double>>& series) {
  SlopeFit fit;
  if (series.empty()) return fit;
  const double t_last = series.back().first;
  const double t_cut = t_last / 10.0;
  if (!(series.front().first <= t_cut * (1.0 + 1e-12))) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [t, v] : series) {
    if (t < t_cut * (1.0 - 1e-12) || !(t > 0.0) || !(v > 0.0)) continue;
    const double x = std::log(t), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    if (n == 0) fit.t_begin = t;
    ++n;
  }
  fit.points = n;
  fit.t_end = t_last;
  if (n < 5) return fit;
  const double den = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.valid = true;
  return fit;
}

namespace {

double record_norm(const DiagnosticsRecord& rec, double p) {
  if (p == 1.0) return rec.l1_2d;
  for (const auto& [q, v] : rec.lp_2d) {
    if (q == p || std::abs(q - p) < 1e-12) return v;
  }
  throw UsageError("decay_report: norm not recorded for the requested p");
}

}  // namespace

DecayReport decay_report(const Trajectory& traj, const std::vector<double>& p_list) {
  if (traj.records.empty()) throw UsageError("decay_report: empty trajectory");
  DecayReport rep;
  for (double p : p_list) {
    if (!(p >= 1.0)) throw DomainError("decay_report: p must be >= 1");
    DecayColumn col;
    col.p = p;
    const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
    std::vector<std::pair<double, double>> series;
    for (const auto& rec : traj.records) {
      if (!(rec.time > 0.0)) continue;
      const double v = record_norm(rec, p);
      col.times.push_back(rec.time);
      col.norm.push_back(v);
      col.scaled.push_back(std::pow(rec.time, 1.0 - inv) * v);
      col.impulse_scaled.push_back(std::pow(rec.time, 2.0 - inv) * v);
      series.emplace_back(rec.time, col.scaled.back());
    }
    col.fit = fit_final_decade(series);
    if (col.fit.valid) {
      col.decreasing_final_decade = true;
      double prev = kInf;
      for (std::size_t n = 0; n < col.times.size(); ++n) {
        if (col.times[n] < col.fit.t_begin) continue;
        if (col.scaled[n] > prev) col.decreasing_final_decade = false;
        prev = col.scaled[n];
      }
    }
    rep.columns.push_back(std::move(col));
  }
  for (const auto& rec : traj.records) {
    const double l1 = rec.l1_2d;
    const auto it = rec.lp_2d.find(kInf);
    if (it == rec.lp_2d.end()) continue;
    const double linf = it->second;
    for (const auto& [p, v] : rec.lp_2d) {
      if (std::isinf(p)) continue;
      const double bound = std::pow(l1, 1.0 / p) * std::pow(linf, 1.0 - 1.0 / p);
      if (v > bound * (1.0 + 1e-12) + 1e-300) ++rep.interpolation_violations;
    }
  }
  return rep;
}

double gradient_norm(const ScalarField& field, double p) {
  if (!(p >= 1.0)) throw DomainError("gradient_norm: p must be >= 1");
  const auto& g = field.grid();
  const double axis_sign = field.tag() == Quantity::omega_theta ? -1.0 : 1.0;
  auto at = [&](int i, int k) -> double {
    if (k < 0 || k >= g.n_z() || i >= g.n_r()) return 0.0;
    if (i < 0) return axis_sign * field(-1 - i, k);
    return field(i, k);
  };
  double acc = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    for (int k = 0; k < g.n_z(); ++k) {
      const double dr = (at(i + 1, k) - at(i - 1, k)) / (2.0 * g.h_r());
      const double dz = (at(i, k + 1) - at(i, k - 1)) / (2.0 * g.h_z());
      const double m = std::hypot(dr, dz);
      acc = std::isinf(p) ? std::max(acc, m) : acc + std::pow(m, p);
    }
  }
  return std::isinf(p) ? acc : std::pow(acc * g.cell_area(), 1.0 / p);
}

GradientReport gradient_report(const Trajectory& traj, double p) {
  GradientReport rep;
  rep.p = p;
  const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
  std::vector<std::pair<double, double>> series;
  for (const auto& [t, w] : traj.snapshots) {
    if (!(t > 0.0)) continue;
    rep.times.push_back(t);
    rep.scaled.push_back(std::pow(t, 1.5 - inv) * gradient_norm(w, p));
    series.emplace_back(t, rep.scaled.back());
  }
  const SlopeFit fit = fit_final_decade(series);
  rep.flagged = fit.valid && fit.slope > 0.0;
  return rep;
}

// --- samplers -------------------------------------------------------------

namespace {

struct EstimateName {
  Estimate e;
  const char* name;
};
constexpr EstimateName kNames[] = {
    {Estimate::biot_savart_lpq, "biot_savart_lpq"},
    {Estimate::biot_savart_linf, "biot_savart_linf"},
    {Estimate::biot_savart_weighted_a, "biot_savart_weighted_a"},
    {Estimate::biot_savart_weighted_b, "biot_savart_weighted_b"},
    {Estimate::biot_savart_ffs, "biot_savart_ffs"},
    {Estimate::biot_savart_ur_over_r, "biot_savart_ur_over_r"},
    {Estimate::semigroup_lpq, "semigroup_lpq"},
    {Estimate::semigroup_div, "semigroup_div"},
    {Estimate::semigroup_weighted_a, "semigroup_weighted_a"},
    {Estimate::semigroup_weighted_b, "semigroup_weighted_b"},
    {Estimate::eta_nash, "eta_nash"},
};

class Uniform {
 public:
  Uniform(std::uint64_t seed, std::uint64_t index, int stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      static_cast<std::uint32_t>(stream)};
    gen_.seed(seq);
  }
  // Explicit bit mapping: std::uniform_real_distribution is not specified
  // bit for bit across standard libraries.
  double operator()(double a, double b) { return a + (b - a) * ((gen_() >> 11) * 0x1.0p-53); }
  int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % (hi - lo + 1)); }

 private:
  std::mt19937_64 gen_;
};

// Euclidean L^p norm of the vector field (a, b), optionally weighted by r^alpha.
double vector_norm(const HalfPlaneGrid& g, const std::vector<double>& a,
                   const std::vector<double>& b, double p, double alpha = 0.0) {
  double acc = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    const double w = std::pow(g.r(i), alpha);
    for (int k = 0; k < g.n_z(); ++k) {
      const std::size_t n = g.index(i, k);
      const double m = w * std::hypot(a[n], b[n]);
      acc = std::isinf(p) ? std::max(acc, m) : acc + std::pow(m, p);
    }
  }
  return std::isinf(p) ? acc : std::pow(acc * g.cell_area(), 1.0 / p);
}

double weighted_norm(const ScalarField& f, double alpha, double p) {
  const auto& g = f.grid();
  std::vector<double> zero(g.size(), 0.0);
  return vector_norm(g, f.values(), zero, p, alpha);
}

}  // namespace

std::string to_string(Estimate e) {
  for (const auto& n : kNames) {
    if (n.e == e) return n.name;
  }
  return "unknown";
}

Estimate estimate_from_string(const std::string& name) {
  for (const auto& n : kNames) {
    if (name == n.name) return n.e;
  }
  throw ConfigError("unknown estimate '" + name + "'");
}

std::vector<Estimate> all_estimates() {
  std::vector<Estimate> out;
  for (const auto& n : kNames) out.push_back(n.e);
  return out;
}

ScalarField random_bumps(const HalfPlaneGrid& grid, std::uint64_t seed, std::uint64_t index,
                         int stream) {
  Uniform u(seed, index, stream);
  struct Bump {
    double a, rc, zc, w;
  };
  const int count = u.integer(1, 8);
  std::vector<Bump> bumps;
  const double box = std::min(grid.r_max(), grid.z_half());
  for (int b = 0; b < count; ++b) {
    const double w = u(0.2, std::min(2.0, box / 4.0));
    const double rc = u(2.0 * w, grid.r_max() - 2.0 * w);
    const double zc = u(-grid.z_half() + 2.0 * w, grid.z_half() - 2.0 * w);
    const double a = (u(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * u(0.5, 1.0);
    bumps.push_back({a, rc, zc, w});
  }
  return ScalarField::sample(grid, Quantity::omega_theta, [&](double r, double z) {
    double s = 0.0;
    for (const auto& b : bumps) {
      const double d2 = (r - b.rc) * (r - b.rc) + (z - b.zc) * (z - b.zc);
      s += b.a * (r / b.rc) * std::exp(-d2 / (b.w * b.w));
    }
    return s;
  });
}

SamplerReport inequality_sampler(Estimate estimate, int n_samples, std::uint64_t seed,
                                 const SamplerOptions& opts) {
  if (n_samples < 1) throw ConfigError("inequality_sampler needs n_samples >= 1");
  const HalfPlaneGrid& g = opts.grid;

  std::vector<std::unique_ptr<SemigroupOperator>> ops;
  const bool semigroup = estimate == Estimate::semigroup_lpq || estimate == Estimate::semigroup_div ||
                         estimate == Estimate::semigroup_weighted_a ||
                         estimate == Estimate::semigroup_weighted_b;
  if (semigroup) {
    for (double t : opts.semigroup_times) ops.push_back(std::make_unique<SemigroupOperator>(g, t));
  }
  std::shared_ptr<const BiotSavartOperator> bs;
  if (!semigroup && estimate != Estimate::eta_nash) bs = BiotSavartOperator::cached(g);

  auto ratio_of = [&](int n) -> double {
    switch (estimate) {
      case Estimate::eta_nash: {
        const ScalarField w0 = random_bumps(opts.eta_grid, seed, n);
        const ScalarField eta0 = omega_to_eta(w0);
        FdConfig fc;
        fc.snapshot_times.assign(opts.eta_times.begin(), opts.eta_times.end() - 1);
        const VelocityField u0 = BiotSavartOperator::cached(opts.eta_grid)->velocity(w0);
        const double dt = 0.8 * fd_max_dt(opts.eta_grid, &u0);
        const Trajectory tr = fd_eta_solve(eta0, opts.eta_times.back(), dt, fc);
        const double l1 = norm_3d(eta0, 1.0);
        double worst = 0.0;
        for (double t : opts.eta_times) {
          const ScalarField* eta = tr.snapshot_at(t);
          worst = std::max(worst, std::pow(t, 1.5) * norm_3d(*eta, kInf) / l1);
        }
        return worst;
      }
      case Estimate::semigroup_div: {
        const ScalarField fr = random_bumps(g, seed, n, 0);
        const ScalarField fz = random_bumps(g, seed, n, 1);
        const double fn = vector_norm(g, fr.values(), fz.values(), 1.0);
        double worst = 0.0;
        for (const auto& op : ops) {
          worst = std::max(worst, std::sqrt(op->time()) * norm_2d(op->apply_div(fr, fz), 1.0) / fn);
        }
        return worst;
      }
      default:
        break;
    }
    const ScalarField w = random_bumps(g, seed, n);
    if (semigroup) {
      double worst = 0.0;
      for (const auto& op : ops) {
        const ScalarField s = op->apply(w);
        const double t = op->time();
        double ratio = 0.0;
        if (estimate == Estimate::semigroup_lpq) {
          ratio = t * norm_2d(s, kInf) / norm_2d(w, 1.0);
        } else if (estimate == Estimate::semigroup_weighted_a) {
          ratio = std::sqrt(t) * norm_2d(s, 1.0) / weighted_norm(w, 1.0, 1.0);
        } else {
          ratio = std::sqrt(t) * weighted_norm(s, 1.0, 1.0) / weighted_norm(w, 2.0, 1.0);
        }
        worst = std::max(worst, ratio);
      }
      return worst;
    }
    const VelocityField u = bs->velocity(w);
    const ScalarField eta = omega_to_eta(w);
    switch (estimate) {
      case Estimate::biot_savart_lpq:
        return vector_norm(g, u.u_r, u.u_z, 4.0) / norm_2d(w, 4.0 / 3.0);
      case Estimate::biot_savart_linf:
        return u.sup_norm() / std::sqrt(norm_2d(w, 1.0) * norm_2d(w, kInf));
      case Estimate::biot_savart_weighted_a:
        return vector_norm(g, u.u_r, u.u_z, 2.0) / weighted_norm(w, 0.5, 4.0 / 3.0);
      case Estimate::biot_savart_weighted_b:
        return vector_norm(g, u.u_r, u.u_z, 4.0, 1.0) / weighted_norm(w, 1.0, 4.0 / 3.0);
      case Estimate::biot_savart_ffs:
        return u.sup_norm() / std::sqrt(weighted_norm(w, 1.0, 1.0) * norm_2d(eta, kInf));
      case Estimate::biot_savart_ur_over_r: {
        double m = 0.0;
        for (int i = 0; i < g.n_r(); ++i)
          for (int k = 0; k < g.n_z(); ++k) m = std::max(m, std::abs(u.u_r[g.index(i, k)]) / g.r(i));
        return m / (std::cbrt(norm_2d(w, 1.0)) * std::pow(norm_2d(eta, kInf), 2.0 / 3.0));
      }
      default:
        throw UsageError("inequality_sampler: unhandled estimate");
    }
  };

  SamplerReport rep;
  rep.estimate = to_string(estimate);
  rep.n_samples = n_samples;
  rep.seed = seed;
  rep.ratios.assign(n_samples, 0.0);
  parallel_for(n_samples, [&](int a, int b) {
    for (int n = a; n < b; ++n) rep.ratios[n] = ratio_of(n);
  });
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  rep.min_ratio = *std::min_element(rep.ratios.begin(), rep.ratios.end());
  rep.mean_ratio = std::accumulate(rep.ratios.begin(), rep.ratios.end(), 0.0) / n_samples;
  return rep;
}

}  // namespace axivort
