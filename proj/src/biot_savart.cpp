#include "axivort/biot_savart.hpp"

#include <cmath>
#include <cstdlib>
#include <list>

#include "axivort/error.hpp"
#include "axivort/parallel.hpp"

namespace axivort {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Kernel {
  double F, Fp;
};

template <class Eval>
KernelG assemble_G(double r, double z, double rb, double zb, Eval&& eval) {
  if (!(r > 0.0) || !(rb > 0.0)) throw DomainError("kernel_G needs r > 0 and r_bar > 0");
  const double dr = r - rb;
  const double dz = z - zb;
  const double xi2 = (dr * dr + dz * dz) / (r * rb);
  if (!(xi2 > 0.0)) throw DomainError("kernel_G evaluated at coincident points");
  const Kernel k = eval(xi2);
  const double r32 = r * std::sqrt(r);
  const double srb = std::sqrt(rb);
  const double c = k.Fp / (kPi * r32 * srb);
  return {-dz * c, dr * c + srb / (4.0 * kPi * r32) * (k.F - 2.0 * xi2 * k.Fp)};
}

/// Mean of fn over an m x m lattice of sub-cell midpoints of the cell
/// centred at (rc, zc), skipping any point that coincides with the target.
template <class Fn>
void subsample(double rc, double zc, double hr, double hz, int m, Fn&& fn) {
  for (int a = 0; a < m; ++a) {
    const double rb = rc + ((a + 0.5) / m - 0.5) * hr;
    for (int b = 0; b < m; ++b) {
      const double zb = zc + ((b + 0.5) / m - 0.5) * hz;
      fn(rb, zb);
    }
  }
}

/// Cell integral of (G_r, G_z) for a target at (r, z) and the source cell
/// centred at (rc, zc).
KernelG cell_G(double r, double z, double rc, double zc, double hr, double hz, int m,
               const kernels::KernelTable& table) {
  KernelG sum;
  subsample(rc, zc, hr, hz, m, [&](double rb, double zb) {
    if (rb == r && zb == z) return;
    const KernelG g = kernel_G(r, z, rb, zb, table);
    sum.G_r += g.G_r;
    sum.G_z += g.G_z;
  });
  const double w = hr * hz / (m * m);
  return {sum.G_r * w, sum.G_z * w};
}

double cell_psi(double r, double z, double rc, double zc, double hr, double hz, int m,
                const kernels::KernelTable& table) {
  double sum = 0.0;
  subsample(rc, zc, hr, hz, m, [&](double rb, double zb) {
    if (rb == r && zb == z) return;
    sum += kernel_psi(r, z, rb, zb, table);
  });
  return sum * hr * hz / (m * m);
}

}  // namespace

void BiotSavartOptions::validate() const {
  if (self_cell_subdiv < 2) throw ConfigError("self_cell_subdiv must be at least 2");
  if (cutoff_radius_cells < 0) throw ConfigError("cutoff_radius_cells must be nonnegative");
}

KernelG kernel_G(double r, double z, double rb, double zb, const kernels::KernelEvalPolicy& policy) {
  return assemble_G(r, z, rb, zb, [&](double s) {
    return Kernel{kernels::eval_F(s, policy), kernels::eval_F_prime(s, policy)};
  });
}

KernelG kernel_G(double r, double z, double rb, double zb, const kernels::KernelTable& table) {
  return assemble_G(r, z, rb, zb, [&](double s) {
    const auto [F, Fp] = table.F_and_F_prime(s);
    return Kernel{F, Fp};
  });
}

double kernel_psi(double r, double z, double rb, double zb, const kernels::KernelTable& table) {
  const double dr = r - rb;
  const double dz = z - zb;
  const double rr = r * rb;
  const double xi2 = (dr * dr + dz * dz) / rr;
  if (!(xi2 > 0.0)) throw DomainError("stream kernel evaluated at coincident points");
  return std::sqrt(rr) * table.F(xi2) / (2.0 * kPi);
}

BiotSavartOperator::BiotSavartOperator(const HalfPlaneGrid& grid, const BiotSavartOptions& opts)
    : grid_(grid),
      opts_((opts.validate(), opts)),
      velocity_table_(
          grid.n_r(), grid.n_z(), 2,
          [this](int i, int j, double* const* w) { fill_velocity(i, j, w); }, opts.mode) {}

void BiotSavartOperator::fill_velocity(int i, int j, double* const* w) const {
  const auto& table = kernels::KernelTable::shared();
  const int nz = grid_.n_z();
  const double hr = grid_.h_r();
  const double hz = grid_.h_z();
  const double area = grid_.cell_area();
  const double ri = grid_.r(i);
  const double rj = grid_.r(j);
  const int m = opts_.self_cell_subdiv;
  const int cut = opts_.cutoff_radius_cells;
  const bool near_rows = std::abs(i - j) <= cut;
  const double inv_sqrt = 1.0 / std::sqrt(ri * rj);
  const double dr2 = (ri - rj) * (ri - rj);
  const double rr = ri * rj;
  for (int d = -(nz - 1); d <= nz - 1; ++d) {
    const double z = d * hz;
    double wr, wz;
    if (near_rows && std::abs(d) <= cut) {
      const KernelG g = cell_G(ri, z, rj, 0.0, hr, hz, m, table);
      wz = g.G_z;
      if (opts_.antisymmetrize) {
        const KernelG mirror = cell_G(rj, -z, ri, 0.0, hr, hz, m, table);
        wr = 0.5 * (ri * g.G_r - rj * mirror.G_r) / ri;
      } else {
        wr = g.G_r;
      }
    } else if (opts_.antisymmetrize) {
      // r_i G_r written in a form that is bitwise antisymmetric under (i, d) <-> (j, -d).
      const double xi2 = (dr2 + z * z) / rr;
      const auto [F, Fp] = table.F_and_F_prime(xi2);
      const double v = -z * inv_sqrt * Fp / kPi * area;
      wr = v / ri;
      const double r32 = ri * std::sqrt(ri);
      const double srb = std::sqrt(rj);
      wz = ((ri - rj) * Fp / (kPi * r32 * srb) + srb / (4.0 * kPi * r32) * (F - 2.0 * xi2 * Fp)) *
           area;
    } else {
      const KernelG g = kernel_G(ri, z, rj, 0.0, table);
      wr = g.G_r * area;
      wz = g.G_z * area;
    }
    w[0][d + nz - 1] = wr;
    w[1][d + nz - 1] = wz;
  }
}

void BiotSavartOperator::fill_stream(int i, int j, double* const* w) const {
  const auto& table = kernels::KernelTable::shared();
  const int nz = grid_.n_z();
  const double hr = grid_.h_r();
  const double hz = grid_.h_z();
  const double ri = grid_.r(i);
  const double rj = grid_.r(j);
  const int cut = opts_.cutoff_radius_cells;
  const bool near_rows = std::abs(i - j) <= cut;
  for (int d = -(nz - 1); d <= nz - 1; ++d) {
    const double z = d * hz;
    w[0][d + nz - 1] = (near_rows && std::abs(d) <= cut)
                           ? cell_psi(ri, z, rj, 0.0, hr, hz, opts_.self_cell_subdiv, table)
                           : kernel_psi(ri, z, rj, 0.0, table) * grid_.cell_area();
  }
}

VelocityField BiotSavartOperator::velocity(const ScalarField& omega) const {
  require_tag(omega, Quantity::omega_theta, "velocity");
  if (!(omega.grid() == grid_)) throw UsageError("velocity: field grid differs from operator grid");
  VelocityField u{grid_, std::vector<double>(grid_.size()), std::vector<double>(grid_.size())};
  double* out[2] = {u.u_r.data(), u.u_z.data()};
  velocity_table_.apply(omega.values().data(), out);
  return u;
}

ScalarField BiotSavartOperator::stream_function(const ScalarField& omega) const {
  require_tag(omega, Quantity::omega_theta, "stream_function");
  if (!(omega.grid() == grid_)) {
    throw UsageError("stream_function: field grid differs from operator grid");
  }
  std::call_once(stream_once_, [this] {
    stream_table_ = std::make_unique<RowConvolution>(
        grid_.n_r(), grid_.n_z(), 1,
        [this](int i, int j, double* const* w) { fill_stream(i, j, w); }, opts_.mode);
  });
  std::vector<double> psi(grid_.size());
  double* out[1] = {psi.data()};
  stream_table_->apply(omega.values().data(), out);
  // psi carries no quantity of its own; it is tagged omega_theta so that it
  // shares the Dirichlet convention at the axis.
  return ScalarField(grid_, std::move(psi), Quantity::omega_theta);
}

std::shared_ptr<const BiotSavartOperator> BiotSavartOperator::cached(const HalfPlaneGrid& grid,
                                                                     const BiotSavartOptions& opts) {
  struct Entry {
    HalfPlaneGrid grid;
    BiotSavartOptions opts;
    std::shared_ptr<const BiotSavartOperator> op;
  };
  static std::mutex mutex;
  static std::list<Entry> entries;
  constexpr std::size_t kKeep = 2;
  std::lock_guard lock(mutex);
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    if (it->grid == grid && it->opts == opts) {
      entries.splice(entries.begin(), entries, it);
      return entries.front().op;
    }
  }
  auto op = std::make_shared<const BiotSavartOperator>(grid, opts);
  entries.push_front({grid, opts, op});
  while (entries.size() > kKeep) entries.pop_back();
  return op;
}

VelocityField velocity(const ScalarField& omega, const BiotSavartOptions& opts) {
  return BiotSavartOperator::cached(omega.grid(), opts)->velocity(omega);
}

ScalarField stream_function(const ScalarField& omega, const BiotSavartOptions& opts) {
  return BiotSavartOperator::cached(omega.grid(), opts)->stream_function(omega);
}

namespace {

/// Midpoint sum over all source cells for one target, sub-sampling cells
/// within the cutoff box.
std::array<double, 2> direct_sum(const ScalarField& omega, double r, double z,
                                 const BiotSavartOptions& opts) {
  const auto& g = omega.grid();
  const auto& table = kernels::KernelTable::shared();
  const double hr = g.h_r();
  const double hz = g.h_z();
  const double cut = opts.cutoff_radius_cells;
  double ur = 0.0, uz = 0.0;
  for (int j = 0; j < g.n_r(); ++j) {
    for (int l = 0; l < g.n_z(); ++l) {
      const double v = omega(j, l);
      if (v == 0.0) continue;
      const double rj = g.r(j);
      const double zl = g.z(l);
      KernelG k;
      if (std::abs(r - rj) <= cut * hr * (1.0 + 1e-12) &&
          std::abs(z - zl) <= cut * hz * (1.0 + 1e-12)) {
        k = cell_G(r, z, rj, zl, hr, hz, opts.self_cell_subdiv, table);
      } else {
        k = kernel_G(r, z, rj, zl, table);
        k.G_r *= g.cell_area();
        k.G_z *= g.cell_area();
      }
      ur += k.G_r * v;
      uz += k.G_z * v;
    }
  }
  return {ur, uz};
}

}  // namespace

VelocityField velocity_direct(const ScalarField& omega, const BiotSavartOptions& opts) {
  require_tag(omega, Quantity::omega_theta, "velocity_direct");
  opts.validate();
  const auto& g = omega.grid();
  VelocityField u{g, std::vector<double>(g.size()), std::vector<double>(g.size())};
  parallel_for(g.n_r(), [&](int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
      for (int k = 0; k < g.n_z(); ++k) {
        const auto v = direct_sum(omega, g.r(i), g.z(k), opts);
        u.u_r[g.index(i, k)] = v[0];
        u.u_z[g.index(i, k)] = v[1];
      }
    }
  });
  return u;
}

std::array<double, 2> interpolate_velocity(const VelocityField& u, double r, double z) {
  const auto& g = u.grid;
  const double tr = std::clamp(r / g.h_r() - 0.5, -0.5, g.n_r() - 1.0);
  const double tz = std::clamp((z + g.z_half()) / g.h_z() - 0.5, 0.0, g.n_z() - 1.0);
  const int i0 = std::min(static_cast<int>(std::floor(tr)), g.n_r() - 2);
  const int k0 = std::min(static_cast<int>(std::floor(tz)), std::max(g.n_z() - 2, 0));
  const double fr = tr - i0;
  const double fz = g.n_z() > 1 ? tz - k0 : 0.0;
  auto at = [&](const std::vector<double>& v, int i, int k, double parity) {
    k = std::min(k, g.n_z() - 1);
    if (i < 0) return parity * v[g.index(0, k)];
    return v[g.index(std::min(i, g.n_r() - 1), k)];
  };
  std::array<double, 2> out{};
  const std::vector<double>* comps[2] = {&u.u_r, &u.u_z};
  const double parity[2] = {-1.0, 1.0};
  for (int c = 0; c < 2; ++c) {
    const auto& v = *comps[c];
    out[c] = (1.0 - fr) * ((1.0 - fz) * at(v, i0, k0, parity[c]) + fz * at(v, i0, k0 + 1, parity[c])) +
             fr * ((1.0 - fz) * at(v, i0 + 1, k0, parity[c]) +
                   fz * at(v, i0 + 1, k0 + 1, parity[c]));
  }
  return out;
}

std::vector<std::array<double, 2>> velocity_from_measure(const VortexMeasure& measure,
                                                         const std::vector<Point>& targets,
                                                         const BiotSavartOptions& opts) {
  measure.validate();
  opts.validate();
  std::vector<std::array<double, 2>> out(targets.size(), {0.0, 0.0});
  for (const auto& t : targets) {
    if (!(t.r > 0.0)) throw DomainError("velocity targets need r > 0");
    for (const auto& a : measure.atoms) {
      if (a.r == t.r && a.z == t.z) throw DomainError("velocity target coincides with an atom");
    }
  }
  if (measure.density) {
    const auto& omega = *measure.density;
    const auto& g = omega.grid();
    std::optional<VelocityField> u;
    for (std::size_t n = 0; n < targets.size(); ++n) {
      const auto& t = targets[n];
      const bool inside = t.r <= g.r(g.n_r() - 1) && t.z >= g.z(0) && t.z <= g.z(g.n_z() - 1);
      if (inside && g.n_r() > 1) {
        if (!u) u = velocity(omega, opts);
        out[n] = interpolate_velocity(*u, t.r, t.z);
      } else {
        out[n] = direct_sum(omega, t.r, t.z, opts);
      }
    }
  }
  for (std::size_t n = 0; n < targets.size(); ++n) {
    for (const auto& a : measure.atoms) {
      const KernelG k = kernel_G(targets[n].r, targets[n].z, a.r, a.z);
      out[n][0] += a.strength * k.G_r;
      out[n][1] += a.strength * k.G_z;
    }
  }
  return out;
}

}  // namespace axivort
