#include "axivort/semigroup.hpp"

#include <algorithm>
#include <cmath>

#include "axivort/error.hpp"
#include "axivort/kernels.hpp"
#include "axivort/parallel.hpp"
#include "axivort/quadrature.hpp"

namespace axivort {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The r-dependent factors of the two kernels; the z-dependence is a pure
// Gaussian and is handled separately.
double radial_S(double t, double r, double rb, const kernels::KernelTable& table) {
  const double dr = r - rb;
  return std::sqrt(rb / r) * table.H(t / (r * rb)) * std::exp(-dr * dr / (4.0 * t)) /
         (4.0 * kPi * t);
}

double radial_div(double t, double r, double rb, const kernels::KernelTable& table) {
  const double dr = r - rb;
  const double tau = t / (r * rb);
  const auto [H, Hp] = table.H_and_H_prime(tau);
  const double A = tau / rb * Hp - (0.5 / rb + dr / (2.0 * t)) * H;
  return std::sqrt(rb / r) * std::exp(-dr * dr / (4.0 * t)) * A / (4.0 * kPi * t);
}

/// Integrals of exp(-(x - y)^2 / 4t) and of its x-derivative against the unit
/// hat of half-width h centred at y = 0.
struct HatGauss {
  double value, derivative;
};

HatGauss hat_gauss(double x, double h, double t) {
  const double a = 4.0 * t;
  const double sa = std::sqrt(a);
  auto G = [&](double y) { return std::exp(-(x - y) * (x - y) / a); };
  auto I0 = [&](double y1, double y2) {
    return 0.5 * std::sqrt(kPi) * sa * (std::erf((y2 - x) / sa) - std::erf((y1 - x) / sa));
  };
  auto I1 = [&](double y1, double y2) { return x * I0(y1, y2) - 0.5 * a * (G(y2) - G(y1)); };
  auto dI0 = [&](double y1, double y2) { return -(G(y2) - G(y1)); };
  auto dI1 = [&](double y1, double y2) { return I0(y1, y2) - y2 * G(y2) + y1 * G(y1); };
  const double value = I0(-h, h) + (I1(-h, 0.0) - I1(0.0, h)) / h;
  const double derivative = dI0(-h, h) + (dI1(-h, 0.0) - dI1(0.0, h)) / h;
  return {value, derivative};
}

}  // namespace

void SemigroupOptions::validate() const {
  if (!(truncation_sigmas >= 4.0)) throw ConfigError("truncation_sigmas must be at least 4");
  if (!(nystrom_ratio > 0.0)) throw ConfigError("nystrom_ratio must be positive");
}

double semigroup_kernel(double t, double r, double z, double rb, double zb) {
  if (!(t > 0.0)) throw DomainError("semigroup kernel needs t > 0");
  if (!(r > 0.0) || !(rb > 0.0)) throw DomainError("semigroup kernel needs r, r_bar > 0");
  const double dz = z - zb;
  return radial_S(t, r, rb, kernels::KernelTable::shared()) * std::exp(-dz * dz / (4.0 * t));
}

std::array<double, 2> semigroup_div_kernel(double t, double r, double z, double rb, double zb) {
  if (!(t > 0.0)) throw DomainError("semigroup kernel needs t > 0");
  if (!(r > 0.0) || !(rb > 0.0)) throw DomainError("semigroup kernel needs r, r_bar > 0");
  const auto& table = kernels::KernelTable::shared();
  const double dz = z - zb;
  const double gz = std::exp(-dz * dz / (4.0 * t));
  return {radial_div(t, r, rb, table) * gz, -dz / (2.0 * t) * radial_S(t, r, rb, table) * gz};
}

SemigroupOperator::SemigroupOperator(const HalfPlaneGrid& grid, double t,
                                     const SemigroupOptions& opts)
    : grid_(grid), t_(t), opts_(opts) {
  opts_.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("semigroup needs a finite t > 0");
  const int nr = grid_.n_r();
  const double hr = grid_.h_r();
  const double hz = grid_.h_z();
  const double reach = opts_.truncation_sigmas * std::sqrt(t);
  band_z_ = std::min(grid_.n_z() - 1, static_cast<int>(std::ceil(reach / hz)) + 1);
  const int band_r = static_cast<int>(std::ceil(reach / hr)) + 1;
  j_lo_.resize(nr);
  j_hi_.resize(nr);
  for (int i = 0; i < nr; ++i) {
    j_lo_[i] = std::max(0, i - band_r);
    j_hi_[i] = std::min(nr - 1, i + band_r);
  }
  C_.assign(static_cast<std::size_t>(nr) * nr, 0.0);
  Cr_.assign(static_cast<std::size_t>(nr) * nr, 0.0);
  g_.assign(2 * band_z_ + 1, 0.0);
  gz_.assign(2 * band_z_ + 1, 0.0);
  const double h = std::max(hr, hz);
  nystrom_ = t >= opts_.nystrom_ratio * h * h;
  if (nystrom_) {
    build_nystrom();
  } else {
    build_hat();
  }
}

void SemigroupOperator::build_nystrom() {
  const auto& table = kernels::KernelTable::shared();
  const int nr = grid_.n_r();
  const double hr = grid_.h_r();
  const double hz = grid_.h_z();
  const double t = t_;
  parallel_for(nr, [&](int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
      for (int j = j_lo_[i]; j <= j_hi_[i]; ++j) {
        C_[static_cast<std::size_t>(i) * nr + j] = radial_S(t, grid_.r(i), grid_.r(j), table) * hr;
        Cr_[static_cast<std::size_t>(i) * nr + j] =
            radial_div(t, grid_.r(i), grid_.r(j), table) * hr;
      }
    }
  });
  for (int d = -band_z_; d <= band_z_; ++d) {
    const double x = d * hz;
    const double e = std::exp(-x * x / (4.0 * t)) * hz;
    g_[d + band_z_] = e;
    gz_[d + band_z_] = -x / (2.0 * t) * e;
  }
}

void SemigroupOperator::build_hat() {
  const auto& table = kernels::KernelTable::shared();
  const int nr = grid_.n_r();
  const double hr = grid_.h_r();
  const double hz = grid_.h_z();
  const double t = t_;
  const double reach = opts_.truncation_sigmas * std::sqrt(t);
  const double abs_tol = 1e-15 / t;
  parallel_for(nr, [&](int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
      const double ri = grid_.r(i);
      const double lo = ri - reach;
      const double hi = ri + reach;
      for (int j = j_lo_[i]; j <= j_hi_[i]; ++j) {
        const double rj = grid_.r(j);
        // Piecewise-linear basis function of node j. Node 0 interpolates to
        // zero at the axis; beyond the last node the data is zero.
        const double left = j == 0 ? 0.0 : grid_.r(j - 1);
        const double right = grid_.r(j) + hr;
        auto basis = [&](double rb) {
          return rb <= rj ? (rb - left) / (rj - left) : (right - rb) / (right - rj);
        };
        double s = 0.0, sr = 0.0;
        for (auto [a, b] : {std::pair{left, rj}, std::pair{rj, right}}) {
          a = std::max(a, lo);
          b = std::min(b, hi);
          if (!(b > a)) continue;
          std::vector<double> breaks{a};
          if (ri > a && ri < b) breaks.push_back(ri);
          breaks.push_back(b);
          s += quad::integrate_pieces(
                   [&](double rb) { return basis(rb) * radial_S(t, ri, rb, table); }, breaks,
                   abs_tol, 200)
                   .value;
          sr += quad::integrate_pieces(
                    [&](double rb) { return basis(rb) * radial_div(t, ri, rb, table); }, breaks,
                    abs_tol / t, 200)
                    .value;
        }
        C_[static_cast<std::size_t>(i) * nr + j] = s;
        Cr_[static_cast<std::size_t>(i) * nr + j] = sr;
      }
    }
  });
  for (int d = -band_z_; d <= band_z_; ++d) {
    const HatGauss hg = hat_gauss(d * hz, hz, t);
    g_[d + band_z_] = hg.value;
    gz_[d + band_z_] = hg.derivative;
  }
}

void SemigroupOperator::mix(const std::vector<double>& C, const double* in, double* out) const {
  const int nr = grid_.n_r();
  const int nz = grid_.n_z();
  parallel_for(nr, [&](int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
      double* o = out + static_cast<std::size_t>(i) * nz;
      std::fill(o, o + nz, 0.0);
      for (int j = j_lo_[i]; j <= j_hi_[i]; ++j) {
        const double c = C[static_cast<std::size_t>(i) * nr + j];
        if (c == 0.0) continue;
        const double* v = in + static_cast<std::size_t>(j) * nz;
        for (int k = 0; k < nz; ++k) o[k] += c * v[k];
      }
    }
  });
}

void SemigroupOperator::convolve_z(const std::vector<double>& g, const double* in, double* out,
                                   double scale, bool accumulate) const {
  const int nr = grid_.n_r();
  const int nz = grid_.n_z();
  const int D = band_z_;
  parallel_for(nr, [&](int i0, int i1) {
    std::vector<double> row(nz);
    for (int i = i0; i < i1; ++i) {
      const double* v = in + static_cast<std::size_t>(i) * nz;
      std::fill(row.begin(), row.end(), 0.0);
      for (int l = 0; l < nz; ++l) {
        const double vl = v[l];
        if (vl == 0.0) continue;
        const int k0 = std::max(0, l - D);
        const int k1 = std::min(nz - 1, l + D);
        const double* gl = g.data() + D - l;  // gl[k] = g(k - l)
        for (int k = k0; k <= k1; ++k) row[k] += gl[k] * vl;
      }
      double* o = out + static_cast<std::size_t>(i) * nz;
      if (accumulate) {
        for (int k = 0; k < nz; ++k) o[k] += scale * row[k];
      } else {
        for (int k = 0; k < nz; ++k) o[k] = scale * row[k];
      }
    }
  });
}

void SemigroupOperator::apply(const double* in, double* out) const {
  std::vector<double> tmp(grid_.size());
  mix(C_, in, tmp.data());
  convolve_z(g_, tmp.data(), out, 1.0, false);
}

void SemigroupOperator::apply_div(const double* f_r, const double* f_z, double* out, double scale,
                                  bool accumulate) const {
  std::vector<double> tmp(grid_.size());
  mix(Cr_, f_r, tmp.data());
  convolve_z(g_, tmp.data(), out, scale, accumulate);
  mix(C_, f_z, tmp.data());
  convolve_z(gz_, tmp.data(), out, scale, true);
}

ScalarField SemigroupOperator::apply(const ScalarField& omega) const {
  require_tag(omega, Quantity::omega_theta, "apply_S");
  if (!(omega.grid() == grid_)) throw UsageError("apply_S: field grid differs from operator grid");
  std::vector<double> out(grid_.size());
  apply(omega.values().data(), out.data());
  return ScalarField(grid_, std::move(out), Quantity::omega_theta);
}

ScalarField SemigroupOperator::apply_div(const ScalarField& f_r, const ScalarField& f_z) const {
  if (!(f_r.grid() == grid_) || !(f_z.grid() == grid_)) {
    throw UsageError("apply_S_div: flux grid differs from operator grid");
  }
  std::vector<double> out(grid_.size());
  apply_div(f_r.values().data(), f_z.values().data(), out.data());
  return ScalarField(grid_, std::move(out), Quantity::omega_theta);
}

double resolution_floor(const HalfPlaneGrid& grid) { return 0.1 * grid.h_r() * grid.h_z() / 4.0; }

namespace {
void check_time(double t, const HalfPlaneGrid& grid) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("semigroup time must be finite and >= 0");
  if (t > 0.0 && t < resolution_floor(grid)) {
    throw ResolutionError("t = " + std::to_string(t) + " is below the grid resolution floor " +
                          std::to_string(resolution_floor(grid)));
  }
}
}  // namespace

ScalarField apply_S(double t, const ScalarField& omega, const SemigroupOptions& opts) {
  require_tag(omega, Quantity::omega_theta, "apply_S");
  check_time(t, omega.grid());
  if (t == 0.0) return omega;
  return SemigroupOperator(omega.grid(), t, opts).apply(omega);
}

ScalarField apply_S_measure(double t, const VortexMeasure& measure, const HalfPlaneGrid& grid,
                            const SemigroupOptions& opts) {
  measure.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("apply_S_measure needs t > 0");
  ScalarField out(grid, Quantity::omega_theta);
  if (measure.density) {
    if (!(measure.density->grid() == grid)) {
      throw UsageError("apply_S_measure: density grid differs from the output grid");
    }
    out = apply_S(t, *measure.density, opts);
  }
  for (const auto& a : measure.atoms) {
    for (int i = 0; i < grid.n_r(); ++i)
      for (int k = 0; k < grid.n_z(); ++k)
        out(i, k) += a.strength * semigroup_kernel(t, grid.r(i), grid.z(k), a.r, a.z);
  }
  out.check_finite();
  return out;
}

ScalarField apply_S_div(double t, const ScalarField& f_r, const ScalarField& f_z,
                        const SemigroupOptions& opts) {
  check_time(t, f_r.grid());
  if (t == 0.0) throw DomainError("S(0) div_* f is a derivative; use t > 0");
  return SemigroupOperator(f_r.grid(), t, opts).apply_div(f_r, f_z);
}

double semigroup_defect(double t1, double t2, const ScalarField& omega,
                        const SemigroupOptions& opts) {
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw DomainError("semigroup_defect needs t1, t2 > 0");
  const ScalarField once = apply_S(t1 + t2, omega, opts);
  const ScalarField twice = apply_S(t1, apply_S(t2, omega, opts), opts);
  return norm_2d(once - twice, 1.0);
}

}  // namespace axivort
