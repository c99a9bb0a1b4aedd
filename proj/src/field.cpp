#include "axivort/field.hpp"

#include <algorithm>
#include <cmath>

#include "axivort/error.hpp"

namespace axivort {

HalfPlaneGrid::HalfPlaneGrid(int n_r, int n_z, double r_max, double z_half)
    : n_r_(n_r), n_z_(n_z), r_max_(r_max), z_half_(z_half) {
  if (n_r < 1 || n_z < 1) throw ConfigError("grid needs n_r >= 1 and n_z >= 1");
  if (!(r_max > 0.0) || !(z_half > 0.0) || !std::isfinite(r_max) || !std::isfinite(z_half)) {
    throw ConfigError("grid extents r_max and z_half must be positive and finite");
  }
}

HalfPlaneGrid HalfPlaneGrid::scaled(double factor) const {
  return HalfPlaneGrid(n_r_, n_z_, r_max_ * factor, z_half_ * factor);
}

HalfPlaneGrid HalfPlaneGrid::refined(int factor) const {
  return HalfPlaneGrid(n_r_ * factor, n_z_ * factor, r_max_, z_half_);
}

std::string to_string(Quantity q) { return q == Quantity::omega_theta ? "omega_theta" : "eta"; }

Quantity quantity_from_string(const std::string& name) {
  if (name == "omega_theta") return Quantity::omega_theta;
  if (name == "eta") return Quantity::eta;
  throw ConfigError("unknown quantity tag '" + name + "'");
}

ScalarField::ScalarField(const HalfPlaneGrid& grid, Quantity tag)
    : grid_(grid), values_(grid.size(), 0.0), tag_(tag) {}

ScalarField::ScalarField(const HalfPlaneGrid& grid, std::vector<double> values, Quantity tag)
    : grid_(grid), values_(std::move(values)), tag_(tag) {
  if (values_.size() != grid_.size()) {
    throw DomainError("field has " + std::to_string(values_.size()) + " values, grid expects " +
                      std::to_string(grid_.size()));
  }
  check_finite();
}

void ScalarField::check_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("field contains a non-finite value");
  }
}

double ScalarField::interpolate(double r, double z) const {
  const double tr = r / grid_.h_r() - 0.5;
  const double tz = (z + grid_.z_half()) / grid_.h_z() - 0.5;
  if (r < 0.0 || tr >= grid_.n_r() || tz <= -1.0 || tz >= grid_.n_z()) return 0.0;
  const int i0 = static_cast<int>(std::floor(tr));
  const int k0 = static_cast<int>(std::floor(tz));
  const double fr = tr - i0;
  const double fz = tz - k0;
  // Ghost nodes: zero beyond the outer edges; across the axis an odd (omega)
  // or even (eta) reflection of the first row.
  auto at = [&](int i, int k) -> double {
    if (k < 0 || k >= grid_.n_z() || i >= grid_.n_r()) return 0.0;
    if (i < 0) {
      const double v = values_[grid_.index(0, k)];
      return tag_ == Quantity::omega_theta ? -v : v;
    }
    return values_[grid_.index(i, k)];
  };
  return (1.0 - fr) * ((1.0 - fz) * at(i0, k0) + fz * at(i0, k0 + 1)) +
         fr * ((1.0 - fz) * at(i0 + 1, k0) + fz * at(i0 + 1, k0 + 1));
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  if (!(grid_ == other.grid_) || tag_ != other.tag_) throw UsageError("adding incompatible fields");
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += other.values_[n];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  if (!(grid_ == other.grid_) || tag_ != other.tag_) {
    throw UsageError("subtracting incompatible fields");
  }
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= other.values_[n];
  return *this;
}

ScalarField& ScalarField::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double c, ScalarField a) { return a *= c; }

void VortexMeasure::validate() const {
  if (density) require_tag(*density, Quantity::omega_theta, "VortexMeasure");
  for (const auto& a : atoms) {
    if (!(a.r > 0.0) || !std::isfinite(a.r) || !std::isfinite(a.z) || !std::isfinite(a.strength)) {
      throw DomainError("atoms must sit at finite points with r > 0");
    }
  }
}

double VortexMeasure::total_variation() const {
  return (density ? norm_2d(*density, 1.0) : 0.0) + atomic_variation();
}

double VortexMeasure::atomic_variation() const {
  double sum = 0.0;
  for (const auto& a : atoms) sum += std::abs(a.strength);
  return sum;
}

double VelocityField::sup_norm() const {
  double m = 0.0;
  for (std::size_t n = 0; n < u_r.size(); ++n) m = std::max(m, std::hypot(u_r[n], u_z[n]));
  return m;
}

namespace {

double weighted_norm(const ScalarField& field, double p, bool three_d) {
  if (!(p >= 1.0)) throw DomainError("L^p norms need p >= 1");
  const auto& g = field.grid();
  const auto& v = field.values();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double sum = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    const double w = three_d ? g.r(i) : 1.0;
    double row = 0.0;
    for (int k = 0; k < g.n_z(); ++k) {
      const double a = std::abs(v[g.index(i, k)]);
      row += p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p));
    }
    sum += w * row;
  }
  sum *= g.cell_area();
  return p == 1.0 ? sum : std::pow(sum, 1.0 / p);
}

}  // namespace

double norm_2d(const ScalarField& field, double p) { return weighted_norm(field, p, false); }
double norm_3d(const ScalarField& field, double p) { return weighted_norm(field, p, true); }

void require_tag(const ScalarField& field, Quantity tag, const char* operation) {
  if (field.tag() != tag) {
    throw UsageError(std::string(operation) + " expects a " + to_string(tag) + " field, got " +
                     to_string(field.tag()));
  }
}

double mass(const ScalarField& field) {
  require_tag(field, Quantity::omega_theta, "mass");
  double sum = 0.0;
  for (double v : field.values()) sum += v;
  return sum * field.grid().cell_area();
}

double impulse(const ScalarField& field) {
  require_tag(field, Quantity::omega_theta, "impulse");
  const auto& g = field.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    double row = 0.0;
    for (int k = 0; k < g.n_z(); ++k) row += field(i, k);
    sum += g.r(i) * g.r(i) * row;
  }
  return sum * g.cell_area();
}

double weighted_l1(const ScalarField& field, double alpha) {
  const auto& g = field.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n_r(); ++i) {
    double row = 0.0;
    for (int k = 0; k < g.n_z(); ++k) row += std::abs(field(i, k));
    sum += std::pow(g.r(i), alpha) * row;
  }
  return sum * g.cell_area();
}

ScalarField rescale_to_selfsimilar(const ScalarField& field, double t,
                                   const HalfPlaneGrid& reference) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("rescaling needs t > 0");
  const double st = std::sqrt(t);
  return ScalarField::sample(reference, field.tag(), [&](double r, double z) {
    return t * t * field.interpolate(r * st, z * st);
  });
}

ScalarField omega_to_eta(const ScalarField& omega) {
  require_tag(omega, Quantity::omega_theta, "omega_to_eta");
  const auto& g = omega.grid();
  std::vector<double> v(omega.values());
  for (int i = 0; i < g.n_r(); ++i)
    for (int k = 0; k < g.n_z(); ++k) v[g.index(i, k)] /= g.r(i);
  return ScalarField(g, std::move(v), Quantity::eta);
}

ScalarField eta_to_omega(const ScalarField& eta) {
  require_tag(eta, Quantity::eta, "eta_to_omega");
  const auto& g = eta.grid();
  std::vector<double> v(eta.values());
  for (int i = 0; i < g.n_r(); ++i)
    for (int k = 0; k < g.n_z(); ++k) v[g.index(i, k)] *= g.r(i);
  return ScalarField(g, std::move(v), Quantity::omega_theta);
}

}  // namespace axivort
