#pragma once

// Grids, fields and measures on the meridian half-plane {r > 0, z in R}.
//
// Values are stored row-major with the r-index outer: value(i, k) sits at
// i * n_z + k, with r_i = (i + 1/2) h_r and z_k = -z_half + (k + 1/2) h_z.

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace axivort {

class HalfPlaneGrid {
 public:
  HalfPlaneGrid() = default;
  /// Throws ConfigError unless every argument is positive.
  HalfPlaneGrid(int n_r, int n_z, double r_max, double z_half);

  int n_r() const { return n_r_; }
  int n_z() const { return n_z_; }
  double r_max() const { return r_max_; }
  double z_half() const { return z_half_; }
  double h_r() const { return r_max_ / n_r_; }
  double h_z() const { return 2.0 * z_half_ / n_z_; }
  double cell_area() const { return h_r() * h_z(); }
  std::size_t size() const { return static_cast<std::size_t>(n_r_) * n_z_; }

  double r(int i) const { return (i + 0.5) * h_r(); }
  double z(int k) const { return -z_half_ + (k + 0.5) * h_z(); }
  std::size_t index(int i, int k) const { return static_cast<std::size_t>(i) * n_z_ + k; }

  /// Same node counts, extents scaled by `factor`.
  HalfPlaneGrid scaled(double factor) const;
  /// Node counts multiplied by `factor`, same extents.
  HalfPlaneGrid refined(int factor) const;

  bool operator==(const HalfPlaneGrid&) const = default;

 private:
  int n_r_ = 1;
  int n_z_ = 1;
  double r_max_ = 1.0;
  double z_half_ = 0.5;
};

enum class Quantity { omega_theta, eta };

std::string to_string(Quantity q);
/// Throws ConfigError for unknown names.
Quantity quantity_from_string(const std::string& name);

class ScalarField {
 public:
  ScalarField() = default;
  /// Zero field.
  ScalarField(const HalfPlaneGrid& grid, Quantity tag);
  /// Throws DomainError when the size does not match or a value is not finite.
  ScalarField(const HalfPlaneGrid& grid, std::vector<double> values, Quantity tag);

  template <class Fn>
  static ScalarField sample(const HalfPlaneGrid& grid, Quantity tag, Fn&& fn) {
    ScalarField out(grid, tag);
    for (int i = 0; i < grid.n_r(); ++i)
      for (int k = 0; k < grid.n_z(); ++k) out.values_[grid.index(i, k)] = fn(grid.r(i), grid.z(k));
    out.check_finite();
    return out;
  }

  const HalfPlaneGrid& grid() const { return grid_; }
  Quantity tag() const { return tag_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator()(int i, int k) const { return values_[grid_.index(i, k)]; }
  double& operator()(int i, int k) { return values_[grid_.index(i, k)]; }

  /// Bilinear interpolation at an arbitrary point. Towards the axis the
  /// boundary condition of the tag is honoured (zero for omega_theta, zero
  /// slope for eta); outside the grid the field reads 0.
  double interpolate(double r, double z) const;

  void check_finite() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double c);

 private:
  HalfPlaneGrid grid_;
  std::vector<double> values_;
  Quantity tag_ = Quantity::omega_theta;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);

/// A circular vortex filament of circulation `strength` through (r, z).
struct Atom {
  double r = 1.0;
  double z = 0.0;
  double strength = 1.0;
};

struct VortexMeasure {
  std::optional<ScalarField> density;
  std::vector<Atom> atoms;

  /// Throws DomainError for atoms off the half-plane, UsageError for an
  /// eta-tagged density.
  void validate() const;
  double total_variation() const;
  double atomic_variation() const;
};

struct VelocityField {
  HalfPlaneGrid grid;
  std::vector<double> u_r;
  std::vector<double> u_z;

  double sup_norm() const;
};

struct DiagnosticsRecord {
  double time = 0.0;
  double l1_2d = 0.0;
  std::map<double, double> lp_2d;         // p -> ||omega||_p, p = inf stored as infinity
  double mass = 0.0;
  double impulse = 0.0;
  double u_sup = 0.0;
  std::map<double, double> scaled_norms;  // p -> t^{1-1/p} ||omega||_p
  std::optional<double> profile_l1_distance;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Midpoint-rule L^p norm with respect to dr dz; p = kInf gives the max.
double norm_2d(const ScalarField& field, double p);
/// Midpoint-rule L^p norm with respect to r dr dz.
double norm_3d(const ScalarField& field, double p);
/// Signed integral of omega_theta over the half-plane (dr dz).
double mass(const ScalarField& field);
/// Signed integral of r^2 omega_theta (dr dz).
double impulse(const ScalarField& field);
/// Integral of r * omega_theta (dr dz), i.e. ||r omega||_1 for positive data.
double weighted_l1(const ScalarField& field, double alpha);

/// w(r, z) = t^2 omega(r sqrt(t), z sqrt(t)) sampled on `reference`.
ScalarField rescale_to_selfsimilar(const ScalarField& field, double t,
                                   const HalfPlaneGrid& reference);

ScalarField omega_to_eta(const ScalarField& omega);
ScalarField eta_to_omega(const ScalarField& eta);

/// Throws UsageError unless the tag matches.
void require_tag(const ScalarField& field, Quantity tag, const char* operation);

}  // namespace axivort
