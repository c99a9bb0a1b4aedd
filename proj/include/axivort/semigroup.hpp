#pragma once

// The semigroup S(t) of the linearized equation
//   d_t w = (d_r^2 + d_z^2 + (1/r) d_r - 1/r^2) w
// with kernel
//   (1/4 pi t) (rb/r)^{1/2} H(t/(r rb)) exp(-((r-rb)^2 + (z-zb)^2)/4t)
// and its divergence form S(t) div_* f, div_* f = d_r f_r + d_z f_z.
//
// Both kernels factor into an (r, rb) part and a Gaussian in z - zb, so on
// a uniform grid an application is a dense n_r x n_r row mix followed by a
// one-dimensional convolution along z.

#include <array>
#include <memory>
#include <vector>

#include "axivort/field.hpp"

namespace axivort {

struct SemigroupOptions {
  /// Sources farther than truncation_sigmas * sqrt(t) (in r or in z) are skipped.
  double truncation_sigmas = 8.0;
  /// Above t = nystrom_ratio * max(h_r, h_z)^2 the kernel is point sampled;
  /// below it the kernel is integrated exactly against the piecewise-linear
  /// interpolant of the data, which stays consistent as t -> 0.
  double nystrom_ratio = 0.5;

  void validate() const;
  bool operator==(const SemigroupOptions&) const = default;
};

double semigroup_kernel(double t, double r, double z, double rb, double zb);
/// (1/4 pi t)(rb/r)^{1/2} exp(-dist^2/4t) (A_r, A_z).
std::array<double, 2> semigroup_div_kernel(double t, double r, double z, double rb, double zb);

class SemigroupOperator {
 public:
  /// No resolution floor is applied here; see apply_S.
  SemigroupOperator(const HalfPlaneGrid& grid, double t, const SemigroupOptions& opts = {});

  double time() const { return t_; }
  const HalfPlaneGrid& grid() const { return grid_; }
  bool nystrom() const { return nystrom_; }

  ScalarField apply(const ScalarField& omega) const;
  ScalarField apply_div(const ScalarField& f_r, const ScalarField& f_z) const;

  void apply(const double* in, double* out) const;
  /// out = S(t) div_* (f_r, f_z); if accumulate, adds `scale` times the
  /// result to out instead of overwriting it.
  void apply_div(const double* f_r, const double* f_z, double* out, double scale = 1.0,
                 bool accumulate = false) const;

 private:
  void build_nystrom();
  void build_hat();
  void mix(const std::vector<double>& C, const double* in, double* out) const;
  void convolve_z(const std::vector<double>& g, const double* in, double* out, double scale,
                  bool accumulate) const;

  HalfPlaneGrid grid_;
  double t_;
  SemigroupOptions opts_;
  bool nystrom_ = true;
  int band_z_ = 0;
  std::vector<int> j_lo_, j_hi_;       // coupled source rows per target row
  std::vector<double> C_, Cr_, Cz_;    // n_r x n_r pair factors
  std::vector<double> g_, gz_;         // z stencils, index d + band_z_
};

/// Smallest t accepted by the user-facing operators: 0.1 h_r h_z / 4.
double resolution_floor(const HalfPlaneGrid& grid);

ScalarField apply_S(double t, const ScalarField& omega, const SemigroupOptions& opts = {});
ScalarField apply_S_measure(double t, const VortexMeasure& measure, const HalfPlaneGrid& grid,
                            const SemigroupOptions& opts = {});
ScalarField apply_S_div(double t, const ScalarField& f_r, const ScalarField& f_z,
                        const SemigroupOptions& opts = {});
/// || S(t1 + t2) w - S(t1) S(t2) w ||_{L^1}.
double semigroup_defect(double t1, double t2, const ScalarField& omega,
                        const SemigroupOptions& opts = {});

}  // namespace axivort
