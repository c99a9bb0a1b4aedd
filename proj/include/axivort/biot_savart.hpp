#pragma once

// Axisymmetric Biot-Savart law: velocity (u_r, u_z) and stream function psi
// from omega_theta, with
//
//   u_r = int G_r omega,   u_z = int G_z omega,
//   psi = (1/2pi) int sqrt(r rb) F(xi^2) omega,   xi^2 = ((r-rb)^2 + (z-zb)^2) / (r rb).
//
// Sums use the midpoint rule; source cells within cutoff_radius_cells of the
// target (in both directions) are integrated by sub-sampling at
// self_cell_subdiv^2 interior points, which handles the integrable 1/dist
// singularity.

#include <array>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "axivort/field.hpp"
#include "axivort/kernels.hpp"
#include "axivort/row_convolution.hpp"

namespace axivort {

struct BiotSavartOptions {
  int self_cell_subdiv = 8;
  int cutoff_radius_cells = 2;
  /// Replace the near-field u_r weights by their pair-antisymmetric part, so
  /// that sum r u_r omega vanishes to roundoff as it does in the continuum.
  bool antisymmetrize = true;
  RowConvolution::Mode mode = RowConvolution::Mode::automatic;

  void validate() const;
  bool operator==(const BiotSavartOptions&) const = default;
};

struct KernelG {
  double G_r = 0.0;
  double G_z = 0.0;
};

/// Exact kernel values from direct special-function evaluation.
/// Throws DomainError for coincident points or r, rb <= 0.
KernelG kernel_G(double r, double z, double rb, double zb,
                 const kernels::KernelEvalPolicy& policy = {});
/// Same, through the memoized kernel table (used by all grid operators).
KernelG kernel_G(double r, double z, double rb, double zb, const kernels::KernelTable& table);

/// Stream-function kernel (1/2pi) sqrt(r rb) F(xi^2).
double kernel_psi(double r, double z, double rb, double zb, const kernels::KernelTable& table);

class BiotSavartOperator {
 public:
  explicit BiotSavartOperator(const HalfPlaneGrid& grid, const BiotSavartOptions& opts = {});

  VelocityField velocity(const ScalarField& omega) const;
  ScalarField stream_function(const ScalarField& omega) const;

  const HalfPlaneGrid& grid() const { return grid_; }
  const BiotSavartOptions& options() const { return opts_; }

  /// Shared instance for (grid, opts); a small number of recently used
  /// operators is kept alive.
  static std::shared_ptr<const BiotSavartOperator> cached(const HalfPlaneGrid& grid,
                                                          const BiotSavartOptions& opts = {});

 private:
  void fill_velocity(int i, int j, double* const* w) const;
  void fill_stream(int i, int j, double* const* w) const;

  HalfPlaneGrid grid_;
  BiotSavartOptions opts_;
  RowConvolution velocity_table_;
  mutable std::once_flag stream_once_;
  mutable std::unique_ptr<RowConvolution> stream_table_;
};

VelocityField velocity(const ScalarField& omega, const BiotSavartOptions& opts = {});
ScalarField stream_function(const ScalarField& omega, const BiotSavartOptions& opts = {});

/// Reference O(N^2) evaluation with the same quadrature rule but no tables
/// and no antisymmetrization.
VelocityField velocity_direct(const ScalarField& omega, const BiotSavartOptions& opts = {});

struct Point {
  double r = 0.0;
  double z = 0.0;
};

/// Velocity of a measure at arbitrary targets: atoms through kernel_G, the
/// density through velocity() interpolated to the targets (exact at grid
/// nodes; targets outside the grid use direct midpoint summation).
/// Throws DomainError when a target coincides with an atom.
std::vector<std::array<double, 2>> velocity_from_measure(const VortexMeasure& measure,
                                                         const std::vector<Point>& targets,
                                                         const BiotSavartOptions& opts = {});

/// Bilinear interpolation of a grid velocity, odd in r for u_r and even for
/// u_z across the axis.
std::array<double, 2> interpolate_velocity(const VelocityField& u, double r, double z);

}  // namespace axivort
