#pragma once

// Finite-difference oracle for eta = omega_theta / r,
//   d_t eta + u . grad eta = d_r^2 eta + (3/r) d_r eta + d_z^2 eta,
// with a mirror ghost row at the axis (zero normal derivative), eta = 0
// outside the box, first-order upwind advection and explicit Euler steps.
// The scheme is monotone under the step bound below, so nonnegative data
// stay nonnegative. It shares nothing with the mild solver except the
// Biot-Savart velocity.

#include <vector>

#include "axivort/biot_savart.hpp"
#include "axivort/field.hpp"
#include "axivort/mild_solver.hpp"

namespace axivort {

struct FdConfig {
  /// false drops the advection term (pure linear flow).
  bool advection = true;
  std::vector<double> snapshot_times;
  BiotSavartOptions biot_savart;

  void validate() const;
};

/// Largest monotone Euler step,
///   1 / (4/h_r^2 + 2/h_z^2 + max|u_r|/h_r + max|u_z|/h_z).
double fd_max_dt(const HalfPlaneGrid& grid, const VelocityField* u);

/// Snapshots are eta-tagged; records describe omega = r eta. Steps are
/// shortened to land on snapshot times. Throws ConfigError when fd_dt
/// exceeds fd_max_dt at any step.
Trajectory fd_eta_solve(const ScalarField& initial_eta, double t_final, double fd_dt,
                        const FdConfig& fd_config);

struct CrossValidationReport {
  std::vector<double> times;
  std::vector<double> l1_relative;    // ||w_mild - w_fd||_1 / ||w_mild||_1
  std::vector<double> linf_relative;  // same in sup norm
};

/// Runs both solvers from the same omega and compares omega at t_final and at
/// the solver snapshot times. fd_dt = 0 picks 0.9 fd_max_dt of the initial
/// velocity.
CrossValidationReport cross_validate(const ScalarField& initial, double t_final,
                                     const SolverConfig& config, const FdConfig& fd_config,
                                     double fd_dt = 0.0);

}  // namespace axivort
