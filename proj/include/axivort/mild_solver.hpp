#pragma once

// Mild solutions of
//   d_t w + div_*(u w) = (d_r^2 + d_z^2 + (1/r) d_r - 1/r^2) w,   u = BS[w],
// by restarting the Duhamel formula every dt:
//   w(t0 + dt) = S(dt) w(t0) - int_0^dt S(dt - s) div_*(u w)(t0 + s) ds.
//
// The s-integral is taken with Gauss-Legendre nodes in sigma after the
// substitution dt - s = dt sigma^2, which absorbs the (dt - s)^{-1/2}
// singularity of S(dt - s) div_*. The values of w at the nodes
// s_j = dt (1 - sigma_j^2) are themselves obtained from the same formula on
// [0, s_j], with the flux interpolated in time through s = 0 and the s_j, and
// the whole set is converged by Picard iteration.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "axivort/biot_savart.hpp"
#include "axivort/field.hpp"
#include "axivort/semigroup.hpp"

namespace axivort {

struct SolverConfig {
  double dt = 0.05;
  int duhamel_nodes = 4;
  double picard_tol = 1e-10;
  int picard_max_iter = 30;
  double xt_horizon = 1.0;
  /// false replaces every step by S(dt) (linear flow).
  bool nonlinear = true;
  /// How many times a failed step may be retried with half the step size.
  int max_halvings = 4;
  /// Atomic initial data with total variation above this is attempted but
  /// flagged.
  double atom_warning_eps = 0.5;
  /// Times at which full fields are kept in the trajectory (in addition to
  /// the initial and the final one).
  std::vector<double> snapshot_times;
  BiotSavartOptions biot_savart;
  SemigroupOptions semigroup;

  void validate() const;
};

struct Trajectory {
  std::vector<std::pair<double, ScalarField>> snapshots;
  std::vector<DiagnosticsRecord> records;
  std::vector<std::pair<double, double>> xt_norm_history;
  std::vector<int> picard_iterations;
  std::vector<std::string> warnings;
  double initial_impulse = 0.0;

  /// Snapshot at time t (within 1e-9 relative); nullptr if absent.
  const ScalarField* snapshot_at(double t) const;
};

/// Diagnostics of a single field; u_sup only when a velocity is supplied.
DiagnosticsRecord make_record(double time, const ScalarField& omega, const VelocityField* u);

struct StepInfo {
  int iterations = 0;
  std::vector<double> increments;  // L^1 change per Picard sweep
  std::vector<double> node_times;  // s_j, ascending
  std::vector<ScalarField> node_values;
};

/// Precomputed operators for one step size; reusable across steps.
class DuhamelStepper {
 public:
  DuhamelStepper(const HalfPlaneGrid& grid, double dt, const SolverConfig& config);

  double dt() const { return dt_; }

  /// Advances omega by dt. `u0` may carry the velocity of omega if already
  /// known. Throws StepFailure when Picard does not converge.
  ScalarField step(const ScalarField& omega, const VelocityField* u0 = nullptr,
                   StepInfo* info = nullptr) const;

  struct Result {
    ScalarField omega;
    bool converged = false;
    double residual = 0.0;
  };
  /// As step(), but reports non-convergence instead of throwing.
  Result try_step(const ScalarField& omega, const VelocityField* u0 = nullptr,
                  StepInfo* info = nullptr) const;

 private:
  struct Flux {
    std::vector<double> r, z;
  };
  Flux flux(const ScalarField& omega, const VelocityField* u) const;

  HalfPlaneGrid grid_;
  double dt_;
  SolverConfig config_;
  std::shared_ptr<const BiotSavartOperator> bs_;
  std::vector<double> sigma_, weight_, node_times_;
  std::unique_ptr<SemigroupOperator> S_end_;
  std::vector<std::unique_ptr<SemigroupOperator>> S_node_;
  std::vector<std::unique_ptr<SemigroupOperator>> Sdiv_end_;
  std::vector<std::vector<std::unique_ptr<SemigroupOperator>>> Sdiv_node_;
  // lagrange_[j][l][p]: weight of the flux at time p (0 = start, p >= 1 the
  // node s_p) in the interpolant evaluated at s_j (1 - sigma_l^2).
  std::vector<std::vector<std::vector<double>>> lagrange_;
};

ScalarField duhamel_step(const ScalarField& omega, double dt, const SolverConfig& config,
                         StepInfo* info = nullptr);

/// Called after every completed step (and once for the initial state).
using StepCallback = std::function<void(const DiagnosticsRecord&, const ScalarField&)>;

Trajectory evolve(const ScalarField& initial, double t_final, const SolverConfig& config,
                  const StepCallback& on_step = {});
/// Measure data: the first step is the linear flow of the measure over dt,
/// which turns atoms into a field; the trajectory starts at t = dt.
Trajectory evolve(const VortexMeasure& initial, const HalfPlaneGrid& grid, double t_final,
                  const SolverConfig& config, const StepCallback& on_step = {});

/// Single Duhamel solve over [0, T] (T = config.xt_horizon) with Picard
/// iteration, tracking t^{1/4} ||w(t)||_{4/3} at the quadrature nodes.
struct PicardHorizonReport {
  ScalarField final_field;
  std::vector<double> increments;
  std::vector<std::pair<double, double>> xt_norm_history;
  double xt_norm = 0.0;
  bool converged = false;
};
PicardHorizonReport picard_horizon(const ScalarField& initial, const SolverConfig& config);

}  // namespace axivort
