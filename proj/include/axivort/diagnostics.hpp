#pragma once

// Quantitative long-time statements: self-similar profile distances,
// confinement radii, decay curves with slope fits, and randomized samplers
// for the constants in the functional inequalities.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "axivort/field.hpp"
#include "axivort/mild_solver.hpp"

namespace axivort {

/// Phi(r, z) = (I / 16 sqrt(pi)) r exp(-(r^2 + z^2)/4).
ScalarField profile(double impulse, const HalfPlaneGrid& grid);

/// Grid on which rescaled fields are compared with the profile.
HalfPlaneGrid default_reference_grid();

/// || t^2 omega(r sqrt t, z sqrt t) - Phi ||_p on `reference`.
double selfsimilar_distance(const ScalarField& omega, double t, double impulse, double p,
                            const HalfPlaneGrid& reference = default_reference_grid());
/// Same for the snapshot at t, with the trajectory's initial impulse.
/// Throws UsageError when no snapshot is stored at t.
double selfsimilar_distance(const Trajectory& traj, double t, double p,
                            const HalfPlaneGrid& reference = default_reference_grid());

/// Smallest rho with  int_{sqrt(r^2+z^2) >= rho} |omega| dr dz <= epsilon
/// (over cell centres). Throws DomainError unless 0 < epsilon <= ||omega||_1.
double confinement_radius(const ScalarField& omega, double epsilon);

struct ConfinementFit {
  double K3 = 0.0;
  double K4 = 0.0;
  double max_excess = 0.0;  // max over samples of rho - (K3 + K4 sqrt t), <= 0 if enveloped
};
/// Least-squares rho(t) ~ K3 + K4 sqrt(t), shifted up so that it bounds
/// every sample.
ConfinementFit fit_confinement(const std::vector<std::pair<double, double>>& t_rho);

struct SlopeFit {
  bool valid = false;  // false when the final decade holds fewer than 5 points
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
  double t_begin = 0.0;
  double t_end = 0.0;
};
/// Least squares in log-log over points with t >= t_last / 10.
SlopeFit fit_final_decade(const std::vector<std::pair<double, double>>& series);

struct DecayColumn {
  double p = 1.0;
  std::vector<double> times;
  std::vector<double> norm;            // ||omega(t)||_p
  std::vector<double> scaled;          // t^{1-1/p} ||omega(t)||_p
  std::vector<double> impulse_scaled;  // t^{2-1/p} ||omega(t)||_p
  SlopeFit fit;                        // of `scaled`
  bool decreasing_final_decade = false;
};

struct DecayReport {
  std::vector<DecayColumn> columns;
  /// Records where ||w||_p > ||w||_1^{1/p} ||w||_inf^{1-1/p} for a stored p.
  int interpolation_violations = 0;
};

/// p must be 1 or one of the norms kept in the records (4/3, 2, 4, inf).
/// Records at t = 0 are skipped.
DecayReport decay_report(const Trajectory& traj, const std::vector<double>& p_list);

/// || |grad omega| ||_p by centred differences, honouring the axis condition
/// of the tag and zero data outside the box.
double gradient_norm(const ScalarField& field, double p);

struct GradientReport {
  double p = 1.0;
  std::vector<double> times;
  std::vector<double> scaled;  // t^{3/2-1/p} ||grad omega(t)||_p
  /// Set when the scaled curve grows over the final decade; a warning that
  /// grid differencing error dominates, not a failed check.
  bool flagged = false;
};
GradientReport gradient_report(const Trajectory& traj, double p);

enum class Estimate {
  biot_savart_lpq,         // ||u||_4 <= C ||w||_{4/3}
  biot_savart_linf,        // ||u||_inf <= C ||w||_1^{1/2} ||w||_inf^{1/2}
  biot_savart_weighted_a,  // ||u||_2 <= C ||r^{1/2} w||_{4/3}
  biot_savart_weighted_b,  // ||r u||_4 <= C ||r w||_{4/3}
  biot_savart_ffs,         // ||u||_inf <= C ||r w||_1^{1/2} ||w/r||_inf^{1/2}
  biot_savart_ur_over_r,   // ||u_r/r||_inf <= C ||w||_1^{1/3} ||w/r||_inf^{2/3}
  semigroup_lpq,           // ||S(t)w||_inf <= C t^{-1} ||w||_1
  semigroup_div,           // ||S(t) div f||_1 <= C t^{-1/2} ||f||_1
  semigroup_weighted_a,    // ||S(t)w||_1 <= C t^{-1/2} ||r w||_1
  semigroup_weighted_b,    // ||r S(t)w||_1 <= C t^{-1/2} ||r^2 w||_1
  eta_nash,                // ||eta(t)||_inf <= C t^{-3/2} ||eta_0||_{L^1(R^3)}
};

std::string to_string(Estimate e);
/// Throws ConfigError for unknown names.
Estimate estimate_from_string(const std::string& name);
std::vector<Estimate> all_estimates();

struct SamplerOptions {
  HalfPlaneGrid grid{64, 128, 10.0, 10.0};
  /// Coarser grid for the time-dependent eta flow.
  HalfPlaneGrid eta_grid{40, 80, 10.0, 10.0};
  std::vector<double> semigroup_times{0.1, 1.0, 10.0};
  std::vector<double> eta_times{0.5, 1.0, 2.0};
};

struct SamplerReport {
  std::string estimate;
  int n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double mean_ratio = 0.0;
};

/// Random fields of 1-8 bumps a (r/r_k) exp(-|x - x_k|^2 / w_k^2) with
/// w_k in [0.2, 2] and centres at least 2 w_k inside the box. Sample n uses
/// its own generator seeded from (seed, n), so the report is reproducible
/// bit for bit whatever the thread count.
SamplerReport inequality_sampler(Estimate estimate, int n_samples, std::uint64_t seed,
                                 const SamplerOptions& opts = {});

/// The random field of sample `index`; exposed for tests.
ScalarField random_bumps(const HalfPlaneGrid& grid, std::uint64_t seed, std::uint64_t index,
                         int stream = 0);

}  // namespace axivort
