#pragma once

// Special functions behind the axisymmetric Biot-Savart law and the heat
// semigroup of the linearized vorticity equation.
//
//   F(s)   = int_0^pi cos(phi) / (2(1 - cos(phi)) + s)^{1/2} dphi
//   H(tau) = (pi tau)^{-1/2} int_{-pi/2}^{pi/2} exp(-sin^2(phi)/tau) cos(2 phi) dphi
//   K(tau) = tau^{3/2} H(tau)
//
// Mid-range values come from adaptive Gauss-Kronrod quadrature of the
// defining integrals (after a substitution that removes the near-endpoint
// peak); below small_arg_threshold and above large_arg_threshold the
// asymptotic series are used. The series carry the classical leading terms
// F ~ log(8/sqrt(s)) - 2, F ~ pi / (2 s^{3/2}), H ~ 1 - 3 tau / 4,
// H ~ sqrt(pi) / (4 tau^{3/2}) plus enough higher-order terms that the seam
// with the quadrature is invisible at quad_abs_tol.

#include <utility>
#include <vector>

namespace axivort::kernels {

struct KernelEvalPolicy {
  double small_arg_threshold = 1e-4;
  double large_arg_threshold = 1e4;
  double quad_abs_tol = 1e-13;
  int quad_max_subdiv = 400;

  /// Throws ConfigError when the thresholds are inverted or outside the range
  /// where the tail series are accurate (small <= 1e-2, large >= 16).
  void validate() const;
};

double eval_F(double s, const KernelEvalPolicy& policy = {});
double eval_F_prime(double s, const KernelEvalPolicy& policy = {});
double eval_H(double tau, const KernelEvalPolicy& policy = {});
double eval_H_prime(double tau, const KernelEvalPolicy& policy = {});
double eval_K(double tau, const KernelEvalPolicy& policy = {});

/// Individual evaluation routes, exposed so the seams can be inspected.
namespace route {
double F_quadrature(double s, const KernelEvalPolicy& policy = {});
double F_prime_quadrature(double s, const KernelEvalPolicy& policy = {});
double H_quadrature(double tau, const KernelEvalPolicy& policy = {});
double H_prime_quadrature(double tau, const KernelEvalPolicy& policy = {});

double F_small(double s);
double F_prime_small(double s);
double F_large(double s);
double F_prime_large(double s);
double H_small(double tau);
double H_prime_small(double tau);
double H_large(double tau);
double H_prime_large(double tau);
}  // namespace route

/// Memoized evaluation: log-spaced abscissae between the two thresholds and
/// four-point Lagrange interpolation of smooth rescaled versions of F, F', H
/// and H'. Outside the tabulated range the tail series are evaluated
/// directly. Immutable after construction.
class KernelTable {
 public:
  explicit KernelTable(const KernelEvalPolicy& policy = {}, int points_per_decade = 512);

  double F(double s) const;
  double F_prime(double s) const;
  /// F and F' at the same argument, sharing the index computation.
  std::pair<double, double> F_and_F_prime(double s) const;
  double H(double tau) const;
  double H_prime(double tau) const;
  std::pair<double, double> H_and_H_prime(double tau) const;

  const KernelEvalPolicy& policy() const { return policy_; }

  struct Deviation {
    double F = 0.0, F_prime = 0.0, H = 0.0, H_prime = 0.0;  // max relative deviation
  };
  /// Validation mode: compares the table against direct evaluation at
  /// `samples` log-spaced arguments spanning [1e-2 * small, 1e2 * large].
  Deviation validate(int samples = 1000) const;

  /// Process-wide table built with the default policy.
  static const KernelTable& shared();

 private:
  struct Slot {
    bool tabulated;
    int base;
    double w[4];
  };
  Slot locate(double x) const;

  KernelEvalPolicy policy_;
  double x0_ = 0.0;
  double dx_ = 0.0;
  int n_ = 0;
  std::vector<double> f_, fp_, h_, hp_;
};

}  // namespace axivort::kernels
