#pragma once

// Independent reference computations. Nothing here calls into the library's
// kernels or operators; the quadratures are Boost's Gauss-Kronrod rules.

#include <functional>

namespace axivort::verify {

/// F(s) = int_0^pi cos(phi) / sqrt(2 (1 - cos phi) + s) dphi, relative tolerance tol.
double oracle_F(double s, double tol = 1e-12);
/// F'(s) by the differentiated integrand.
double oracle_F_prime(double s, double tol = 1e-12);
/// H(tau) = (pi tau)^{-1/2} int_{-pi/2}^{pi/2} exp(-sin^2(phi)/tau) cos(2 phi) dphi.
double oracle_H(double tau, double tol = 1e-12);

/// Value at (r, z) of the three-dimensional heat flow of the azimuthal
/// vorticity omega0(r, z) e_theta, by direct quadrature over (rb, zb, theta):
///   (4 pi t)^{-3/2} int rb omega0(rb, zb) cos(theta)
///       exp(-((r-rb)^2 + (z-zb)^2 + 4 r rb sin^2(theta/2)) / 4t) drb dzb dtheta.
/// omega0 must be negligible outside [0, rb_max] x [zb_min, zb_max].
double oracle_heat3d(const std::function<double(double, double)>& omega0, double t, double r,
                     double z, double rb_max, double zb_min, double zb_max);

}  // namespace axivort::verify
