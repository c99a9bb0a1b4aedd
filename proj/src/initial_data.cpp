#include "axivort/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "axivort/error.hpp"

namespace axivort {

void GaussianRing::validate() const {
  if (!(radius > 0.0)) throw ConfigError("gaussian_ring.radius must be positive");
  if (!(width > 0.0)) throw ConfigError("gaussian_ring.width must be positive");
  if (!std::isfinite(z0) || !std::isfinite(amplitude)) {
    throw ConfigError("gaussian_ring parameters must be finite");
  }
  if (l1_target && !(*l1_target > 0.0)) throw ConfigError("gaussian_ring.l1 must be positive");
}

ScalarField gaussian_ring(const HalfPlaneGrid& grid, const GaussianRing& ring) {
  ring.validate();
  const double w2 = ring.width * ring.width;
  ScalarField out = ScalarField::sample(grid, Quantity::omega_theta, [&](double r, double z) {
    const double dr = r - ring.radius, dz = z - ring.z0;
    return ring.amplitude * r * std::exp(-(dr * dr + dz * dz) / w2);
  });
  if (ring.l1_target) {
    const double l1 = norm_2d(out, 1.0);
    if (!(l1 > 0.0)) throw ConfigError("gaussian_ring vanishes on this grid");
    out *= *ring.l1_target / l1;
  }
  return out;
}

ScalarField selfsimilar_field(const HalfPlaneGrid& grid, double impulse, double t) {
  if (!(t > 0.0)) throw DomainError("selfsimilar_field needs t > 0");
  const double c = impulse / (16.0 * std::sqrt(std::numbers::pi)) / (t * t * std::sqrt(t));
  return ScalarField::sample(grid, Quantity::omega_theta, [&](double r, double z) {
    return c * r * std::exp(-(r * r + z * z) / (4.0 * t));
  });
}

VortexMeasure atoms_measure(std::vector<Atom> atoms) {
  VortexMeasure mu;
  mu.atoms = std::move(atoms);
  mu.validate();
  return mu;
}

}  // namespace axivort
