#pragma once

// Analytic initial data used by the CLI presets, the tests and the samplers.

#include <optional>
#include <vector>

#include "axivort/field.hpp"

namespace axivort {

/// omega = amplitude * r * exp(-((r - radius)^2 + (z - z0)^2) / width^2).
/// With l1_target set the amplitude is rescaled so that the grid L^1 norm
/// equals l1_target exactly.
struct GaussianRing {
  double radius = 3.0;
  double z0 = 0.0;
  double width = 1.0;
  double amplitude = 1.0;
  std::optional<double> l1_target;

  void validate() const;
};

ScalarField gaussian_ring(const HalfPlaneGrid& grid, const GaussianRing& ring);

/// The self-similar profile (I / 16 sqrt(pi)) r exp(-(r^2 + z^2)/4) at time t,
/// i.e. t^{-2} Phi(r / sqrt t, z / sqrt t).
ScalarField selfsimilar_field(const HalfPlaneGrid& grid, double impulse, double t);

VortexMeasure atoms_measure(std::vector<Atom> atoms);

}  // namespace axivort
