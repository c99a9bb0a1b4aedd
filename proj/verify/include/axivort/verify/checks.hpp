#pragma once

// Verification checks shared by `axivort verify` and the acceptance binary.
// Every check measures one quantity, compares it with a pinned threshold and
// keeps the numbers (and optional curves) it was based on.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "axivort/field.hpp"
#include "axivort/mild_solver.hpp"

namespace axivort::verify {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Check {
  std::string id;
  std::string title;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation = "<=";
  std::string detail;
  std::map<std::string, double> values;
  std::vector<Series> series;
  double seconds = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool passed() const;
};

nlohmann::json to_json(const Check& check);
nlohmann::json to_json(const SuiteReport& report);

std::vector<std::string> suite_names();
/// Throws ConfigError for unknown suites.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed);

// Shared set-ups.
HalfPlaneGrid default_grid();      // 64 x 128 on [0, 12] x [-12, 12]
ScalarField unit_ring(const HalfPlaneGrid& grid);  // r exp(-((r-3)^2 + z^2))
/// The small ring run: ||omega_0||_1 = 0.1 on 128 x 256 over [0, 24] x [-24, 24]
/// up to t = 10, computed once per process.
const Trajectory& small_ring_trajectory();

// The acceptance criteria, in order.
Check kernel_asymptotics();
Check kernel_oracle();
Check semigroup_heat_oracle();
Check semigroup_law();
Check linear_selfsimilar();
Check nonlinear_conservation();
Check cross_validation();
Check decay_scales();
Check antisymmetry();
Check inequality_samplers(std::uint64_t seed);

// Further property checks used by the suites.
Check kernel_properties();
Check biot_savart_properties(std::uint64_t seed);
Check semigroup_properties();
Check confinement();

}  // namespace axivort::verify
