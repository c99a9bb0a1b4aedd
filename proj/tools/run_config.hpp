#pragma once

// Run configuration for `axivort evolve`: TOML or JSON with one schema.
// Every key has a default (see default_config()); the resolved configuration
// is echoed into the run manifest.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "axivort/field.hpp"
#include "axivort/initial_data.hpp"
#include "axivort/mild_solver.hpp"

namespace axivort::cli {

struct InitialSpec {
  std::string preset = "gaussian_ring";  // gaussian_ring | profile | atoms | field
  GaussianRing ring;
  double profile_impulse = 1.0;  // profile: (I/16 sqrt pi) r exp(-(r^2+z^2)/4t0)
  double profile_t0 = 1.0;
  std::vector<Atom> atoms;
  std::filesystem::path field_path;
};

struct RunConfig {
  HalfPlaneGrid grid{64, 128, 12.0, 12.0};
  InitialSpec initial;
  SolverConfig solver;
  double t_final = 10.0;
  std::filesystem::path output = "axivort_out";
  std::uint64_t seed = 0;
  nlohmann::json resolved;  // the full configuration after defaults
};

/// All keys with their defaults.
nlohmann::json default_config();

/// Parses .toml or .json (by extension). Throws ConfigError naming the key
/// and, for TOML, the line.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const nlohmann::json& doc,
                           const std::map<std::string, int>& lines = {});

/// Initial data of the run: a field, or a measure for atom presets.
struct InitialData {
  std::optional<ScalarField> field;
  std::optional<VortexMeasure> measure;
};
InitialData build_initial(const RunConfig& config);

}  // namespace axivort::cli
