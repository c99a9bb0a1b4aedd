#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "axivort/error.hpp"
#include "run_config.hpp"

using namespace axivort;
using namespace axivort::cli;
using nlohmann::json;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

std::string error_of(const std::filesystem::path& path) {
  try {
    load_run_config(path);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c = parse_run_config(json::object());
  CHECK(c.grid == HalfPlaneGrid(128, 256, 24.0, 24.0));
  CHECK(c.initial.preset == "gaussian_ring");
  CHECK(c.initial.ring.l1_target.value() == 0.1);
  CHECK(c.solver.dt == 0.05);
  CHECK(c.t_final == 10.0);
  CHECK(c.resolved == default_config());
}

TEST_CASE("TOML and JSON describe the same run") {
  const auto toml_path = write_temp("axivort_cfg.toml", R"([grid]
n_r = 16
n_z = 32
[solver]
dt = 0.25
[run]
t_final = 2.0
snapshots = [0.5, 1.0]
)");
  const auto json_path = write_temp(
      "axivort_cfg.json",
      R"({"grid": {"n_r": 16, "n_z": 32}, "solver": {"dt": 0.25}, "run": {"t_final": 2.0, "snapshots": [0.5, 1.0]}})");
  const RunConfig a = load_run_config(toml_path), b = load_run_config(json_path);
  CHECK(a.resolved == b.resolved);
  CHECK(a.grid == HalfPlaneGrid(16, 32, 24.0, 24.0));
  CHECK(a.solver.snapshot_times == std::vector<double>{0.5, 1.0});
}

TEST_CASE("errors name the key and the line") {
  const std::string unknown = error_of(write_temp("axivort_bad1.toml", "[grid]\nn_r = 8\nnr = 4\n"));
  CHECK(unknown.find("grid.nr") != std::string::npos);
  CHECK(unknown.find("line 3") != std::string::npos);

  const std::string type = error_of(write_temp("axivort_bad2.toml", "[solver]\n\ndt = \"small\"\n"));
  CHECK(type.find("solver.dt") != std::string::npos);
  CHECK(type.find("line 3") != std::string::npos);

  CHECK(error_of(write_temp("axivort_bad3.toml", "[nonsense]\nx = 1\n")).find("nonsense") != std::string::npos);
  CHECK(error_of(write_temp("axivort_bad4.toml", "[grid\n")).find("line 1") != std::string::npos);
  CHECK(error_of(write_temp("axivort_bad5.toml", "[grid]\nn_r = 1.5\n")).find("integer") != std::string::npos);
  CHECK_THROWS_AS(load_run_config("/nonexistent/axivort.toml"), ConfigError);
}

TEST_CASE("semantic checks") {
  CHECK_THROWS_AS(parse_run_config(json{{"run", {{"snapshots", {2.0, 1.0}}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"run", {{"snapshots", {20.0}}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"solver", {{"dt", -1.0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"grid", {{"n_r", 0}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"initial", {{"preset", "vortex"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"initial", {{"preset", "atoms"}}}}), ConfigError);
  CHECK_THROWS_AS(parse_run_config(json{{"initial", {{"preset", "atoms"}, {"atoms", {{0.0, 0.0, 1.0}}}}}}),
                  ConfigError);
}

TEST_CASE("log-spaced snapshot schedule") {
  const RunConfig c = parse_run_config(json{{"run", {{"t_final", 10.0}, {"snapshots_log", {1.0, 10.0, 3}}}}});
  REQUIRE(c.solver.snapshot_times.size() == 3);
  CHECK(c.solver.snapshot_times[1] == doctest::Approx(std::sqrt(10.0)));
  CHECK(c.solver.snapshot_times[2] == 10.0);
  CHECK_THROWS_AS(parse_run_config(json{{"run", {{"snapshots", {1.0}}, {"snapshots_log", {1.0, 10.0, 3}}}}}),
                  ConfigError);
}

TEST_CASE("initial data presets") {
  const RunConfig ring = parse_run_config(json{{"grid", {{"n_r", 16}, {"n_z", 32}}}});
  const InitialData a = build_initial(ring);
  REQUIRE(a.field);
  CHECK(norm_2d(*a.field, 1.0) == doctest::Approx(0.1));

  // an explicit amplitude without l1 keeps the amplitude
  const RunConfig amp = parse_run_config(json{{"grid", {{"n_r", 16}, {"n_z", 32}}}, {"initial", {{"amplitude", 2.0}}}});
  CHECK_FALSE(amp.initial.ring.l1_target.has_value());

  const RunConfig atoms =
      parse_run_config(json{{"initial", {{"preset", "atoms"}, {"atoms", {{1.0, 0.0, 0.2}, {2.0, 1.0, -0.1}}}}}});
  const InitialData b = build_initial(atoms);
  REQUIRE(b.measure);
  CHECK(b.measure->atoms.size() == 2);
}
