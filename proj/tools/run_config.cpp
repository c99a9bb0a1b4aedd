#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "axivort/error.hpp"
#include "axivort/field_io.hpp"

namespace axivort::cli {

using nlohmann::json;

json default_config() {
  return json{
      {"grid", {{"n_r", 128}, {"n_z", 256}, {"r_max", 24.0}, {"z_half", 24.0}}},
      {"initial",
       {{"preset", "gaussian_ring"},
        {"radius", 3.0},
        {"z0", 0.0},
        {"width", 1.0},
        {"amplitude", 1.0},
        {"l1", 0.1},
        {"impulse", 1.0},
        {"t0", 1.0},
        {"atoms", json::array()},
        {"field", ""}}},
      {"solver",
       {{"dt", 0.05},
        {"duhamel_nodes", 4},
        {"picard_tol", 1e-10},
        {"picard_max_iter", 30},
        {"xt_horizon", 1.0},
        {"nonlinear", true},
        {"max_halvings", 4},
        {"atom_warning_eps", 0.5}}},
      {"biot_savart", {{"self_cell_subdiv", 8}, {"cutoff_radius_cells", 2}, {"antisymmetrize", true}}},
      {"semigroup", {{"truncation_sigmas", 8.0}, {"nystrom_ratio", 0.5}}},
      {"run", {{"t_final", 10.0}, {"snapshots", json::array()}, {"snapshots_log", json::array()}, {"output", "axivort_out"}, {"seed", 0}}},
  };
}

namespace {

json toml_to_json(const toml::node& node, const std::string& path, std::map<std::string, int>& lines) {
  lines[path] = static_cast<int>(node.source().begin.line);
  if (const auto* t = node.as_table()) {
    json j = json::object();
    for (auto&& [k, v] : *t) {
      const std::string key(k.str());
      j[key] = toml_to_json(v, path.empty() ? key : path + "." + key, lines);
    }
    return j;
  }
  if (const auto* a = node.as_array()) {
    json j = json::array();
    for (std::size_t n = 0; n < a->size(); ++n) {
      j.push_back(toml_to_json(*a->get(n), path + "[" + std::to_string(n) + "]", lines));
    }
    return j;
  }
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  if (const auto* v = node.as_string()) return v->get();
  throw ConfigError(path + ": unsupported value type");
}

// Merges `doc` over the defaults, checking key names and value kinds.
class Reader {
 public:
  Reader(const json& doc, const std::map<std::string, int>& lines) : lines_(lines) {
    resolved_ = default_config();
    if (!doc.is_object()) throw ConfigError("configuration must be a table");
    for (auto& [section, body] : doc.items()) {
      if (!resolved_.contains(section)) fail(section, "unknown section");
      if (!body.is_object()) fail(section, "expected a table");
      for (auto& [key, value] : body.items()) {
        const std::string path = section + "." + key;
        if (!resolved_[section].contains(key)) fail(path, "unknown key");
        const json& def = resolved_[section][key];
        const bool ok = (def.is_number() && value.is_number()) ||
                        (def.is_boolean() && value.is_boolean()) ||
                        (def.is_string() && value.is_string()) || (def.is_array() && value.is_array());
        if (!ok) fail(path, std::string("expected ") + def.type_name() + ", got " + value.type_name());
        if (def.is_number_integer() && !value.is_number_integer()) fail(path, "expected an integer");
        resolved_[section][key] = value;
        given_.insert(path);
      }
    }
  }

  [[noreturn]] void fail(const std::string& path, const std::string& why) const {
    std::ostringstream msg;
    msg << path << ": " << why;
    const auto it = lines_.find(path);
    if (it != lines_.end() && it->second > 0) msg << " (line " << it->second << ")";
    throw ConfigError(msg.str());
  }

  double num(const std::string& section, const std::string& key) const {
    return resolved_[section][key].get<double>();
  }
  long long integer(const std::string& section, const std::string& key) const {
    return resolved_[section][key].get<long long>();
  }
  const json& raw(const std::string& section, const std::string& key) const {
    return resolved_[section][key];
  }
  bool given(const std::string& path) const { return given_.count(path) > 0; }
  const json& resolved() const { return resolved_; }

  // Re-raises library validation errors with the key path in front.
  template <class Fn>
  void checked(const std::string& path, Fn fn) const {
    try {
      fn();
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }

 private:
  json resolved_;
  const std::map<std::string, int>& lines_;
  std::set<std::string> given_;
};

}  // namespace

RunConfig parse_run_config(const json& doc, const std::map<std::string, int>& lines) {
  const Reader rd(doc, lines);
  RunConfig cfg;

  rd.checked("grid", [&] {
    const auto nr = rd.integer("grid", "n_r"), nz = rd.integer("grid", "n_z");
    if (nr < 1 || nz < 1 || nr > 1 << 16 || nz > 1 << 16) throw ConfigError("node counts out of range");
    cfg.grid = HalfPlaneGrid(static_cast<int>(nr), static_cast<int>(nz), rd.num("grid", "r_max"),
                             rd.num("grid", "z_half"));
  });

  auto& in = cfg.initial;
  in.preset = rd.raw("initial", "preset").get<std::string>();
  if (in.preset == "gaussian_ring") {
    in.ring.radius = rd.num("initial", "radius");
    in.ring.z0 = rd.num("initial", "z0");
    in.ring.width = rd.num("initial", "width");
    in.ring.amplitude = rd.num("initial", "amplitude");
    // An explicit amplitude without an explicit l1 means "use the amplitude".
    if (!(rd.given("initial.amplitude") && !rd.given("initial.l1"))) {
      in.ring.l1_target = rd.num("initial", "l1");
    }
    rd.checked("initial", [&] { in.ring.validate(); });
  } else if (in.preset == "profile") {
    in.profile_impulse = rd.num("initial", "impulse");
    in.profile_t0 = rd.num("initial", "t0");
    if (!(in.profile_t0 > 0.0)) rd.fail("initial.t0", "must be positive");
  } else if (in.preset == "atoms") {
    const json& atoms = rd.raw("initial", "atoms");
    if (atoms.empty()) rd.fail("initial.atoms", "needs at least one [r, z, strength] triple");
    for (std::size_t n = 0; n < atoms.size(); ++n) {
      const json& a = atoms[n];
      const std::string path = "initial.atoms[" + std::to_string(n) + "]";
      if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
          !a[2].is_number()) {
        rd.fail(path, "expected [r, z, strength]");
      }
      in.atoms.push_back(Atom{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()});
      if (!(in.atoms.back().r > 0.0)) rd.fail(path, "atom radius must be positive");
    }
  } else if (in.preset == "field") {
    in.field_path = rd.raw("initial", "field").get<std::string>();
    if (in.field_path.empty()) rd.fail("initial.field", "path required for preset 'field'");
  } else {
    rd.fail("initial.preset", "unknown preset '" + in.preset +
                                  "' (gaussian_ring, profile, atoms, field)");
  }

  auto& s = cfg.solver;
  s.dt = rd.num("solver", "dt");
  s.duhamel_nodes = static_cast<int>(rd.integer("solver", "duhamel_nodes"));
  s.picard_tol = rd.num("solver", "picard_tol");
  s.picard_max_iter = static_cast<int>(rd.integer("solver", "picard_max_iter"));
  s.xt_horizon = rd.num("solver", "xt_horizon");
  s.nonlinear = rd.raw("solver", "nonlinear").get<bool>();
  s.max_halvings = static_cast<int>(rd.integer("solver", "max_halvings"));
  s.atom_warning_eps = rd.num("solver", "atom_warning_eps");
  s.biot_savart.self_cell_subdiv = static_cast<int>(rd.integer("biot_savart", "self_cell_subdiv"));
  s.biot_savart.cutoff_radius_cells =
      static_cast<int>(rd.integer("biot_savart", "cutoff_radius_cells"));
  s.biot_savart.antisymmetrize = rd.raw("biot_savart", "antisymmetrize").get<bool>();
  s.semigroup.truncation_sigmas = rd.num("semigroup", "truncation_sigmas");
  s.semigroup.nystrom_ratio = rd.num("semigroup", "nystrom_ratio");

  cfg.t_final = rd.num("run", "t_final");
  if (!(cfg.t_final > 0.0)) rd.fail("run.t_final", "must be positive");
  const json& snaps = rd.raw("run", "snapshots");
  for (std::size_t n = 0; n < snaps.size(); ++n) {
    const std::string path = "run.snapshots[" + std::to_string(n) + "]";
    if (!snaps[n].is_number()) rd.fail(path, "expected a number");
    const double t = snaps[n].get<double>();
    if (!(t > 0.0) || t > cfg.t_final) rd.fail(path, "snapshot times must lie in (0, t_final]");
    if (!s.snapshot_times.empty() && !(t > s.snapshot_times.back())) {
      rd.fail(path, "snapshot times must be strictly increasing");
    }
    s.snapshot_times.push_back(t);
  }
  const json& logs = rd.raw("run", "snapshots_log");
  if (!logs.empty()) {
    if (!s.snapshot_times.empty()) rd.fail("run.snapshots_log", "give either snapshots or snapshots_log");
    if (logs.size() != 3 || !logs[0].is_number() || !logs[1].is_number() || !logs[2].is_number_integer()) {
      rd.fail("run.snapshots_log", "expected [first, last, count]");
    }
    const double a = logs[0].get<double>(), b = logs[1].get<double>();
    const long long count = logs[2].get<long long>();
    if (!(a > 0.0) || !(b > a) || b > cfg.t_final || count < 2) {
      rd.fail("run.snapshots_log", "need 0 < first < last <= t_final and count >= 2");
    }
    for (long long n = 0; n < count; ++n) {
      s.snapshot_times.push_back(n + 1 == count ? b : a * std::pow(b / a, double(n) / double(count - 1)));
    }
  }
  cfg.output = rd.raw("run", "output").get<std::string>();
  if (cfg.output.empty()) rd.fail("run.output", "must not be empty");
  const long long seed = rd.integer("run", "seed");
  if (seed < 0) rd.fail("run.seed", "must be nonnegative");
  cfg.seed = static_cast<std::uint64_t>(seed);

  rd.checked("solver", [&] { s.validate(); });
  cfg.resolved = rd.resolved();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open configuration " + path.string());
  std::ostringstream text;
  text << file.rdbuf();
  std::map<std::string, int> lines;
  json doc;
  if (path.extension() == ".json") {
    try {
      doc = json::parse(text.str());
    } catch (const json::parse_error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  } else {
    try {
      const toml::table table = toml::parse(text.str(), path.string());
      doc = toml_to_json(table, "", lines);
    } catch (const toml::parse_error& e) {
      std::ostringstream msg;
      msg << path.string() << ": " << e.description() << " (line " << e.source().begin.line << ")";
      throw ConfigError(msg.str());
    }
  }
  return parse_run_config(doc, lines);
}

InitialData build_initial(const RunConfig& cfg) {
  InitialData out;
  const auto& in = cfg.initial;
  if (in.preset == "gaussian_ring") {
    out.field = gaussian_ring(cfg.grid, in.ring);
  } else if (in.preset == "profile") {
    out.field = selfsimilar_field(cfg.grid, in.profile_impulse, in.profile_t0);
  } else if (in.preset == "atoms") {
    out.measure = atoms_measure(in.atoms);
  } else {
    io::StoredField stored = io::read_field(in.field_path);
    if (!(stored.field.grid() == cfg.grid)) {
      throw ConfigError("initial.field: grid of " + in.field_path.string() +
                        " differs from the [grid] section");
    }
    if (stored.field.tag() == Quantity::eta) stored.field = eta_to_omega(stored.field);
    out.field = std::move(stored.field);
  }
  return out;
}

}  // namespace axivort::cli
