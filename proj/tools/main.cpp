// axivort: command line front end.
//
//   axivort evolve --config run.toml
//   axivort linear --in field.bin --t 1.0 --out out.bin
//   axivort linear --atom 1,0,1 --t 10 --out out.bin
//   axivort biot-savart --in field.bin --out velocity.bin
//   axivort kernels --dump F --min 1e-6 --max 1e6 --points 200
//   axivort verify --suite kernels --out report.json
//   axivort plot --in report.json
//
// Exit status: 0 success, 2 configuration error, 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "axivort/biot_savart.hpp"
#include "axivort/diagnostics.hpp"
#include "axivort/error.hpp"
#include "axivort/field_io.hpp"
#include "axivort/kernels.hpp"
#include "axivort/parallel.hpp"
#include "axivort/semigroup.hpp"
#include "axivort/verify/checks.hpp"
#include "manifest.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace axivort::cli {
namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string time_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
  const fs::path probe = dir / ".write_test";
  { std::ofstream f(probe); if (!f) throw ConfigError("output directory " + dir.string() + " is not writable"); }
  fs::remove(probe, ec);
}

std::pair<double, double> parse_pair(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.size() != 2) throw ConfigError("expected r,z but got '" + text + "'");
  return {v[0], v[1]};
}

Atom parse_atom(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  } catch (const std::exception&) {
    v.clear();
  }
  if (v.size() != 3) throw ConfigError("--atom expects r,z,strength but got '" + text + "'");
  return Atom{v[0], v[1], v[2]};
}

// --- evolve -----------------------------------------------------------------

void write_diagnostics(const fs::path& path, const std::vector<DiagnosticsRecord>& records,
                       const std::vector<int>& sweeps) {
  std::ofstream csv(path);
  csv << "time,l1,l4_3,l2,l4,linf,mass,impulse,u_sup,sqrt_t_u_sup,picard_sweeps\n";
  for (std::size_t n = 0; n < records.size(); ++n) {
    const auto& r = records[n];
    const auto& lp = r.lp_2d;
    csv << number(r.time) << ',' << number(r.l1_2d) << ',' << number(lp.at(4.0 / 3.0)) << ','
        << number(lp.at(2.0)) << ',' << number(lp.at(4.0)) << ',' << number(lp.at(kInf)) << ','
        << number(r.mass) << ',' << number(r.impulse) << ',' << number(r.u_sup) << ','
        << number(std::sqrt(r.time) * r.u_sup) << ',';
    if (n > 0 && n - 1 < sweeps.size()) csv << sweeps[n - 1];
    csv << '\n';
  }
  if (!csv) throw std::runtime_error("cannot write " + path.string());
}

json summarize(const Trajectory& traj) {
  json summary;
  const auto& first = traj.records.front();
  const auto& last = traj.records.back();
  double drift = 0.0, u_scaled = 0.0, xt = 0.0;
  bool monotone = true;
  for (std::size_t k = 0; k < traj.records.size(); ++k) {
    const auto& r = traj.records[k];
    if (traj.initial_impulse != 0.0) {
      drift = std::max(drift, std::abs(r.impulse - traj.initial_impulse) / std::abs(traj.initial_impulse));
    }
    u_scaled = std::max(u_scaled, std::sqrt(r.time) * r.u_sup);
    if (k > 0 && !(r.l1_2d < traj.records[k - 1].l1_2d)) monotone = false;
  }
  for (const auto& [t, v] : traj.xt_norm_history) xt = std::max(xt, v);
  int max_sweeps = 0;
  for (int s : traj.picard_iterations) max_sweeps = std::max(max_sweeps, s);
  summary["steps"] = traj.picard_iterations.size();
  summary["t_start"] = first.time;
  summary["t_final"] = last.time;
  summary["l1_initial"] = first.l1_2d;
  summary["l1_final"] = last.l1_2d;
  summary["l1_strictly_decreasing"] = monotone;
  summary["impulse_initial"] = traj.initial_impulse;
  summary["impulse_final"] = last.impulse;
  summary["max_relative_impulse_drift"] = drift;
  summary["sup_sqrt_t_u_sup"] = u_scaled;
  summary["sup_xt_norm"] = xt;
  summary["max_picard_sweeps"] = max_sweeps;
  const DecayReport decay = decay_report(traj, {1.0, 4.0 / 3.0, 2.0, kInf});
  for (const auto& col : decay.columns) {
    const std::string p = std::isinf(col.p) ? "inf" : time_label(col.p);
    summary["decay"][p] = {{"final_decade_fit_valid", col.fit.valid},
                           {"final_decade_slope", col.fit.slope},
                           {"decreasing_final_decade", col.decreasing_final_decade}};
  }
  summary["interpolation_violations"] = decay.interpolation_violations;
  return summary;
}

int run_evolve(const fs::path& config_path, const std::optional<fs::path>& output,
               std::optional<std::uint64_t> seed) {
  RunConfig cfg = load_run_config(config_path);
  if (output) {
    cfg.output = *output;
    cfg.resolved["run"]["output"] = output->string();
  }
  if (seed) {
    cfg.seed = *seed;
    cfg.resolved["run"]["seed"] = *seed;
  }
  ensure_directory(cfg.output);
  const InitialData init = build_initial(cfg);
  Manifest manifest(cfg.output);

  std::vector<DiagnosticsRecord> records;
  std::optional<ScalarField> last_good;
  auto on_step = [&](const DiagnosticsRecord& r, const ScalarField& w) {
    records.push_back(r);
    last_good = w;
  };

  Trajectory traj;
  json summary;
  int status = kOk;
  try {
    traj = init.field ? evolve(*init.field, cfg.t_final, cfg.solver, on_step)
                      : evolve(*init.measure, cfg.grid, cfg.t_final, cfg.solver, on_step);
  } catch (const StepFailure& e) {
    status = kNumericalFailure;
    summary["failure"] = {{"message", e.what()},
                          {"residual", e.residual()},
                          {"iterations", e.iterations()},
                          {"last_good_time", records.empty() ? 0.0 : records.back().time}};
    std::cerr << "axivort: numerical failure: " << e.what() << '\n';
  }

  const fs::path csv_path = cfg.output / "diagnostics.csv";
  write_diagnostics(csv_path, records, traj.picard_iterations);
  manifest.add(csv_path);

  if (status == kOk) {
    if (!cfg.solver.snapshot_times.empty()) ensure_directory(cfg.output / "snapshots");
    for (double s : cfg.solver.snapshot_times) {
      const ScalarField* w = traj.snapshot_at(s);
      if (!w) continue;
      const fs::path p = cfg.output / "snapshots" / ("omega_t" + time_label(s) + ".bin");
      io::write_field(p, *w, s);
      manifest.add(p);
    }
    summary.update(summarize(traj));
  } else if (last_good) {
    const fs::path p = cfg.output / "last_good.bin";
    io::write_field(p, *last_good, records.back().time);
    manifest.add(p);
  }
  summary["warnings"] = traj.warnings;
  summary["status"] = status == kOk ? "ok" : "numerical_failure";
  const fs::path summary_path = cfg.output / "summary.json";
  std::ofstream(summary_path) << summary.dump(2) << '\n';
  manifest.add(summary_path);
  manifest.write(cfg.resolved, "evolve", status);
  for (const auto& w : traj.warnings) std::cerr << "axivort: warning: " << w << '\n';
  if (status == kOk) {
    std::cout << "evolved to t = " << traj.records.back().time << " in "
              << traj.picard_iterations.size() << " steps; output in " << cfg.output.string() << '\n';
  }
  return status;
}

// --- linear -----------------------------------------------------------------

struct GridArgs {
  int n_r = 64;
  int n_z = 128;
  double r_max = 12.0;
  double z_half = 12.0;
};

int run_linear(const std::optional<fs::path>& in, const std::vector<std::string>& atom_specs,
               double t, const GridArgs& ga, const fs::path& out) {
  if (!(t > 0.0)) throw ConfigError("--t must be positive");
  ScalarField result;
  if (in) {
    if (!atom_specs.empty()) throw ConfigError("give either --in or --atom, not both");
    const io::StoredField f = io::read_field(*in);
    ScalarField w = f.field.tag() == Quantity::eta ? eta_to_omega(f.field) : f.field;
    result = apply_S(t, w);
    if (f.field.tag() == Quantity::eta) result = omega_to_eta(result);
    io::write_field(out, result, f.time + t);
  } else {
    if (atom_specs.empty()) throw ConfigError("linear needs --in or at least one --atom");
    VortexMeasure mu;
    for (const auto& s : atom_specs) mu.atoms.push_back(parse_atom(s));
    const HalfPlaneGrid grid(ga.n_r, ga.n_z, ga.r_max, ga.z_half);
    result = apply_S_measure(t, mu, grid);
    io::write_field(out, result, t);
  }
  const ScalarField w = result.tag() == Quantity::eta ? eta_to_omega(result) : result;
  const json info{{"out", out.string()}, {"t", t}, {"l1", norm_2d(w, 1.0)}, {"impulse", impulse(w)}};
  std::cout << info.dump() << '\n';
  return kOk;
}

// --- biot-savart ------------------------------------------------------------

int run_biot_savart(const fs::path& in, const std::optional<fs::path>& out,
                    const std::optional<fs::path>& stream, const std::vector<std::string>& at) {
  const io::StoredField f = io::read_field(in);
  const ScalarField w = f.field.tag() == Quantity::eta ? eta_to_omega(f.field) : f.field;
  const BiotSavartOperator op(w.grid());
  const VelocityField u = op.velocity(w);
  const auto& g = w.grid();
  double moment = 0.0;
  for (int i = 0; i < g.n_r(); ++i)
    for (int k = 0; k < g.n_z(); ++k) moment += g.r(i) * u.u_r[g.index(i, k)] * w(i, k);
  json info{{"u_sup", u.sup_norm()}, {"int_r_ur_omega", moment * g.cell_area()},
            {"weighted_l1", weighted_l1(w, 1.0)}};
  if (out) {
    io::write_velocity(*out, u);
    info["velocity"] = out->string();
  }
  if (stream) {
    io::write_field(*stream, op.stream_function(w), f.time);
    info["stream_function"] = stream->string();
  }
  if (!at.empty()) {
    std::vector<Point> pts;
    for (const auto& s : at) {
      const auto [r, z] = parse_pair(s);
      pts.push_back({r, z});
    }
    VortexMeasure mu;
    mu.density = w;
    const auto vals = velocity_from_measure(mu, pts);
    for (std::size_t n = 0; n < pts.size(); ++n) {
      info["points"].push_back({{"r", pts[n].r}, {"z", pts[n].z}, {"u_r", vals[n][0]}, {"u_z", vals[n][1]}});
    }
  }
  std::cout << info.dump(2) << '\n';
  return kOk;
}

// --- kernels ----------------------------------------------------------------

int run_kernels(const std::string& which, double lo, double hi, int points,
                const std::optional<fs::path>& out) {
  if (which != "F" && which != "H") throw ConfigError("--dump must be F or H");
  if (!(lo > 0.0) || !(hi > lo) || points < 2) {
    throw ConfigError("need 0 < --min < --max and --points >= 2");
  }
  std::ostringstream csv;
  csv << (which == "F" ? "s,F,F_prime\n" : "tau,H,H_prime\n");
  for (int n = 0; n < points; ++n) {
    const double x = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * n / (points - 1));
    const double v = which == "F" ? kernels::eval_F(x) : kernels::eval_H(x);
    const double d = which == "F" ? kernels::eval_F_prime(x) : kernels::eval_H_prime(x);
    csv << number(x) << ',' << number(v) << ',' << number(d) << '\n';
  }
  if (out) {
    std::ofstream f(*out);
    if (!f) throw ConfigError("cannot write " + out->string());
    f << csv.str();
  } else {
    std::cout << csv.str();
  }
  return kOk;
}

// --- verify / plot ------------------------------------------------------------

int run_verify(std::vector<std::string> suites, std::uint64_t seed, const std::optional<fs::path>& out) {
  const auto known = verify::suite_names();
  if (suites.empty() || (suites.size() == 1 && suites[0] == "all")) suites = known;
  for (const auto& s : suites) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw ConfigError("unknown suite '" + s + "'");
    }
  }
  json report{{"seed", seed}, {"suites", json::array()}};
  bool passed = true;
  for (const auto& name : suites) {
    const verify::SuiteReport r = verify::run_suite(name, seed);
    for (const auto& c : r.checks) {
      std::printf("%s  %-12s %-26s %.4g %s %.4g  %s\n", c.passed ? "PASS" : "FAIL", name.c_str(),
                  c.id.c_str(), c.measured, c.relation.c_str(), c.threshold, c.detail.c_str());
    }
    std::fflush(stdout);
    passed = passed && r.passed();
    report["suites"].push_back(verify::to_json(r));
  }
  report["passed"] = passed;
  if (out) {
    std::ofstream f(*out);
    if (!f) throw ConfigError("cannot write " + out->string());
    f << report.dump(2) << '\n';
  }
  return passed ? kOk : kNumericalFailure;
}

int run_plot(const fs::path& in, const std::optional<fs::path>& out) {
  std::ifstream f(in);
  if (!f) throw ConfigError("cannot open " + in.string());
  json report;
  try {
    report = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(in.string() + ": " + e.what());
  }
  if (!report.contains("suites")) throw ConfigError(in.string() + ": not a verification report");
  std::ostringstream csv;
  csv << "suite,check,series,x,y\n";
  for (const auto& suite : report["suites"]) {
    for (const auto& check : suite["checks"]) {
      for (const auto& s : check["series"]) {
        const auto& x = s["x"];
        const auto& y = s["y"];
        for (std::size_t n = 0; n < x.size() && n < y.size(); ++n) {
          csv << suite["suite"].get<std::string>() << ',' << check["id"].get<std::string>() << ','
              << s["name"].get<std::string>() << ',' << number(x[n].get<double>()) << ','
              << number(y[n].get<double>()) << '\n';
        }
      }
    }
  }
  if (out) {
    std::ofstream o(*out);
    if (!o) throw ConfigError("cannot write " + out->string());
    o << csv.str();
  } else {
    std::cout << csv.str();
  }
  return kOk;
}

}  // namespace
}  // namespace axivort::cli

int main(int argc, char** argv) {
  using namespace axivort;
  using namespace axivort::cli;

  CLI::App app{"Axisymmetric Navier-Stokes vorticity: mild solutions, kernels and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  std::optional<std::uint64_t> seed;
  app.add_option("--threads", threads, "Cap on worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "Random seed for samplers and runs");

  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve initial data with the mild solver");
  fs::path config_path;
  std::optional<fs::path> output;
  evolve_cmd->add_option("--config", config_path, "Run configuration (.toml or .json)")->required();
  evolve_cmd->add_option("--output", output, "Override run.output");

  auto* linear_cmd = app.add_subcommand("linear", "Apply the linear semigroup S(t)");
  std::optional<fs::path> linear_in;
  std::vector<std::string> atoms;
  double linear_t = 1.0;
  GridArgs grid_args;
  fs::path linear_out = "linear.bin";
  linear_cmd->add_option("--in", linear_in, "Input field file");
  linear_cmd->add_option("--atom", atoms, "Vortex filament r,z,strength (repeatable)");
  linear_cmd->add_option("--t", linear_t, "Time")->required();
  linear_cmd->add_option("--out", linear_out, "Output field file");
  linear_cmd->add_option("--n-r", grid_args.n_r, "Grid for --atom data");
  linear_cmd->add_option("--n-z", grid_args.n_z);
  linear_cmd->add_option("--r-max", grid_args.r_max);
  linear_cmd->add_option("--z-half", grid_args.z_half);

  auto* bs_cmd = app.add_subcommand("biot-savart", "Velocity and stream function of a field");
  fs::path bs_in;
  std::optional<fs::path> bs_out, bs_stream;
  std::vector<std::string> bs_at;
  bs_cmd->add_option("--in", bs_in, "Input field file")->required();
  bs_cmd->add_option("--out", bs_out, "Velocity file");
  bs_cmd->add_option("--stream", bs_stream, "Stream-function file");
  bs_cmd->add_option("--probe,--at", bs_at, "Print the velocity at r,z (repeatable)");

  auto* k_cmd = app.add_subcommand("kernels", "Dump F, F' or H, H' as CSV");
  std::string dump = "F";
  double k_min = 1e-6, k_max = 1e6;
  int k_points = 200;
  std::optional<fs::path> k_out;
  k_cmd->add_option("--dump", dump, "F or H");
  k_cmd->add_option("--min", k_min);
  k_cmd->add_option("--max", k_max);
  k_cmd->add_option("--points", k_points);
  k_cmd->add_option("--out", k_out, "CSV file (default: stdout)");

  auto* v_cmd = app.add_subcommand("verify", "Run verification suites");
  std::vector<std::string> suites;
  std::optional<fs::path> v_out;
  v_cmd->add_option("--suite", suites,
                    "kernels, biotsavart, semigroup, decay, selfsimilar, inequalities or all");
  v_cmd->add_option("--out", v_out, "Report JSON");

  auto* p_cmd = app.add_subcommand("plot", "Export report series as CSV");
  fs::path p_in;
  std::optional<fs::path> p_out;
  p_cmd->add_option("--in", p_in, "Report JSON from verify")->required();
  p_cmd->add_option("--out", p_out, "CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    set_num_threads(threads);
    if (*evolve_cmd) return run_evolve(config_path, output, seed);
    if (*linear_cmd) return run_linear(linear_in, atoms, linear_t, grid_args, linear_out);
    if (*bs_cmd) return run_biot_savart(bs_in, bs_out, bs_stream, bs_at);
    if (*k_cmd) return run_kernels(dump, k_min, k_max, k_points, k_out);
    if (*v_cmd) return run_verify(suites, seed.value_or(20240601), v_out);
    if (*p_cmd) return run_plot(p_in, p_out);
  } catch (const ConfigError& e) {
    std::cerr << "axivort: configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UsageError& e) {
    std::cerr << "axivort: " << e.what() << '\n';
    return kConfigError;
  } catch (const ResolutionError& e) {
    std::cerr << "axivort: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "axivort: " << e.what() << '\n';
    return kConfigError;
  } catch (const StepFailure& e) {
    std::cerr << "axivort: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "axivort: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kOk;
}
