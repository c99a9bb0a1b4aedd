// Runs the ten acceptance criteria and prints one line per criterion:
//   PASS|FAIL  <n>  <id>  measured <relation> threshold  (seconds)  detail
// Exit status is 0 only if every criterion passes.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "axivort/parallel.hpp"
#include "axivort/verify/checks.hpp"

namespace v = axivort::verify;

int main(int argc, char** argv) {
  // Optional: a list of criterion numbers to run.
  std::vector<int> only;
  for (int a = 1; a < argc; ++a) only.push_back(std::stoi(argv[a]));

  struct Criterion {
    double budget_seconds;
    std::function<v::Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {1.0, v::kernel_asymptotics},
      {60.0, v::kernel_oracle},
      {300.0, v::semigroup_heat_oracle},
      {300.0, v::semigroup_law},
      {600.0, v::linear_selfsimilar},
      {1800.0, v::nonlinear_conservation},
      {1800.0, v::cross_validation},
      {1800.0, v::decay_scales},
      {60.0, v::antisymmetry},
      {1200.0, [] { return v::inequality_samplers(20240601); }},
  };

  int failures = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    const int number = static_cast<int>(n) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), number) == only.end()) continue;
    v::Check c;
    try {
      c = criteria[n].run();
    } catch (const std::exception& e) {
      c.id = "criterion";
      c.passed = false;
      c.detail = std::string("exception: ") + e.what();
    }
    const bool in_budget = c.seconds <= criteria[n].budget_seconds;
    const bool ok = c.passed && in_budget;
    if (!ok) ++failures;
    std::printf("%s  %2d  %-24s %.4g %s %.4g  (%.1fs of %.0fs)  %s\n", ok ? "PASS" : "FAIL", number,
                c.id.c_str(), c.measured, c.relation.c_str(), c.threshold, c.seconds,
                criteria[n].budget_seconds, c.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
