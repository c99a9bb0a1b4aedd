#pragma once

#include <stdexcept>
#include <string>

namespace axivort {

/// Argument outside the mathematical domain of an operation (non-positive s, coincident points, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation called with data of the wrong kind (tag mismatch, missing snapshot, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested time scale is below what the grid can resolve.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (grid, solver or run settings, CFL violations).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time step could not be completed; carries the last Picard residual.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace axivort
