#pragma once

// Field files: one line of JSON
//   {"n_r":..,"n_z":..,"r_max":..,"z_half":..,"quantity_tag":"omega_theta","time":..}
// terminated by '\n', followed by n_r * n_z little-endian float64 values,
// r-index outer.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "axivort/field.hpp"

namespace axivort::io {

struct StoredField {
  ScalarField field;
  double time = 0.0;
};

void write_field(const std::filesystem::path& path, const ScalarField& field, double time);
StoredField read_field(const std::filesystem::path& path);

/// Velocity files use the same header with quantity_tag "velocity" followed by
/// u_r then u_z.
void write_velocity(const std::filesystem::path& path, const VelocityField& u);

/// "r,z,value" rows; intended for small grids.
void write_csv(std::ostream& os, const ScalarField& field);

}  // namespace axivort::io
