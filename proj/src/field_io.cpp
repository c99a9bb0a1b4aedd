#include "axivort/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "axivort/error.hpp"

namespace axivort::io {

namespace {

static_assert(sizeof(double) == 8);

nlohmann::json header_for(const HalfPlaneGrid& g, const std::string& tag, double time) {
  // Keys are emitted in sorted order by nlohmann::json, which keeps files
  // byte-identical between runs.
  return {{"n_r", g.n_r()},       {"n_z", g.n_z()},           {"r_max", g.r_max()},
          {"z_half", g.z_half()}, {"quantity_tag", tag},      {"time", time}};
}

void write_doubles(std::ostream& os, const std::vector<double>& v) {
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * 8));
  } else {
    for (double x : v) {
      auto bits = std::bit_cast<std::uint64_t>(x);
      char bytes[8];
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
      os.write(bytes, 8);
    }
  }
}

std::vector<double> read_doubles(std::istream& is, std::size_t n) {
  std::vector<char> raw(n * 8);
  is.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(is.gcount()) != raw.size()) {
    throw ConfigError("field file is truncated");
  }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(raw[i * 8 + b])) << (8 * b);
    }
    v[i] = std::bit_cast<double>(bits);
  }
  return v;
}

}  // namespace

void write_field(const std::filesystem::path& path, const ScalarField& field, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  os << header_for(field.grid(), to_string(field.tag()), time).dump() << '\n';
  write_doubles(os, field.values());
  if (!os) throw ConfigError("failed writing " + path.string());
}

StoredField read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open field file " + path.string());
  std::string line;
  std::getline(is, line);
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
    HalfPlaneGrid grid(h.at("n_r").get<int>(), h.at("n_z").get<int>(), h.at("r_max").get<double>(),
                       h.at("z_half").get<double>());
    const Quantity tag = quantity_from_string(h.at("quantity_tag").get<std::string>());
    auto values = read_doubles(is, grid.size());
    return {ScalarField(grid, std::move(values), tag), h.value("time", 0.0)};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": malformed field header: " + e.what());
  }
}

void write_velocity(const std::filesystem::path& path, const VelocityField& u) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  os << header_for(u.grid, "velocity", 0.0).dump() << '\n';
  write_doubles(os, u.u_r);
  write_doubles(os, u.u_z);
}

void write_csv(std::ostream& os, const ScalarField& field) {
  const auto& g = field.grid();
  os << "r,z," << to_string(field.tag()) << '\n';
  char buf[96];
  for (int i = 0; i < g.n_r(); ++i) {
    for (int k = 0; k < g.n_z(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.r(i), g.z(k), field(i, k));
      os << buf;
    }
  }
}

}  // namespace axivort::io
