#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace axivort::cli {

std::string sha256_file(const std::filesystem::path& path);

/// Collects produced files and writes manifest.json (sorted, no timestamps,
/// so identical runs give identical manifests).
class Manifest {
 public:
  explicit Manifest(std::filesystem::path root) : root_(std::move(root)) {}

  void add(const std::filesystem::path& file);
  void write(const nlohmann::json& config, const std::string& command, int exit_status,
             const nlohmann::json& extra = nlohmann::json::object()) const;

 private:
  std::filesystem::path root_;
  std::vector<std::filesystem::path> files_;
};

}  // namespace axivort::cli
