#pragma once

// Strict JSON configuration for the restframe subcommands. Every key a driver
// reads is marked as consumed; finish() rejects whatever is left over.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "restframe/potential.hpp"
#include "restframe/vec.hpp"

namespace restframe::cli {

using json = nlohmann::json;

struct PotentialSpec {
  std::string kind;  // free, coulomb, oscillator, custom-polynomial
  std::vector<double> coefficients;

  /// Throws ValidationError for an unknown kind or a wrong coefficient count.
  Potential make() const;
};

class ConfigSection {
 public:
  ConfigSection(json value, std::string path);

  bool has(const std::string& key) const;

  double number(const std::string& key, double fallback);
  double positive(const std::string& key, double fallback);
  std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t min_value);
  bool boolean(const std::string& key, bool fallback);
  std::string string(const std::string& key, const std::string& fallback);
  Vec3 vec3(const std::string& key, const Vec3& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<std::int64_t> integers(const std::string& key, const std::vector<std::int64_t>& fallback);
  /// Nested object; an absent key yields an empty section.
  ConfigSection section(const std::string& key);

  /// {kind: coulomb|oscillator|free|custom-polynomial, coefficients: [...]}
  PotentialSpec potential(const std::string& key, const std::string& default_kind,
                          const std::vector<double>& default_coefficients);

  /// Throws ValidationError naming the first key that nothing consumed.
  void finish() const;

  const std::string& path() const { return path_; }

 private:
  const json* lookup(const std::string& key);
  std::string where(const std::string& key) const;

  json value_;
  std::string path_;
  std::set<std::string> consumed_;
};

/// Tolerances live under "tolerances"; each one must be > 0.
class Tolerances {
 public:
  explicit Tolerances(ConfigSection section) : section_(std::move(section)) {}
  double get(const std::string& name, double fallback) { return section_.positive(name, fallback); }
  void finish() const { section_.finish(); }

 private:
  ConfigSection section_;
};

struct ExperimentConfig {
  std::string experiment;
  ConfigSection root;
  std::optional<std::filesystem::path> output_dir;
};

/// Parses the file, checks that "experiment" (when present) matches, and pulls
/// out "output_dir". Throws ValidationError on unreadable or malformed input.
ExperimentConfig load_config(const std::filesystem::path& path, const std::string& experiment);
ExperimentConfig parse_config(const std::string& text, const std::string& experiment);

}  // namespace restframe::cli
