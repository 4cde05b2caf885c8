#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace restframe::cli {

enum class Relation { at_most, greater_than, is_true };

struct Check {
  std::string name;
  double value{0.0};
  double threshold{0.0};
  Relation relation{Relation::at_most};
  bool pass{false};
};

struct RunReport {
  std::string experiment;
  std::uint64_t seed{42};
  std::vector<Check> checks;
  std::vector<std::string> outputs;  // file names relative to the output directory

  /// value ≤ threshold; NaN fails.
  void at_most(const std::string& name, double value, double threshold);
  /// value > threshold; NaN fails.
  void greater_than(const std::string& name, double value, double threshold);
  void is_true(const std::string& name, bool ok);

  bool pass() const;
  int exit_code() const { return pass() ? 0 : 3; }
  std::string to_json() const;
};

struct RunOptions {
  std::filesystem::path out_dir;
  std::uint64_t seed{42};
};

RunReport run_tube(ExperimentConfig& cfg, const RunOptions& opt);
RunReport run_algebra(ExperimentConfig& cfg, const RunOptions& opt);
RunReport run_orbit(ExperimentConfig& cfg, const RunOptions& opt);
RunReport run_spectrum(ExperimentConfig& cfg, const RunOptions& opt);
RunReport run_entangle(ExperimentConfig& cfg, const RunOptions& opt);
RunReport run_ehrenfest(ExperimentConfig& cfg, const RunOptions& opt);

const std::vector<std::string>& experiment_names();

/// Dispatches by name; writes report.json into opt.out_dir.
RunReport run_experiment(const std::string& name, ExperimentConfig& cfg, const RunOptions& opt);

/// --out, then the config's output_dir, then $RESTFRAME_OUT, then ./restframe_out.
std::filesystem::path resolve_output_dir(const std::string& flag, const ExperimentConfig& cfg);

/// Runs one subcommand end to end and maps failures to exit codes:
/// 0 pass, 1 validation error, 2 numerical or domain failure, 3 checks failed.
int main_for(const std::string& experiment, const std::filesystem::path& config_path, std::uint64_t seed,
             const std::string& out_flag);

}  // namespace restframe::cli
