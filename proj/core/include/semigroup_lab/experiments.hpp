#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semigroup_lab/fixtures.hpp"
#include "semigroup_lab/reports.hpp"

namespace semigroup_lab {

enum class ExperimentKind { stability, evolve, cauchy, trotter, criteria, lemmas };

/// Parsed and validated experiment configuration.
///
/// The on-disk format is JSON with a top-level "kind" discriminator; see
/// the README for the schema. Validation failures raise ConfigError with a
/// field path.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::stability;
  std::uint64_t seed = 0;
  std::map<std::string, FixtureDescriptor> fixtures;
  nlohmann::json family;         // recipe descriptor, resolved at run time
  nlohmann::json initial_state;  // shared x0 descriptor
  nlohmann::json parameters;     // kind-specific block
  nlohmann::json assertions;     // optional expected properties
  std::map<std::string, std::string> outputs;  // logical name -> file name
};

ExperimentConfig parse_experiment_config(const nlohmann::json& doc);

/// Reads and parses a config file; JSON syntax errors and validation
/// errors both surface as ConfigError with diagnostics.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  int jobs = 1;
  std::optional<std::uint64_t> seed_override;  // from SEMIGROUP_LAB_SEED
};

struct ExperimentOutcome {
  int exit_code = 0;  // 0 pass, 1 assertion failure
  std::vector<std::string> failures;
  std::vector<std::filesystem::path> written;
};

/// Executes the experiment, writes its report files atomically, and
/// evaluates the configured assertions. Deterministic for a fixed
/// config and seed.
ExperimentOutcome run_experiment(const ExperimentConfig& config, const RunOptions& options);

/// Writes a gnuplot script for a CSV report, dispatching on the header:
/// convergence tables plot log-log error against n (one curve per family,
/// picking up a sibling "<stem>.strang.csv" when present); stability tables
/// plot ratio against m*s/n. Empty tables produce an empty plot and a
/// warning on stderr. Missing columns raise FormatError.
void emit_plot_script(const std::filesystem::path& report_csv,
                      const std::filesystem::path& script_path);

}  // namespace semigroup_lab
