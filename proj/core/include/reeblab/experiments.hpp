#pragma once

#include "reeblab/config.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

/// Runs one configured experiment: writes its CSV artifacts and the resolved configuration
/// into an output directory and prints a human-readable report.
namespace reeb::experiments {

struct Assertion {
  std::string name;
  bool passed = false;
};

struct RunResult {
  std::vector<Assertion> assertions;
  std::vector<std::filesystem::path> artifacts;

  /// True iff every assertion passed (and at least one was declared).
  bool passed() const;
};

/// Dispatches on cfg.experiment(). Configuration problems throw config::ConfigError and
/// module failures propagate as InvalidInput or NumericalFailure.
RunResult run(const config::ExperimentConfig& cfg, const std::filesystem::path& output_dir,
              std::ostream& report);

}  // namespace reeb::experiments
