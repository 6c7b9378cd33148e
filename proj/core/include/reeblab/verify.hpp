#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

/// The acceptance suite: eleven numbered checks that run in-process plus a determinism
/// check that compares the CSV artifacts of two runs.
namespace reeb::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool within_time_limit = true;
  double seconds = 0.0;
  double time_limit = 0.0;
  /// Measured quantities; deterministic for a fixed seed (no timings).
  std::string detail;

  bool ok() const { return passed && within_time_limit; }
};

struct SuiteOptions {
  std::uint64_t seed = 1729;
  /// CSV artifacts go here when set; nothing is written when empty.
  std::filesystem::path output_dir;
  /// Criterion ids to run (1..11); empty means all.
  std::vector<int> only;
};

constexpr int kInProcessCriteria = 11;
constexpr int kDeterminismCriterion = 12;

/// Runs one criterion. Exceptions from the modules are caught and reported as failures.
CriterionResult run_criterion(int id, const SuiteOptions& options);
std::vector<CriterionResult> run_suite(const SuiteOptions& options);

/// Relative paths of the CSV files under a, b that are missing on one side or differ byte-wise.
std::vector<std::string> differing_csv_files(const std::filesystem::path& a,
                                             const std::filesystem::path& b);

/// Runs the suite twice with the same seed into a/ and b/ below scratch and compares the CSVs.
CriterionResult determinism_check(std::uint64_t seed, const std::filesystem::path& scratch,
                                  const std::vector<int>& only = {});

/// One line per criterion: "[PASS] 3 flow-engine fidelity (1.23 s / 5 s): detail".
std::string summary_line(const CriterionResult& r);
/// CSV id, name, passed, detail. Timings are left out so that the file is reproducible.
void write_summary_csv(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace reeb::verify
