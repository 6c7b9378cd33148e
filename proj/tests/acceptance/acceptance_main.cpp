// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
//   reeblab_acceptance [--cli PATH] [--scratch DIR] [--seed N]
//
// With --cli the determinism criterion runs the command-line tool twice and compares the
// CSV files it wrote; without it the suite is run twice in-process.

#include "reeblab/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using reeb::verify::CriterionResult;

namespace {

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

CriterionResult cli_determinism(const std::string& cli, const fs::path& scratch, std::uint64_t seed) {
  CriterionResult r;
  r.id = reeb::verify::kDeterminismCriterion;
  r.name = "determinism";
  r.time_limit = 0.0;
  const auto start = std::chrono::steady_clock::now();
  int codes[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path dir = scratch / (i ? "b" : "a");
    fs::remove_all(dir);
    const std::string cmd = shell_quote(cli) + " verify-all --seed " + std::to_string(seed) +
                            " --output-dir " + shell_quote(dir.string()) + " > " +
                            shell_quote((scratch / (i ? "b.log" : "a.log")).string()) + " 2>&1";
    codes[i] = std::system(cmd.c_str());
  }
  const auto diff = reeb::verify::differing_csv_files(scratch / "a", scratch / "b");
  std::size_t csv_count = 0;
  if (fs::exists(scratch / "a"))
    for (const auto& e : fs::recursive_directory_iterator(scratch / "a"))
      if (e.path().extension() == ".csv") ++csv_count;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = codes[0] == 0 && codes[1] == 0 && diff.empty() && csv_count > 0;
  std::ostringstream d;
  d << csv_count << " CSV files compared, " << diff.size() << " differ";
  if (!diff.empty()) d << " (first: " << diff.front() << ")";
  if (codes[0] || codes[1]) d << ", exit codes " << codes[0] << "/" << codes[1];
  r.detail = d.str();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  fs::path scratch = fs::temp_directory_path() / "reeblab-acceptance";
  std::uint64_t seed = 1729;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (i + 1 < argc && a == "--cli") cli = argv[++i];
    else if (i + 1 < argc && a == "--scratch") scratch = argv[++i];
    else if (i + 1 < argc && a == "--seed") seed = std::stoull(argv[++i]);
    else {
      std::cerr << "usage: reeblab_acceptance [--cli PATH] [--scratch DIR] [--seed N]\n";
      return 2;
    }
  }
  fs::create_directories(scratch);

  reeb::verify::SuiteOptions opts;
  opts.seed = seed;
  auto results = reeb::verify::run_suite(opts);
  results.push_back(cli.empty() ? reeb::verify::determinism_check(seed, scratch)
                                : cli_determinism(cli, scratch, seed));

  int failed = 0;
  for (const auto& r : results) {
    std::cout << reeb::verify::summary_line(r) << "\n";
    if (!r.ok()) ++failed;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
