#include "reeblab/config.hpp"
#include "reeblab/errors.hpp"
#include "reeblab/experiments.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using reeb::config::ExperimentConfig;

enum class Kind { Number, Integer, Flag, Text, List };

struct FlagSpec {
  const char* flag;
  const char* key;
  Kind kind;
  const char* help;
};

const std::map<std::string, std::vector<FlagSpec>>& flag_table() {
  static const std::map<std::string, std::vector<FlagSpec>> t{
      {"ellipsoid-report",
       {{"--a", "params.a", Kind::Number, "action of gamma_1"},
        {"--b", "params.b", Kind::Number, "action of gamma_2"},
        {"--p", "params.p", Kind::Integer, "line-class p"},
        {"--q", "params.q", Kind::Integer, "line-class q"},
        {"--surface", "params.surface", Kind::Text, "line or disk"},
        {"--tol", "tolerances.comparison", Kind::Number, "comparison tolerance"}}},
      {"flow-sim",
       {{"--a", "params.a", Kind::Number, "action of gamma_1"},
        {"--b", "params.b", Kind::Number, "action of gamma_2"},
        {"--p", "params.p", Kind::Integer, "line-class p"},
        {"--q", "params.q", Kind::Integer, "line-class q"},
        {"--surface", "params.surface", Kind::Text, "line or disk"},
        {"--duration", "params.duration", Kind::Number, "integration time"},
        {"--start", "params.start", Kind::List, "theta1,theta2,w start point"},
        {"--trajectory", "params.write_trajectory", Kind::Flag, "write every accepted step"},
        {"--rate-tol", "tolerances.rate_rel", Kind::Number, "relative rate tolerance"}}},
      {"inflate-check",
       {{"--s0", "params.s0", Kind::Number, "slab half-length"},
        {"--delta", "params.delta", Kind::Number, "inflation amount"},
        {"--r0", "params.r0", Kind::Number, "tube radius"},
        {"--area", "params.area", Kind::Number, "area A0 of the surface"},
        {"--tube-T", "params.tube_T", Kind::Number, "boundary orbit period"},
        {"--tube-rho", "params.tube_rho", Kind::Number, "boundary orbit rotation number"},
        {"--tube-p", "params.tube_p", Kind::Integer, "conormal winding"},
        {"--tube-q", "params.tube_q", Kind::Integer, "covering degree"},
        {"--audit-samples", "params.audit_samples", Kind::Integer, "points per chart"},
        {"--traversal-samples", "params.traversal_samples", Kind::Integer, "start points"},
        {"--mc-samples", "params.mc_samples", Kind::Integer, "Monte Carlo samples"},
        {"--budget-volume", "params.budget_volume", Kind::Number, "contact volume V"},
        {"--budget-rate", "params.budget_rate", Kind::Number, "F + epsilon"}}},
      {"spectrum",
       {{"--generators", "params.generators", Kind::List, "comma-separated orbit actions"},
        {"--volume", "params.volume", Kind::Number, "contact volume (0: product of two)"},
        {"--k-max", "params.k_max", Kind::Integer, "largest index"},
        {"--weyl", "params.weyl", Kind::Flag, "Weyl-law diagnostics"},
        {"--block-lo", "params.block_lo", Kind::Integer, "first dyadic block start"},
        {"--explicit-constant", "params.explicit_constant", Kind::Number,
         "boundary constant C for the explicit bound"}}},
      {"calabi",
       {{"--model", "params.model", Kind::Text,
         "ideal-twist, flipped-twist, smoothed-twist, rigid-rotation or spline"},
        {"--domain", "params.domain", Kind::Text, "disk or annulus"},
        {"--r-in", "params.r_in", Kind::Number, "inner radius of the annulus"},
        {"--orbit-budget", "params.orbit_budget", Kind::Integer, "largest period searched"},
        {"--check-theorem", "params.check_theorem", Kind::Flag, "evaluate the Calabi bound"},
        {"--perturbations", "params.perturbations", Kind::Integer, "random primitive changes"},
        {"--rotation", "params.rotation", Kind::Number, "angle of the rigid rotation (turns)"},
        {"--spline-r", "params.spline_r", Kind::List, "spline knot radii"},
        {"--spline-tau", "params.spline_tau", Kind::List, "spline knot rotation numbers"}}},
      {"verify-all", {{"--criteria", "params.criteria", Kind::List, "subset of criteria 1..11"}}},
  };
  return t;
}

const char* describe(const std::string& name) {
  static const std::map<std::string, const char*> d{
      {"ellipsoid-report", "rotation numbers, intersections and ratios on an irrational ellipsoid"},
      {"flow-sim", "integrate the ellipsoid Reeb flow and count surface crossings"},
      {"inflate-check", "audit the inflated contact form, traversal times and slab volume"},
      {"spectrum", "orbit-set action spectrum with Weyl-law diagnostics"},
      {"calabi", "Calabi invariant, periodic orbits and the mean-action bound"},
      {"verify-all", "run the acceptance suite and write its CSV artifacts"},
  };
  return d.at(name);
}

struct Captured {
  std::optional<std::string> text;
  bool flag = false;
};

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw reeb::config::ConfigError(key, "'" + item + "' is not a number");
    }
  }
  return out;
}

void apply(ExperimentConfig& cfg, const FlagSpec& spec, const Captured& c) {
  const std::string key = spec.key;
  if (spec.kind == Kind::Flag) {
    if (c.flag) cfg.set(key, true);
    return;
  }
  if (!c.text) return;
  const std::string& v = *c.text;
  try {
    switch (spec.kind) {
      case Kind::Number: cfg.set(key, std::stod(v)); break;
      case Kind::Integer: cfg.set_integer(key, std::stoll(v)); break;
      case Kind::Text: cfg.set(key, v); break;
      case Kind::List: cfg.set(key, parse_list(key, v)); break;
      case Kind::Flag: break;
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const reeb::InvalidInput*>(&e)) throw;
    throw reeb::config::ConfigError(key, "cannot parse '" + v + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on Reeb flows, surface maps and action spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "reeblab 0.1.0");

  struct Sub {
    CLI::App* app;
    std::vector<Captured> values;
    std::optional<std::string> config_file, output_dir;
    std::optional<long long> seed;
  };
  std::map<std::string, Sub> subs;
  for (const auto& name : reeb::config::experiments()) {
    const auto& specs = flag_table().at(name);
    Sub& s = subs[name];
    s.app = app.add_subcommand(name, describe(name));
    s.values.resize(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
      if (specs[i].kind == Kind::Flag) s.app->add_flag(specs[i].flag, s.values[i].flag, specs[i].help);
      else s.app->add_option(specs[i].flag, s.values[i].text, specs[i].help);
    }
    s.app->add_option("--config", s.config_file, "JSON config; its values override flags");
    s.app->add_option("--output-dir", s.output_dir,
                      "output directory (relative paths resolve under $REEBLAB_OUTPUT_ROOT)");
    s.app->add_option("--seed", s.seed, "seed for randomized runs");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (auto& [name, s] : subs) {
    if (!s.app->parsed()) continue;
    try {
      auto cfg = ExperimentConfig::defaults(name);
      const auto& specs = flag_table().at(name);
      for (std::size_t i = 0; i < specs.size(); ++i) apply(cfg, specs[i], s.values[i]);
      if (s.output_dir) cfg.set("output_dir", *s.output_dir);
      if (s.seed) cfg.set_integer("seed", *s.seed);
      if (s.config_file) cfg.merge_file(*s.config_file);

      std::optional<std::filesystem::path> root;
      if (const char* env = std::getenv("REEBLAB_OUTPUT_ROOT"); env && *env) root = env;
      const auto dir = reeb::config::resolve_output_dir(cfg, root);
      const auto result = reeb::experiments::run(cfg, dir, std::cout);
      std::cout << "artifacts in " << dir.string() << "\n";
      return result.passed() ? 0 : 1;
    } catch (const reeb::config::ConfigError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 2;
    } catch (const reeb::NumericalFailure& e) {
      std::cerr << name << ": numerical failure: " << e.what() << "\n";
      return 3;
    } catch (const reeb::InvalidInput& e) {
      std::cerr << name << ": invalid input: " << e.what() << "\n";
      return 3;
    } catch (const std::exception& e) {
      std::cerr << name << ": error: " << e.what() << "\n";
      return 4;
    }
  }
  return 2;
}
