#include "reeblab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace reeb::config {

using nlohmann::json;

ConfigError::ConfigError(std::string key, const std::string& message)
    : InvalidInput(key.empty() ? message : "config key '" + key + "': " + message),
      key_(std::move(key)) {}

namespace {

json schema(std::string_view experiment) {
  const double sqrt2 = std::sqrt(2.0);
  const double pi = std::acos(-1.0);
  if (experiment == "ellipsoid-report")
    return {{"params", {{"a", 1.0}, {"b", sqrt2}, {"p", 1}, {"q", 1}, {"surface", "line"}}},
            {"tolerances", {{"comparison", 1e-12}}}};
  if (experiment == "flow-sim")
    return {{"params",
             {{"a", 1.0},
              {"b", sqrt2},
              {"p", 1},
              {"q", 1},
              {"surface", "line"},
              {"duration", 200.0},
              {"start", {0.1, 0.2, 0.3}},
              {"write_trajectory", false}}},
            {"tolerances",
             {{"rel", 1e-10}, {"abs", 1e-12}, {"event", 1e-10}, {"max_step", 0.05},
              {"rate_rel", 0.02}}}};
  if (experiment == "inflate-check")
    return {{"params",
             {{"s0", 1.0},
              {"delta", 0.1},
              {"r0", 0.5},
              {"area", pi},
              {"tube_T", 1.0},
              {"tube_rho", std::sqrt(0.5)},
              {"tube_p", 0},
              {"tube_q", 1},
              {"audit_samples", 1000},
              {"traversal_samples", 100},
              {"mc_samples", 1000000},
              {"budget_volume", 1.0},
              {"budget_rate", 0.5}}},
            {"tolerances",
             {{"normalization", 1e-8},
              {"kernel", 1e-6},
              {"traversal", 1e-8},
              {"monte_carlo_rel", 0.005}}}};
  if (experiment == "spectrum")
    return {{"params",
             {{"generators", {1.0, sqrt2}},
              {"volume", 0.0},
              {"k_max", 10000},
              {"weyl", false},
              {"block_lo", 100},
              {"explicit_constant", 0.0}}},
            {"tolerances", {{"weyl_band", 0.05}}}};
  if (experiment == "calabi")
    return {{"params",
             {{"model", "ideal-twist"},
              {"domain", "disk"},
              {"r_in", 0.3},
              {"orbit_budget", 3},
              {"check_theorem", false},
              {"perturbations", 5},
              {"rotation", 0.6180339887498949},
              {"spline_r", json::array()},
              {"spline_tau", json::array()}}},
            {"tolerances",
             {{"comparison", 1e-12},
              {"calabi", 1e-10},
              {"path_agreement", 1e-9},
              {"perturbation", 1e-8}}}};
  if (experiment == "verify-all")
    return {{"params", {{"criteria", json::array()}}}, {"tolerances", json::object()}};
  throw ConfigError("experiment", "unknown experiment '" + std::string(experiment) + "'");
}

std::vector<std::string> split(std::string_view key) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    parts.emplace_back(key.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

std::string kind_name(const json& v) {
  if (v.is_boolean()) return "boolean";
  if (v.is_number_integer()) return "integer";
  if (v.is_number()) return "number";
  if (v.is_string()) return "string";
  if (v.is_array()) return "array of numbers";
  if (v.is_object()) return "object";
  return "null";
}

void check_kind(const json& target, const json& value, const std::string& key) {
  bool ok = false;
  if (target.is_boolean()) ok = value.is_boolean();
  else if (target.is_number_integer()) ok = value.is_number_integer();
  else if (target.is_number()) ok = value.is_number();
  else if (target.is_string()) ok = value.is_string();
  else if (target.is_array()) {
    ok = value.is_array();
    if (ok)
      for (const auto& e : value) ok = ok && e.is_number();
  }
  if (!ok)
    throw ConfigError(key, "expected " + kind_name(target) + ", got " + value.dump());
  if (value.is_number() && !std::isfinite(value.get<double>()))
    throw ConfigError(key, "value must be finite");
}

void merge(json& target, const json& source, const std::string& prefix) {
  for (auto it = source.begin(); it != source.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!target.contains(it.key())) throw ConfigError(key, "unknown key");
    json& slot = target[it.key()];
    if (slot.is_object()) {
      if (!it.value().is_object()) throw ConfigError(key, "expected an object");
      merge(slot, it.value(), key);
      continue;
    }
    check_kind(slot, it.value(), key);
    slot = it.value();
  }
}

}  // namespace

struct ExperimentConfig::Impl {
  std::string experiment;
  json doc;

  const json& at(std::string_view key) const {
    const json* node = &doc;
    for (const auto& part : split(key)) {
      if (!node->is_object() || !node->contains(part))
        throw ConfigError(std::string(key), "unknown key");
      node = &(*node)[part];
    }
    return *node;
  }

  void assign(std::string_view key, const json& value) {
    json patch = value;
    const auto parts = split(key);
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = json{{*it, patch}};
    merge(doc, patch, "");
  }
};

ExperimentConfig::ExperimentConfig(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
ExperimentConfig::ExperimentConfig(const ExperimentConfig& o)
    : impl_(std::make_unique<Impl>(*o.impl_)) {}
ExperimentConfig& ExperimentConfig::operator=(const ExperimentConfig& o) {
  if (this != &o) impl_ = std::make_unique<Impl>(*o.impl_);
  return *this;
}
ExperimentConfig::ExperimentConfig(ExperimentConfig&&) noexcept = default;
ExperimentConfig& ExperimentConfig::operator=(ExperimentConfig&&) noexcept = default;
ExperimentConfig::~ExperimentConfig() = default;

ExperimentConfig ExperimentConfig::defaults(std::string_view experiment) {
  auto impl = std::make_unique<Impl>();
  impl->experiment = std::string(experiment);
  impl->doc = schema(experiment);
  impl->doc["experiment"] = impl->experiment;
  impl->doc["output_dir"] = "reeblab-out/" + impl->experiment;
  impl->doc["seed"] = std::uint64_t{1729};
  return ExperimentConfig(std::move(impl));
}

const std::string& ExperimentConfig::experiment() const { return impl_->experiment; }

double ExperimentConfig::number(std::string_view key) const {
  const json& v = impl_->at(key);
  if (!v.is_number()) throw ConfigError(std::string(key), "not a number");
  return v.get<double>();
}

std::int64_t ExperimentConfig::integer(std::string_view key) const {
  const json& v = impl_->at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string(key), "not an integer");
  return v.get<std::int64_t>();
}

bool ExperimentConfig::flag(std::string_view key) const {
  const json& v = impl_->at(key);
  if (!v.is_boolean()) throw ConfigError(std::string(key), "not a boolean");
  return v.get<bool>();
}

std::string ExperimentConfig::text(std::string_view key) const {
  const json& v = impl_->at(key);
  if (!v.is_string()) throw ConfigError(std::string(key), "not a string");
  return v.get<std::string>();
}

std::vector<double> ExperimentConfig::numbers(std::string_view key) const {
  const json& v = impl_->at(key);
  if (!v.is_array()) throw ConfigError(std::string(key), "not an array");
  return v.get<std::vector<double>>();
}

std::uint64_t ExperimentConfig::seed() const {
  const json& v = impl_->at("seed");
  if (!v.is_number_unsigned()) throw ConfigError("seed", "must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string ExperimentConfig::output_dir() const { return text("output_dir"); }

void ExperimentConfig::set(std::string_view key, double value) { impl_->assign(key, value); }
void ExperimentConfig::set_integer(std::string_view key, std::int64_t value) {
  if (key == "seed") {
    if (value < 0) throw ConfigError("seed", "must be a nonnegative integer");
    impl_->assign(key, static_cast<std::uint64_t>(value));
    return;
  }
  impl_->assign(key, value);
}
void ExperimentConfig::set(std::string_view key, bool value) { impl_->assign(key, value); }
void ExperimentConfig::set(std::string_view key, const std::string& value) {
  impl_->assign(key, value);
}
void ExperimentConfig::set(std::string_view key, const std::vector<double>& values) {
  impl_->assign(key, values);
}

void ExperimentConfig::merge_json(std::string_view json_text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string(source) + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", std::string(source) + ": top level must be an object");
  if (doc.contains("experiment")) {
    const json& e = doc["experiment"];
    if (!e.is_string() || e.get<std::string>() != impl_->experiment)
      throw ConfigError("experiment", std::string(source) + " is for " + e.dump() +
                                          ", not '" + impl_->experiment + "'");
    doc.erase("experiment");
  }
  if (doc.contains("seed") && doc["seed"].is_number_integer() && doc["seed"].get<std::int64_t>() < 0)
    throw ConfigError("seed", "must be a nonnegative integer");
  if (doc.contains("seed") && doc["seed"].is_number_integer())
    doc["seed"] = doc["seed"].get<std::uint64_t>();
  merge(impl_->doc, doc, "");
}

void ExperimentConfig::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  merge_json(text.str(), path.string());
}

std::string ExperimentConfig::to_json() const { return impl_->doc.dump(2) + "\n"; }

const std::vector<std::string>& experiments() {
  static const std::vector<std::string> names{"ellipsoid-report", "flow-sim", "inflate-check",
                                              "spectrum",         "calabi",   "verify-all"};
  return names;
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg,
                                         const std::optional<std::filesystem::path>& output_root) {
  const std::filesystem::path dir = cfg.output_dir();
  if (dir.is_absolute() || !output_root) return dir;
  return *output_root / dir;
}

std::filesystem::path write_resolved(const ExperimentConfig& cfg,
                                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = dir / "resolved_config.json";
  std::ofstream out(path, std::ios::binary);
  out << cfg.to_json();
  if (!out) throw NumericalFailure("cannot write " + path.string());
  return path;
}

}  // namespace reeb::config
