#pragma once

#include "reeblab/errors.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

/**
 * Experiment configuration shared by every subcommand.
 *
 * A configuration is a JSON object with the keys experiment, output_dir, seed, params and
 * tolerances. The defaults of each experiment double as its schema: an override may only
 * name keys that exist there, with a value of the same kind (number, integer, boolean,
 * string or array of numbers). Keys are addressed with dotted paths such as "params.a".
 */
namespace reeb::config {

/// Invalid configuration. key() names the offending dotted path (empty if none applies).
class ConfigError : public InvalidInput {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class ExperimentConfig {
 public:
  /// Defaults for one experiment; throws ConfigError for an unknown experiment name.
  static ExperimentConfig defaults(std::string_view experiment);

  const std::string& experiment() const;

  double number(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  bool flag(std::string_view key) const;
  std::string text(std::string_view key) const;
  std::vector<double> numbers(std::string_view key) const;

  std::uint64_t seed() const;
  std::string output_dir() const;

  void set(std::string_view key, double value);
  void set_integer(std::string_view key, std::int64_t value);
  void set(std::string_view key, bool value);
  void set(std::string_view key, const std::string& value);
  void set(std::string_view key, const std::vector<double>& values);

  /// Merges a JSON document over the current values. source labels error messages.
  void merge_json(std::string_view json_text, std::string_view source = "config");
  /// Reads and merges a JSON file.
  void merge_file(const std::filesystem::path& path);

  /// Pretty-printed JSON with sorted keys; identical for identical configurations.
  std::string to_json() const;

  ExperimentConfig(const ExperimentConfig&);
  ExperimentConfig& operator=(const ExperimentConfig&);
  ExperimentConfig(ExperimentConfig&&) noexcept;
  ExperimentConfig& operator=(ExperimentConfig&&) noexcept;
  ~ExperimentConfig();

 private:
  struct Impl;
  explicit ExperimentConfig(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

/// Names of all experiments, in subcommand order.
const std::vector<std::string>& experiments();

/// Output directory: output_dir when absolute, otherwise output_root / output_dir.
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg,
                                         const std::optional<std::filesystem::path>& output_root);

/// Writes resolved_config.json into dir (created if needed) and returns its path.
std::filesystem::path write_resolved(const ExperimentConfig& cfg, const std::filesystem::path& dir);

}  // namespace reeb::config
