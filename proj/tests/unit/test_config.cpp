#include "reeblab/config.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace reeb::config;

TEST_CASE("defaults exist for every experiment") {
  for (const auto& name : experiments()) {
    const auto cfg = ExperimentConfig::defaults(name);
    CHECK(cfg.experiment() == name);
    CHECK(cfg.seed() == 1729);
    CHECK(cfg.output_dir() == "reeblab-out/" + name);
  }
  CHECK_THROWS_AS(ExperimentConfig::defaults("nonsense"), ConfigError);
  CHECK(ExperimentConfig::defaults("flow-sim").number("params.duration") == 200.0);
}

TEST_CASE("unknown keys and wrong types are rejected with the key named") {
  auto cfg = ExperimentConfig::defaults("spectrum");
  try {
    cfg.merge_json(R"({"params": {"k_maxx": 3}})");
    FAIL("accepted an unknown key");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "params.k_maxx");
  }
  try {
    cfg.merge_json(R"({"params": {"k_max": 2.5}})");
    FAIL("accepted a fractional integer");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "params.k_max");
  }
  CHECK_THROWS_AS(cfg.merge_json(R"({"params": {"weyl": "yes"}})"), ConfigError);
  CHECK_THROWS_AS(cfg.merge_json("{not json"), ConfigError);
  CHECK_THROWS_AS(cfg.merge_json(R"({"experiment": "calabi"})"), ConfigError);
  CHECK_THROWS_AS(cfg.merge_json(R"({"seed": -1})"), ConfigError);
  CHECK_THROWS_AS(cfg.set("params.nope", 1.0), ConfigError);
}

TEST_CASE("number slots accept integers and merges override") {
  auto cfg = ExperimentConfig::defaults("ellipsoid-report");
  cfg.set("params.a", 3.0);
  cfg.merge_json(R"({"params": {"a": 2, "surface": "disk"}, "seed": 5})");
  CHECK(cfg.number("params.a") == 2.0);
  CHECK(cfg.text("params.surface") == "disk");
  CHECK(cfg.seed() == 5);
}

TEST_CASE("serialization is deterministic and round-trips") {
  auto a = ExperimentConfig::defaults("calabi");
  auto b = ExperimentConfig::defaults("calabi");
  a.set("params.model", std::string("spline"));
  b.merge_json(R"({"params": {"model": "spline"}})");
  CHECK(a.to_json() == b.to_json());
  auto c = ExperimentConfig::defaults("calabi");
  c.merge_json(a.to_json());
  CHECK(c.to_json() == a.to_json());
}

TEST_CASE("output directory resolution and resolved config file") {
  auto cfg = ExperimentConfig::defaults("verify-all");
  CHECK(resolve_output_dir(cfg, std::nullopt) == std::filesystem::path("reeblab-out/verify-all"));
  const auto tmp = std::filesystem::temp_directory_path() / "reeblab-config-test";
  std::filesystem::remove_all(tmp);
  CHECK(resolve_output_dir(cfg, tmp) == tmp / "reeblab-out/verify-all");
  cfg.set("output_dir", tmp.string());
  CHECK(resolve_output_dir(cfg, std::filesystem::path("/elsewhere")) == tmp);

  const auto file = write_resolved(cfg, tmp / "x");
  std::ifstream in(file);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text.find("\"verify-all\"") != std::string::npos);
  auto back = ExperimentConfig::defaults("verify-all");
  back.merge_file(file);
  CHECK(back.to_json() == cfg.to_json());
  CHECK_THROWS_AS(back.merge_file(tmp / "missing.json"), ConfigError);
  std::filesystem::remove_all(tmp);
}
