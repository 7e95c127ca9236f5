#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cbo/bench.hpp"
#include "cbo/tuner.hpp"
#include "json.hpp"

namespace cbo {

struct ProfileSettings {
  SuccessKind criterion = SuccessKind::kFRatio;
  double factor = 0.05;
  double tau_max = 20.0;
};

/// The swept part of a `tune` experiment. Budget and seed come from the
/// enclosing manifest.
struct GridSettings {
  std::string algorithm;
  std::string problem;
  GridAxis a;
  GridAxis b;
  nlohmann::json fixed = nlohmann::json::object();
  int repeats = 3;
};

/// Declarative description of one experiment. Every CLI flag maps onto a field.
struct ExperimentManifest {
  std::vector<std::string> problems;
  std::vector<AlgorithmSpec> algorithms;
  std::int64_t budget = 10000;
  int repeats = 1;
  std::optional<double> noise_p;
  std::uint64_t seed = 0;
  std::string out = "out";
  int jobs = 1;
  std::optional<std::string> remote;
  ProfileSettings profile;
  std::optional<GridSettings> grid;
};

/// Accepts plain integers and integral scientific notation such as "1e4".
std::int64_t parse_budget(const std::string& text);

nlohmann::json to_json(const ExperimentManifest& manifest);

/// Missing keys keep their defaults; unknown keys throw ConfigError.
ExperimentManifest manifest_from_json(const nlohmann::json& j);

ExperimentManifest load_manifest(const std::filesystem::path& path);

/// Pretty-printed with a trailing newline, so reruns produce identical bytes.
std::string manifest_text(const ExperimentManifest& manifest);

}  // namespace cbo
