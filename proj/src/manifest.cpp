#include "cbo/manifest.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace cbo {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

json axis_json(const GridAxis& a) { return {{"name", a.name}, {"values", a.values}}; }

GridAxis axis_from(const json& j, const std::string& where) {
  reject_unknown(j, {"name", "values"}, where);
  GridAxis a{get<std::string>(j, "name", where), get<std::vector<double>>(j, "values", where)};
  if (a.values.empty()) throw ConfigError(where + ".values must not be empty");
  return a;
}

}  // namespace

std::int64_t parse_budget(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v) || v < 1 || v != std::floor(v) || v > 9e15)
    throw ConfigError("budget must be a positive whole number (e.g. 5000 or 1e4), got '" + text + "'");
  return static_cast<std::int64_t>(v);
}

json to_json(const ExperimentManifest& m) {
  json algos = json::array();
  for (const auto& a : m.algorithms) algos.push_back({{"name", a.name}, {"config", a.params}});
  json j = {
      {"problems", m.problems},
      {"algorithms", algos},
      {"budget", m.budget},
      {"repeats", m.repeats},
      {"noise_p", m.noise_p ? json(*m.noise_p) : json(nullptr)},
      {"seed", m.seed},
      {"out", m.out},
      {"jobs", m.jobs},
      {"remote", m.remote ? json(*m.remote) : json(nullptr)},
      {"profile",
       {{"criterion", std::string(to_string(m.profile.criterion))},
        {"factor", m.profile.factor},
        {"tau_max", m.profile.tau_max}}},
  };
  if (m.grid) {
    j["grid"] = {{"algorithm", m.grid->algorithm}, {"problem", m.grid->problem},
                 {"a", axis_json(m.grid->a)},      {"b", axis_json(m.grid->b)},
                 {"fixed", m.grid->fixed},         {"repeats", m.grid->repeats}};
  } else {
    j["grid"] = nullptr;
  }
  return j;
}

ExperimentManifest manifest_from_json(const json& j) {
  reject_unknown(j, {"problems", "algorithms", "budget", "repeats", "noise_p", "seed", "out", "jobs",
                     "remote", "profile", "grid"},
                 "manifest");
  ExperimentManifest m;
  if (j.contains("problems")) m.problems = get<std::vector<std::string>>(j, "problems", "manifest");
  if (j.contains("algorithms")) {
    const json& list = j["algorithms"];
    if (!list.is_array()) throw ConfigError("manifest.algorithms must be an array");
    for (const auto& a : list) {
      if (a.is_string()) {
        m.algorithms.push_back({a.get<std::string>(), json::object()});
        continue;
      }
      reject_unknown(a, {"name", "config"}, "manifest.algorithms[]");
      AlgorithmSpec spec{get<std::string>(a, "name", "manifest.algorithms[]"), json::object()};
      if (a.contains("config")) spec.params = a["config"];
      if (!spec.params.is_object()) throw ConfigError("algorithm config must be a JSON object");
      m.algorithms.push_back(std::move(spec));
    }
  }
  if (j.contains("budget")) {
    const json& b = j["budget"];
    if (b.is_string()) m.budget = parse_budget(b.get<std::string>());
    else if (b.is_number()) m.budget = parse_budget(b.dump());
    else throw ConfigError("manifest.budget must be a number or string");
  }
  if (j.contains("repeats")) m.repeats = get<int>(j, "repeats", "manifest");
  if (j.contains("noise_p") && !j["noise_p"].is_null()) m.noise_p = get<double>(j, "noise_p", "manifest");
  if (j.contains("seed")) m.seed = get<std::uint64_t>(j, "seed", "manifest");
  if (j.contains("out")) m.out = get<std::string>(j, "out", "manifest");
  if (j.contains("jobs")) m.jobs = get<int>(j, "jobs", "manifest");
  if (j.contains("remote") && !j["remote"].is_null()) m.remote = get<std::string>(j, "remote", "manifest");
  if (j.contains("profile")) {
    const json& p = j["profile"];
    reject_unknown(p, {"criterion", "factor", "tau_max"}, "manifest.profile");
    if (p.contains("criterion"))
      m.profile.criterion = parse_success_kind(get<std::string>(p, "criterion", "manifest.profile"));
    if (p.contains("factor")) m.profile.factor = get<double>(p, "factor", "manifest.profile");
    if (p.contains("tau_max")) m.profile.tau_max = get<double>(p, "tau_max", "manifest.profile");
  }
  if (j.contains("grid") && !j["grid"].is_null()) {
    const json& g = j["grid"];
    reject_unknown(g, {"algorithm", "problem", "a", "b", "fixed", "repeats"}, "manifest.grid");
    GridSettings grid;
    grid.algorithm = get<std::string>(g, "algorithm", "manifest.grid");
    grid.problem = get<std::string>(g, "problem", "manifest.grid");
    grid.a = axis_from(g.at("a"), "manifest.grid.a");
    grid.b = axis_from(g.at("b"), "manifest.grid.b");
    if (g.contains("fixed")) grid.fixed = g["fixed"];
    if (!grid.fixed.is_object()) throw ConfigError("manifest.grid.fixed must be an object");
    if (g.contains("repeats")) grid.repeats = get<int>(g, "repeats", "manifest.grid");
    m.grid = std::move(grid);
  }
  if (m.repeats < 1) throw ConfigError("repeats must be at least 1");
  if (m.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (m.grid && m.grid->repeats < 1) throw ConfigError("grid repeats must be at least 1");
  return m;
}

ExperimentManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  return manifest_from_json(j);
}

std::string manifest_text(const ExperimentManifest& m) { return to_json(m).dump(2) + "\n"; }

}  // namespace cbo
