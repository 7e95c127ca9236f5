#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cbo/io.hpp"
#include "cbo/manifest.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cbo_io_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1e-300, 123456789.123, 4.72238e-10}) CHECK(std::stod(cbo::format_double(v)) == v);
  CHECK(cbo::format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(cbo::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(cbo::format_double(std::nan("")) == "nan");
}

TEST_CASE("trace csv round-trips with metadata in the file name") {
  auto t = cbo::run_seeded({"gld", {}}, cbo::rosenbrock(), 300, 77);
  const fs::path path = scratch(cbo::trace_file_name(t));
  CHECK(path.filename() == "ROSENBR_gld_77.csv");
  cbo::write_trace_csv(path, t);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "iter,cum_queries,f,grad_norm");
  const auto back = cbo::read_trace_csv(path);
  CHECK(back.problem == "ROSENBR");
  CHECK(back.algorithm == "gld");
  CHECK(back.seed == 77);
  REQUIRE(back.records.size() == t.records.size());
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    CHECK(back.records[i].iter == t.records[i].iter);
    CHECK(back.records[i].cum_queries == t.records[i].cum_queries);
    CHECK(back.records[i].f == t.records[i].f);
    CHECK(back.records[i].grad_norm == t.records[i].grad_norm);
  }
}

TEST_CASE("trace file names split from the right") {
  const auto k = cbo::parse_trace_file_name("non_sparse_quadratic_signopt_123.csv");
  CHECK(k.problem == "non_sparse_quadratic");
  CHECK(k.algorithm == "signopt");
  CHECK(k.seed == 123);
  CHECK_THROWS(cbo::parse_trace_file_name("nounderscores.csv"));
  CHECK_THROWS(cbo::parse_trace_file_name("a_b_notanumber.csv"));
}

TEST_CASE("malformed trace csv is rejected") {
  const fs::path path = scratch("X_gld_1.csv");
  cbo::write_text_file(path, "iter,f\n0,1\n");
  CHECK_THROWS(cbo::read_trace_csv(path));
  cbo::write_text_file(path, "iter,cum_queries,f,grad_norm\n0,0,abc,1\n");
  CHECK_THROWS(cbo::read_trace_csv(path));
}

TEST_CASE("profile csv header lists solvers") {
  cbo::ProfileTable t;
  t.problems = {"p"};
  t.solvers = {"gld", "stp"};
  t.t = {{10, 20}};
  const auto prof = cbo::performance_profile(t);
  const fs::path path = scratch("profile.csv");
  cbo::write_profile_csv(path, prof, {1.0, 2.0});
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "tau,gld,stp\n1,1,0\n2,1,1\n");
}

TEST_CASE("budgets accept scientific notation") {
  CHECK(cbo::parse_budget("5000") == 5000);
  CHECK(cbo::parse_budget("1e4") == 10000);
  CHECK(cbo::parse_budget("1e5") == 100000);
  CHECK_THROWS_AS(cbo::parse_budget("1.5"), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::parse_budget("0"), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::parse_budget("ten"), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::parse_budget("1e4x"), cbo::ConfigError);
}

TEST_CASE("manifest round-trips losslessly") {
  cbo::ExperimentManifest m;
  m.problems = {"ROSENBR", "WATSON"};
  m.algorithms = {{"gld", {{"R", 100.0}}}, {"stp", nlohmann::json::object()}};
  m.budget = 100000;
  m.repeats = 5;
  m.noise_p = 0.7;
  m.seed = 18446744073709551615ULL;
  m.out = "results/x";
  m.jobs = 4;
  m.remote = "python3 -m bridge WATSON";
  m.profile = {cbo::SuccessKind::kGradRatio, 0.1, 50.0};
  m.grid = cbo::GridSettings{"gld", "ROSENBR", {"r", {0.1, 1}}, {"R", {10}}, {{"dist", "gaussian"}}, 2};
  const auto j = cbo::to_json(m);
  const auto back = cbo::manifest_from_json(j);
  CHECK(cbo::to_json(back) == j);
  CHECK(cbo::manifest_text(back) == cbo::manifest_text(m));
  CHECK(back.seed == m.seed);
  CHECK(*back.noise_p == 0.7);
  const auto plain = cbo::manifest_from_json(cbo::to_json(cbo::ExperimentManifest{}));
  CHECK(cbo::to_json(plain) == cbo::to_json(cbo::ExperimentManifest{}));
}

TEST_CASE("manifest rejects unknown keys and bad values") {
  using nlohmann::json;
  CHECK_THROWS_AS(cbo::manifest_from_json(json{{"problem", "ROSENBR"}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::manifest_from_json(json{{"profile", {{"tau", 3}}}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::manifest_from_json(json{{"algorithms", {{{"name", "gld"}, {"cfg", {}}}}}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::manifest_from_json(json{{"repeats", 0}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::manifest_from_json(json{{"repeats", "five"}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::manifest_from_json(json{{"budget", "lots"}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::manifest_from_json(json::array()), cbo::ConfigError);
  CHECK(cbo::manifest_from_json(json{{"budget", "1e4"}}).budget == 10000);
  CHECK(cbo::manifest_from_json(json{{"algorithms", {"gld", "stp"}}}).algorithms.size() == 2);
}
