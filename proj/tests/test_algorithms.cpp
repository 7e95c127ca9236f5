#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "cbo/algorithms.hpp"
#include "cbo/compare_utils.hpp"
#include "cbo/run.hpp"
#include "support.hpp"

using cbo::CountingOracle;
using cbo::OptimizerState;
using cbo::Point;
using testing::vec;

namespace {

cbo::Problem square(Eigen::Index n) {
  return testing::make_problem("sq", n, [](const Point& x) { return x.squaredNorm(); }, Point::Ones(n));
}

// Value-based references: identical sampling, argmin/sort on true f.
std::size_t value_argmin(const cbo::Problem& p, const std::vector<Point>& items) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < items.size(); ++k)
    if (p.eval_f(items[k]) < p.eval_f(items[best])) best = k;
  return best;
}

OptimizerState stp_reference(OptimizerState s, const cbo::StpConfig& c, const cbo::Problem& p, cbo::Rng& rng) {
  const Point d = cbo::sample_direction(c.dist, s.x.size(), rng);
  const double a = cbo::step_size(c.decay, c.alpha0, s.k);
  const std::vector<Point> cand{s.x - a * d, s.x + a * d, s.x};
  s.x = cand[value_argmin(p, cand)];
  ++s.k;
  return s;
}

OptimizerState gld_reference(OptimizerState s, const cbo::GldConfig& c, const cbo::Problem& p, cbo::Rng& rng) {
  const int K = c.K();
  const Eigen::MatrixXd v = cbo::sample_directions(c.dist, K + 1, s.x.size(), rng);
  std::vector<Point> cand{s.x};
  for (int k = 0; k <= K; ++k) cand.push_back(s.x + std::ldexp(c.R, -k) * v.row(k).transpose());
  s.x = cand[value_argmin(p, cand)];
  ++s.k;
  return s;
}

cbo::CmaState cma_reference(cbo::CmaState s, const cbo::Problem& p, cbo::Rng& rng) {
  const auto pop = cbo::cma_sample(s, rng);
  std::vector<std::size_t> order(static_cast<std::size_t>(s.lambda));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> f(order.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = p.eval_f(pop.x.col(static_cast<Eigen::Index>(i)));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
  return cbo::cma_update(std::move(s), pop, order);
}

}  // namespace

TEST_CASE("stp 1-D example: x = 10, alpha = 1, s = 1 gives 9") {
  const auto p = testing::make_problem("x2", 1, [](const Point& x) { return x[0] * x[0]; }, vec({10}));
  CountingOracle oracle(p);
  cbo::Rng rng(0);
  cbo::StpConfig c{1.0, cbo::StepSchedule::kConstant, cbo::DirectionDistribution::kCanonicalBasis};
  const auto s = cbo::stp_step({vec({10}), 0}, c, oracle, rng);
  CHECK(s.x[0] == 9.0);
  CHECK(s.k == 1);
  CHECK(oracle.query_count() == 2);
}

TEST_CASE("stp stays put at the minimizer") {
  const auto p = square(5);
  CountingOracle oracle(p);
  cbo::Rng rng(1);
  OptimizerState s{Point::Zero(5), 0};
  for (int i = 0; i < 50; ++i) {
    s = cbo::stp_step(s, {}, oracle, rng);
    REQUIRE(s.x.isZero(0.0));
  }
}

TEST_CASE("stp and gld never increase f under the exact oracle") {
  const auto p = cbo::non_sparse_quadratic();
  CountingOracle oracle(p);
  cbo::Rng rng(2);
  OptimizerState s{p.x0, 0}, g{p.x0, 0};
  double fs = p.f(s.x), fg = p.f(g.x);
  for (int i = 0; i < 1000; ++i) {
    s = cbo::stp_step(s, {}, oracle, rng);
    g = cbo::gld_step(g, {}, oracle, rng);
    REQUIRE(p.f(s.x) <= fs);
    REQUIRE(p.f(g.x) <= fg);
    fs = p.f(s.x);
    fg = p.f(g.x);
  }
}

TEST_CASE("gld radii halve from R down to r") {
  cbo::GldConfig c;
  c.R = 10;
  c.r = 0.625;
  REQUIRE(c.K() == 4);
  const auto p = square(3);
  testing::RecordingOracle oracle(p.eval_f, 3);
  cbo::Rng rng(3);
  const Point x = vec({1, 2, 3});
  cbo::gld_step({x, 0}, c, oracle, rng);
  REQUIRE(oracle.pairs.size() == 5);
  // comp_min always challenges with the next candidate in order
  const double radii[] = {10, 5, 2.5, 1.25, 0.625};
  for (std::size_t i = 0; i < 5; ++i) CHECK((oracle.pairs[i].second - x).norm() == Catch::Approx(radii[i]).epsilon(1e-12));
}

TEST_CASE("gld K for other ratios") {
  cbo::GldConfig c;
  c.R = 10;
  c.r = 1e-3;
  CHECK(c.K() == 14);  // 2^13 < 10^4 <= 2^14
  c.r = 5;
  CHECK(c.K() == 1);
  c.r = 10;
  CHECK_THROWS_AS(c.K(), cbo::ConfigError);
}

TEST_CASE("gld on ROSENBR reaches f < 1 within 5000 queries") {
  const auto p = cbo::rosenbrock();
  int good = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto t = cbo::run_seeded({"gld", {{"R", 10.0}, {"r", 0.001}}}, p, 5000, seed);
    good += t.final().f < 1.0;
  }
  CHECK(good >= 4);
}

TEST_CASE("stp, gld and cma match their value-based versions") {
  const auto p = cbo::non_sparse_quadratic(50);
  CountingOracle oracle(p);
  cbo::Rng a(7), b(7);
  OptimizerState s1{p.x0, 0}, s2{p.x0, 0};
  for (int i = 0; i < 200; ++i) {
    s1 = cbo::stp_step(s1, {}, oracle, a);
    s2 = stp_reference(s2, {}, p, b);
    REQUIRE((s1.x - s2.x).cwiseAbs().maxCoeff() == 0.0);
  }
  OptimizerState g1{p.x0, 0}, g2{p.x0, 0};
  for (int i = 0; i < 200; ++i) {
    g1 = cbo::gld_step(g1, {}, oracle, a);
    g2 = gld_reference(g2, {}, p, b);
    REQUIRE((g1.x - g2.x).cwiseAbs().maxCoeff() == 0.0);
  }
  auto c1 = cbo::cma_init(p.x0, {}), c2 = c1;
  for (int i = 0; i < 200; ++i) {
    c1 = cbo::cma_step(std::move(c1), oracle, a);
    c2 = cma_reference(std::move(c2), p, b);
    REQUIRE((c1.x - c2.x).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(c1.sigma == c2.sigma);
  CHECK((c1.C - c2.C).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("cma defaults") {
  CHECK(cbo::cma_default_lambda(50) == 15);
  CHECK(cbo::cma_default_lambda(2) == 6);
  const auto s = cbo::cma_init(Point::Zero(50), {});
  CHECK(s.lambda == 15);
  CHECK(s.mu == 7);
  double positive = 0.0;
  for (double w : s.weights) positive += std::max(w, 0.0);
  CHECK(positive == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(s.C.isIdentity(0.0));
  CHECK(s.chi_n == Catch::Approx(std::sqrt(50.0) * (1 - 1 / 200.0 + 1 / (21.0 * 2500))));
}

TEST_CASE("one cma step equals a value-sorted reference step") {
  const auto p = cbo::non_sparse_quadratic(30);
  CountingOracle oracle(p);
  cbo::Rng a(9), b(9);
  const auto s0 = cbo::cma_init(p.x0, {});
  const auto s1 = cbo::cma_step(s0, oracle, a);
  const auto s2 = cma_reference(s0, p, b);
  CHECK((s1.x - s2.x).norm() <= 1e-12);
  CHECK(std::abs(s1.sigma - s2.sigma) <= 1e-12);
  CHECK((s1.C - s2.C).norm() <= 1e-12);
  CHECK(s0.lambda == 14);
  CHECK(oracle.query_count() == 14 * 13 / 2);
}

TEST_CASE("cma covariance stays symmetric positive definite") {
  const auto p = cbo::non_sparse_quadratic();
  CountingOracle oracle(p);
  cbo::Rng rng(10);
  auto s = cbo::cma_init(p.x0, {});
  for (int i = 0; i < 500; ++i) {
    s = cbo::cma_step(std::move(s), oracle, rng);
    REQUIRE((s.C - s.C.transpose()).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(s.D.minCoeff() > 0.0);
    REQUIRE(s.sigma > 0.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.C);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
  CHECK(p.f(s.x) < p.f(p.x0));
}

TEST_CASE("signopt on a linear function steps against the slope") {
  const auto p = testing::make_problem("lin", 1, [](const Point& x) { return x[0]; }, vec({0}));
  CountingOracle oracle(p);
  cbo::Rng rng(11);
  cbo::SignOptConfig c;
  c.m = 2;
  const auto s = cbo::signopt_step({vec({0}), 0}, c, oracle, rng);
  CHECK(s.x[0] == Catch::Approx(-c.alpha0));
  CHECK(oracle.query_count() == 2);
}

TEST_CASE("signopt at a strict minimum still steps along the mean probe") {
  const auto p = square(2);
  CountingOracle oracle(p);
  cbo::Rng rng(12), replay(12);
  cbo::SignOptConfig c;
  c.m = 5;
  const auto s = cbo::signopt_step({Point::Zero(2), 0}, c, oracle, rng);
  const Eigen::MatrixXd u = cbo::sample_directions(cbo::DirectionDistribution::kUniformSphere, 5, 2, replay);
  const Point mean = u.colwise().mean().transpose();
  CHECK((s.x - (-c.alpha0 * mean / mean.norm())).norm() <= 1e-14);
}

TEST_CASE("scobo uses m queries and takes a delta-length step") {
  const auto p = cbo::sparse_quadratic();
  CountingOracle oracle(p);
  cbo::Rng rng(13);
  cbo::ScoboConfig c;
  const auto s = cbo::scobo_step({p.x0, 0}, c, oracle, rng);
  CHECK(oracle.query_count() == c.m);
  CHECK((s.x - p.x0).norm() == Catch::Approx(c.delta).epsilon(1e-12));
  CHECK(((s.x - p.x0).array() != 0.0).count() <= c.s);
}

TEST_CASE("scobo skips the step when every answer is a tie") {
  const auto p = testing::make_problem("flat", 4, [](const Point&) { return 1.0; }, Point::Zero(4));
  CountingOracle oracle(p);
  cbo::Rng rng(14);
  cbo::ScoboConfig c;
  c.s = 2;
  const auto s = cbo::scobo_step({Point::Ones(4), 3}, c, oracle, rng);
  CHECK(s.x == Point::Ones(4));
  CHECK(s.k == 4);
}

TEST_CASE("scobo rejects s larger than the dimension") {
  const auto p = square(3);
  CountingOracle oracle(p);
  cbo::Rng rng(0);
  cbo::ScoboConfig c;
  c.s = 4;
  CHECK_THROWS_AS(cbo::scobo_step({Point::Zero(3), 0}, c, oracle, rng), std::invalid_argument);
}

TEST_CASE("hard threshold keeps the largest magnitudes, ties to the lower index") {
  CHECK(cbo::hard_threshold(vec({1, -3, 2, 0.5}), 2) == vec({0, -3, 2, 0}));
  CHECK(cbo::hard_threshold(vec({1, -1, 1, 1}), 2) == vec({1, -1, 0, 0}));
  CHECK(cbo::hard_threshold(vec({1, 2}), 5) == vec({1, 2}));
}

TEST_CASE("every algorithm depends on f only through comparisons") {
  // A strictly increasing transform of f leaves every comparison unchanged.
  const auto p = cbo::sparse_quadratic(30, 5);
  auto warped = p;
  warped.eval_f = [f = p.eval_f](const Point& x) { return 3.0 * std::exp(0.1 * f(x)) - 7.0; };
  for (const auto& name : cbo::algorithm_names()) {
    INFO(name);
    const auto a = cbo::run_seeded({name, nlohmann::json::object()}, p, 2000, 5, std::nullopt, {true});
    const auto b = cbo::run_seeded({name, nlohmann::json::object()}, warped, 2000, 5, std::nullopt, {true});
    REQUIRE(a.iterates.size() == b.iterates.size());
    for (std::size_t i = 0; i < a.iterates.size(); ++i) REQUIRE(a.iterates[i] == b.iterates[i]);
  }
}

TEST_CASE("each step stays within the advertised query count") {
  const auto p = cbo::non_sparse_quadratic(10);
  for (const auto& name : cbo::algorithm_names()) {
    INFO(name);
    auto opt = cbo::make_optimizer(cbo::resolve_spec({name, nlohmann::json::object()}), p.x0);
    CountingOracle oracle(p);
    cbo::Rng rng(1);
    for (int i = 0; i < 20; ++i) {
      const auto before = oracle.query_count();
      opt->step(oracle, rng);
      REQUIRE(oracle.query_count() - before <= opt->max_queries_per_step());
      REQUIRE(opt->state().k == i + 1);
      REQUIRE(opt->state().x.size() == 10);
    }
  }
}

TEST_CASE("algorithm specs are validated") {
  CHECK_THROWS_AS(cbo::resolve_spec({"nelder_mead", {}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::resolve_spec({"gld", {{"radius", 1.0}}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::resolve_spec({"gld", {{"r", 20.0}}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::resolve_spec({"stp", {{"alpha0", 0.0}}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::resolve_spec({"stp", {{"dist", "uniform"}}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::resolve_spec({"scobo", {{"s", 0}}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::resolve_spec({"scobo", {{"m", 2.5}}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::resolve_spec({"signopt", {{"r", -1.0}}}), cbo::ConfigError);
  CHECK_THROWS_AS(cbo::resolve_spec({"cma", {{"sigma0", 0.0}}}), cbo::ConfigError);
  const auto spec = cbo::resolve_spec({"gld", {{"R", 100.0}}});
  CHECK(spec.params["R"] == 100.0);
  CHECK(spec.params["r"] == 0.001);
}

TEST_CASE("scobo sparsity is capped at the problem dimension") {
  const auto p = cbo::rosenbrock();
  auto opt = cbo::make_optimizer(cbo::resolve_spec({"scobo", {{"s", 100}}}), p.x0);
  CountingOracle oracle(p);
  cbo::Rng rng(0);
  CHECK_NOTHROW(opt->step(oracle, rng));
}
