#include "cbo/run.hpp"

#include <stdexcept>

namespace cbo {
namespace {

TraceRecord observe(const Problem& problem, const Point& x, std::int64_t iter,
                    std::int64_t cum_queries) {
  return TraceRecord{iter, cum_queries, problem.f(x), problem.grad(x).norm()};
}

}  // namespace

RunTrace run(Optimizer& optimizer, const Problem& problem, ComparisonOracle& oracle,
             std::int64_t budget, Rng& rng, RunOptions options) {
  if (budget < 1) throw std::invalid_argument("run: budget must be at least 1");
  RunTrace trace;
  trace.problem = problem.name;
  trace.algorithm = std::string(optimizer.name());
  trace.budget = budget;

  const std::int64_t start = oracle.query_count();
  try {
    auto record = [&] {
      const OptimizerState& s = optimizer.state();
      trace.records.push_back(observe(problem, s.x, s.k, oracle.query_count() - start));
      if (options.record_iterates) trace.iterates.push_back(s.x);
    };
    record();
    while (oracle.query_count() - start + optimizer.max_queries_per_step() <= budget) {
      optimizer.step(oracle, rng);
      record();
    }
  } catch (const TransportError& e) {
    trace.status = RunStatus::kFailed;
    trace.error = e.what();
  }
  return trace;
}

RunTrace run(const AlgorithmSpec& spec, const Problem& problem, ComparisonOracle& oracle,
             std::int64_t budget, Rng& rng, RunOptions options) {
  auto optimizer = make_optimizer(spec, problem.x0);
  return run(*optimizer, problem, oracle, budget, rng, options);
}

RunTrace run_seeded(const AlgorithmSpec& spec, const Problem& problem, std::int64_t budget,
                    std::uint64_t seed, std::optional<NoiseSpec> noise, RunOptions options) {
  CountingOracle oracle(problem, noise, derive_seed(seed, {kNoiseStream}));
  Rng rng(derive_seed(seed, {kAlgorithmStream}));
  RunTrace trace = run(spec, problem, oracle, budget, rng, options);
  trace.seed = seed;
  return trace;
}

}  // namespace cbo
