#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbo/algorithms.hpp"
#include "cbo/problems.hpp"

namespace cbo {

struct TraceRecord {
  std::int64_t iter = 0;
  std::int64_t cum_queries = 0;
  double f = 0.0;          // harness-side, never shown to the optimizer
  double grad_norm = 0.0;  // harness-side
};

enum class RunStatus { kOk, kFailed };

/// Per-iteration history of one run. The first record is the start point.
struct RunTrace {
  std::string problem;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::int64_t budget = 0;
  RunStatus status = RunStatus::kOk;
  std::string error;  // set when status == kFailed
  std::vector<TraceRecord> records;
  std::vector<Point> iterates;  // only filled with RunOptions::record_iterates

  const TraceRecord& initial() const { return records.front(); }
  const TraceRecord& final() const { return records.back(); }
};

struct RunOptions {
  bool record_iterates = false;
};

/// Steps `optimizer` while the next step fits in `budget` oracle queries
/// (counted from the oracle's current count). Transport errors end the run
/// with a partial trace marked failed.
RunTrace run(Optimizer& optimizer, const Problem& problem, ComparisonOracle& oracle,
             std::int64_t budget, Rng& rng, RunOptions options = {});

/// Builds the optimizer from `spec` at problem.x0, then runs it.
RunTrace run(const AlgorithmSpec& spec, const Problem& problem, ComparisonOracle& oracle,
             std::int64_t budget, Rng& rng, RunOptions options = {});

/// Self-contained run with its own oracle and streams derived from `seed`:
/// the algorithm stream is derive_seed(seed, {kAlgorithmStream}) and the noise
/// stream derive_seed(seed, {kNoiseStream}).
RunTrace run_seeded(const AlgorithmSpec& spec, const Problem& problem, std::int64_t budget,
                    std::uint64_t seed, std::optional<NoiseSpec> noise = std::nullopt,
                    RunOptions options = {});

}  // namespace cbo
