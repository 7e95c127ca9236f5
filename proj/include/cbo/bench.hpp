#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbo/run.hpp"

namespace cbo {

inline constexpr double kUnsolved = std::numeric_limits<double>::infinity();

/// Runs fn(0..n-1) on up to `jobs` threads. Exceptions are rethrown after all
/// workers stop (the first one wins).
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

/// Seed for the (problem, algorithm, repeat) cell of an experiment.
std::uint64_t experiment_seed(std::uint64_t master_seed, std::size_t problem, std::size_t algorithm,
                              int repeat);

/// Every problem x algorithm x repeat, problem-major. All algorithms start from
/// problem.x0; each cell gets its own child seed.
std::vector<RunTrace> run_experiment(std::span<const Problem> problems,
                                     std::span<const AlgorithmSpec> algorithms,
                                     std::int64_t budget, int repeats, std::uint64_t master_seed,
                                     std::optional<NoiseSpec> noise = std::nullopt, int jobs = 1);

/// Mean and min-max band of the optimality gap over a set of runs of one
/// (problem, algorithm), on the union of their query counts.
struct GapCurves {
  std::vector<std::int64_t> queries;
  std::vector<double> mean;
  std::vector<double> min;
  std::vector<double> max;
};

/// Gap is f - f_star when f_star is known, raw f otherwise. Each trace is read
/// as a step function (last recorded value). Throws std::invalid_argument on
/// an empty set or mixed (problem, algorithm).
GapCurves aggregate(std::span<const RunTrace> traces, std::optional<double> f_star);

enum class SuccessKind { kFRatio, kGradRatio };

struct SuccessCriterion {
  SuccessKind kind = SuccessKind::kFRatio;
  double factor = 0.05;
  void validate() const;
};

std::string_view to_string(SuccessKind k);
SuccessKind parse_success_kind(std::string_view name);

struct SuccessResult {
  std::optional<std::int64_t> queries;  // nullopt: never within budget
  bool trivial = false;                 // start value was 0, success at query 0
};

/// First record with f <= factor * f(x0) (or the gradient-norm analogue).
SuccessResult detect_success(const RunTrace& trace, const SuccessCriterion& criterion);

/// Queries-to-success t[p][s]; kUnsolved where s never succeeds on p.
struct ProfileTable {
  std::vector<std::string> problems;
  std::vector<std::string> solvers;
  std::vector<std::vector<double>> t;
};

/// Median over repeats of the queries-to-success per (problem, algorithm);
/// an unsolved repeat counts as infinity. Problem and solver order follow
/// first appearance in `traces`.
ProfileTable build_profile_table(std::span<const RunTrace> traces, const SuccessCriterion& criterion);

/// Median with infinities allowed. Even counts average the middle pair.
double median(std::vector<double> values);

struct PerformanceProfile {
  std::vector<std::string> solvers;
  std::vector<std::string> problems;          // retained
  std::vector<std::string> dropped_problems;  // unsolved by every solver
  std::vector<std::vector<double>> ratios;    // [problem][solver], kUnsolved if unsolved

  /// Fraction of retained problems with ratio <= tau (0 if none retained).
  double rho(std::size_t solver, double tau) const;
};

PerformanceProfile performance_profile(const ProfileTable& table);

/// 1 = tau_0 < ... < tau_{n-1} = tau_max, log-spaced.
std::vector<double> profile_taus(double tau_max, int points = 41);

}  // namespace cbo
