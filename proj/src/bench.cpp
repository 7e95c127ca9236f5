#include "cbo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace cbo {

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t experiment_seed(std::uint64_t master_seed, std::size_t problem, std::size_t algorithm,
                              int repeat) {
  return derive_seed(master_seed, {problem, algorithm, static_cast<std::uint64_t>(repeat)});
}

std::vector<RunTrace> run_experiment(std::span<const Problem> problems,
                                     std::span<const AlgorithmSpec> algorithms,
                                     std::int64_t budget, int repeats, std::uint64_t master_seed,
                                     std::optional<NoiseSpec> noise, int jobs) {
  if (repeats < 1) throw std::invalid_argument("run_experiment: repeats must be at least 1");
  if (budget < 1) throw std::invalid_argument("run_experiment: budget must be at least 1");
  std::vector<AlgorithmSpec> resolved;
  for (const auto& a : algorithms) resolved.push_back(resolve_spec(a));

  const std::size_t per_problem = resolved.size() * static_cast<std::size_t>(repeats);
  std::vector<RunTrace> traces(problems.size() * per_problem);
  parallel_for(traces.size(), jobs, [&](std::size_t cell) {
    const std::size_t p = cell / per_problem;
    const std::size_t a = (cell % per_problem) / static_cast<std::size_t>(repeats);
    const int r = static_cast<int>(cell % static_cast<std::size_t>(repeats));
    traces[cell] = run_seeded(resolved[a], problems[p], budget,
                              experiment_seed(master_seed, p, a, r), noise);
  });
  return traces;
}

GapCurves aggregate(std::span<const RunTrace> traces, std::optional<double> f_star) {
  if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
  for (const auto& t : traces) {
    if (t.problem != traces.front().problem || t.algorithm != traces.front().algorithm)
      throw std::invalid_argument("aggregate: traces mix problems or algorithms (" + t.problem +
                                  "/" + t.algorithm + " vs " + traces.front().problem + "/" +
                                  traces.front().algorithm + ")");
    if (t.records.empty()) throw std::invalid_argument("aggregate: trace without records");
  }

  GapCurves out;
  for (const auto& t : traces)
    for (const auto& r : t.records) out.queries.push_back(r.cum_queries);
  std::sort(out.queries.begin(), out.queries.end());
  out.queries.erase(std::unique(out.queries.begin(), out.queries.end()), out.queries.end());

  const double offset = f_star.value_or(0.0);
  const std::size_t n = out.queries.size();
  out.mean.assign(n, 0.0);
  out.min.assign(n, kUnsolved);
  out.max.assign(n, -kUnsolved);
  for (const auto& t : traces) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      while (j + 1 < t.records.size() && t.records[j + 1].cum_queries <= out.queries[i]) ++j;
      const double gap = t.records[j].f - offset;
      out.mean[i] += gap;
      out.min[i] = std::min(out.min[i], gap);
      out.max[i] = std::max(out.max[i], gap);
    }
  }
  for (double& m : out.mean) m /= static_cast<double>(traces.size());
  // Keep the mean inside the band when rounding pushes it a hair outside.
  for (std::size_t i = 0; i < n; ++i) out.mean[i] = std::clamp(out.mean[i], out.min[i], out.max[i]);
  return out;
}

void SuccessCriterion::validate() const {
  if (!(factor > 0.0 && factor < 1.0))
    throw std::invalid_argument("success factor must lie in (0, 1)");
}

std::string_view to_string(SuccessKind k) {
  return k == SuccessKind::kFRatio ? "f_ratio" : "grad_ratio";
}

SuccessKind parse_success_kind(std::string_view name) {
  if (name == "f_ratio") return SuccessKind::kFRatio;
  if (name == "grad_ratio") return SuccessKind::kGradRatio;
  throw ConfigError("unknown success criterion '" + std::string(name) +
                    "' (expected f_ratio or grad_ratio)");
}

SuccessResult detect_success(const RunTrace& trace, const SuccessCriterion& criterion) {
  criterion.validate();
  if (trace.records.empty()) throw std::invalid_argument("detect_success: empty trace");
  auto value = [&](const TraceRecord& r) {
    return criterion.kind == SuccessKind::kFRatio ? r.f : r.grad_norm;
  };
  const double start = value(trace.initial());
  if (start == 0.0) return {trace.initial().cum_queries, true};
  const double threshold = criterion.factor * start;
  for (const auto& r : trace.records)
    if (value(r) <= threshold) return {r.cum_queries, false};
  return {};
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  const double lo = values[n / 2 - 1];
  const double hi = values[n / 2];
  if (std::isinf(lo) || std::isinf(hi)) return kUnsolved;
  return 0.5 * (lo + hi);
}

ProfileTable build_profile_table(std::span<const RunTrace> traces, const SuccessCriterion& criterion) {
  ProfileTable table;
  auto index_of = [](std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
    names.push_back(name);
    return names.size() - 1;
  };
  std::vector<std::vector<std::vector<double>>> samples;
  for (const auto& t : traces) {
    const std::size_t p = index_of(table.problems, t.problem);
    const std::size_t s = index_of(table.solvers, t.algorithm);
    if (samples.size() <= p) samples.resize(p + 1);
    auto& row = samples[p];
    if (row.size() <= s) row.resize(s + 1);
    double q = kUnsolved;
    if (t.status == RunStatus::kOk) {
      if (auto hit = detect_success(t, criterion).queries) q = static_cast<double>(*hit);
    }
    row[s].push_back(q);
  }
  table.t.assign(table.problems.size(), std::vector<double>(table.solvers.size(), kUnsolved));
  for (std::size_t p = 0; p < samples.size(); ++p)
    for (std::size_t s = 0; s < samples[p].size(); ++s)
      if (!samples[p][s].empty()) table.t[p][s] = median(samples[p][s]);
  return table;
}

double PerformanceProfile::rho(std::size_t solver, double tau) const {
  if (problems.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto& row : ratios)
    if (row[solver] <= tau) ++count;
  return static_cast<double>(count) / static_cast<double>(problems.size());
}

PerformanceProfile performance_profile(const ProfileTable& table) {
  if (table.problems.empty() || table.solvers.empty())
    throw std::invalid_argument("performance_profile: empty table");
  PerformanceProfile prof;
  prof.solvers = table.solvers;
  for (std::size_t p = 0; p < table.problems.size(); ++p) {
    const auto& row = table.t.at(p);
    if (row.size() != table.solvers.size())
      throw std::invalid_argument("performance_profile: ragged table");
    const double best = *std::min_element(row.begin(), row.end());
    if (std::isinf(best)) {
      prof.dropped_problems.push_back(table.problems[p]);
      continue;
    }
    prof.problems.push_back(table.problems[p]);
    std::vector<double> ratio(row.size());
    for (std::size_t s = 0; s < row.size(); ++s) {
      // A zero best time (trivial success) makes every other finite time
      // infinitely worse; only the zero entries get ratio 1.
      if (best == 0.0) ratio[s] = row[s] == 0.0 ? 1.0 : kUnsolved;
      else ratio[s] = row[s] / best;
    }
    prof.ratios.push_back(std::move(ratio));
  }
  return prof;
}

std::vector<double> profile_taus(double tau_max, int points) {
  if (!(tau_max >= 1.0) || points < 2)
    throw std::invalid_argument("profile_taus: need tau_max >= 1 and at least 2 points");
  std::vector<double> taus(static_cast<std::size_t>(points));
  const double span = std::log(tau_max);
  for (int i = 0; i < points; ++i)
    taus[static_cast<std::size_t>(i)] = std::exp(span * i / (points - 1));
  taus.front() = 1.0;
  taus.back() = tau_max;
  return taus;
}

}  // namespace cbo
