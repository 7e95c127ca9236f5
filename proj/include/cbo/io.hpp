#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cbo/bench.hpp"

namespace cbo {

/// Shortest decimal that reads back to the same double ("inf", "-inf", "nan" otherwise).
std::string format_double(double v);

/// `{problem}_{algo}_{seed}.csv`
std::string trace_file_name(const RunTrace& trace);

struct TraceFileKey {
  std::string problem;
  std::string algorithm;
  std::uint64_t seed = 0;
};

/// Splits a trace file name from the right, so problem names may contain '_'.
TraceFileKey parse_trace_file_name(const std::filesystem::path& path);

/// Header `iter,cum_queries,f,grad_norm`, one row per record.
void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace);

/// Reads a trace CSV; metadata comes from the file name.
RunTrace read_trace_csv(const std::filesystem::path& path);

/// Header `tau,{solver...}`, one row per tau.
void write_profile_csv(const std::filesystem::path& path, const PerformanceProfile& profile,
                       const std::vector<double>& taus);

/// Writes `contents` to `path`, replacing it. Throws std::runtime_error on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace cbo
