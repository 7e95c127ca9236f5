#include "cbo/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cbo {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

namespace {

double parse_double(const std::string& s) {
  if (s == "inf") return kUnsolved;
  if (s == "-inf") return -kUnsolved;
  if (s == "nan") return std::nan("");
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("not a number: '" + s + "'");
  return v;
}

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("not an integer: '" + s + "'");
  return v;
}

}  // namespace

std::string trace_file_name(const RunTrace& trace) {
  return trace.problem + "_" + trace.algorithm + "_" + std::to_string(trace.seed) + ".csv";
}

TraceFileKey parse_trace_file_name(const std::filesystem::path& path) {
  const std::string stem = path.stem().string();
  const auto last = stem.rfind('_');
  if (last == std::string::npos || last == 0)
    throw std::runtime_error("trace file name must look like problem_algo_seed.csv: " + path.string());
  const auto mid = stem.rfind('_', last - 1);
  if (mid == std::string::npos || mid == 0)
    throw std::runtime_error("trace file name must look like problem_algo_seed.csv: " + path.string());
  TraceFileKey key;
  key.problem = stem.substr(0, mid);
  key.algorithm = stem.substr(mid + 1, last - mid - 1);
  try {
    key.seed = std::stoull(stem.substr(last + 1));
  } catch (const std::exception&) {
    throw std::runtime_error("trace file name has no numeric seed: " + path.string());
  }
  return key;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace) {
  std::string s = "iter,cum_queries,f,grad_norm\n";
  for (const auto& r : trace.records) {
    s += std::to_string(r.iter);
    s += ',';
    s += std::to_string(r.cum_queries);
    s += ',';
    s += format_double(r.f);
    s += ',';
    s += format_double(r.grad_norm);
    s += '\n';
  }
  write_text_file(path, s);
}

RunTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const TraceFileKey key = parse_trace_file_name(path);
  RunTrace trace;
  trace.problem = key.problem;
  trace.algorithm = key.algorithm;
  trace.seed = key.seed;

  std::string line;
  if (!std::getline(in, line) || line != "iter,cum_queries,f,grad_norm")
    throw std::runtime_error(path.string() + ": missing trace CSV header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    if (cols.size() != 4) throw std::runtime_error(path.string() + ": bad row '" + line + "'");
    trace.records.push_back(
        {parse_int(cols[0]), parse_int(cols[1]), parse_double(cols[2]), parse_double(cols[3])});
  }
  if (trace.records.empty()) throw std::runtime_error(path.string() + ": no records");
  return trace;
}

void write_profile_csv(const std::filesystem::path& path, const PerformanceProfile& profile,
                       const std::vector<double>& taus) {
  std::string s = "tau";
  for (const auto& name : profile.solvers) s += "," + name;
  s += '\n';
  for (double tau : taus) {
    s += format_double(tau);
    for (std::size_t j = 0; j < profile.solvers.size(); ++j) s += "," + format_double(profile.rho(j, tau));
    s += '\n';
  }
  write_text_file(path, s);
}

}  // namespace cbo
