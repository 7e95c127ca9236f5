// cbo: command-line front end for the comparison-based optimization toolkit.
//
//   cbo list
//   cbo run     --problem P --algo A [--budget N] [--repeats R]
//   cbo profile [--problem P...] [--algo A...] [--budget 1e4] [--traces DIR]
//   cbo tune    --preset gld|scobo-sr|scobo-sm [--problem P] [--budget N]
//   cbo plot    trace.csv... [--log-y] [-o chart.svg]
//
// Global flags (--seed, --out, --jobs, --noise-p, --remote, --manifest) may
// appear before or after the subcommand. Flags override manifest values.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "cbo/io.hpp"
#include "cbo/manifest.hpp"
#include "cbo/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalFlags {
  std::uint64_t seed = 0;
  std::string out;
  int jobs = 1;
  double noise_p = 1.0;
  std::string remote;
  std::string manifest;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* noise_opt = nullptr;
  CLI::Option* remote_opt = nullptr;
};

struct ExperimentFlags {
  std::vector<std::string> problems;
  std::vector<std::string> algos;
  std::string budget;
  int repeats = 1;
  CLI::Option* problems_opt = nullptr;
  CLI::Option* algos_opt = nullptr;
  CLI::Option* budget_opt = nullptr;
  CLI::Option* repeats_opt = nullptr;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
  f.problems_opt = cmd->add_option("--problem", f.problems, "Problem name (repeatable)");
  f.algos_opt = cmd->add_option("--algo", f.algos, "Algorithm name (repeatable)");
  f.budget_opt = cmd->add_option("--budget", f.budget, "Oracle query budget, e.g. 5000 or 1e4");
  f.repeats_opt = cmd->add_option("--repeats", f.repeats, "Runs per (problem, algorithm)");
}

cbo::ExperimentManifest base_manifest(const GlobalFlags& g) {
  cbo::ExperimentManifest m;
  if (!g.manifest.empty()) m = cbo::load_manifest(g.manifest);
  if (g.seed_opt->count()) m.seed = g.seed;
  if (g.out_opt->count()) m.out = g.out;
  if (g.jobs_opt->count()) m.jobs = g.jobs;
  if (g.noise_opt->count()) m.noise_p = g.noise_p;
  if (g.remote_opt->count()) m.remote = g.remote;
  if (m.jobs < 1) throw cbo::ConfigError("--jobs must be at least 1");
  return m;
}

void apply(cbo::ExperimentManifest& m, const ExperimentFlags& f) {
  if (f.problems_opt->count()) m.problems = f.problems;
  if (f.algos_opt->count()) {
    m.algorithms.clear();
    for (const auto& a : f.algos) m.algorithms.push_back({a, json::object()});
  }
  if (f.budget_opt->count()) m.budget = cbo::parse_budget(f.budget);
  if (f.repeats_opt->count()) m.repeats = f.repeats;
  if (m.repeats < 1) throw cbo::ConfigError("--repeats must be at least 1");
}

std::optional<cbo::NoiseSpec> noise_of(const cbo::ExperimentManifest& m) {
  if (!m.noise_p) return std::nullopt;
  return cbo::NoiseSpec(*m.noise_p);
}

// Names in the manifest resolve to native problems, except that the remote
// problem (when attached) replaces a native one of the same name or is
// appended when not listed.
std::vector<cbo::Problem> resolve_problems(const cbo::ExperimentManifest& m,
                                           const std::vector<std::string>& fallback) {
  std::optional<cbo::Problem> remote;
  if (m.remote) remote = cbo::connect_remote(*m.remote);
  const auto& names = m.problems.empty() && !remote ? fallback : m.problems;
  std::vector<cbo::Problem> out;
  bool remote_used = false;
  for (const auto& name : names) {
    if (remote && name == remote->name) {
      out.push_back(*remote);
      remote_used = true;
    } else if (auto p = cbo::find_builtin(name)) {
      out.push_back(std::move(*p));
    } else {
      throw cbo::ConfigError("unknown problem '" + name + "' (see `cbo list`)");
    }
  }
  if (remote && !remote_used) out.push_back(*remote);
  return out;
}

std::vector<cbo::AlgorithmSpec> resolve_algorithms(const cbo::ExperimentManifest& m) {
  std::vector<cbo::AlgorithmSpec> out;
  if (m.algorithms.empty())
    for (const auto& name : cbo::algorithm_names()) out.push_back({name, json::object()});
  else
    out = m.algorithms;
  for (auto& a : out) a = cbo::resolve_spec(a);
  return out;
}

// The manifest written next to the outputs records what actually ran.
cbo::ExperimentManifest effective(cbo::ExperimentManifest m, const std::vector<cbo::Problem>& problems,
                                  const std::vector<cbo::AlgorithmSpec>& algorithms) {
  m.problems.clear();
  for (const auto& p : problems) m.problems.push_back(p.name);
  m.algorithms = algorithms;
  return m;
}

int write_traces(const fs::path& dir, const std::vector<cbo::RunTrace>& traces) {
  fs::create_directories(dir);
  int failed = 0;
  for (const auto& t : traces) {
    cbo::write_trace_csv(dir / cbo::trace_file_name(t), t);
    if (t.status == cbo::RunStatus::kFailed) {
      std::cerr << "run failed: " << t.problem << "/" << t.algorithm << " seed " << t.seed << ": "
                << t.error << "\n";
      ++failed;
    }
  }
  return failed;
}

int cmd_list(const GlobalFlags& g) {
  const auto m = base_manifest(g);
  std::cout << "problems:\n";
  auto show = [](const cbo::Problem& p) {
    std::cout << "  " << p.name << "  dim=" << p.dim;
    if (p.f_star) std::cout << "  f*=" << cbo::format_double(*p.f_star);
    std::cout << "\n";
  };
  for (const auto& p : cbo::builtin_suite()) show(p);
  if (m.remote) {
    std::cout << "remote:\n";
    show(cbo::connect_remote(*m.remote));
  }
  std::cout << "algorithms:\n";
  for (const auto& a : cbo::algorithm_names())
    std::cout << "  " << a << "  " << cbo::default_params(a).dump() << "\n";
  return 0;
}

int cmd_run(const GlobalFlags& g, const ExperimentFlags& f) {
  auto m = base_manifest(g);
  apply(m, f);
  if (m.problems.empty() && !m.remote) throw cbo::ConfigError("run needs at least one --problem");
  if (m.algorithms.empty()) throw cbo::ConfigError("run needs at least one --algo");
  const auto problems = resolve_problems(m, {});
  const auto algorithms = resolve_algorithms(m);
  const auto traces =
      cbo::run_experiment(problems, algorithms, m.budget, m.repeats, m.seed, noise_of(m), m.jobs);
  const fs::path out = m.out;
  const int failed = write_traces(out, traces);
  cbo::write_text_file(out / "manifest.json", cbo::manifest_text(effective(m, problems, algorithms)));
  std::cout << "wrote " << traces.size() << " trace(s) to " << out.string() << "\n";
  if (failed) throw Failure(std::to_string(failed) + " run(s) failed");
  return 0;
}

std::vector<cbo::RunTrace> read_trace_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw cbo::ConfigError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<cbo::RunTrace> traces;
  for (const auto& p : files) traces.push_back(cbo::read_trace_csv(p));
  return traces;
}

struct ProfileFlags {
  std::string criterion;
  double factor = 0.05;
  double tau_max = 20.0;
  CLI::Option* criterion_opt = nullptr;
  CLI::Option* factor_opt = nullptr;
  CLI::Option* tau_max_opt = nullptr;
};

int cmd_profile(const GlobalFlags& g, const ExperimentFlags& f, const ProfileFlags& pf,
                const std::string& traces_dir) {
  auto m = base_manifest(g);
  apply(m, f);
  if (pf.criterion_opt->count()) m.profile.criterion = cbo::parse_success_kind(pf.criterion);
  if (pf.factor_opt->count()) m.profile.factor = pf.factor;
  if (pf.tau_max_opt->count()) m.profile.tau_max = pf.tau_max;
  const fs::path out = m.out;
  std::vector<cbo::RunTrace> traces;
  int failed = 0;
  if (!traces_dir.empty()) {
    traces = read_trace_dir(traces_dir);
  } else {
    std::vector<std::string> fallback;
    for (const auto& p : cbo::builtin_suite()) fallback.push_back(p.name);
    fallback.resize(8);  // the CUTEst subset; the toys are not profile problems
    const auto problems = resolve_problems(m, fallback);
    const auto algorithms = resolve_algorithms(m);
    traces = cbo::run_experiment(problems, algorithms, m.budget, m.repeats, m.seed, noise_of(m), m.jobs);
    failed = write_traces(out / "traces", traces);
    m = effective(m, problems, algorithms);
  }
  if (traces.empty()) throw Failure("no traces to profile");

  const cbo::SuccessCriterion criterion{m.profile.criterion, m.profile.factor};
  criterion.validate();
  const auto table = cbo::build_profile_table(traces, criterion);
  const auto profile = cbo::performance_profile(table);
  for (const auto& p : profile.dropped_problems)
    std::cerr << "note: no solver succeeded on " << p << "; dropped from the profile\n";
  if (profile.problems.empty()) throw Failure("no problem was solved by any algorithm; profile is empty");

  fs::create_directories(out);
  const auto taus = cbo::profile_taus(m.profile.tau_max);
  cbo::write_profile_csv(out / "profile.csv", profile, taus);
  const std::string title = std::string("performance profile (") +
                            std::string(cbo::to_string(criterion.kind)) + ", budget " +
                            std::to_string(m.budget) + ")";
  cbo::write_text_file(out / "profile.svg", cbo::profile_chart_svg(profile, taus, title));
  cbo::write_text_file(out / "manifest.json", cbo::manifest_text(m));
  std::cout << "profiled " << profile.problems.size() << " problem(s), " << profile.solvers.size()
            << " solver(s) into " << out.string() << "\n";
  if (failed) throw Failure(std::to_string(failed) + " run(s) failed");
  return 0;
}

cbo::GridAxis parse_axis(const std::string& text) {
  // name=v1,v2,...
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw cbo::ConfigError("axis must look like name=v1,v2: " + text);
  cbo::GridAxis axis{text.substr(0, eq), {}};
  std::stringstream ss(text.substr(eq + 1));
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      axis.values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw cbo::ConfigError("bad axis value '" + item + "' in " + text);
    }
  }
  if (axis.values.empty()) throw cbo::ConfigError("axis has no values: " + text);
  return axis;
}

struct TuneFlags {
  std::string preset;
  std::string a, b;
  int grid_repeats = 3;
  CLI::Option* repeats_opt = nullptr;
};

int cmd_tune(const GlobalFlags& g, const ExperimentFlags& f, const TuneFlags& t) {
  auto m = base_manifest(g);
  const bool budget_given = f.budget_opt->count() > 0 || !g.manifest.empty();
  apply(m, f);

  if (!t.preset.empty()) {
    cbo::GridSpec preset;
    cbo::GridSettings grid;
    if (t.preset == "gld") {
      preset = cbo::gld_radius_grid(m.budget);
      grid.algorithm = "gld";
    } else if (t.preset == "scobo-sr") {
      preset = cbo::scobo_sparsity_radius_grid(m.budget);
      grid.algorithm = "scobo";
    } else if (t.preset == "scobo-sm") {
      preset = cbo::scobo_sparsity_count_grid(m.budget);
      grid.algorithm = "scobo";
    } else {
      throw cbo::ConfigError("unknown preset '" + t.preset + "' (gld, scobo-sr, scobo-sm)");
    }
    grid.problem = "ROSENBR";
    grid.a = preset.a;
    grid.b = preset.b;
    grid.fixed = preset.fixed;
    m.grid = grid;
    if (!budget_given) m.budget = t.preset == "gld" ? 5000 : 10000;
  }
  if (!m.grid) {
    if (t.a.empty() || t.b.empty() || f.algos.size() != 1)
      throw cbo::ConfigError("tune needs --preset, a manifest grid, or --algo with --a and --b");
    m.grid = cbo::GridSettings{f.algos.front(), "ROSENBR", {}, {}, json::object(), 3};
  }
  auto& grid = *m.grid;
  if (!t.a.empty()) grid.a = parse_axis(t.a);
  if (!t.b.empty()) grid.b = parse_axis(t.b);
  if (f.algos_opt->count()) {
    if (f.algos.size() != 1) throw cbo::ConfigError("tune takes exactly one --algo");
    grid.algorithm = f.algos.front();
  }
  if (f.problems_opt->count()) {
    if (f.problems.size() != 1) throw cbo::ConfigError("tune takes exactly one --problem");
    grid.problem = f.problems.front();
  }
  if (t.repeats_opt->count()) grid.repeats = t.grid_repeats;
  m.problems = {grid.problem};
  m.algorithms.clear();

  cbo::GridSpec spec;
  spec.a = grid.a;
  spec.b = grid.b;
  spec.fixed = grid.fixed;
  spec.budget = m.budget;
  spec.repeats = grid.repeats;
  spec.seed = m.seed;
  spec.noise = noise_of(m);
  const auto problems = resolve_problems(m, {});
  const auto matrix = cbo::grid_sweep({grid.algorithm, json::object()}, problems.front(), spec, m.jobs);

  const fs::path out = m.out;
  fs::create_directories(out);
  cbo::write_text_file(out / "heatmap.csv", cbo::heatmap_csv(matrix));
  cbo::write_text_file(out / "heatmap.svg", cbo::heatmap_svg(matrix));
  json meta = {{"algorithm", matrix.algorithm},
               {"problem", matrix.problem},
               {"fixed", grid.fixed},
               {"budget", m.budget},
               {"repeats", grid.repeats},
               {"repeat_seeds", matrix.repeat_seeds}};
  cbo::write_text_file(out / "heatmap.json", meta.dump(2) + "\n");
  cbo::write_text_file(out / "manifest.json", cbo::manifest_text(m));

  int failed = 0;
  for (const auto& row : matrix.cells)
    for (const auto& c : row) failed += !c;
  std::cout << "wrote " << grid.b.values.size() << "x" << grid.a.values.size() << " heatmap to "
            << out.string() << "\n";
  if (failed) throw Failure(std::to_string(failed) + " cell(s) failed");
  return 0;
}

int cmd_plot(const GlobalFlags& g, const std::vector<std::string>& files, bool log_y, std::string output) {
  auto m = base_manifest(g);
  if (files.empty()) throw cbo::ConfigError("plot needs at least one trace CSV");
  std::vector<cbo::RunTrace> traces;
  for (const auto& p : files) traces.push_back(cbo::read_trace_csv(p));
  const std::string problem = traces.front().problem;
  for (const auto& t : traces)
    if (t.problem != problem)
      throw cbo::ConfigError("traces mix problems: " + problem + " and " + t.problem);

  std::optional<double> f_star;
  if (auto p = cbo::find_builtin(problem)) f_star = p->f_star;
  std::map<std::string, std::vector<cbo::RunTrace>> by_algo;
  std::vector<std::string> order;
  for (auto& t : traces) {
    if (!by_algo.count(t.algorithm)) order.push_back(t.algorithm);
    by_algo[t.algorithm].push_back(std::move(t));
  }
  std::vector<cbo::GapSeries> series;
  for (const auto& a : order) series.push_back({a, cbo::aggregate(by_algo[a], f_star)});

  if (output.empty()) output = (fs::path(m.out) / (problem + ".svg")).string();
  if (fs::path(output).has_parent_path()) fs::create_directories(fs::path(output).parent_path());
  cbo::write_text_file(output, cbo::gap_chart_svg(series, {problem, log_y}));
  std::cout << "wrote " << output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparison-based optimization toolkit"};
  app.require_subcommand(1);
  GlobalFlags g;
  g.seed_opt = app.add_option("--seed", g.seed, "Master seed");
  g.out_opt = app.add_option("--out", g.out, "Output directory");
  g.jobs_opt = app.add_option("--jobs", g.jobs, "Concurrent runs");
  g.noise_opt = app.add_option("--noise-p", g.noise_p, "Noisy oracle: probability of a truthful answer");
  g.remote_opt = app.add_option("--remote", g.remote, "Command serving a remote problem");
  app.add_option("--manifest", g.manifest, "Experiment manifest (JSON)");

  auto* list = app.add_subcommand("list", "List problems and algorithms")->fallthrough();

  ExperimentFlags run_flags;
  auto* run = app.add_subcommand("run", "Run algorithms and write trace CSVs")->fallthrough();
  add_experiment_flags(run, run_flags);

  ExperimentFlags profile_flags;
  std::string traces_dir;
  auto* profile = app.add_subcommand("profile", "Build a performance profile")->fallthrough();
  add_experiment_flags(profile, profile_flags);
  profile->add_option("--traces", traces_dir, "Profile existing trace CSVs instead of running");
  ProfileFlags pf;
  pf.criterion_opt = profile->add_option("--criterion", pf.criterion, "f_ratio or grad_ratio");
  pf.factor_opt = profile->add_option("--factor", pf.factor, "Success factor in (0, 1)");
  pf.tau_max_opt = profile->add_option("--tau-max", pf.tau_max, "Largest tabulated performance ratio");

  ExperimentFlags tune_flags;
  TuneFlags tf;
  auto* tune = app.add_subcommand("tune", "Sweep two hyperparameters")->fallthrough();
  add_experiment_flags(tune, tune_flags);
  tune->add_option("--preset", tf.preset, "gld, scobo-sr or scobo-sm");
  tune->add_option("--a", tf.a, "Column axis, name=v1,v2,...");
  tune->add_option("--b", tf.b, "Row axis, name=v1,v2,...");
  tf.repeats_opt = tune->add_option("--grid-repeats", tf.grid_repeats, "Runs per cell (median reported)");

  std::vector<std::string> plot_files;
  bool log_y = false;
  std::string plot_output;
  auto* plot = app.add_subcommand("plot", "Chart mean gap with min-max band")->fallthrough();
  plot->add_option("traces", plot_files, "Trace CSV files")->required();
  plot->add_flag("--log-y", log_y, "Logarithmic gap axis");
  plot->add_option("-o,--output", plot_output, "SVG path (default OUT/PROBLEM.svg)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) return cmd_list(g);
    if (*run) return cmd_run(g, run_flags);
    if (*profile) return cmd_profile(g, profile_flags, pf, traces_dir);
    if (*tune) return cmd_tune(g, tune_flags, tf);
    if (*plot) return cmd_plot(g, plot_files, log_y, plot_output);
  } catch (const cbo::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
