#include "cbo/tuner.hpp"

#include "cbo/bench.hpp"
#include "cbo/io.hpp"

namespace cbo {

std::uint64_t sweep_seed(std::uint64_t grid_seed, int repeat) {
  return derive_seed(grid_seed, {static_cast<std::uint64_t>(repeat)});
}

AlgorithmSpec cell_spec(const AlgorithmSpec& base, const GridSpec& grid, std::size_t row,
                        std::size_t col) {
  AlgorithmSpec spec = base;
  if (!spec.params.is_object()) spec.params = nlohmann::json::object();
  for (const auto& [key, value] : grid.fixed.items()) spec.params[key] = value;
  spec.params[grid.a.name] = grid.a.values.at(col);
  spec.params[grid.b.name] = grid.b.values.at(row);
  return spec;
}

HeatmapMatrix grid_sweep(const AlgorithmSpec& algorithm, const Problem& problem,
                         const GridSpec& grid, int jobs) {
  if (grid.a.values.empty() || grid.b.values.empty())
    throw ConfigError("grid axes need at least one value");
  if (grid.a.name == grid.b.name) throw ConfigError("grid axes must name different parameters");
  if (grid.repeats < 1) throw ConfigError("grid repeats must be at least 1");
  if (!grid.fixed.is_object()) throw ConfigError("grid fixed parameters must be an object");

  const std::size_t rows = grid.b.values.size();
  const std::size_t cols = grid.a.values.size();
  std::vector<AlgorithmSpec> specs;
  specs.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      specs.push_back(resolve_spec(cell_spec(algorithm, grid, i, j)));

  HeatmapMatrix out;
  out.algorithm = algorithm.name;
  out.problem = problem.name;
  out.a = grid.a;
  out.b = grid.b;
  for (int r = 0; r < grid.repeats; ++r) out.repeat_seeds.push_back(sweep_seed(grid.seed, r));

  const std::size_t reps = static_cast<std::size_t>(grid.repeats);
  std::vector<std::optional<double>> finals(rows * cols * reps);
  parallel_for(finals.size(), jobs, [&](std::size_t task) {
    const std::size_t cell = task / reps;
    const std::size_t r = task % reps;
    const RunTrace t = run_seeded(specs[cell], problem, grid.budget, out.repeat_seeds[r], grid.noise);
    if (t.status == RunStatus::kOk) finals[task] = t.final().f;
  });

  out.cells.assign(rows, std::vector<std::optional<double>>(cols));
  for (std::size_t cell = 0; cell < rows * cols; ++cell) {
    std::vector<double> values;
    bool failed = false;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto& v = finals[cell * reps + r];
      if (!v) failed = true;
      else values.push_back(*v);
    }
    if (!failed) out.cells[cell / cols][cell % cols] = median(values);
  }
  return out;
}

GridSpec gld_radius_grid(std::int64_t budget) {
  GridSpec g;
  g.a = {"r", {0.001, 0.01, 0.1, 1.0}};
  g.b = {"R", {10000.0, 1000.0, 100.0, 10.0}};
  g.budget = budget;
  return g;
}

GridSpec scobo_sparsity_radius_grid(std::int64_t budget) {
  GridSpec g;
  g.a = {"r", {0.001, 0.01, 0.1, 1.0}};
  g.b = {"s", {100.0, 50.0, 20.0, 10.0}};
  g.fixed = {{"m", 100}, {"delta", 0.1}};
  g.budget = budget;
  return g;
}

GridSpec scobo_sparsity_count_grid(std::int64_t budget) {
  GridSpec g;
  g.a = {"m", {10.0, 25.0, 50.0, 100.0}};
  g.b = {"s", {100.0, 50.0, 20.0, 10.0}};
  g.fixed = {{"r", 0.01}, {"delta", 0.1}};
  g.budget = budget;
  return g;
}

std::string heatmap_csv(const HeatmapMatrix& m) {
  std::string s = m.b.name + "\\" + m.a.name;
  for (double a : m.a.values) s += "," + format_double(a);
  s += '\n';
  for (std::size_t i = 0; i < m.b.values.size(); ++i) {
    s += format_double(m.b.values[i]);
    for (const auto& cell : m.cells[i]) s += "," + (cell ? format_double(*cell) : std::string("failed"));
    s += '\n';
  }
  return s;
}

}  // namespace cbo
