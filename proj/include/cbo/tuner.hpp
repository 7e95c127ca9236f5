#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cbo/run.hpp"

namespace cbo {

struct GridAxis {
  std::string name;
  std::vector<double> values;
};

/// Two-parameter sweep. Axis a runs along the columns, axis b along the rows.
struct GridSpec {
  GridAxis a;
  GridAxis b;
  nlohmann::json fixed = nlohmann::json::object();  // other parameters held constant
  std::int64_t budget = 1000;
  int repeats = 3;
  std::uint64_t seed = 0;
  std::optional<NoiseSpec> noise;
};

/// Median final f per cell; nullopt marks a cell with a failed run.
struct HeatmapMatrix {
  std::string algorithm;
  std::string problem;
  GridAxis a;
  GridAxis b;
  std::vector<std::vector<std::optional<double>>> cells;  // [row = b][col = a]
  std::vector<std::uint64_t> repeat_seeds;
};

/// Seed for repeat `r`; shared by every cell so cells differ only in config.
std::uint64_t sweep_seed(std::uint64_t grid_seed, int repeat);

/// The algorithm spec for cell (row, col): base params, then `fixed`, then the
/// two axis values.
AlgorithmSpec cell_spec(const AlgorithmSpec& base, const GridSpec& grid, std::size_t row,
                        std::size_t col);

/// Runs every cell. All cell configs are validated before the first run
/// (ConfigError on an unknown parameter name or invalid value).
HeatmapMatrix grid_sweep(const AlgorithmSpec& algorithm, const Problem& problem,
                         const GridSpec& grid, int jobs = 1);

// Grids from the hyperparameter study. The SCOBO grids fix delta = 0.1, a step
// suited to ROSENBR-scale problems (the default 0.5 overshoots its valley).
GridSpec gld_radius_grid(std::int64_t budget);      // r x R
GridSpec scobo_sparsity_radius_grid(std::int64_t budget);  // r x s, m = 100
GridSpec scobo_sparsity_count_grid(std::int64_t budget);   // m x s, r fixed

/// First row: axis-a values (leading cell holds "b\a" names); then one row
/// per b value. Failed cells are written as "failed".
std::string heatmap_csv(const HeatmapMatrix& matrix);

}  // namespace cbo
