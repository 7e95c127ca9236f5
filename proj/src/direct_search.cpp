// STP and GLD: zeroth-order direct search with the argmin replaced by comp_min.

#include <array>
#include <cmath>
#include <vector>

#include "cbo/algorithms.hpp"
#include "cbo/compare_utils.hpp"

namespace cbo {

OptimizerState stp_step(OptimizerState state, const StpConfig& config, ComparisonOracle& oracle,
                        Rng& rng) {
  const Point s = sample_direction(config.dist, state.x.size(), rng);
  const double alpha = step_size(config.decay, config.alpha0, state.k);
  const std::array<Point, 3> candidates{state.x - alpha * s, state.x + alpha * s, state.x};
  state.x = comp_min(oracle, candidates, rng);
  ++state.k;
  return state;
}

OptimizerState gld_step(OptimizerState state, const GldConfig& config, ComparisonOracle& oracle,
                        Rng& rng) {
  const int K = config.K();
  const Eigen::MatrixXd v = sample_directions(config.dist, K + 1, state.x.size(), rng);

  std::vector<Point> candidates;
  candidates.reserve(static_cast<std::size_t>(K) + 2);
  candidates.push_back(state.x);
  double radius = config.R;
  for (int k = 0; k <= K; ++k) {
    candidates.push_back(state.x + radius * v.row(k).transpose());
    radius *= 0.5;
  }
  state.x = comp_min(oracle, candidates, rng);
  ++state.k;
  return state;
}

}  // namespace cbo
