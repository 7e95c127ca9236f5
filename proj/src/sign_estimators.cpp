// Native comparison-based methods: both average one-bit answers along random
// probes into a descent direction. SignOPT uses sphere probes and a decaying
// step; SCOBO uses Rademacher probes, a sparse decoder and a fixed step.

#include <algorithm>
#include <numeric>
#include <vector>

#include "cbo/algorithms.hpp"

namespace cbo {
namespace {

// (1/m) sum_i a_i u_i with a_i = C(x, x + r u_i); rows of `probes` are u_i.
Point one_bit_average(const Point& x, const Eigen::MatrixXd& probes, double r,
                      ComparisonOracle& oracle) {
  Point v = Point::Zero(x.size());
  for (Eigen::Index i = 0; i < probes.rows(); ++i) {
    const Point u = probes.row(i).transpose();
    const int a = to_int(oracle.compare(x, x + r * u));
    if (a != 0) v += static_cast<double>(a) * u;
  }
  return v / static_cast<double>(probes.rows());
}

}  // namespace

Point hard_threshold(const Point& v, Eigen::Index s) {
  if (s < 0) throw std::invalid_argument("hard_threshold: negative sparsity");
  if (s >= v.size()) return v;
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::partial_sort(idx.begin(), idx.begin() + s, idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(v[a]);
    const double mb = std::abs(v[b]);
    return ma > mb || (ma == mb && a < b);
  });
  Point out = Point::Zero(v.size());
  for (Eigen::Index j = 0; j < s; ++j) out[idx[static_cast<std::size_t>(j)]] = v[idx[static_cast<std::size_t>(j)]];
  return out;
}

OptimizerState signopt_step(OptimizerState state, const SignOptConfig& config,
                            ComparisonOracle& oracle, Rng& rng) {
  const Eigen::MatrixXd u =
      sample_directions(DirectionDistribution::kUniformSphere, config.m, state.x.size(), rng);
  const Point g = one_bit_average(state.x, u, config.r, oracle);
  const double norm = g.norm();
  if (norm > 0.0) state.x -= step_size(config.decay, config.alpha0, state.k) * (g / norm);
  ++state.k;
  return state;
}

OptimizerState scobo_step(OptimizerState state, const ScoboConfig& config,
                          ComparisonOracle& oracle, Rng& rng) {
  if (config.s > state.x.size())
    throw std::invalid_argument("scobo_step: sparsity s exceeds the dimension");
  const Eigen::MatrixXd z =
      sample_directions(DirectionDistribution::kRademacher, config.m, state.x.size(), rng);
  const Point v = hard_threshold(one_bit_average(state.x, z, config.r, oracle), config.s);
  const double norm = v.norm();
  if (norm > 0.0) state.x -= config.delta * (v / norm);
  ++state.k;
  return state;
}

}  // namespace cbo
