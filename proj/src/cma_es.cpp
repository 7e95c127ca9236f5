// CMA-ES with active (negative-weight) covariance update. Constants follow the
// standard defaults from Hansen's tutorial; the only comparison-specific part
// is that candidates are ranked by comp_sort.

#include <algorithm>
#include <cmath>
#include <iostream>

#include "cbo/algorithms.hpp"
#include "cbo/compare_utils.hpp"

namespace cbo {
namespace {

constexpr double kEigenFloor = 1e-20;

// Refreshes B and D from C. On failure C is reset to the identity.
void decompose(CmaState& s) {
  const Eigen::Index n = s.x.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.C);
  if (eig.info() != Eigen::Success || !eig.eigenvalues().allFinite() ||
      !eig.eigenvectors().allFinite()) {
    std::cerr << "warning: CMA-ES covariance decomposition failed; resetting C to identity\n";
    s.C = Eigen::MatrixXd::Identity(n, n);
    s.B = Eigen::MatrixXd::Identity(n, n);
    s.D = Point::Ones(n);
    return;
  }
  s.B = eig.eigenvectors();
  s.D = eig.eigenvalues().cwiseMax(kEigenFloor).cwiseSqrt();
}

// C^{-1/2} v
Point inv_sqrt_times(const CmaState& s, const Point& v) {
  return s.B * (s.B.transpose() * v).cwiseQuotient(s.D);
}

}  // namespace

int cma_default_lambda(Eigen::Index n) {
  return 4 + static_cast<int>(std::floor(3.0 * std::log(static_cast<double>(n))));
}

CmaState cma_init(const Point& x0, const CmaConfig& config) {
  config.validate();
  const Eigen::Index n = x0.size();
  const double nd = static_cast<double>(n);
  if (n < 1) throw std::invalid_argument("cma_init: empty start point");

  CmaState s;
  s.x = x0;
  s.k = 0;
  s.sigma = config.sigma0;
  s.lambda = config.lambda > 0 ? config.lambda : cma_default_lambda(n);
  s.mu = s.lambda / 2;
  if (s.mu < 1) throw ConfigError("CMA-ES population must be at least 2");

  Point raw(s.lambda);
  for (int i = 0; i < s.lambda; ++i)
    raw[i] = std::log((s.lambda + 1) / 2.0) - std::log(static_cast<double>(i + 1));
  const Point pos = raw.head(s.mu);
  const Point neg = raw.tail(s.lambda - s.mu);
  s.mu_eff = pos.sum() * pos.sum() / pos.squaredNorm();
  const double neg_abs_sum = -neg.cwiseMin(0.0).sum();
  const double mu_eff_neg =
      neg_abs_sum > 0.0 ? neg_abs_sum * neg_abs_sum / neg.cwiseMin(0.0).squaredNorm() : 0.0;

  s.c_sigma = (s.mu_eff + 2.0) / (nd + s.mu_eff + 5.0);
  s.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((s.mu_eff - 1.0) / (nd + 1.0)) - 1.0) + s.c_sigma;
  s.c_c = (4.0 + s.mu_eff / nd) / (nd + 4.0 + 2.0 * s.mu_eff / nd);
  constexpr double alpha_cov = 2.0;
  s.c1 = alpha_cov / ((nd + 1.3) * (nd + 1.3) + s.mu_eff);
  s.c_mu = std::min(1.0 - s.c1, alpha_cov * (0.25 + s.mu_eff + 1.0 / s.mu_eff - 2.0) /
                                    ((nd + 2.0) * (nd + 2.0) + alpha_cov * s.mu_eff / 2.0));
  s.c_m = 1.0;
  s.chi_n = std::sqrt(nd) * (1.0 - 1.0 / (4.0 * nd) + 1.0 / (21.0 * nd * nd));

  // Positive weights sum to one; negative ones are scaled by the smallest of
  // the three active-CMA bounds.
  const double alpha_mu_neg = 1.0 + s.c1 / s.c_mu;
  const double alpha_mueff_neg = 1.0 + 2.0 * mu_eff_neg / (s.mu_eff + 2.0);
  const double alpha_posdef_neg = (1.0 - s.c1 - s.c_mu) / (nd * s.c_mu);
  const double neg_scale = std::min({alpha_mu_neg, alpha_mueff_neg, alpha_posdef_neg});
  s.weights.resize(s.lambda);
  const double pos_sum = pos.sum();
  for (int i = 0; i < s.lambda; ++i)
    s.weights[i] = raw[i] >= 0.0 ? raw[i] / pos_sum
                                 : (neg_abs_sum > 0.0 ? neg_scale * raw[i] / neg_abs_sum : 0.0);

  s.C = Eigen::MatrixXd::Identity(n, n);
  s.B = Eigen::MatrixXd::Identity(n, n);
  s.D = Point::Ones(n);
  s.p_sigma = Point::Zero(n);
  s.p_c = Point::Zero(n);
  return s;
}

CmaPopulation cma_sample(const CmaState& s, Rng& rng) {
  const Eigen::Index n = s.x.size();
  CmaPopulation pop;
  pop.z.resize(n, s.lambda);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < s.lambda; ++k)
    for (Eigen::Index i = 0; i < n; ++i) pop.z(i, k) = normal(rng);
  pop.y = s.B * (s.D.asDiagonal() * pop.z);
  pop.x = (s.sigma * pop.y).colwise() + s.x;
  return pop;
}

CmaState cma_update(CmaState s, const CmaPopulation& pop, std::span<const std::size_t> ranking) {
  const Eigen::Index n = s.x.size();
  const double nd = static_cast<double>(n);
  if (ranking.size() != static_cast<std::size_t>(s.lambda))
    throw std::invalid_argument("cma_update: ranking must cover the whole population");

  auto ranked_y = [&](int i) { return pop.y.col(static_cast<Eigen::Index>(ranking[static_cast<std::size_t>(i)])); };

  Point y_w = Point::Zero(n);
  for (int i = 0; i < s.mu; ++i) y_w += s.weights[i] * ranked_y(i);

  s.x += s.c_m * s.sigma * y_w;

  s.p_sigma = (1.0 - s.c_sigma) * s.p_sigma +
              std::sqrt(s.c_sigma * (2.0 - s.c_sigma) * s.mu_eff) * inv_sqrt_times(s, y_w);
  const double ps_norm = s.p_sigma.norm();
  const double generations = static_cast<double>(s.k + 1);
  const bool h_sigma =
      ps_norm / std::sqrt(1.0 - std::pow(1.0 - s.c_sigma, 2.0 * generations)) <
      (1.4 + 2.0 / (nd + 1.0)) * s.chi_n;

  s.p_c = (1.0 - s.c_c) * s.p_c +
          (h_sigma ? std::sqrt(s.c_c * (2.0 - s.c_c) * s.mu_eff) : 0.0) * y_w;

  const double delta_h = h_sigma ? 0.0 : s.c_c * (2.0 - s.c_c);
  const double decay = 1.0 + s.c1 * delta_h - s.c1 - s.c_mu * s.weights.sum();
  Eigen::MatrixXd rank_mu = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < s.lambda; ++i) {
    const Point y = ranked_y(i);
    double w = s.weights[i];
    if (w < 0.0) w *= nd / inv_sqrt_times(s, y).squaredNorm();
    rank_mu.noalias() += w * y * y.transpose();
  }
  s.C = decay * s.C + s.c1 * s.p_c * s.p_c.transpose() + s.c_mu * rank_mu;
  s.C = 0.5 * (s.C + s.C.transpose()).eval();

  s.sigma *= std::exp(s.c_sigma / s.d_sigma * (ps_norm / s.chi_n - 1.0));

  decompose(s);
  ++s.k;
  return s;
}

CmaState cma_step(CmaState state, ComparisonOracle& oracle, Rng& rng) {
  const CmaPopulation pop = cma_sample(state, rng);
  std::vector<Point> candidates;
  candidates.reserve(static_cast<std::size_t>(state.lambda));
  for (int k = 0; k < state.lambda; ++k) candidates.push_back(pop.x.col(k));
  const std::vector<std::size_t> order = comp_sort_order(oracle, candidates);
  return cma_update(std::move(state), pop, order);
}

}  // namespace cbo
