#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbo/oracle.hpp"
#include "cbo/sampling.hpp"
#include "json.hpp"

namespace cbo {

/// Step-size schedules: alpha0, alpha0 / sqrt(k + 1), alpha0 / (k + 1).
enum class StepSchedule { kConstant, kInverseSqrt, kInverse };

std::string_view to_string(StepSchedule s);
StepSchedule parse_schedule(std::string_view name);
double step_size(StepSchedule schedule, double alpha0, std::int64_t k);

/// Iterate and iteration counter shared by every optimizer.
struct OptimizerState {
  Point x;
  std::int64_t k = 0;
};

// ---------------------------------------------------------------------------
// Configurations. Each validate() throws ConfigError on a violated invariant.

struct StpConfig {
  double alpha0 = 1.0;
  StepSchedule decay = StepSchedule::kInverseSqrt;
  DirectionDistribution dist = DirectionDistribution::kUniformSphere;
  void validate() const;
};

struct GldConfig {
  double R = 10.0;   // largest search radius
  double r = 1e-3;   // smallest search radius, 0 < r < R
  DirectionDistribution dist = DirectionDistribution::kUniformSphere;
  void validate() const;
  /// Number of halvings: ceil(log2(R / r)), at least 1.
  int K() const;
};

struct SignOptConfig {
  int m = 50;
  double r = 0.01;
  double alpha0 = 0.2;
  StepSchedule decay = StepSchedule::kInverseSqrt;
  void validate() const;
};

struct ScoboConfig {
  int m = 100;
  int s = 20;
  double r = 0.1;
  double delta = 0.5;
  void validate() const;
};

struct CmaConfig {
  double sigma0 = 0.5;
  int lambda = 0;  // 0: 4 + floor(3 ln n)
  void validate() const;
};

// ---------------------------------------------------------------------------
// One iteration of each optimizer. Only `oracle` sees the objective.

/// Three-point step: x_{k+1} = CompMin(x_k - a s, x_k + a s, x_k). Two queries.
OptimizerState stp_step(OptimizerState state, const StpConfig& config, ComparisonOracle& oracle,
                        Rng& rng);

/// Gradientless descent: CompMin over x_t and x_t + v_k, |v_k| ~ 2^-k R for
/// k = 0..K. K + 1 queries.
OptimizerState gld_step(OptimizerState state, const GldConfig& config, ComparisonOracle& oracle,
                        Rng& rng);

/// Sign-averaged direction estimate from m sphere probes, then a normalized
/// step of length alpha_k. m queries.
OptimizerState signopt_step(OptimizerState state, const SignOptConfig& config,
                            ComparisonOracle& oracle, Rng& rng);

/// One-bit measurements along m Rademacher probes, s-sparse hard threshold,
/// normalized step of length delta. m queries. Requires s <= dim.
OptimizerState scobo_step(OptimizerState state, const ScoboConfig& config,
                          ComparisonOracle& oracle, Rng& rng);

/// Keeps the s largest-magnitude entries of v (ties to the lower index).
Point hard_threshold(const Point& v, Eigen::Index s);

// ---------------------------------------------------------------------------
// CMA-ES, split so the ranking step can be swapped.

struct CmaState : OptimizerState {
  // x holds the distribution mean.
  double sigma = 1.0;
  Eigen::MatrixXd C;
  Point p_sigma;
  Point p_c;
  Eigen::MatrixXd B;  // eigenvectors of C
  Point D;            // sqrt of eigenvalues of C
  Point weights;      // lambda entries, positive ones sum to 1
  int lambda = 0;
  int mu = 0;
  double mu_eff = 0.0;
  double c_sigma = 0.0;
  double d_sigma = 0.0;
  double c_c = 0.0;
  double c1 = 0.0;
  double c_mu = 0.0;
  double c_m = 1.0;
  double chi_n = 0.0;  // E||N(0, I)||
};

/// Default population size 4 + floor(3 ln n).
int cma_default_lambda(Eigen::Index n);

CmaState cma_init(const Point& x0, const CmaConfig& config);

/// Columns are the lambda candidates.
struct CmaPopulation {
  Eigen::MatrixXd z;
  Eigen::MatrixXd y;
  Eigen::MatrixXd x;
};

CmaPopulation cma_sample(const CmaState& state, Rng& rng);

/// Applies recombination, path, step-size and covariance updates given the
/// candidate order (best first).
CmaState cma_update(CmaState state, const CmaPopulation& population,
                    std::span<const std::size_t> ranking);

/// Sample, rank with comp_sort (lambda(lambda-1)/2 queries), update.
CmaState cma_step(CmaState state, ComparisonOracle& oracle, Rng& rng);

// ---------------------------------------------------------------------------
// Uniform stepping interface for the harness.

/// An algorithm name plus JSON parameters overriding its defaults.
struct AlgorithmSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
};

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  virtual void step(ComparisonOracle& oracle, Rng& rng) = 0;
  virtual const OptimizerState& state() const = 0;
  /// Upper bound on queries the next step will make.
  virtual std::int64_t max_queries_per_step() const = 0;
  virtual std::string_view name() const = 0;
};

/// "stp", "gld", "cma", "signopt", "scobo" in that order.
const std::vector<std::string>& algorithm_names();

/// Tunable parameter names and their defaults for an algorithm.
nlohmann::json default_params(std::string_view algorithm);

/// Validates `spec` (unknown algorithm or parameter -> ConfigError) and
/// returns it with defaults filled in.
AlgorithmSpec resolve_spec(const AlgorithmSpec& spec);

/// Builds an optimizer starting at x0. SCOBO's sparsity is capped at dim.
std::unique_ptr<Optimizer> make_optimizer(const AlgorithmSpec& spec, const Point& x0);

}  // namespace cbo
