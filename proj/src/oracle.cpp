#include "cbo/oracle.hpp"

#include <stdexcept>
#include <string>

namespace cbo {

NoiseSpec::NoiseSpec(double p) : p_(p) {
  if (!(p >= 0.5 && p <= 1.0))
    throw std::invalid_argument("noise probability must lie in [0.5, 1], got " + std::to_string(p));
}

CountingOracle::CountingOracle(const Problem& problem, std::optional<NoiseSpec> noise,
                               std::uint64_t noise_seed)
    : eval_f_(problem.eval_f), dim_(problem.dim), noise_(noise), noise_rng_(noise_seed) {
  if (!eval_f_) throw std::invalid_argument("oracle needs an objective");
}

OracleAnswer CountingOracle::compare(const Point& x, const Point& y) {
  return noise_ ? noisy_compare(x, y) : exact_compare(x, y);
}

OracleAnswer CountingOracle::truth(const Point& x, const Point& y) {
  if (x.size() != dim_ || y.size() != dim_)
    throw std::invalid_argument("oracle: point dimension " + std::to_string(x.size()) + "/" +
                                std::to_string(y.size()) + " does not match problem dimension " +
                                std::to_string(dim_));
  ++queries_;
  const double fx = eval_f_(x);
  const double fy = eval_f_(y);
  if (fx < fy) return OracleAnswer::kFirstBetter;
  if (fy < fx) return OracleAnswer::kSecondBetter;
  return OracleAnswer::kTie;
}

OracleAnswer CountingOracle::exact_compare(const Point& x, const Point& y) { return truth(x, y); }

OracleAnswer CountingOracle::noisy_compare(const Point& x, const Point& y) {
  if (!noise_) throw std::logic_error("noisy_compare on an oracle without noise");
  const OracleAnswer answer = truth(x, y);
  const double r = std::uniform_real_distribution<double>(0.0, 1.0)(noise_rng_);
  return r < noise_->p() ? answer : negate(answer);
}

}  // namespace cbo
