#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "cbo/problems.hpp"
#include "cbo/types.hpp"

namespace cbo {

/// Ternary comparison result. `kFirstBetter` means f(x) < f(y) for compare(x, y).
enum class OracleAnswer : int { kSecondBetter = -1, kTie = 0, kFirstBetter = 1 };

constexpr int to_int(OracleAnswer a) { return static_cast<int>(a); }

constexpr OracleAnswer negate(OracleAnswer a) { return static_cast<OracleAnswer>(-to_int(a)); }

/// Probability p in [0.5, 1] that a noisy oracle answers truthfully.
class NoiseSpec {
 public:
  /// Throws std::invalid_argument outside [0.5, 1].
  explicit NoiseSpec(double p);
  double p() const { return p_; }

 private:
  double p_;
};

/// The only handle an optimizer gets on its objective.
class ComparisonOracle {
 public:
  virtual ~ComparisonOracle() = default;
  virtual OracleAnswer compare(const Point& x, const Point& y) = 0;
  virtual std::int64_t query_count() const = 0;
  virtual Eigen::Index dim() const = 0;
};

/// Query-counted comparison oracle over a Problem's objective, optionally noisy.
///
/// Noise draws come from the oracle's own stream, seeded at construction, so
/// they never shift an algorithm's sampling. A CountingOracle belongs to one run.
class CountingOracle final : public ComparisonOracle {
 public:
  explicit CountingOracle(const Problem& problem, std::optional<NoiseSpec> noise = std::nullopt,
                          std::uint64_t noise_seed = 0);

  /// Dispatches to exact_compare or noisy_compare. Counts one query.
  OracleAnswer compare(const Point& x, const Point& y) override;

  /// +1 if f(x) < f(y), -1 if f(y) < f(x), 0 on exact floating-point equality.
  OracleAnswer exact_compare(const Point& x, const Point& y);

  /// Truthful with probability p, negated otherwise; a tie stays 0.
  OracleAnswer noisy_compare(const Point& x, const Point& y);

  std::int64_t query_count() const override { return queries_; }
  void reset_count() { queries_ = 0; }
  Eigen::Index dim() const override { return dim_; }
  const std::optional<NoiseSpec>& noise() const { return noise_; }

 private:
  OracleAnswer truth(const Point& x, const Point& y);

  std::function<double(const Point&)> eval_f_;
  Eigen::Index dim_;
  std::optional<NoiseSpec> noise_;
  Rng noise_rng_;
  std::int64_t queries_ = 0;
};

}  // namespace cbo
