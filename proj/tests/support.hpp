// Shared test helpers. Everything here is computed independently of the
// library code under test (except the problem definitions themselves).
#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "cbo/oracle.hpp"
#include "cbo/problems.hpp"

namespace testing {

using cbo::Point;

inline cbo::Problem make_problem(std::string name, Eigen::Index dim,
                                 std::function<double(const Point&)> f, Point x0) {
  cbo::Problem p;
  p.name = std::move(name);
  p.dim = dim;
  p.eval_f = std::move(f);
  p.eval_grad = [dim](const Point&) { return Point(Point::Zero(dim)); };
  p.x0 = std::move(x0);
  p.f_star = 0.0;
  return p;
}

inline Point vec(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

/// Central differences with step 1e-6 * (1 + |x_i|).
inline Point fd_gradient(const cbo::Problem& p, const Point& x) {
  Point g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * (1.0 + std::abs(x[i]));
    Point a = x, b = x;
    a[i] += h;
    b[i] -= h;
    g[i] = (p.eval_f(a) - p.eval_f(b)) / (2.0 * h);
  }
  return g;
}

/// Exact oracle that logs every query, answering straight from f.
class RecordingOracle final : public cbo::ComparisonOracle {
 public:
  explicit RecordingOracle(std::function<double(const Point&)> f, Eigen::Index dim)
      : f_(std::move(f)), dim_(dim) {}

  cbo::OracleAnswer compare(const Point& x, const Point& y) override {
    pairs.emplace_back(x, y);
    const double fx = f_(x), fy = f_(y);
    if (fx < fy) return cbo::OracleAnswer::kFirstBetter;
    if (fy < fx) return cbo::OracleAnswer::kSecondBetter;
    return cbo::OracleAnswer::kTie;
  }
  std::int64_t query_count() const override { return static_cast<std::int64_t>(pairs.size()); }
  Eigen::Index dim() const override { return dim_; }

  std::vector<std::pair<Point, Point>> pairs;

 private:
  std::function<double(const Point&)> f_;
  Eigen::Index dim_;
};

}  // namespace testing
