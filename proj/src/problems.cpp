#include "cbo/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cbo {
namespace {

constexpr std::uint64_t kSuiteSeed = 0x5EEDC0DE2022ULL;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Problems without a classical start use a standard Gaussian point that only
// depends on the problem name, so every run set sees the same x0.
Point gaussian_start(std::string_view name, Eigen::Index n) {
  Rng rng(derive_seed(kSuiteSeed, {fnv1a(name)}));
  std::normal_distribution<double> normal(0.0, 1.0);
  Point x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = normal(rng);
  return x;
}

void check_dim(const Problem& p, const Point& x) {
  if (x.size() != p.dim)
    throw std::invalid_argument(p.name + ": expected dimension " + std::to_string(p.dim) +
                                ", got " + std::to_string(x.size()));
}

// Indices of the k largest x_i^2, in descending order of x_i^2; ties go to the
// lower index.
std::vector<Eigen::Index> top_k_by_square(const Point& x, Eigen::Index k) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(x.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  const auto kk = static_cast<std::ptrdiff_t>(std::min<Eigen::Index>(k, x.size()));
  std::partial_sort(idx.begin(), idx.begin() + kk, idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double sa = x[a] * x[a];
    const double sb = x[b] * x[b];
    return sa > sb || (sa == sb && a < b);
  });
  idx.resize(static_cast<std::size_t>(kk));
  return idx;
}

// Hilbert quadratic 0.5 x^T (H + d I) x with H_ij = 1 / (i + j - 1).
Problem hilbert_quadratic(std::string name, Eigen::Index n, double diag_shift) {
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = 1.0 / static_cast<double>(i + j + 1);
  a.diagonal().array() += diag_shift;

  Problem p;
  p.name = std::move(name);
  p.dim = n;
  p.eval_f = [a](const Point& x) { return 0.5 * x.dot(a * x); };
  p.eval_grad = [a](const Point& x) -> Point { return a * x; };
  p.x0 = Point::Constant(n, -3.0);
  p.f_star = 0.0;
  return p;
}

// Coefficients of Toint's chained Rosenbrock (CHNROSNB), one per coordinate.
constexpr std::array<double, 50> kChainAlpha = {
    1.25, 1.40, 2.40, 1.40, 1.75, 1.20, 2.25, 1.20, 1.00, 1.10, 1.50, 1.60, 1.25,
    1.25, 1.20, 1.20, 1.40, 0.50, 0.50, 1.25, 1.80, 0.75, 1.25, 1.40, 1.60, 2.00,
    1.00, 1.60, 1.25, 2.75, 1.25, 1.25, 1.25, 3.00, 1.50, 2.00, 1.25, 1.40, 1.80,
    1.50, 2.20, 1.40, 1.50, 1.25, 2.00, 1.50, 1.25, 1.40, 0.60, 1.50};

}  // namespace

double Problem::f(const Point& x) const {
  check_dim(*this, x);
  return eval_f(x);
}

Point Problem::grad(const Point& x) const {
  check_dim(*this, x);
  return eval_grad(x);
}

Problem sparse_quadratic(Eigen::Index n, Eigen::Index k) {
  if (k < 1 || k > n) throw std::invalid_argument("sparse_quadratic: need 1 <= k <= n");
  Problem p;
  p.name = "sparse_quadratic";
  p.dim = n;
  p.eval_f = [k](const Point& x) { return x.head(k).squaredNorm(); };
  p.eval_grad = [k, n](const Point& x) -> Point {
    Point g = Point::Zero(n);
    g.head(k) = 2.0 * x.head(k);
    return g;
  };
  p.x0 = gaussian_start(p.name, n);
  p.f_star = 0.0;
  return p;
}

Problem max_k(Eigen::Index n, Eigen::Index k) {
  if (k < 1 || k > n) throw std::invalid_argument("max_k: need 1 <= k <= n");
  Problem p;
  p.name = "max_k";
  p.dim = n;
  p.eval_f = [k](const Point& x) {
    double s = 0.0;
    for (Eigen::Index i : top_k_by_square(x, k)) s += x[i] * x[i];
    return s;
  };
  // Subgradient at ties: the lowest-index coordinates win.
  p.eval_grad = [k, n](const Point& x) -> Point {
    Point g = Point::Zero(n);
    for (Eigen::Index i : top_k_by_square(x, k)) g[i] = 2.0 * x[i];
    return g;
  };
  p.x0 = gaussian_start(p.name, n);
  p.f_star = 0.0;
  return p;
}

Problem non_sparse_quadratic(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("non_sparse_quadratic: need n >= 1");
  Problem p;
  p.name = "non_sparse_quadratic";
  p.dim = n;
  p.eval_f = [](const Point& x) { return x.squaredNorm(); };
  p.eval_grad = [](const Point& x) -> Point { return 2.0 * x; };
  p.x0 = gaussian_start(p.name, n);
  p.f_star = 0.0;
  return p;
}

Problem rosenbrock() {
  Problem p;
  p.name = "ROSENBR";
  p.dim = 2;
  p.eval_f = [](const Point& x) {
    const double a = x[1] - x[0] * x[0];
    const double b = 1.0 - x[0];
    return 100.0 * a * a + b * b;
  };
  p.eval_grad = [](const Point& x) -> Point {
    const double a = x[1] - x[0] * x[0];
    Point g(2);
    g[0] = -400.0 * x[0] * a - 2.0 * (1.0 - x[0]);
    g[1] = 200.0 * a;
    return g;
  };
  p.x0 = Point(2);
  p.x0 << -1.2, 1.0;
  p.f_star = 0.0;
  return p;
}

Problem hilbert_a() { return hilbert_quadratic("HILBERTA", 2, 0.0); }

Problem hilbert_b() { return hilbert_quadratic("HILBERTB", 10, 5.0); }

Problem watson() {
  static constexpr Eigen::Index n = 12;
  constexpr int m = 29;

  // Residuals and their Jacobian rows share most of the work.
  auto residuals = [](const Point& x, Eigen::MatrixXd* jac) {
    Point r(m + 2);
    if (jac) jac->setZero(m + 2, n);
    for (int i = 0; i < m; ++i) {
      const double t = static_cast<double>(i + 1) / 29.0;
      double s1 = 0.0;  // sum_{j>=2} (j-1) x_j t^(j-2)
      double s2 = 0.0;  // sum_{j>=1} x_j t^(j-1)
      double tp = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j > 0) s1 += static_cast<double>(j) * x[j] * (tp / t);
        s2 += x[j] * tp;
        tp *= t;
      }
      r[i] = s1 - s2 * s2 - 1.0;
      if (jac) {
        tp = 1.0;
        for (Eigen::Index j = 0; j < n; ++j) {
          double d = -2.0 * s2 * tp;
          if (j > 0) d += static_cast<double>(j) * (tp / t);
          (*jac)(i, j) = d;
          tp *= t;
        }
      }
    }
    r[m] = x[0];
    r[m + 1] = x[1] - x[0] * x[0] - 1.0;
    if (jac) {
      (*jac)(m, 0) = 1.0;
      (*jac)(m + 1, 0) = -2.0 * x[0];
      (*jac)(m + 1, 1) = 1.0;
    }
    return r;
  };

  Problem p;
  p.name = "WATSON";
  p.dim = n;
  p.eval_f = [residuals](const Point& x) { return residuals(x, nullptr).squaredNorm(); };
  p.eval_grad = [residuals](const Point& x) -> Point {
    Eigen::MatrixXd jac;
    const Point r = residuals(x, &jac);
    return 2.0 * jac.transpose() * r;
  };
  p.x0 = Point::Zero(n);
  p.f_star = 4.72238e-10;
  return p;
}

Problem chained_rosenbrock() {
  static constexpr Eigen::Index n = 50;
  Problem p;
  p.name = "CHNROSNB";
  p.dim = n;
  p.eval_f = [](const Point& x) {
    double s = 0.0;
    for (Eigen::Index i = 1; i < n; ++i) {
      const double a = kChainAlpha[static_cast<std::size_t>(i)];
      const double u = x[i - 1] - x[i] * x[i];
      const double v = x[i] - 1.0;
      s += 16.0 * a * a * u * u + v * v;
    }
    return s;
  };
  p.eval_grad = [](const Point& x) -> Point {
    Point g = Point::Zero(n);
    for (Eigen::Index i = 1; i < n; ++i) {
      const double a = kChainAlpha[static_cast<std::size_t>(i)];
      const double u = x[i - 1] - x[i] * x[i];
      g[i - 1] += 32.0 * a * a * u;
      g[i] += -64.0 * a * a * u * x[i] + 2.0 * (x[i] - 1.0);
    }
    return g;
  };
  p.x0 = Point::Constant(n, -1.0);
  p.f_star = 0.0;
  return p;
}

Problem qing() {
  static constexpr Eigen::Index n = 100;
  Problem p;
  p.name = "QING";
  p.dim = n;
  p.eval_f = [](const Point& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = x[i] * x[i] - static_cast<double>(i + 1);
      s += d * d;
    }
    return s;
  };
  p.eval_grad = [](const Point& x) -> Point {
    Point g(n);
    for (Eigen::Index i = 0; i < n; ++i)
      g[i] = 4.0 * x[i] * (x[i] * x[i] - static_cast<double>(i + 1));
    return g;
  };
  p.x0 = Point::Ones(n);
  p.f_star = 0.0;
  return p;
}

Problem stretched_v() {
  static constexpr Eigen::Index n = 10;
  Problem p;
  p.name = "STRTCHDV";
  p.dim = n;
  p.eval_f = [](const Point& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double t = x[i] * x[i] + x[i + 1] * x[i + 1];
      const double w = std::sin(50.0 * std::pow(t, 0.1)) + 1.0;
      s += std::pow(t, 0.25) * w * w;
    }
    return s;
  };
  // Not differentiable where a pair vanishes; the subgradient 0 is used there.
  p.eval_grad = [](const Point& x) -> Point {
    Point g = Point::Zero(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      const double t = x[i] * x[i] + x[i + 1] * x[i + 1];
      if (t == 0.0) continue;
      const double arg = 50.0 * std::pow(t, 0.1);
      const double w = std::sin(arg) + 1.0;
      const double dt = 0.25 * std::pow(t, -0.75) * w * w +
                        std::pow(t, 0.25) * 2.0 * w * std::cos(arg) * 5.0 * std::pow(t, -0.9);
      g[i] += dt * 2.0 * x[i];
      g[i + 1] += dt * 2.0 * x[i + 1];
    }
    return g;
  };
  p.x0 = gaussian_start(p.name, n);
  p.f_star = 0.0;
  return p;
}

Problem trigon1() {
  static constexpr Eigen::Index n = 10;
  auto residuals = [](const Point& x) {
    const double base = static_cast<double>(n) - x.array().cos().sum();
    Point r(n);
    for (Eigen::Index i = 0; i < n; ++i)
      r[i] = base + static_cast<double>(i + 1) * (1.0 - std::cos(x[i]) - std::sin(x[i]));
    return r;
  };
  Problem p;
  p.name = "TRIGON1";
  p.dim = n;
  p.eval_f = [residuals](const Point& x) { return residuals(x).squaredNorm(); };
  p.eval_grad = [residuals](const Point& x) -> Point {
    const Point r = residuals(x);
    const double rsum = r.sum();
    Point g(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double own = static_cast<double>(j + 1) * (std::sin(x[j]) - std::cos(x[j]));
      g[j] = 2.0 * (rsum * std::sin(x[j]) + r[j] * own);
    }
    return g;
  };
  p.x0 = gaussian_start(p.name, n);
  p.f_star = 0.0;
  return p;
}

std::vector<Problem> builtin_suite() {
  return {rosenbrock(),  hilbert_a(),        hilbert_b(), watson(),
          chained_rosenbrock(), qing(),      stretched_v(), trigon1(),
          sparse_quadratic(), max_k(),       non_sparse_quadratic()};
}

std::optional<Problem> find_builtin(std::string_view name) {
  for (auto& p : builtin_suite())
    if (p.name == name) return std::move(p);
  return std::nullopt;
}

}  // namespace cbo
