#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbo/types.hpp"

namespace cbo {

/// A test objective together with everything the harness needs to score a run.
///
/// Algorithms never see a Problem directly; they only get a comparison oracle
/// built from one. The gradient exists for the harness-side success criterion.
struct Problem {
  std::string name;
  Eigen::Index dim = 0;
  std::function<double(const Point&)> eval_f;
  std::function<Point(const Point&)> eval_grad;
  Point x0;
  std::optional<double> f_star;  // nullopt: optimum not known in closed form

  /// Evaluates f after checking the dimension.
  double f(const Point& x) const;
  Point grad(const Point& x) const;
};

// Toy problems. Defaults are the fixed parameters used in the benchmark figures.
Problem sparse_quadratic(Eigen::Index n = 200, Eigen::Index k = 20);
Problem max_k(Eigen::Index n = 200, Eigen::Index k = 20);
Problem non_sparse_quadratic(Eigen::Index n = 200);

// Native re-implementations of a subset of the CUTEst unconstrained set.
Problem rosenbrock();         // ROSENBR, n = 2
Problem hilbert_a();          // HILBERTA, n = 2
Problem hilbert_b();          // HILBERTB, n = 10
Problem watson();             // WATSON, n = 12
Problem chained_rosenbrock(); // CHNROSNB, n = 50
Problem qing();               // QING, n = 100
Problem stretched_v();        // STRTCHDV, n = 10
Problem trigon1();            // TRIGON1, n = 10

/// Every native problem in a stable order: the CUTEst subset, then the toys.
std::vector<Problem> builtin_suite();

/// Looks up a native problem by name (exact match); nullopt if unknown.
std::optional<Problem> find_builtin(std::string_view name);

/// Launches `command` through /bin/sh and speaks the newline-delimited JSON
/// problem protocol with it over the child's stdin/stdout.
///
/// The returned Problem keeps the child alive; it is shut down when the last
/// copy of the Problem goes away. Requests are serialized.
Problem connect_remote(const std::string& command,
                       std::chrono::milliseconds handshake_timeout = std::chrono::seconds(30));

}  // namespace cbo
