#include "cbo/compare_utils.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace cbo {
namespace {

void check_candidates(std::span<const Point> items) {
  if (items.empty()) throw std::invalid_argument("candidate list is empty");
  for (const Point& p : items)
    if (p.size() != items.front().size())
      throw std::invalid_argument("candidate list mixes dimensions");
}

}  // namespace

std::size_t comp_min_index(ComparisonOracle& oracle, std::span<const Point> items, Rng& rng) {
  check_candidates(items);
  std::size_t best = 0;
  for (std::size_t k = 1; k < items.size(); ++k) {
    switch (oracle.compare(items[best], items[k])) {
      case OracleAnswer::kFirstBetter:
        break;
      case OracleAnswer::kSecondBetter:
        best = k;
        break;
      case OracleAnswer::kTie:
        if (rng() >> 63) best = k;
        break;
    }
  }
  return best;
}

Point comp_min(ComparisonOracle& oracle, std::span<const Point> items, Rng& rng) {
  return items[comp_min_index(oracle, items, rng)];
}

std::vector<std::size_t> comp_sort_order(ComparisonOracle& oracle, std::span<const Point> items) {
  check_candidates(items);
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t m = items.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j + 1 < m - i; ++j) {
      // Swap only on a strict answer so equal elements keep their order.
      if (oracle.compare(items[order[j + 1]], items[order[j]]) == OracleAnswer::kFirstBetter)
        std::swap(order[j], order[j + 1]);
    }
  }
  return order;
}

std::vector<Point> comp_sort(ComparisonOracle& oracle, std::span<const Point> items) {
  std::vector<Point> sorted;
  sorted.reserve(items.size());
  for (std::size_t i : comp_sort_order(oracle, items)) sorted.push_back(items[i]);
  return sorted;
}

}  // namespace cbo
