#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cbo/oracle.hpp"

namespace cbo {

/// Index of the oracle-minimal element of `items`, using exactly size-1 queries.
///
/// A tie answer keeps the incumbent or adopts the challenger with probability
/// 1/2 each, drawn from `rng`. Throws std::invalid_argument on an empty list or
/// mixed dimensions.
std::size_t comp_min_index(ComparisonOracle& oracle, std::span<const Point> items, Rng& rng);

Point comp_min(ComparisonOracle& oracle, std::span<const Point> items, Rng& rng);

/// Stable bubble sort driven by the oracle: returns the permutation that puts
/// `items` in nondecreasing f-order. Uses exactly m(m-1)/2 queries.
std::vector<std::size_t> comp_sort_order(ComparisonOracle& oracle, std::span<const Point> items);

std::vector<Point> comp_sort(ComparisonOracle& oracle, std::span<const Point> items);

}  // namespace cbo
