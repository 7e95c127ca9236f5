#pragma once

#include <string>
#include <string_view>

#include "cbo/types.hpp"

namespace cbo {

enum class DirectionDistribution { kCanonicalBasis, kGaussian, kUniformSphere, kRademacher };

std::string_view to_string(DirectionDistribution d);
/// Accepts "canonical", "gaussian", "sphere", "rademacher". Throws ConfigError otherwise.
DirectionDistribution parse_distribution(std::string_view name);

/// `count` independent directions in R^dim, one per row.
///
///  - CanonicalBasis: one-hot rows, index uniform over 0..dim-1.
///  - Gaussian: iid standard normal entries, not normalized.
///  - UniformSphere: Gaussian row divided by its Euclidean norm.
///  - Rademacher: fair random signs scaled by 1/sqrt(dim).
Eigen::MatrixXd sample_directions(DirectionDistribution dist, Eigen::Index count, Eigen::Index dim,
                                  Rng& rng);

/// Single-row convenience wrapper.
Point sample_direction(DirectionDistribution dist, Eigen::Index dim, Rng& rng);

}  // namespace cbo
