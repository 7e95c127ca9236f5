#include "cbo/sampling.hpp"

#include <cmath>

namespace cbo {

std::string_view to_string(DirectionDistribution d) {
  switch (d) {
    case DirectionDistribution::kCanonicalBasis: return "canonical";
    case DirectionDistribution::kGaussian: return "gaussian";
    case DirectionDistribution::kUniformSphere: return "sphere";
    case DirectionDistribution::kRademacher: return "rademacher";
  }
  return "?";
}

DirectionDistribution parse_distribution(std::string_view name) {
  if (name == "canonical") return DirectionDistribution::kCanonicalBasis;
  if (name == "gaussian") return DirectionDistribution::kGaussian;
  if (name == "sphere") return DirectionDistribution::kUniformSphere;
  if (name == "rademacher") return DirectionDistribution::kRademacher;
  throw ConfigError("unknown direction distribution '" + std::string(name) +
                    "' (expected canonical, gaussian, sphere or rademacher)");
}

Eigen::MatrixXd sample_directions(DirectionDistribution dist, Eigen::Index count, Eigen::Index dim,
                                  Rng& rng) {
  if (count < 1 || dim < 1)
    throw std::invalid_argument("sample_directions: count and dim must be positive");

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(count, dim);
  switch (dist) {
    case DirectionDistribution::kCanonicalBasis: {
      std::uniform_int_distribution<Eigen::Index> pick(0, dim - 1);
      for (Eigen::Index i = 0; i < count; ++i) s(i, pick(rng)) = 1.0;
      break;
    }
    case DirectionDistribution::kGaussian:
    case DirectionDistribution::kUniformSphere: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (Eigen::Index i = 0; i < count; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) s(i, j) = normal(rng);
        if (dist == DirectionDistribution::kUniformSphere) s.row(i) /= s.row(i).norm();
      }
      break;
    }
    case DirectionDistribution::kRademacher: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
      for (Eigen::Index i = 0; i < count; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) s(i, j) = (rng() >> 63) ? scale : -scale;
      break;
    }
  }
  return s;
}

Point sample_direction(DirectionDistribution dist, Eigen::Index dim, Rng& rng) {
  return sample_directions(dist, 1, dim, rng).row(0).transpose();
}

}  // namespace cbo
