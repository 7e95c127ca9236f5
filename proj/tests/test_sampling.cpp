#include <catch_amalgamated.hpp>

#include "cbo/sampling.hpp"

using cbo::DirectionDistribution;

TEST_CASE("canonical rows are one-hot") {
  cbo::Rng rng(1);
  const auto s = cbo::sample_directions(DirectionDistribution::kCanonicalBasis, 200, 5, rng);
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    int ones = 0;
    for (Eigen::Index j = 0; j < 5; ++j) {
      REQUIRE((s(i, j) == 0.0 || s(i, j) == 1.0));
      ones += s(i, j) == 1.0;
    }
    REQUIRE(ones == 1);
  }
}

TEST_CASE("rademacher entries are +-1/sqrt(dim)") {
  cbo::Rng rng(2);
  const auto s = cbo::sample_directions(DirectionDistribution::kRademacher, 500, 4, rng);
  int positive = 0;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      REQUIRE(std::abs(s(i, j)) == 0.5);
      positive += s(i, j) > 0;
    }
    REQUIRE(std::abs(s.row(i).norm() - 1.0) < 1e-15);
  }
  CHECK(std::abs(positive / 2000.0 - 0.5) < 0.05);
}

TEST_CASE("sphere rows have unit norm") {
  cbo::Rng rng(3);
  for (Eigen::Index dim : {1, 2, 7, 200}) {
    const auto s = cbo::sample_directions(DirectionDistribution::kUniformSphere, 100, dim, rng);
    for (Eigen::Index i = 0; i < s.rows(); ++i) REQUIRE(std::abs(s.row(i).norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("gaussian coordinates are standard normal") {
  cbo::Rng rng(4);
  const int draws = 100000;
  const auto s = cbo::sample_directions(DirectionDistribution::kGaussian, draws, 50, rng);
  for (Eigen::Index j = 0; j < 50; ++j) {
    const double mean = s.col(j).mean();
    const double var = (s.col(j).array() - mean).square().sum() / (draws - 1);
    REQUIRE(std::abs(mean) <= 0.02);
    REQUIRE(std::abs(var - 1.0) <= 0.05);
  }
}

TEST_CASE("batches are reproducible from the seed and shaped count x dim") {
  for (auto d : {DirectionDistribution::kCanonicalBasis, DirectionDistribution::kGaussian,
                 DirectionDistribution::kUniformSphere, DirectionDistribution::kRademacher}) {
    cbo::Rng a(9), b(9);
    const auto x = cbo::sample_directions(d, 3, 6, a);
    const auto y = cbo::sample_directions(d, 3, 6, b);
    CHECK(x.rows() == 3);
    CHECK(x.cols() == 6);
    CHECK(x == y);
  }
}

TEST_CASE("bad sizes and names are rejected") {
  cbo::Rng rng(0);
  CHECK_THROWS_AS(cbo::sample_directions(DirectionDistribution::kGaussian, 0, 3, rng), std::invalid_argument);
  CHECK_THROWS_AS(cbo::sample_directions(DirectionDistribution::kGaussian, 3, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(cbo::parse_distribution("uniform"), cbo::ConfigError);
  for (auto d : {DirectionDistribution::kCanonicalBasis, DirectionDistribution::kGaussian,
                 DirectionDistribution::kUniformSphere, DirectionDistribution::kRademacher})
    CHECK(cbo::parse_distribution(cbo::to_string(d)) == d);
}
