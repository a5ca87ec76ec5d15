#include <gtest/gtest.h>

#include <cmath>

#include "amm/baseline.hpp"
#include "oracles.hpp"

using namespace amm;

TEST(OuterProduct, IdentityTwoByTwo) {
  const RealMatrix eye = RealMatrix::identity(2);
  RealMatrix mean(2, 2);
  const int seeds = 400;
  for (int s = 0; s < seeds; ++s) {
    const auto [m, rep] = randomized_outer_product_multiply(eye, eye, 1, s);
    // Exactly one of 2 e0 e0^T or 2 e1 e1^T.
    EXPECT_EQ(m(0, 1), 0.0);
    EXPECT_EQ(m(1, 0), 0.0);
    EXPECT_EQ(m(0, 0) + m(1, 1), 2.0);
    EXPECT_TRUE(m(0, 0) == 0.0 || m(0, 0) == 2.0);
    mean += m;
  }
  mean *= 1.0 / seeds;
  EXPECT_NEAR(mean(0, 0), 1.0, 0.15);
  EXPECT_NEAR(mean(1, 1), 1.0, 0.15);
}

TEST(OuterProduct, SingleSupportIsExact) {
  Rng rng(101);
  RealMatrix a(6, 6);
  for (std::size_t i = 0; i < 6; ++i) a(i, 2) = rng.normal();
  const RealMatrix b = amm::testing::random_normal(6, 4, rng);
  const RealMatrix ref = matmul_naive(a, b);
  for (std::size_t c : {1u, 3u, 17u}) {
    const auto [m, rep] = randomized_outer_product_multiply(a, b, c, 5);
    EXPECT_LT(relative_error(m, ref), 1e-14);
    EXPECT_EQ(rep.method, Method::lowrank);
    EXPECT_FALSE(rep.order.has_value());
  }
  const auto p = outer_product_probabilities(a, b);
  EXPECT_EQ(p[2], 1.0);
}

TEST(OuterProduct, ErrorsAndReproducibility) {
  EXPECT_THROW(randomized_outer_product_multiply(RealMatrix(3, 3), RealMatrix::identity(3), 2, 1),
               std::domain_error);
  EXPECT_THROW(randomized_outer_product_multiply(RealMatrix(3, 2), RealMatrix(3, 3), 2, 1),
               dimension_error);
  EXPECT_THROW(randomized_outer_product_multiply(RealMatrix::identity(3), RealMatrix::identity(3), 0, 1),
               std::invalid_argument);
  Rng rng(102);
  const RealMatrix a = amm::testing::random_normal(10, 10, rng);
  const RealMatrix b = amm::testing::random_normal(10, 10, rng);
  EXPECT_EQ(randomized_outer_product_multiply(a, b, 5, 9).first,
            randomized_outer_product_multiply(a, b, 5, 9).first);
}

TEST(OuterProduct, ErrorDecreasesWithSamples) {
  Rng rng(103);
  const RealMatrix a = amm::testing::random_uniform(50, 50, rng);
  const RealMatrix b = amm::testing::random_uniform(50, 50, rng);
  const RealMatrix ref = matmul_naive(a, b);
  double prev = 1e300;
  for (std::size_t c : {10u, 50u, 200u}) {
    double mean = 0.0;
    for (int s = 0; s < 100; ++s)
      mean += relative_error(randomized_outer_product_multiply(a, b, c, s).first, ref);
    mean /= 100;
    EXPECT_LT(mean, prev) << "c=" << c;
    prev = mean;
  }
}

TEST(OuterProduct, ProbabilitiesSumToOne) {
  Rng rng(104);
  const RealMatrix a = amm::testing::random_normal(7, 9, rng);
  const RealMatrix b = amm::testing::random_normal(9, 4, rng);
  double sum = 0.0;
  for (double p : outer_product_probabilities(a, b)) {
    EXPECT_GT(p, 0.0);
    sum += p;
  }
  EXPECT_NEAR(sum, 1.0, 1e-14);
}
