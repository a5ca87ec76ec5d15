#include <gtest/gtest.h>

#include <cmath>

#include "amm/errest.hpp"
#include "amm/genmat.hpp"
#include "oracles.hpp"

using namespace amm;

TEST(Apriori, Examples) {
  const auto mz = ErrorModel::mean_zero(100);
  EXPECT_EQ(apriori_relative_error(1, 1, 0, 0.3, mz), 0.0);
  EXPECT_NEAR(apriori_relative_error(10, 20, 1, 2, mz), 0.01, 1e-15);
  EXPECT_NEAR(apriori_relative_error(10, 20, 1, 2, ErrorModel::unsigned_entries(100)),
              4.0 / 30.0 * 0.01, 1e-15);
  // custom: (1/sqrt(n)) dA dB / (c A B)
  EXPECT_NEAR(apriori_relative_error(10, 20, 1, 2, ErrorModel::custom(0.5, 100)),
              0.1 * 2.0 / (0.5 * 200.0), 1e-15);
  EXPECT_THROW(apriori_relative_error(0, 1, 1, 1, mz), std::domain_error);
  EXPECT_THROW(apriori_relative_error(1, 1, -1, 1, mz), std::invalid_argument);
  EXPECT_THROW(ErrorModel::custom(0.0, 10), std::invalid_argument);
  EXPECT_THROW(ErrorModel::custom(1.5, 10), std::invalid_argument);
  EXPECT_NO_THROW(ErrorModel::custom(1.0, 10));
}

TEST(Posterior, ExamplesAndScaling) {
  EXPECT_NEAR(posterior_relative_error(1, 1, 10, 100), 0.01, 1e-16);
  EXPECT_EQ(posterior_relative_error(0, 1, 10, 100), 0.0);
  EXPECT_THROW(posterior_relative_error(1, 1, 0, 100), std::domain_error);
  amm::testing::for_cases(50, 81, [](Rng& rng, std::size_t) {
    const double da = rng.uniform() * 5, db = rng.uniform() * 5, m = 0.1 + rng.uniform() * 50;
    const std::size_t n = 1 + rng.below(1000);
    EXPECT_EQ(posterior_relative_error(da, db, 2 * m, n), posterior_relative_error(da, db, m, n) / 2);
  });
}

TEST(Sketch, IdentityMeanAndZero) {
  const std::size_t n = 16;
  const RealMatrix eye = RealMatrix::identity(n);
  double mean = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) mean += sketch_norm_estimate(eye, eye, 4, s);
  mean /= 200.0;
  EXPECT_NEAR(mean, double(n), 0.05 * n);
  EXPECT_EQ(sketch_norm_estimate(RealMatrix(n, n), eye, 4, 1), 0.0);
  EXPECT_THROW(sketch_norm_estimate(eye, eye, 0, 1), std::invalid_argument);
  EXPECT_THROW(sketch_norm_estimate(eye, RealMatrix(3, 3), 1, 1), dimension_error);
}

TEST(Sketch, LargeKConcentrates) {
  Rng rng(82);
  const RealMatrix a = amm::testing::random_normal(64, 64, rng);
  const RealMatrix b = amm::testing::random_normal(64, 64, rng);
  const double truth = frobenius_norm_sq(matmul_naive(a, b));
  int ok = 0;
  for (std::uint64_t s = 0; s < 20; ++s)
    ok += std::abs(sketch_norm_estimate(a, b, 512, s) - truth) < 0.1 * truth;
  EXPECT_GE(ok, 19);
}

TEST(Sketch, UnbiasedGrandMean) {
  Rng rng(83);
  const RealMatrix a = amm::testing::random_normal(32, 32, rng);
  const RealMatrix b = amm::testing::random_normal(32, 32, rng);
  const double truth = frobenius_norm_sq(matmul_naive(a, b));
  double mean = 0.0;
  for (std::uint64_t s = 0; s < 1000; ++s) mean += sketch_norm_estimate(a, b, 2, s);
  mean /= 1000.0;
  EXPECT_NEAR(mean, truth, 0.03 * truth);
}

TEST(Haar, IdentitySpectraAndErrors) {
  const std::vector<double> ones(10, 1.0);
  const auto mm = haar_product_moments(HaarMoments::from_spectra(ones, ones));
  EXPECT_DOUBLE_EQ(mm.mean_sq, 10.0);
  // beta1 beta2 = 100, alpha^2 alpha^2 / n = 1000: the closed form is
  // negative here and gets clamped.
  EXPECT_LT(mm.raw_variance, 0.0);
  EXPECT_TRUE(mm.variance_clamped);
  EXPECT_EQ(mm.variance, 0.0);
  EXPECT_THROW(haar_product_moments(HaarMoments::from_spectra(std::vector<double>{1.0},
                                                              std::vector<double>{1.0})),
               std::invalid_argument);
  EXPECT_THROW(HaarMoments::from_spectra(ones, std::vector<double>(3, 1.0)), dimension_error);
}

TEST(Haar, MomentFormulasByHand) {
  const std::vector<double> d1{1.0, 2.0, 3.0};
  const std::vector<double> d2{0.5, 0.5, 2.0};
  const HaarMoments m = HaarMoments::from_spectra(d1, d2);
  EXPECT_DOUBLE_EQ(m.alpha1, 14.0);
  EXPECT_DOUBLE_EQ(m.beta1, 98.0);
  EXPECT_DOUBLE_EQ(m.alpha2, 4.5);
  EXPECT_DOUBLE_EQ(m.beta2, 16.125);
  const auto r = haar_product_moments(m);
  EXPECT_DOUBLE_EQ(r.mean_sq, 14.0 * 4.5 / 3.0);
  const double raw = (98.0 * 16.125 - 14.0 * 14.0 * 4.5 * 4.5 / 3.0) / 12.0;
  EXPECT_DOUBLE_EQ(r.raw_variance, raw);
  const double aa = 63.0, bb = 98.0 * 16.125;
  EXPECT_NEAR(r.mean_norm, std::sqrt(21.0) * (1 + 1.0 / 32.0 - 3 * bb / (32.0 * aa * aa)), 1e-14);
}

TEST(Haar, VarianceNeverNegativeAfterClamp) {
  amm::testing::for_cases(100, 84, [](Rng& rng, std::size_t) {
    const std::size_t n = 2 + rng.below(50);
    std::vector<double> d1(n), d2(n);
    for (auto& v : d1) v = rng.uniform() * 3;
    for (auto& v : d2) v = rng.uniform() * 3;
    const auto r = haar_product_moments(HaarMoments::from_spectra(d1, d2));
    EXPECT_GE(r.variance, 0.0);
    EXPECT_EQ(r.variance_clamped, r.raw_variance < -1e-12 * r.mean_sq * r.mean_sq);
  });
}

TEST(Haar, MonteCarloMeanMatches) {
  // Sample mean of ||D1 Q D2||_F^2 over Haar Q; the mean formula is exact.
  const std::size_t n = 40;
  std::vector<double> d1(n), d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    d1[i] = std::exp(-double(i) / n);
    d2[i] = double(n - i) / n;
  }
  const auto r = haar_product_moments(HaarMoments::from_spectra(d1, d2));
  double mean = 0.0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    const RealMatrix q = generate_haar_orthogonal(n, 1000 + t);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += std::pow(d1[i] * q(i, j) * d2[j], 2);
    mean += s;
  }
  mean /= trials;
  EXPECT_NEAR(mean, r.mean_sq, 0.05 * r.mean_sq);
}

TEST(Tail, ClampAndMonotone) {
  const std::vector<double> ones(50, 1.0);
  const HaarMoments m = HaarMoments::from_spectra(ones, ones);
  EXPECT_NEAR(concentration_tail_bound(m, 1.0, 1e-9), 1.0, 1e-12);
  EXPECT_LT(concentration_tail_bound(m, 1.0, 1e6), 1e-100);
  EXPECT_GE(concentration_tail_bound(m, 1.0, 5.0), concentration_tail_bound(m, 1.0, 10.0));
  EXPECT_THROW(concentration_tail_bound(m, 1.0, 0.0), std::invalid_argument);
  const std::vector<double> two(2, 1.0);
  EXPECT_THROW(concentration_tail_bound(HaarMoments::from_spectra(two, two), 1.0, 1.0),
               std::invalid_argument);
}

TEST(Tail, MonteCarloNeverExceedsBound) {
  // D1 = D2 = I: ||Q||_F^2 = n exactly, so the empirical lower tail is 0.
  const std::size_t n = 50;
  const std::vector<double> ones(n, 1.0);
  const HaarMoments m = HaarMoments::from_spectra(ones, ones);
  const double mean = haar_product_moments(m).mean_sq;
  const double t = 0.2 * mean;
  int below = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    const RealMatrix q = generate_haar_orthogonal(n, 500 + i);
    below += frobenius_norm_sq(q) <= mean - t;
  }
  EXPECT_LE(double(below) / trials, concentration_tail_bound(m, 1.0, t));
}

TEST(Uniform, ClosedForms) {
  EXPECT_DOUBLE_EQ(uniform_product_moment(1, 1, 1, 1.0), 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(uniform_product_moment(1, 1, 1, 2.0), 16.0 / 9.0);
  // ratio to E||A||^2 E||B||^2 = (mn a^2/3)(np a^2/3) tends to 9/16
  const double n = 1e6;
  const double ratio = uniform_product_moment(3, 1000000, 4, 1.0) / ((3 * n / 3.0) * (n * 4 / 3.0));
  EXPECT_NEAR(ratio, 9.0 / 16.0, 1e-5);
  EXPECT_THROW(uniform_product_moment(0, 1, 1, 1.0), std::invalid_argument);
  EXPECT_THROW(uniform_product_moment(1, 1, 1, 0.0), std::invalid_argument);
}

TEST(FrontConstant, DistributionTags) {
  for (const char* tag : {"uniform01", "rademacher", "normal", "lognormal", "student-t"})
    EXPECT_EQ(to_string(parse_distribution(tag)), std::string_view(tag));
  EXPECT_THROW(parse_distribution("cauchy"), std::invalid_argument);
}

TEST(FrontConstant, SmallScaleValues) {
  // Desk-scale version of the n = 500 check (the full one is an acceptance
  // criterion).
  const auto u = estimate_front_constant(EntryDistribution::uniform01, 120, 5, 1);
  EXPECT_NEAR(u.c, 0.75, 0.02);
  const auto z = estimate_front_constant(EntryDistribution::normal, 120, 5, 2);
  EXPECT_NEAR(z.c * std::sqrt(120.0), 1.0, 0.05);
  EXPECT_GT(z.stddev, 0.0);
  EXPECT_THROW(estimate_front_constant(EntryDistribution::normal, 10, 1, 1), std::invalid_argument);
}

TEST(FrontConstant, StudentTSamplerHasHeavyTails) {
  Rng rng(85);
  int big = 0;
  for (int i = 0; i < 100000; ++i) big += std::abs(sample_entry(EntryDistribution::student_t3, rng)) > 5.0;
  // P(|T_3| > 5) ~ 0.0154
  EXPECT_NEAR(big / 100000.0, 0.0154, 0.003);
}

TEST(AttachEstimates, LeavesUnsetWhenDegenerate) {
  ApproxReport r;
  r.norm_A = 0.0;
  r.norm_B = 1.0;
  attach_estimates(r, 10, ErrorModel::mean_zero(10));
  EXPECT_FALSE(r.apriori_estimate);
  EXPECT_FALSE(r.posterior_estimate);
}
