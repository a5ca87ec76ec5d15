#include <gtest/gtest.h>

#include <cmath>

#include "amm/svd.hpp"
#include "oracles.hpp"

using namespace amm;
using amm::testing::for_cases;
using amm::testing::rel_diff;

namespace {

double orthonormality_defect(const RealMatrix& q) {
  const RealMatrix g = matmul_adjoint_left(q, q);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

RealMatrix outer(const RealMatrix& u, const RealMatrix& v) { return matmul_naive(u, transpose(v)); }

}  // namespace

TEST(QR, SingleColumnByHand) {
  const QRFactors f = qr_decompose(RealMatrix{{3}, {4}});
  EXPECT_NEAR(std::abs(f.R(0, 0)), 5.0, 1e-15);
  const double s = f.R(0, 0) > 0 ? 1.0 : -1.0;
  EXPECT_NEAR(f.Q(0, 0), 0.6 * s, 1e-15);
  EXPECT_NEAR(f.Q(1, 0), 0.8 * s, 1e-15);
}

TEST(QR, OrthonormalInputGivesSignedIdentityR) {
  const RealMatrix y{{1, 0}, {0, 1}, {0, 0}};
  const QRFactors f = qr_decompose(y);
  EXPECT_NEAR(std::abs(f.R(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(f.R(1, 1)), 1.0, 1e-15);
  EXPECT_NEAR(f.R(0, 1), 0.0, 1e-15);
  for (std::size_t j = 0; j < 2; ++j) {
    const double s = f.R(j, j) > 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(f.Q(i, j) * s, y(i, j), 1e-15);
  }
}

TEST(QR, ReconstructionProperty) {
  for_cases(25, 21, [](Rng& rng, std::size_t) {
    const std::size_t k = 1 + rng.below(10);
    const std::size_t m = k + rng.below(20);
    const RealMatrix y = amm::testing::random_normal(m, k, rng);
    const QRFactors f = qr_decompose(y);
    EXPECT_LT(rel_diff(matmul_naive(f.Q, f.R), y), 1e-12);
    EXPECT_LT(orthonormality_defect(f.Q), 1e-12);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(f.R(i, j), 0.0);
  });
  EXPECT_THROW(qr_decompose(RealMatrix(2, 3)), dimension_error);
}

TEST(QR, RankDeficientInputStaysOrthonormal) {
  RealMatrix y(6, 3);
  for (std::size_t i = 0; i < 6; ++i) y(i, 0) = y(i, 2) = double(i + 1);  // col 1 zero, col 2 = col 0
  const QRFactors f = qr_decompose(y);
  EXPECT_LT(orthonormality_defect(f.Q), 1e-12);
  EXPECT_LT(rel_diff(matmul_naive(f.Q, f.R), y), 1e-12);
}

TEST(RandomizedSvd, RankFormula) {
  EXPECT_EQ(rsvd_rank(1.0, 64), 7u);   // floor(log2 64) + 1
  EXPECT_EQ(rsvd_rank(2.0, 64), 13u);
  EXPECT_EQ(rsvd_rank(1.0, 700), 10u);
  EXPECT_EQ(rsvd_rank(100.0, 64), 64u);
  EXPECT_EQ(rsvd_rank(1.0, 1), 1u);
  EXPECT_EQ(components_for(1.0, 700), 10u);  // ceil(9.45)
  EXPECT_EQ(components_for(1.0, 512), 9u);
  EXPECT_EQ(components_for(5.0, 128), 35u);
  EXPECT_EQ(components_for(60.0, 700), 568u);
  EXPECT_EQ(components_for(1.0, 100, 10.0), 2u);
  EXPECT_THROW(rsvd_rank(0.0, 10), std::invalid_argument);
}

TEST(RandomizedSvd, RankOneCapturedExactly) {
  Rng rng(22);
  const RealMatrix u = amm::testing::random_normal(64, 1, rng);
  const RealMatrix v = amm::testing::random_normal(64, 1, rng);
  const TruncatedSVD d = randomized_partial_svd(outer(u, v), 1.0, 5);
  ASSERT_EQ(d.rank(), 7u);
  EXPECT_NEAR(d.sigma[0], frobenius(u) * frobenius(v), 1e-8 * d.sigma[0]);
  for (std::size_t i = 1; i < d.rank(); ++i) EXPECT_LT(d.sigma[i], 1e-8);
}

TEST(RandomizedSvd, DiagonalLeadingValuesMatchOracle) {
  // diag(5, 4, 3, 2, 1, 0, ..., 0): the decreasing run stops at zero.
  RealMatrix a(64, 64);
  for (std::size_t i = 0; i < 5; ++i) a(i, i) = 5.0 - double(i);
  const auto oracle = amm::testing::jacobi_singular_values(a);
  const TruncatedSVD d = randomized_partial_svd(a, 2.0, 3);
  ASSERT_EQ(d.rank(), 13u);
  for (std::size_t i = 0; i < d.rank(); ++i) EXPECT_NEAR(d.sigma[i], oracle[i], 1e-6);
}

TEST(RandomizedSvd, NeverExceedsTrueSingularValues) {
  Rng rng(34);
  const RealMatrix a = amm::testing::random_normal(48, 48, rng);
  const auto oracle = amm::testing::jacobi_singular_values(a);
  const TruncatedSVD d = randomized_partial_svd(a, 1.0, 8);
  for (std::size_t i = 0; i < d.rank(); ++i) EXPECT_LE(d.sigma[i], oracle[i] * (1 + 1e-12));
}

TEST(RandomizedSvd, ZeroMatrix) {
  const TruncatedSVD d = randomized_partial_svd(RealMatrix(10, 10), 1.0, 1);
  for (double s : d.sigma) EXPECT_EQ(s, 0.0);
  EXPECT_EQ(svd_residual_norm(d), 0.0);
  EXPECT_THROW(randomized_partial_svd(RealMatrix(), 1.0, 1), std::invalid_argument);
}

TEST(RandomizedSvd, InvariantsProperty) {
  for_cases(15, 23, [](Rng& rng, std::size_t) {
    const std::size_t m = 8 + rng.below(40);
    const std::size_t n = 8 + rng.below(40);
    const RealMatrix a = amm::testing::random_normal(m, n, rng);
    const double s = 0.5 + rng.uniform() * 2.0;
    const TruncatedSVD d = randomized_partial_svd(a, s, rng.next());
    EXPECT_LT(orthonormality_defect(d.U), 1e-10);
    EXPECT_LT(orthonormality_defect(d.V), 1e-10);
    double captured = 0.0;
    for (std::size_t i = 0; i < d.rank(); ++i) {
      EXPECT_GE(d.sigma[i], 0.0);
      if (i) EXPECT_LE(d.sigma[i], d.sigma[i - 1]);
      captured += d.sigma[i] * d.sigma[i];
    }
    EXPECT_LE(captured, d.source_frobenius_sq * (1 + 1e-8));
    EXPECT_LE(svd_residual_norm(d), frobenius(a) * (1 + 1e-12));
  });
}

TEST(RandomizedSvd, ReproducibleBitForBit) {
  Rng rng(24);
  const RealMatrix a = amm::testing::random_normal(40, 40, rng);
  const TruncatedSVD x = randomized_partial_svd(a, 1.5, 77);
  const TruncatedSVD y = randomized_partial_svd(a, 1.5, 77);
  EXPECT_EQ(x.U, y.U);
  EXPECT_EQ(x.V, y.V);
  EXPECT_EQ(x.sigma, y.sigma);
  const TruncatedSVD z = randomized_partial_svd(a, 1.5, 78);
  EXPECT_NE(x.U, z.U);
}

TEST(RandomizedSvd, FullRankCaptureHasZeroResidual) {
  Rng rng(25);
  const RealMatrix a = amm::testing::random_normal(12, 12, rng);
  const TruncatedSVD d = randomized_partial_svd_rank(a, 12, 1);
  EXPECT_LT(svd_residual_norm(d), 1e-6 * frobenius(a));
  EXPECT_LT(rel_diff(svd_materialize(d), a), 1e-12);
}

TEST(RandomizedSvd, ResidualByHand) {
  TruncatedSVD d;
  d.sigma = {4.0};
  d.source_frobenius_sq = 25.0;  // diag(3, 4)
  EXPECT_DOUBLE_EQ(svd_residual_norm(d), 3.0);
  d.sigma = {5.0 + 1e-12};
  EXPECT_EQ(svd_residual_norm(d), 0.0);
}

TEST(RandomizedSvd, PowerIterationsImproveCapture) {
  Rng rng(26);
  const RealMatrix a = amm::testing::random_normal(60, 60, rng);
  const TruncatedSVD d0 = randomized_partial_svd_rank(a, 10, 4, 0);
  const TruncatedSVD d2 = randomized_partial_svd_rank(a, 10, 4, 2);
  EXPECT_LE(svd_residual_norm(d2), svd_residual_norm(d0) + 1e-12);
}

TEST(DenseSvd, MatchesJacobiOracle) {
  Rng rng(27);
  const RealMatrix a = amm::testing::random_normal(30, 30, rng);
  const auto got = dense_singular_values(a);
  const auto ref = amm::testing::jacobi_singular_values(a);
  ASSERT_EQ(got.size(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(got[i], ref[i], 1e-10 * ref[0]);
}

TEST(SvdMultiply, RankOneAIsExactAtFirstOrder) {
  Rng rng(28);
  const RealMatrix a = outer(amm::testing::random_normal(32, 1, rng),
                             amm::testing::random_normal(32, 1, rng));
  const RealMatrix b = amm::testing::random_normal(32, 32, rng);
  const auto [m, rep] = svd_first_order_multiply(a, b, 1.0, Order::first, 9);
  EXPECT_LT(relative_error(m, matmul_naive(a, b)), 1e-8);
  EXPECT_LT(rep.norm_dA, 1e-6 * rep.norm_A);
}

TEST(SvdMultiply, ExactRankBIsExactAtFirstOrder) {
  Rng rng(29);
  const RealMatrix a = amm::testing::random_normal(32, 32, rng);
  const RealMatrix b = matmul_naive(amm::testing::random_normal(32, 3, rng),
                                    amm::testing::random_normal(3, 32, rng));
  const auto [m, rep] = svd_first_order_multiply(a, b, 1.0, Order::first, 10);
  EXPECT_LT(relative_error(m, matmul_naive(a, b)), 1e-8);
}

TEST(SvdMultiply, FirstOrderResidualIdentityProperty) {
  for_cases(12, 30, [](Rng& rng, std::size_t c) {
    const std::size_t n = 32 + rng.below(97);
    const RealMatrix a = amm::testing::random_normal(n, n, rng);
    const RealMatrix b = amm::testing::random_normal(n, n, rng);
    const std::uint64_t seed = 100 + c;
    const std::size_t k = 1 + rng.below(n / 4);
    const auto [m, rep] = svd_multiply_rank(a, b, k, Order::first, seed);
    RealMatrix da = a;
    da -= svd_materialize(randomized_partial_svd_rank(a, k, seed));
    RealMatrix db = b;
    db -= svd_materialize(randomized_partial_svd_rank(b, k, seed + 1));
    RealMatrix lhs = matmul_naive(a, b);
    lhs -= m;
    EXPECT_LT(rel_diff(lhs, matmul_naive(da, db)), 1e-8) << "n=" << n << " k=" << k;
    EXPECT_NEAR(rep.norm_dA, frobenius(da), 1e-6 * frobenius(a));
  });
}

TEST(SvdMultiply, ZerothOrderEqualsProductOfTruncations) {
  Rng rng(31);
  const RealMatrix a = amm::testing::random_normal(40, 40, rng);
  const RealMatrix b = amm::testing::random_normal(40, 40, rng);
  const auto [m, rep] = svd_multiply_rank(a, b, 6, Order::zeroth, 3);
  const RealMatrix ak = svd_materialize(randomized_partial_svd_rank(a, 6, 3));
  const RealMatrix bk = svd_materialize(randomized_partial_svd_rank(b, 6, 4));
  EXPECT_LT(rel_diff(m, matmul_naive(ak, bk)), 1e-10);
  EXPECT_EQ(rep.order, Order::zeroth);
}

TEST(SvdMultiply, ErrorDecreasesWithRankOnAverage) {
  Rng rng(32);
  const std::size_t n = 64;
  RealMatrix a(n, n), b(n, n);
  // Decaying spectra so that truncation matters.
  const RealMatrix qa = amm::testing::random_normal(n, n, rng);
  const RealMatrix qb = amm::testing::random_normal(n, n, rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = qa(i, j) * std::exp(-0.1 * double(j));
      b(i, j) = qb(i, j) * std::exp(-0.1 * double(i));
    }
  const RealMatrix ref = matmul_naive(a, b);
  double prev = 1e300;
  for (std::size_t k : {2u, 6u, 12u, 24u}) {
    double mean = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed)
      mean += relative_error(svd_multiply_rank(a, b, k, Order::first, seed).first, ref);
    mean /= 10.0;
    EXPECT_LT(mean, prev) << "k=" << k;
    prev = mean;
  }
}

TEST(SvdMultiply, ReportCarriesEstimates) {
  Rng rng(33);
  const RealMatrix a = amm::testing::random_normal(50, 50, rng);
  const RealMatrix b = amm::testing::random_normal(50, 50, rng);
  const auto [m, rep] = svd_first_order_multiply(a, b, 1.0, Order::first, 1);
  EXPECT_EQ(rep.method, Method::svd);
  ASSERT_TRUE(rep.apriori_estimate.has_value());
  ASSERT_TRUE(rep.posterior_estimate.has_value());
  EXPECT_NEAR(*rep.apriori_estimate, rep.norm_dA * rep.norm_dB / (rep.norm_A * rep.norm_B), 1e-15);
  EXPECT_NEAR(*rep.posterior_estimate, rep.norm_dA * rep.norm_dB / (std::sqrt(50.0) * rep.norm_M),
              1e-15);
  EXPECT_THROW(svd_first_order_multiply(a, RealMatrix(3, 3), 1.0, Order::first, 1),
               dimension_error);
}
