#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "amm/errest.hpp"
#include "amm/matrix.hpp"
#include "amm/report.hpp"

namespace amm {

struct QRFactors {
  RealMatrix Q;  // m x k, orthonormal columns
  RealMatrix R;  // k x k, upper triangular
};

/// Thin Householder QR of an m x k matrix, m >= k. Throws dimension_error
/// otherwise. Zero columns leave the corresponding reflector out.
QRFactors qr_decompose(const RealMatrix& y);

/// A ~ U diag(sigma) V^T with k retained triplets.
struct TruncatedSVD {
  RealMatrix U;  // m x k
  std::vector<double> sigma;
  RealMatrix V;  // n x k
  double source_frobenius_sq = 0.0;

  std::size_t rank() const noexcept { return sigma.size(); }
};

/// min(floor(s * floor(log2 n)) + 1, n): the rank used by the randomized SVD.
std::size_t rsvd_rank(double s, std::size_t n);

/// ceil(s * log_base(n)) clamped to [1, n]: the component budget of a sweep.
std::size_t components_for(double s, std::size_t n, double log_base = 2.0);

/// Randomized partial SVD with rank rsvd_rank(s, n) where n = A.cols().
/// The Gaussian test matrix comes from derive_stream(seed, "rsvd", n).
/// `power_iterations` > 0 re-orthonormalizes (A A^T)^q A phi; 0 is the plain
/// range finder.
TruncatedSVD randomized_partial_svd(const RealMatrix& a, double s, std::uint64_t seed,
                                    std::size_t power_iterations = 0);

/// Same with an explicit rank k (clamped to min(rows, cols)).
TruncatedSVD randomized_partial_svd_rank(const RealMatrix& a, std::size_t k, std::uint64_t seed,
                                         std::size_t power_iterations = 0);

/// sqrt(max(0, ||A||_F^2 - sum sigma_i^2)).
double svd_residual_norm(const TruncatedSVD& d) noexcept;

/// U diag(sigma) V^T as a dense matrix.
RealMatrix svd_materialize(const TruncatedSVD& d);

/// All singular values of `a`, nonincreasing (dense; meant for n <= ~1024).
std::vector<double> dense_singular_values(const RealMatrix& a);

struct SvdMultiplyOptions {
  std::size_t power_iterations = 0;
  /// Defaults to ErrorModel::mean_zero(n).
  std::optional<ErrorModel> error_model;
};

/// Zeroth or first order product from truncated SVDs of A and B with k
/// components each. A is decomposed with `seed`, B with `seed + 1`.
///   zeroth: (U_A S_A) ((V_A^T U_B) S_B) V_B^T
///   first:  U_A S_A (V_A^T B) + dA U_B S_B V_B^T,  dA = A - U_A S_A V_A^T
std::pair<RealMatrix, ApproxReport> svd_multiply_rank(const RealMatrix& a, const RealMatrix& b,
                                                      std::size_t k, Order order,
                                                      std::uint64_t seed,
                                                      const SvdMultiplyOptions& opts = {});

/// svd_multiply_rank with k = rsvd_rank(s, A.cols()).
std::pair<RealMatrix, ApproxReport> svd_first_order_multiply(const RealMatrix& a,
                                                             const RealMatrix& b, double s,
                                                             Order order, std::uint64_t seed,
                                                             const SvdMultiplyOptions& opts = {});

}  // namespace amm
