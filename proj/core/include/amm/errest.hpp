#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "amm/matrix.hpp"
#include "amm/random.hpp"
#include "amm/report.hpp"

namespace amm {

// A-priori / posterior relative-error estimates ------------------------------
//
// Residues of every decomposition are modelled as mean-zero, so
// E||dA dB||_F ~ ||dA||_F ||dB||_F / sqrt(n). The full product is modelled by
// E||AB||_F ~ c ||A||_F ||B||_F with c depending on the entries of A and B.

enum class ErrorCase { mean_zero, unsigned_entries, custom };

struct ErrorModel {
  ErrorCase kind = ErrorCase::mean_zero;
  double c = 1.0;     // only meaningful for ErrorCase::custom
  std::size_t n = 1;  // inner dimension of the product

  static ErrorModel mean_zero(std::size_t n);
  static ErrorModel unsigned_entries(std::size_t n);
  /// c is the front constant of ||AB||_F / (||A||_F ||B||_F); must lie in (0, 1].
  static ErrorModel custom(double c, std::size_t n);

  /// Front constant for the full product: 1/sqrt(n), 3/4 or c.
  double product_constant() const;
};

/// Dominant term of the expected relative error of a first-order product:
/// (||dA|| ||dB|| / sqrt(n)) / (c_prod ||A|| ||B||). Mean-zero reduces to the
/// product of the two relative truncation errors; unsigned entries give the
/// extra 4 / (3 sqrt(n)).
double apriori_relative_error(double norm_A, double norm_B, double norm_dA, double norm_dB,
                              const ErrorModel& model);

/// ||dA|| ||dB|| / (sqrt(n) ||M||), an upper bound for truncated SVD and an
/// estimate for the other decompositions.
double posterior_relative_error(double norm_dA, double norm_dB, double norm_M, std::size_t n);

/// Fills the a-priori and posterior fields of `r` from its norms. Estimates
/// whose denominators vanish are left unset.
void attach_estimates(ApproxReport& r, std::size_t n, const ErrorModel& model);

/// ||A (B G)||_F^2 / k with G a p x k standard normal matrix: an unbiased
/// estimate of ||AB||_F^2 costing O(k (mn + np)).
double sketch_norm_estimate(const RealMatrix& a, const RealMatrix& b, std::size_t k,
                            std::uint64_t seed);

// Haar moments --------------------------------------------------------------

/// Spectral moments of D1, D2 in ||D1 Q D2||_F^2 with Haar Q.
struct HaarMoments {
  double alpha1 = 0.0;  // sum D1(i)^2
  double alpha2 = 0.0;  // sum D2(i)^2
  double beta1 = 0.0;   // sum D1(i)^4
  double beta2 = 0.0;   // sum D2(i)^4
  std::size_t n = 0;

  static HaarMoments from_spectra(std::span<const double> d1, std::span<const double> d2);
};

struct HaarProductMoments {
  double mean_sq = 0.0;   // E||D1 Q D2||_F^2 = alpha1 alpha2 / n
  double variance = 0.0;  // closed form, clamped at zero
  double raw_variance = 0.0;
  bool variance_clamped = false;  // closed form fell below -1e-12 (relative)
  double mean_norm = 0.0;         // second-order Taylor estimate of E||D1 Q D2||_F
};

/// Throws std::invalid_argument for n < 2.
HaarProductMoments haar_product_moments(const HaarMoments& m);

/// P[ ||D1 Q D2||^2 <= E - t ] <= exp(-(n-2) t^2 / (96 ||D1||_F^4 ||D2||_2^4)),
/// clamped to [0, 1]. `d2_max` is ||D2||_2. Throws for n < 3 or t <= 0.
double concentration_tail_bound(const HaarMoments& m, double d2_max, double t);

/// Exact E||AB||_F^2 for A (m x n), B (n x p) with iid U(0, a) entries:
/// mpn a^4 / 9 + mpn (n - 1) a^4 / 16.
double uniform_product_moment(std::size_t m, std::size_t n, std::size_t p, double a);

// Front constants -----------------------------------------------------------

enum class EntryDistribution { uniform01, rademacher, normal, lognormal, student_t3 };

/// Accepts uniform01, rademacher, normal, lognormal, student-t. Throws
/// std::invalid_argument for anything else.
EntryDistribution parse_distribution(std::string_view tag);
std::string_view to_string(EntryDistribution d) noexcept;

double sample_entry(EntryDistribution d, Rng& rng) noexcept;

struct FrontConstant {
  double c = 0.0;
  double stddev = 0.0;
};

/// Mean and sample standard deviation of ||AB||_F / (||A||_F ||B||_F) over
/// `trials` independent n x n pairs. Throws for trials < 2.
FrontConstant estimate_front_constant(EntryDistribution d, std::size_t n, std::size_t trials,
                                      std::uint64_t seed);

}  // namespace amm
