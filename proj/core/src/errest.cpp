#include "amm/errest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace amm {

ErrorModel ErrorModel::mean_zero(std::size_t n) { return {ErrorCase::mean_zero, 1.0, n}; }

ErrorModel ErrorModel::unsigned_entries(std::size_t n) {
  return {ErrorCase::unsigned_entries, 0.75, n};
}

ErrorModel ErrorModel::custom(double c, std::size_t n) {
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("ErrorModel: custom c must lie in (0, 1]");
  return {ErrorCase::custom, c, n};
}

double ErrorModel::product_constant() const {
  if (n == 0) throw std::invalid_argument("ErrorModel: n must be >= 1");
  switch (kind) {
    case ErrorCase::mean_zero: return 1.0 / std::sqrt(static_cast<double>(n));
    case ErrorCase::unsigned_entries: return 0.75;
    case ErrorCase::custom: return c;
  }
  return 1.0;
}

double apriori_relative_error(double norm_A, double norm_B, double norm_dA, double norm_dB,
                              const ErrorModel& model) {
  if (!(norm_A > 0.0) || !(norm_B > 0.0))
    throw std::domain_error("apriori_relative_error: ||A|| and ||B|| must be positive");
  if (norm_dA < 0.0 || norm_dB < 0.0)
    throw std::invalid_argument("apriori_relative_error: residual norms must be >= 0");
  const double residue_constant = 1.0 / std::sqrt(static_cast<double>(model.n));
  return (residue_constant * norm_dA * norm_dB) / (model.product_constant() * norm_A * norm_B);
}

double posterior_relative_error(double norm_dA, double norm_dB, double norm_M, std::size_t n) {
  if (!(norm_M > 0.0)) throw std::domain_error("posterior_relative_error: ||M|| must be positive");
  if (n == 0) throw std::invalid_argument("posterior_relative_error: n must be >= 1");
  return norm_dA * norm_dB / (std::sqrt(static_cast<double>(n)) * norm_M);
}

void attach_estimates(ApproxReport& r, std::size_t n, const ErrorModel& model) {
  if (r.norm_A > 0.0 && r.norm_B > 0.0)
    r.apriori_estimate = apriori_relative_error(r.norm_A, r.norm_B, r.norm_dA, r.norm_dB, model);
  if (r.norm_M > 0.0) r.posterior_estimate = posterior_relative_error(r.norm_dA, r.norm_dB, r.norm_M, n);
}

double sketch_norm_estimate(const RealMatrix& a, const RealMatrix& b, std::size_t k,
                            std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("sketch_norm_estimate: k must be >= 1");
  if (a.cols() != b.rows()) throw dimension_error("sketch_norm_estimate: inner dimensions differ");
  Rng rng(derive_stream(seed, "sketch", k));
  RealMatrix g(b.cols(), k);
  for (double& v : g.values()) v = rng.normal();
  const RealMatrix abg = matmul_naive(a, matmul_naive(b, g));
  return frobenius_norm_sq(abg) / static_cast<double>(k);
}

HaarMoments HaarMoments::from_spectra(std::span<const double> d1, std::span<const double> d2) {
  if (d1.size() != d2.size()) throw dimension_error("HaarMoments: spectra lengths differ");
  HaarMoments m;
  m.n = d1.size();
  for (double d : d1) {
    m.alpha1 += d * d;
    m.beta1 += d * d * d * d;
  }
  for (double d : d2) {
    m.alpha2 += d * d;
    m.beta2 += d * d * d * d;
  }
  return m;
}

HaarProductMoments haar_product_moments(const HaarMoments& m) {
  if (m.n < 2) throw std::invalid_argument("haar_product_moments: n must be >= 2");
  const double n = static_cast<double>(m.n);
  const double aa = m.alpha1 * m.alpha2;
  const double bb = m.beta1 * m.beta2;

  HaarProductMoments out;
  out.mean_sq = aa / n;
  out.raw_variance = (bb - aa * aa / n) / (n * (n + 1.0));
  const double scale = std::max(out.mean_sq * out.mean_sq, 1e-300);
  out.variance_clamped = out.raw_variance < -1e-12 * scale;
  out.variance = std::max(0.0, out.raw_variance);
  if (aa > 0.0) {
    out.mean_norm = std::sqrt(out.mean_sq) *
                    (1.0 + 1.0 / (8.0 * (n + 1.0)) - n * bb / (8.0 * (n + 1.0) * aa * aa));
  }
  return out;
}

double concentration_tail_bound(const HaarMoments& m, double d2_max, double t) {
  if (m.n < 3) throw std::invalid_argument("concentration_tail_bound: n must be >= 3");
  if (!(t > 0.0)) throw std::invalid_argument("concentration_tail_bound: t must be > 0");
  const double d1_fro4 = m.alpha1 * m.alpha1;
  const double d2_spec4 = std::pow(d2_max, 4);
  const double denom = 96.0 * d1_fro4 * d2_spec4;
  if (denom == 0.0) return 0.0;
  const double bound = std::exp(-(static_cast<double>(m.n) - 2.0) * t * t / denom);
  return std::clamp(bound, 0.0, 1.0);
}

double uniform_product_moment(std::size_t m, std::size_t n, std::size_t p, double a) {
  if (m == 0 || n == 0 || p == 0) throw std::invalid_argument("uniform_product_moment: dims must be >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("uniform_product_moment: a must be > 0");
  const double mpn = static_cast<double>(m) * static_cast<double>(p) * static_cast<double>(n);
  const double a4 = a * a * a * a;
  return mpn * a4 / 9.0 + mpn * (static_cast<double>(n) - 1.0) * a4 / 16.0;
}

EntryDistribution parse_distribution(std::string_view tag) {
  if (tag == "uniform01" || tag == "uniform") return EntryDistribution::uniform01;
  if (tag == "rademacher") return EntryDistribution::rademacher;
  if (tag == "normal") return EntryDistribution::normal;
  if (tag == "lognormal") return EntryDistribution::lognormal;
  if (tag == "student-t" || tag == "student-t3") return EntryDistribution::student_t3;
  throw std::invalid_argument("unknown distribution '" + std::string(tag) + "'");
}

std::string_view to_string(EntryDistribution d) noexcept {
  switch (d) {
    case EntryDistribution::uniform01: return "uniform01";
    case EntryDistribution::rademacher: return "rademacher";
    case EntryDistribution::normal: return "normal";
    case EntryDistribution::lognormal: return "lognormal";
    case EntryDistribution::student_t3: return "student-t";
  }
  return "?";
}

double sample_entry(EntryDistribution d, Rng& rng) noexcept {
  switch (d) {
    case EntryDistribution::uniform01: return rng.uniform();
    case EntryDistribution::rademacher: return (rng.next() >> 63) ? 1.0 : -1.0;
    case EntryDistribution::normal: return rng.normal();
    case EntryDistribution::lognormal: return std::exp(rng.normal());
    case EntryDistribution::student_t3: {
      const double z = rng.normal();
      double chi2 = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double g = rng.normal();
        chi2 += g * g;
      }
      return z / std::sqrt(chi2 / 3.0);
    }
  }
  return 0.0;
}

FrontConstant estimate_front_constant(EntryDistribution d, std::size_t n, std::size_t trials,
                                      std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("estimate_front_constant: trials must be >= 2");
  if (n == 0) throw std::invalid_argument("estimate_front_constant: n must be >= 1");
  std::vector<double> ratios;
  ratios.reserve(trials);
  const std::string tag = "front:" + std::string(to_string(d));
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_stream(seed + t, tag, n));
    RealMatrix a(n, n);
    RealMatrix b(n, n);
    for (double& v : a.values()) v = sample_entry(d, rng);
    for (double& v : b.values()) v = sample_entry(d, rng);
    const double num = frobenius(matmul_naive(a, b));
    ratios.push_back(num / (frobenius(a) * frobenius(b)));
  }
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(trials);
  double ss = 0.0;
  for (double r : ratios) ss += (r - mean) * (r - mean);
  return {mean, std::sqrt(ss / static_cast<double>(trials - 1))};
}

}  // namespace amm
