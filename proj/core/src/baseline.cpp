#include "amm/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "amm/random.hpp"

namespace amm {

std::vector<double> outer_product_probabilities(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw dimension_error("outer products: inner dimensions differ");
  const std::size_t n = a.cols();
  std::vector<double> col_sq(n, 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t k = 0; k < n; ++k) col_sq[k] += r[k] * r[k];
  }
  std::vector<double> p(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double row_sq = 0.0;
    for (double v : b.row(k)) row_sq += v * v;
    p[k] = std::sqrt(col_sq[k]) * std::sqrt(row_sq);
    total += p[k];
  }
  if (!(total > 0.0))
    throw std::domain_error("outer products: all column/row norm products are zero");
  for (double& v : p) v /= total;
  return p;
}

std::pair<RealMatrix, ApproxReport> randomized_outer_product_multiply(const RealMatrix& a,
                                                                      const RealMatrix& b,
                                                                      std::size_t c,
                                                                      std::uint64_t seed) {
  if (c == 0) throw std::invalid_argument("randomized_outer_product_multiply: c must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> p = outer_product_probabilities(a, b);
  const std::size_t n = p.size();
  const double p_max = *std::max_element(p.begin(), p.end());

  Rng rng(derive_stream(seed, "lowrank", n));
  RealMatrix m(a.rows(), b.cols());
  const std::size_t cols = b.cols();
  for (std::size_t accepted = 0; accepted < c;) {
    const std::size_t k = rng.below(n);
    const double u = rng.uniform();
    if (!(u * p_max < p[k])) continue;
    ++accepted;
    const double w = 1.0 / (static_cast<double>(c) * p[k]);
    const double* bk = b.data() + k * cols;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const double aik = a(i, k) * w;
      if (aik == 0.0) continue;
      double* mi = m.data() + i * cols;
      for (std::size_t j = 0; j < cols; ++j) mi[j] += aik * bk[j];
    }
  }

  ApproxReport r;
  r.method = Method::lowrank;
  r.k = c;
  r.norm_A = frobenius(a);
  r.norm_B = frobenius(b);
  r.norm_M = frobenius(m);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(m), r};
}

}  // namespace amm
