#include "amm/svd.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "amm/random.hpp"

namespace amm {

namespace {

using EigenRowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RealMatrix scale_columns(RealMatrix m, const std::vector<double>& s) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < s.size(); ++j) r[j] *= s[j];
  }
  return m;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

QRFactors qr_decompose(const RealMatrix& y) {
  const std::size_t m = y.rows();
  const std::size_t k = y.cols();
  if (m < k) throw dimension_error("qr_decompose: needs rows >= cols");

  // Work on the transpose so that columns of Y are contiguous.
  RealMatrix yt = transpose(y);
  std::vector<std::vector<double>> reflectors(k);
  std::vector<bool> active(k, false);

  for (std::size_t j = 0; j < k; ++j) {
    auto col = yt.row(j);
    double norm_sq = 0.0;
    for (std::size_t i = j; i < m; ++i) norm_sq += col[i] * col[i];
    const double norm = std::sqrt(norm_sq);
    if (norm == 0.0) continue;

    const double alpha = col[j] > 0.0 ? -norm : norm;
    std::vector<double> v(col.begin() + static_cast<std::ptrdiff_t>(j), col.end());
    v[0] -= alpha;
    double v_sq = 0.0;
    for (double x : v) v_sq += x * x;
    if (v_sq == 0.0) continue;
    const double inv = 1.0 / std::sqrt(v_sq);
    for (double& x : v) x *= inv;

    col[j] = alpha;
    for (std::size_t i = j + 1; i < m; ++i) col[i] = 0.0;
    for (std::size_t l = j + 1; l < k; ++l) {
      auto c = yt.row(l);
      double d = 0.0;
      for (std::size_t i = j; i < m; ++i) d += v[i - j] * c[i];
      d *= 2.0;
      for (std::size_t i = j; i < m; ++i) c[i] -= d * v[i - j];
    }
    reflectors[j] = std::move(v);
    active[j] = true;
  }

  // Q = H_0 ... H_{k-1} [I_k; 0], again accumulated column by column.
  RealMatrix qt(k, m);
  for (std::size_t l = 0; l < k; ++l) qt(l, l) = 1.0;
  for (std::size_t jj = k; jj-- > 0;) {
    if (!active[jj]) continue;
    const auto& v = reflectors[jj];
    for (std::size_t l = jj; l < k; ++l) {
      auto c = qt.row(l);
      double d = 0.0;
      for (std::size_t i = jj; i < m; ++i) d += v[i - jj] * c[i];
      d *= 2.0;
      for (std::size_t i = jj; i < m; ++i) c[i] -= d * v[i - jj];
    }
  }

  QRFactors out{transpose(qt), RealMatrix(k, k)};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = i; l < k; ++l) out.R(i, l) = yt(l, i);
  return out;
}

std::size_t rsvd_rank(double s, std::size_t n) {
  if (!(s > 0.0)) throw std::invalid_argument("rsvd_rank: s must be > 0");
  if (n == 0) return 0;
  const double lg = std::floor(std::log2(static_cast<double>(n)));
  const double k = std::floor(s * lg) + 1.0;
  return k >= static_cast<double>(n) ? n : static_cast<std::size_t>(k);
}

std::size_t components_for(double s, std::size_t n, double log_base) {
  if (!(s > 0.0)) throw std::invalid_argument("components_for: s must be > 0");
  if (!(log_base > 1.0)) throw std::invalid_argument("components_for: log base must be > 1");
  if (n == 0) return 0;
  // Guard against ceil(2.0000000000000004) style round-up.
  const double raw = s * std::log(static_cast<double>(n)) / std::log(log_base);
  const double k = std::ceil(raw - 1e-9);
  return std::clamp<std::size_t>(k < 1.0 ? 1 : static_cast<std::size_t>(k), 1, n);
}

TruncatedSVD randomized_partial_svd_rank(const RealMatrix& a, std::size_t k, std::uint64_t seed,
                                         std::size_t power_iterations) {
  if (a.empty()) throw std::invalid_argument("randomized_partial_svd: empty matrix");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  k = std::min({k, m, n});

  TruncatedSVD out;
  out.source_frobenius_sq = frobenius_norm_sq(a);
  if (k == 0) {
    out.U = RealMatrix(m, 0);
    out.V = RealMatrix(n, 0);
    return out;
  }

  Rng rng(derive_stream(seed, "rsvd", n));
  RealMatrix phi(n, k);
  for (double& v : phi.values()) v = rng.normal();

  RealMatrix q = qr_decompose(matmul_naive(a, phi)).Q;
  for (std::size_t it = 0; it < power_iterations; ++it) {
    const RealMatrix z = qr_decompose(matmul_adjoint_left(a, q)).Q;
    q = qr_decompose(matmul_naive(a, z)).Q;
  }

  const RealMatrix b = matmul_adjoint_left(q, a);  // k x n
  const Eigen::Map<const EigenRowMajor> bm(b.data(), static_cast<Eigen::Index>(k),
                                           static_cast<Eigen::Index>(n));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(bm, Eigen::ComputeThinU | Eigen::ComputeThinV);

  const auto& ub = svd.matrixU();
  const auto& vb = svd.matrixV();
  const auto& sv = svd.singularValues();
  const std::size_t r = static_cast<std::size_t>(sv.size());

  RealMatrix u_small(k, r);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < r; ++j)
      u_small(i, j) = ub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  out.U = matmul_naive(q, u_small);
  out.V = RealMatrix(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j)
      out.V(i, j) = vb(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  out.sigma.resize(r);
  for (std::size_t j = 0; j < r; ++j) out.sigma[j] = sv(static_cast<Eigen::Index>(j));
  return out;
}

TruncatedSVD randomized_partial_svd(const RealMatrix& a, double s, std::uint64_t seed,
                                    std::size_t power_iterations) {
  if (a.empty()) throw std::invalid_argument("randomized_partial_svd: empty matrix");
  return randomized_partial_svd_rank(a, rsvd_rank(s, a.cols()), seed, power_iterations);
}

double svd_residual_norm(const TruncatedSVD& d) noexcept {
  double captured = 0.0;
  for (double s : d.sigma) captured += s * s;
  return std::sqrt(std::max(0.0, d.source_frobenius_sq - captured));
}

RealMatrix svd_materialize(const TruncatedSVD& d) {
  return matmul_naive(scale_columns(d.U, d.sigma), transpose(d.V));
}

std::vector<double> dense_singular_values(const RealMatrix& a) {
  if (a.empty()) return {};
  const Eigen::Map<const EigenRowMajor> am(a.data(), static_cast<Eigen::Index>(a.rows()),
                                           static_cast<Eigen::Index>(a.cols()));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(am);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

std::pair<RealMatrix, ApproxReport> svd_multiply_rank(const RealMatrix& a, const RealMatrix& b,
                                                      std::size_t k, Order order,
                                                      std::uint64_t seed,
                                                      const SvdMultiplyOptions& opts) {
  if (a.cols() != b.rows()) throw dimension_error("svd multiply: inner dimensions differ");
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = a.cols();

  const TruncatedSVD da = randomized_partial_svd_rank(a, k, seed, opts.power_iterations);
  const TruncatedSVD db = randomized_partial_svd_rank(b, k, seed + 1, opts.power_iterations);
  const RealMatrix us_a = scale_columns(da.U, da.sigma);
  const RealMatrix us_b = scale_columns(db.U, db.sigma);

  RealMatrix m;
  if (order == Order::zeroth) {
    const RealMatrix core = scale_columns(matmul_adjoint_left(da.V, db.U), db.sigma);
    m = matmul_naive(matmul_naive(us_a, core), transpose(db.V));
  } else {
    m = matmul_naive(us_a, matmul_adjoint_left(da.V, b));
    RealMatrix delta_a = a;
    delta_a -= matmul_naive(us_a, transpose(da.V));
    m += matmul_naive(matmul_naive(delta_a, us_b), transpose(db.V));
  }

  ApproxReport r;
  r.method = Method::svd;
  r.order = order;
  r.k = std::max(da.rank(), db.rank());
  r.norm_A = std::sqrt(da.source_frobenius_sq);
  r.norm_B = std::sqrt(db.source_frobenius_sq);
  r.norm_dA = svd_residual_norm(da);
  r.norm_dB = svd_residual_norm(db);
  r.norm_M = frobenius(m);
  r.wall_time = elapsed_since(t0);
  attach_estimates(r, n, opts.error_model.value_or(ErrorModel::mean_zero(n)));
  return {std::move(m), r};
}

std::pair<RealMatrix, ApproxReport> svd_first_order_multiply(const RealMatrix& a,
                                                             const RealMatrix& b, double s,
                                                             Order order, std::uint64_t seed,
                                                             const SvdMultiplyOptions& opts) {
  return svd_multiply_rank(a, b, rsvd_rank(s, a.cols()), order, seed, opts);
}

}  // namespace amm
