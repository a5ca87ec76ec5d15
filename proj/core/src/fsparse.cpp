#include "amm/fsparse.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "amm/dft.hpp"

namespace amm {

namespace {

template <Scalar T>
FourierRowSpectrum row_decompose_impl(const Matrix<T>& a) {
  FourierRowSpectrum s;
  s.rows = a.rows();
  s.n = a.cols();
  s.coefficients = to_complex(a);
  s.weights.assign(s.n, 0.0);
  if (a.empty()) return s;
  dft_rows(s.coefficients, Direction::forward);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(s.n));
  s.coefficients *= complex(inv_sqrt_n, 0.0);
  for (std::size_t i = 0; i < s.rows; ++i) {
    const auto r = s.coefficients.row(i);
    for (std::size_t k = 0; k < s.n; ++k) s.weights[k] += std::norm(r[k]);
  }
  const double n = static_cast<double>(s.n);
  for (double& w : s.weights) w = std::sqrt(n * w);
  return s;
}

void keep_top(std::span<const complex> row, std::size_t k, std::vector<SparseEntry>& out) {
  const std::size_t n = row.size();
  k = std::min(k, n);
  out.clear();
  if (k == 0) return;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto larger = [&](std::size_t x, std::size_t y) {
    const double ax = std::norm(row[x]);
    const double ay = std::norm(row[y]);
    if (ax != ay) return ax > ay;
    return x < y;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    larger);
  order.resize(k);
  std::sort(order.begin(), order.end());
  out.reserve(k);
  for (std::size_t c : order) out.push_back({c, row[c]});
}

SparseRowMatrix sparse_transpose(const SparseRowMatrix& s) {
  SparseRowMatrix t(s.cols, s.rows);
  for (std::size_t i = 0; i < s.rows; ++i)
    for (const SparseEntry& e : s.entries[i]) t.entries[e.col].push_back({i, e.value});
  return t;
}

double sparse_norm_sq(const SparseRowMatrix& s) {
  double acc = 0.0;
  for (const auto& r : s.entries)
    for (const SparseEntry& e : r) acc += std::norm(e.value);
  return acc;
}

}  // namespace

std::vector<complex> FourierRowSpectrum::direction(std::size_t k) const {
  if (k >= n) throw std::out_of_range("FourierRowSpectrum::direction: k out of range");
  std::vector<complex> f(rows);
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    f[i] = coefficients(i, k);
    norm_sq += std::norm(f[i]);
  }
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (complex& z : f) z *= inv;
  }
  return f;
}

FourierRowSpectrum fourier_row_decompose(const RealMatrix& a) { return row_decompose_impl(a); }
FourierRowSpectrum fourier_row_decompose(const ComplexMatrix& a) { return row_decompose_impl(a); }

std::size_t SparseRowMatrix::nnz() const noexcept {
  std::size_t c = 0;
  for (const auto& r : entries) c += r.size();
  return c;
}

ComplexMatrix SparseRowMatrix::to_dense() const {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (const SparseEntry& e : entries[i]) m(i, e.col) = e.value;
  return m;
}

SparseRowMatrix topk_sparsify(const ComplexMatrix& m, std::size_t k) {
  SparseRowMatrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) keep_top(m.row(i), k, s.entries[i]);
  return s;
}

SparseRowMatrix topk_sparsify(const ComplexMatrix& m, std::span<const std::size_t> budgets) {
  if (budgets.size() != m.rows())
    throw dimension_error("topk_sparsify: one budget per row required");
  SparseRowMatrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) keep_top(m.row(i), budgets[i], s.entries[i]);
  return s;
}

ComplexMatrix sparse_dense_multiply(const SparseRowMatrix& s, const ComplexMatrix& b,
                                    SparseSide side) {
  if (side == SparseSide::left) {
    if (s.cols != b.rows()) throw dimension_error("sparse_dense_multiply: S.cols != B.rows");
    const std::size_t p = b.cols();
    ComplexMatrix out(s.rows, p);
    for (std::size_t i = 0; i < s.rows; ++i) {
      complex* dst = out.data() + i * p;
      for (const SparseEntry& e : s.entries[i]) {
        const complex* src = b.data() + e.col * p;
        for (std::size_t j = 0; j < p; ++j) dst[j] += e.value * src[j];
      }
    }
    return out;
  }
  if (b.cols() != s.rows) throw dimension_error("sparse_dense_multiply: B.cols != S.rows");
  ComplexMatrix out(b.rows(), s.cols);
  for (std::size_t r = 0; r < b.rows(); ++r) {
    const complex* src = b.data() + r * b.cols();
    complex* dst = out.data() + r * s.cols;
    for (std::size_t i = 0; i < s.rows; ++i) {
      const complex bri = src[i];
      for (const SparseEntry& e : s.entries[i]) dst[e.col] += bri * e.value;
    }
  }
  return out;
}

FourierPair fourier_pair(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw dimension_error("fourier_pair: inner dimensions differ");
  FourierPair p{to_complex(a), to_complex(b)};
  dft_rows(p.a_tilde, Direction::inverse);  // row <- W^* row, i.e. A W^*
  dft_columns(p.b_tilde, Direction::forward);
  return p;
}

SparseRowMatrix sparsify_b_tilde(const ComplexMatrix& b_tilde, std::size_t k, SparsifyAxis axis) {
  if (axis == SparsifyAxis::rows) return topk_sparsify(b_tilde, k);
  return sparse_transpose(topk_sparsify(transpose(b_tilde), k));
}

std::pair<ComplexMatrix, ApproxReport> fft_sparse_first_order_multiply(
    const RealMatrix& a, const RealMatrix& b, std::size_t k, Order order,
    const FftSparseOptions& opts) {
  if (a.cols() != b.rows()) throw dimension_error("fft_sparse multiply: inner dimensions differ");
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = a.cols();

  const FourierPair p = fourier_pair(a, b);
  const SparseRowMatrix sa = topk_sparsify(p.a_tilde, k);
  const SparseRowMatrix sb = sparsify_b_tilde(p.b_tilde, k, opts.sparsify_b);

  ComplexMatrix m;
  if (order == Order::zeroth) {
    m = sparse_dense_multiply(sa, sb.to_dense(), SparseSide::left);
  } else {
    m = sparse_dense_multiply(sa, p.b_tilde, SparseSide::left);
    ComplexMatrix delta_a = p.a_tilde;
    for (std::size_t i = 0; i < sa.rows; ++i)
      for (const SparseEntry& e : sa.entries[i]) delta_a(i, e.col) = 0.0;
    m += sparse_dense_multiply(sb, delta_a, SparseSide::right);
  }

  ApproxReport r;
  r.method = Method::sfft;
  r.order = order;
  r.k = std::min(k, n);
  r.norm_A = frobenius(p.a_tilde);
  r.norm_B = frobenius(p.b_tilde);
  r.norm_dA = std::sqrt(std::max(0.0, r.norm_A * r.norm_A - sparse_norm_sq(sa)));
  r.norm_dB = std::sqrt(std::max(0.0, r.norm_B * r.norm_B - sparse_norm_sq(sb)));
  r.norm_M = frobenius(m);
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  attach_estimates(r, n, opts.error_model.value_or(ErrorModel::mean_zero(n)));
  return {std::move(m), r};
}

}  // namespace amm
