#include "amm/circulant.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "amm/cycles.hpp"
#include "amm/dft.hpp"

namespace amm {

namespace {

// roots[m] = exp(2 pi i m / n)
std::vector<complex> unit_roots(std::size_t n) {
  std::vector<complex> roots(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    roots[m] = {std::cos(theta), std::sin(theta)};
  }
  return roots;
}

double row_norm(const ComplexMatrix& m, std::size_t r) {
  double s = 0.0;
  for (const complex& z : m.row(r)) s += std::norm(z);
  return std::sqrt(s);
}

// sqrt(n) W r for every stored component.
std::vector<std::vector<complex>> eigenvalue_rows(const CirculantSpectrum& s) {
  const UnitaryDFT plan(s.n);
  const double scale = std::sqrt(static_cast<double>(s.n));
  std::vector<std::vector<complex>> out(s.components());
  for (std::size_t t = 0; t < s.components(); ++t) {
    const auto r = s.columns.row(t);
    out[t].assign(r.begin(), r.end());
    plan.forward(out[t]);
    for (complex& z : out[t]) z *= scale;
  }
  return out;
}

void require_square(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) throw dimension_error(std::string(what) + ": matrix must be square");
}

template <Scalar T>
CirculantSpectrum decompose_impl(const Matrix<T>& a) {
  require_square(a.rows(), a.cols(), "circulant_decompose");
  const std::size_t n = a.rows();
  CirculantSpectrum s;
  s.n = n;
  if (n == 0) return s;

  s.columns = to_complex(cycle_reorder(a, CycleSide::right));
  dft_columns(s.columns, Direction::forward);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  s.columns *= complex(inv_sqrt_n, 0.0);

  s.index.resize(n);
  s.magnitudes.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.index[k] = k;
    s.magnitudes[k] = row_norm(s.columns, k);
  }
  return s;
}

template <Scalar T>
std::vector<complex> component_impl(const Matrix<T>& a, std::size_t k) {
  require_square(a.rows(), a.cols(), "circulant_component");
  const std::size_t n = a.rows();
  if (k >= n) throw std::out_of_range("circulant_component: k out of range");
  const auto roots = unit_roots(n);
  std::vector<complex> out(n);
  // Entry j is the mean over the right-side cycle j of A D^{-k}; the phase of
  // column c is omega^{-k c}, applied entrywise.
  for (std::size_t j = 0; j < n; ++j) {
    complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const complex phase = std::conj(roots[(k * i) % n]);
      acc += complex(a((i + j) % n, i)) * phase;
    }
    out[j] = acc / static_cast<double>(n);
  }
  return out;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double CirculantSpectrum::energy() const noexcept {
  double e = 0.0;
  for (double m : magnitudes) e += m * m;
  return e * static_cast<double>(n);
}

CirculantSpectrum circulant_decompose(const RealMatrix& a) { return decompose_impl(a); }
CirculantSpectrum circulant_decompose(const ComplexMatrix& a) { return decompose_impl(a); }

std::vector<complex> circulant_component(const RealMatrix& a, std::size_t k) {
  return component_impl(a, k);
}
std::vector<complex> circulant_component(const ComplexMatrix& a, std::size_t k) {
  return component_impl(a, k);
}

std::vector<std::size_t> top_components(const CirculantSpectrum& s, std::size_t k) {
  const std::size_t count = s.components();
  k = std::min(k, count);
  double top = 0.0;
  for (double m : s.magnitudes) top = std::max(top, m);

  std::vector<double> key(count, 0.0);
  if (top > 0.0) {
    for (std::size_t t = 0; t < count; ++t) key[t] = std::round(s.magnitudes[t] / top * 1e12);
  }
  std::vector<std::size_t> order(count);
  for (std::size_t t = 0; t < count; ++t) order[t] = t;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (key[x] != key[y]) return key[x] > key[y];
    return s.index[x] < s.index[y];
  });

  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = s.index[order[i]];
  std::sort(out.begin(), out.end());
  return out;
}

CirculantSpectrum select_components(const CirculantSpectrum& s,
                                    const std::vector<std::size_t>& components) {
  std::vector<std::size_t> row_of(s.n, s.components());
  for (std::size_t t = 0; t < s.components(); ++t) row_of[s.index[t]] = t;

  CirculantSpectrum out;
  out.n = s.n;
  out.columns = ComplexMatrix(components.size(), s.n);
  out.index = components;
  out.magnitudes.resize(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) {
    const std::size_t k = components[i];
    if (k >= s.n || row_of[k] == s.components())
      throw std::out_of_range("select_components: component " + std::to_string(k) + " not stored");
    const auto src = s.columns.row(row_of[k]);
    std::copy(src.begin(), src.end(), out.columns.row(i).begin());
    out.magnitudes[i] = s.magnitudes[row_of[k]];
  }
  return out;
}

ComplexMatrix circulant_materialize(const CirculantSpectrum& s) {
  const std::size_t n = s.n;
  ComplexMatrix m(n, n);
  if (n == 0) return m;
  const auto roots = unit_roots(n);
  std::vector<complex> phase(n);
  for (std::size_t t = 0; t < s.components(); ++t) {
    const std::size_t k = s.index[t];
    const auto col = s.columns.row(t);
    for (std::size_t c = 0; c < n; ++c) phase[c] = roots[(k * c) % n];
    for (std::size_t r = 0; r < n; ++r) {
      complex* out = m.data() + r * n;
      for (std::size_t c = 0; c < n; ++c) out[c] += col[(r + n - c) % n] * phase[c];
    }
  }
  return m;
}

ComplexMatrix circulant_apply(const CirculantSpectrum& s, const ComplexMatrix& b) {
  const std::size_t n = s.n;
  if (b.rows() != n) throw dimension_error("circulant_apply: B must have n rows");
  const std::size_t p = b.cols();
  ComplexMatrix wb = b;
  dft_columns(wb, Direction::forward);

  const auto eig = eigenvalue_rows(s);
  ComplexMatrix acc(n, p);
  // Components are accumulated in stored order; callers pass ascending
  // component numbers so the sum is deterministic.
  for (std::size_t t = 0; t < s.components(); ++t) {
    const std::size_t k = s.index[t];
    for (std::size_t r = 0; r < n; ++r) {
      const complex l = eig[t][r];
      const complex* src = wb.data() + ((r + n - k) % n) * p;  // (C^k WB) row r
      complex* dst = acc.data() + r * p;
      for (std::size_t c = 0; c < p; ++c) dst[c] += l * src[c];
    }
  }
  dft_columns(acc, Direction::inverse);
  return acc;
}

ComplexMatrix circulant_apply_right(const ComplexMatrix& x, const CirculantSpectrum& s) {
  const std::size_t n = s.n;
  if (x.cols() != n) throw dimension_error("circulant_apply_right: X must have n columns");
  ComplexMatrix wx = adjoint(x);  // n x m
  const std::size_t p = wx.cols();
  dft_columns(wx, Direction::forward);

  const auto eig = eigenvalue_rows(s);
  ComplexMatrix acc(n, p);
  for (std::size_t t = 0; t < s.components(); ++t) {
    const std::size_t k = s.index[t];
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t q = (r + k) % n;  // (C^{-k} Y) row r = Y row r + k
      const complex l = std::conj(eig[t][q]);
      const complex* src = wx.data() + q * p;
      complex* dst = acc.data() + r * p;
      for (std::size_t c = 0; c < p; ++c) dst[c] += l * src[c];
    }
  }
  dft_columns(acc, Direction::inverse);
  return adjoint(acc);
}

std::pair<ComplexMatrix, ApproxReport> circulant_first_order_multiply(
    const ComplexMatrix& a, const ComplexMatrix& b, std::size_t k, Order order,
    const CirculantMultiplyOptions& opts) {
  require_square(a.rows(), a.cols(), "circulant_first_order_multiply");
  require_square(b.rows(), b.cols(), "circulant_first_order_multiply");
  if (a.rows() != b.rows()) throw dimension_error("circulant_first_order_multiply: size mismatch");
  const std::size_t n = a.rows();
  if (k > n) throw std::invalid_argument("circulant_first_order_multiply: k exceeds n");
  const auto t0 = std::chrono::steady_clock::now();

  const CirculantSpectrum sa = circulant_decompose(a);
  const CirculantSpectrum sb = circulant_decompose(b);
  const CirculantSpectrum ka = select_components(sa, top_components(sa, k));
  const CirculantSpectrum kb = select_components(sb, top_components(sb, k));

  ComplexMatrix m;
  if (order == Order::zeroth) {
    m = circulant_apply(ka, circulant_materialize(kb));
  } else {
    m = circulant_apply(ka, b);
    ComplexMatrix delta_a = a;
    delta_a -= circulant_materialize(ka);
    m += circulant_apply_right(delta_a, kb);
  }

  ApproxReport r;
  r.method = Method::cd;
  r.order = order;
  r.k = k;
  r.norm_A = frobenius(a);
  r.norm_B = frobenius(b);
  r.norm_dA = std::sqrt(std::max(0.0, sa.energy() - ka.energy()));
  r.norm_dB = std::sqrt(std::max(0.0, sb.energy() - kb.energy()));
  r.norm_M = frobenius(m);
  r.wall_time = elapsed_since(t0);
  attach_estimates(r, n, opts.error_model.value_or(ErrorModel::mean_zero(n)));
  return {std::move(m), r};
}

std::pair<ComplexMatrix, ApproxReport> circulant_first_order_multiply(
    const RealMatrix& a, const RealMatrix& b, std::size_t k, Order order,
    const CirculantMultiplyOptions& opts) {
  return circulant_first_order_multiply(to_complex(a), to_complex(b), k, order, opts);
}

}  // namespace amm
