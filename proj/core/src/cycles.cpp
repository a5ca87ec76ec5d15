#include "amm/cycles.hpp"

#include <algorithm>
#include <stdexcept>

namespace amm {

CycleEntry cycle_entry(CycleIndex cycle, std::size_t i, std::size_t n) noexcept {
  if (cycle.side == CycleSide::left) return {i, (i + n - cycle.j % n) % n};
  return {(i + cycle.j) % n, i};
}

template <Scalar T>
Matrix<T> cycle_reorder(const Matrix<T>& a, CycleSide side) {
  if (!a.is_square()) throw dimension_error("cycle_reorder: matrix must be square");
  const std::size_t n = a.rows();
  Matrix<T> out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto e = cycle_entry({j, side}, i, n);
      out(i, j) = a(e.row, e.col);
    }
  }
  return out;
}

template <Scalar T>
Matrix<T> cycle_restore(const Matrix<T>& reordered, CycleSide side) {
  if (!reordered.is_square()) throw dimension_error("cycle_restore: matrix must be square");
  const std::size_t n = reordered.rows();
  Matrix<T> out(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto e = cycle_entry({j, side}, i, n);
      out(e.row, e.col) = reordered(i, j);
    }
  }
  return out;
}

template <Scalar T>
Matrix<T> apply_cycle_power(const Matrix<T>& m, std::size_t k, CycleSide side) {
  if (side == CycleSide::left) {
    const std::size_t n = m.rows();
    if (k >= n && !(n == 0 && k == 0)) throw std::out_of_range("apply_cycle_power: k must be < n");
    // (C^k M) row r = M row (r - k) mod n.
    Matrix<T> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < n; ++r) {
      auto src = m.row((r + n - k) % n);
      std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
  }
  const std::size_t n = m.cols();
  if (k >= n && !(n == 0 && k == 0)) throw std::out_of_range("apply_cycle_power: k must be < n");
  // (M C^k) column c = M column (c + k) mod n.
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row(r);
    auto dst = out.row(r);
    for (std::size_t c = 0; c < n; ++c) dst[c] = src[(c + k) % n];
  }
  return out;
}

template RealMatrix cycle_reorder(const RealMatrix&, CycleSide);
template ComplexMatrix cycle_reorder(const ComplexMatrix&, CycleSide);
template RealMatrix cycle_restore(const RealMatrix&, CycleSide);
template ComplexMatrix cycle_restore(const ComplexMatrix&, CycleSide);
template RealMatrix apply_cycle_power(const RealMatrix&, std::size_t, CycleSide);
template ComplexMatrix apply_cycle_power(const ComplexMatrix&, std::size_t, CycleSide);

}  // namespace amm
