#pragma once

#include <cstddef>

#include "amm/matrix.hpp"

namespace amm {

/// Which side the cyclic permutation C sits on in a cycle decomposition.
///   left:  A = sum_j Lambda_j C^j, cycle j holds A(i, (i - j) mod n)
///   right: A = sum_j C^j Lambda_j, cycle j holds A((i + j) mod n, i)
/// C is the full-cycle permutation with C(r, c) = 1 iff r = c + 1 (mod n).
enum class CycleSide { left, right };

/// Identifies cycle `j` of an n x n matrix for a given side.
struct CycleIndex {
  std::size_t j = 0;
  CycleSide side = CycleSide::right;
};

/// Row/column of A holding entry `i` (0-based along the diagonal of
/// Lambda_j) of the given cycle.
struct CycleEntry {
  std::size_t row;
  std::size_t col;
};
CycleEntry cycle_entry(CycleIndex cycle, std::size_t i, std::size_t n) noexcept;

/// Column j of the result is diag(Lambda_j) for the requested side. O(n^2).
template <Scalar T>
Matrix<T> cycle_reorder(const Matrix<T>& a, CycleSide side);

/// Inverse of cycle_reorder.
template <Scalar T>
Matrix<T> cycle_restore(const Matrix<T>& reordered, CycleSide side);

/// C^k M (side == left, M has n rows) or M C^k (side == right, M has n
/// columns). Pure row/column permutation, 0 <= k < n.
template <Scalar T>
Matrix<T> apply_cycle_power(const Matrix<T>& m, std::size_t k, CycleSide side);

}  // namespace amm
