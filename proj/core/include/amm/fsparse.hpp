#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "amm/errest.hpp"
#include "amm/matrix.hpp"
#include "amm/report.hpp"

namespace amm {

/// A = sum_k f_k 1^T D^k, where f_k collects coefficient k of every row's
/// Fourier series: f_{i,k} = (W A(i,:))(k) / sqrt(n).
struct FourierRowSpectrum {
  std::size_t rows = 0;
  std::size_t n = 0;
  ComplexMatrix coefficients;   // rows x n, (i, k) = f_{i,k}
  std::vector<double> weights;  // a_k = sqrt(n) ||f_k||_2

  /// f_k / ||f_k||_2 (zero vector when f_k vanishes).
  std::vector<complex> direction(std::size_t k) const;
};

FourierRowSpectrum fourier_row_decompose(const RealMatrix& a);
FourierRowSpectrum fourier_row_decompose(const ComplexMatrix& a);

struct SparseEntry {
  std::size_t col = 0;
  complex value;
};

/// Row-indexed sparse matrix with strictly increasing columns in each row.
struct SparseRowMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<SparseEntry>> entries;

  SparseRowMatrix() = default;
  SparseRowMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r) {}

  std::size_t nnz() const noexcept;
  ComplexMatrix to_dense() const;
};

/// Keeps, per row, the k entries of largest modulus (k clamped to cols).
/// Equal moduli keep the lower column first.
SparseRowMatrix topk_sparsify(const ComplexMatrix& m, std::size_t k);
/// Per-row budgets; `budgets.size()` must equal m.rows().
SparseRowMatrix topk_sparsify(const ComplexMatrix& m, std::span<const std::size_t> budgets);

/// Which operand the sparse matrix is: left computes S B, right computes B S.
enum class SparseSide { left, right };

/// O(nnz * dense extent). Throws dimension_error on mismatched shapes.
ComplexMatrix sparse_dense_multiply(const SparseRowMatrix& s, const ComplexMatrix& b,
                                    SparseSide side);

/// A W^* and W B. Their product equals A B.
struct FourierPair {
  ComplexMatrix a_tilde;
  ComplexMatrix b_tilde;
};
FourierPair fourier_pair(const RealMatrix& a, const RealMatrix& b);

enum class SparsifyAxis { rows, cols };

struct FftSparseOptions {
  /// rows follows the printed algorithm (top-k per row of W B); cols keeps
  /// the top-k of every column instead.
  SparsifyAxis sparsify_b = SparsifyAxis::rows;
  /// Defaults to ErrorModel::mean_zero(n).
  std::optional<ErrorModel> error_model;
};

/// Sparsified product in the Fourier domain.
///   zeroth: S(A W^*) S(W B)
///   first:  S(A W^*) (W B) + (A W^* - S(A W^*)) S(W B)
/// where S keeps k entries per row (per column for sparsify_b = cols).
std::pair<ComplexMatrix, ApproxReport> fft_sparse_first_order_multiply(
    const RealMatrix& a, const RealMatrix& b, std::size_t k, Order order,
    const FftSparseOptions& opts = {});

/// The sparsified B~ used above (rows or columns of W B).
SparseRowMatrix sparsify_b_tilde(const ComplexMatrix& b_tilde, std::size_t k, SparsifyAxis axis);

}  // namespace amm
