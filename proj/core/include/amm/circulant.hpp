#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "amm/errest.hpp"
#include "amm/matrix.hpp"
#include "amm/report.hpp"

namespace amm {

/// A = sum_k R_k D^k with R_k circulant and D = diag(omega^c),
/// omega = exp(+2 pi i / n).
///
/// Row t of `columns` is the first column of R_{index[t]}, so
/// (R_k D^k)(r, c) = columns(t, (r - c) mod n) * omega^(k c).
struct CirculantSpectrum {
  std::size_t n = 0;
  ComplexMatrix columns;
  std::vector<std::size_t> index;
  std::vector<double> magnitudes;  // 2-norm of each row of `columns`

  std::size_t components() const noexcept { return index.size(); }
  /// Sum of n * magnitude^2 over the stored components (= ||sum R_k D^k||_F^2).
  double energy() const noexcept;
};

/// Full decomposition of a square matrix via one column DFT of the cycle
/// reordering. O(n^2 log n). Throws dimension_error for non-square input.
CirculantSpectrum circulant_decompose(const RealMatrix& a);
CirculantSpectrum circulant_decompose(const ComplexMatrix& a);

/// First column of R_k computed directly as the cycle means of A D^{-k}. O(n^2).
std::vector<complex> circulant_component(const RealMatrix& a, std::size_t k);
std::vector<complex> circulant_component(const ComplexMatrix& a, std::size_t k);

/// The `k` component numbers of largest magnitude, returned in ascending
/// order. Magnitudes equal to ~12 significant digits count as ties and are
/// broken towards the lower component number.
std::vector<std::size_t> top_components(const CirculantSpectrum& s, std::size_t k);

/// Restriction of a spectrum to the given component numbers (kept in the
/// order given).
CirculantSpectrum select_components(const CirculantSpectrum& s,
                                    const std::vector<std::size_t>& components);

/// sum of R_k D^k over the stored components. O(components * n^2).
ComplexMatrix circulant_materialize(const CirculantSpectrum& s);

/// (sum_t R_t D^t) B through the FFT identity W D^k = C^k W:
/// W^* sum_t diag(sqrt(n) W r_t) C^{k_t} (W B). O(components * n p + n p log n).
ComplexMatrix circulant_apply(const CirculantSpectrum& s, const ComplexMatrix& b);

/// X (sum_t R_t D^t) computed as the adjoint of the conjugated identity
/// W^* sum_t C^{-k_t} diag(conj(sqrt(n) W r_t)) (W X^*).
ComplexMatrix circulant_apply_right(const ComplexMatrix& x, const CirculantSpectrum& s);

struct CirculantMultiplyOptions {
  /// Defaults to ErrorModel::mean_zero(n).
  std::optional<ErrorModel> error_model;
};

/// Keeps the top-k components of A and of B.
///   zeroth: A_k B_k
///   first:  A_k B + dA B_k,  dA = A - A_k
/// Throws dimension_error for non-square or mismatched inputs and
/// std::invalid_argument when k > n.
std::pair<ComplexMatrix, ApproxReport> circulant_first_order_multiply(
    const RealMatrix& a, const RealMatrix& b, std::size_t k, Order order,
    const CirculantMultiplyOptions& opts = {});
std::pair<ComplexMatrix, ApproxReport> circulant_first_order_multiply(
    const ComplexMatrix& a, const ComplexMatrix& b, std::size_t k, Order order,
    const CirculantMultiplyOptions& opts = {});

}  // namespace amm
