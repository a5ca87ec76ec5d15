#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "amm/matrix.hpp"

namespace amm {

enum class MatrixKind {
  toeplitz,
  hankel,
  block_toeplitz,
  symmetric,
  general,
  circulant,
  kappa,
  type1,  // singular values exp(-i/n)
  type2,  // type1 plus U(0,1) noise with half its Frobenius norm
  type3,  // singular values (n - i)/n
  haar_spectrum,
  identity,
};

/// Names as used on the command line: toeplitz, hankel, block-toeplitz,
/// symmetric, general, circulant, kappa, type1, type2, type3, haar-spectrum,
/// identity. Throws std::invalid_argument for anything else.
MatrixKind parse_kind(std::string_view name);
std::string_view to_string(MatrixKind k) noexcept;

struct MatrixSpec {
  MatrixKind kind = MatrixKind::general;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t block = 0;         // block-toeplitz only; 0 selects default_block_size(n)
  std::vector<double> spectrum;  // haar-spectrum only; length n
};

/// Largest divisor of n not exceeding floor(sqrt(n)).
std::size_t default_block_size(std::size_t n);

/// Deterministic n x n matrix for the spec. Every random family draws from
/// Rng(derive_stream(seed, to_string(kind), n)) in row-major order, so
/// outputs depend only on (kind, n, seed). U(0,1) entries throughout.
///
/// kappa: K(i,j) = K(j,i) = exp(-0.5 |i - j|) sin(i + 1) for i <= j, i.e.
/// the sine takes the 0-based row of the upper-triangular representative.
/// It has no random part.
///
/// Throws std::invalid_argument for n == 0, a block size that does not
/// divide n, or a spectrum of the wrong length.
RealMatrix generate(const MatrixSpec& spec);

/// Q from the QR of an n x n standard normal matrix with columns multiplied
/// by sign(R(j,j)), which makes Q Haar distributed.
RealMatrix generate_haar_orthogonal(std::size_t n, std::uint64_t seed);

/// Q1 diag(s) Q2^T with independent Haar Q1, Q2.
RealMatrix generate_with_spectrum(std::span<const double> s, std::uint64_t seed);

/// exp(-i/n) or (n - i)/n for i = 0..n-1.
std::vector<double> type1_spectrum(std::size_t n);
std::vector<double> type3_spectrum(std::size_t n);

}  // namespace amm
