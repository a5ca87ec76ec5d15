#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "amm/matrix.hpp"
#include "amm/random.hpp"

namespace amm::testing {

/// Direct O(n^2) unitary DFT sum.
std::vector<complex> direct_dft(const std::vector<complex>& v, bool inverse);

/// Singular values by one-sided Jacobi rotations, nonincreasing. Independent
/// of the library's SVD path; fine for n <= ~256.
std::vector<double> jacobi_singular_values(const RealMatrix& a);

/// Dense DFT matrix W (or W^*).
ComplexMatrix dft_matrix(std::size_t n, bool inverse = false);

/// D = diag(exp(2 pi i c / n)) raised to the k-th power, as a dense matrix.
ComplexMatrix root_diagonal_power(std::size_t n, std::size_t k);

/// Dense cycle permutation C with C(r, c) = 1 iff r = c + 1 mod n.
RealMatrix cycle_matrix(std::size_t n);

RealMatrix random_normal(std::size_t m, std::size_t n, Rng& rng);
RealMatrix random_uniform(std::size_t m, std::size_t n, Rng& rng);
ComplexMatrix random_complex(std::size_t m, std::size_t n, Rng& rng);

/// ||x - y||_F / ||y||_F with a zero-safe denominator (returns ||x||_F when y = 0).
template <Scalar T>
double rel_diff(const Matrix<T>& x, const Matrix<T>& y) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += abs_sq(x.values()[i] - y.values()[i]);
    den += abs_sq(y.values()[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

/// Hand-rolled property driver: runs `body(rng, case_index)` for `cases`
/// independent seeded cases.
template <typename F>
void for_cases(std::size_t cases, std::uint64_t seed, F&& body) {
  for (std::size_t c = 0; c < cases; ++c) {
    Rng rng(derive_stream(seed, "property", c));
    body(rng, c);
  }
}

}  // namespace amm::testing
