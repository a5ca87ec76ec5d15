#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "amm/matrix.hpp"

namespace amm {

enum class Direction { forward, inverse };

/// Unitary discrete Fourier transform of arbitrary length n.
///
/// forward applies W with W(p,q) = exp(-2*pi*i*p*q/n) / sqrt(n); inverse
/// applies W^*. Lengths whose prime factors are all <= 61 use a recursive
/// mixed-radix Cooley-Tukey; anything else goes through Bluestein's chirp-z
/// with a power-of-two convolution. A plan is immutable after construction and
/// may be shared between threads; each call allocates its own scratch.
class UnitaryDFT {
 public:
  explicit UnitaryDFT(std::size_t n);
  ~UnitaryDFT();
  UnitaryDFT(UnitaryDFT&&) noexcept;
  UnitaryDFT& operator=(UnitaryDFT&&) noexcept;
  UnitaryDFT(const UnitaryDFT&) = delete;
  UnitaryDFT& operator=(const UnitaryDFT&) = delete;

  std::size_t size() const noexcept;

  /// In-place transform; `v.size()` must equal size().
  void apply(std::span<complex> v, Direction dir) const;
  void forward(std::span<complex> v) const { apply(v, Direction::forward); }
  void inverse(std::span<complex> v) const { apply(v, Direction::inverse); }

  /// True when the plan fell back to Bluestein.
  bool uses_bluestein() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around UnitaryDFT.
std::vector<complex> unitary_dft(std::span<const complex> v, Direction dir);

/// Transforms every column of `m` in place (m <- W m or W^* m).
void dft_columns(ComplexMatrix& m, Direction dir);
/// Transforms every row of `m` in place (row <- W row, i.e. m <- m W^T).
void dft_rows(ComplexMatrix& m, Direction dir);

}  // namespace amm
