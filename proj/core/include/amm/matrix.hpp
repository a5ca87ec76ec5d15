#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace amm {

using complex = std::complex<double>;

/// Thrown when operand shapes are incompatible.
class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, complex>;

template <typename T>
inline constexpr bool is_complex_v = std::same_as<T, complex>;

inline bool is_finite(double x) noexcept { return std::isfinite(x); }
inline bool is_finite(const complex& z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline double abs_sq(double x) noexcept { return x * x; }
inline double abs_sq(const complex& z) noexcept { return std::norm(z); }

inline double conj(double x) noexcept { return x; }
inline complex conj(const complex& z) noexcept { return std::conj(z); }

/// Dense row-major matrix of real or complex doubles.
///
/// Entries are validated as finite when a matrix is built from external data;
/// the element accessors are unchecked.
template <Scalar T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;

  /// Zero-initialised rows x cols matrix.
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Takes ownership of row-major `data`. Throws dimension_error on a length
  /// mismatch and std::domain_error on NaN/Inf entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw dimension_error("Matrix: data length " + std::to_string(data_.size()) +
                            " does not match " + std::to_string(rows_) + "x" +
                            std::to_string(cols_));
    }
    for (const T& v : data_) {
      if (!is_finite(v)) throw std::domain_error("Matrix: non-finite entry");
    }
  }

  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw dimension_error("Matrix: ragged initializer list");
      for (const T& v : r) {
        if (!is_finite(v)) throw std::domain_error("Matrix: non-finite entry");
        data_.push_back(v);
      }
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }

  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }

  Matrix& operator+=(const Matrix& other) {
    require_same_shape(other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& other) {
    require_same_shape(other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
  }
  Matrix& operator*=(T s) noexcept {
    for (T& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, T s) { return a *= s; }
  friend Matrix operator*(T s, Matrix a) { return a *= s; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void require_same_shape(const Matrix& other, const char* what) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
      throw dimension_error(std::string(what) + ": shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<complex>;

// Shape helpers ------------------------------------------------------------

template <Scalar T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

/// Conjugate transpose (plain transpose for real matrices).
template <Scalar T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = conj(a(i, j));
  return t;
}

ComplexMatrix to_complex(const RealMatrix& a);
inline const ComplexMatrix& to_complex(const ComplexMatrix& a) { return a; }
RealMatrix real_part(const ComplexMatrix& a);
RealMatrix imag_part(const ComplexMatrix& a);

// Frobenius algebra --------------------------------------------------------

template <Scalar T>
double frobenius_norm_sq(const Matrix<T>& a) noexcept {
  double s = 0.0;
  for (const T& v : a.values()) s += abs_sq(v);
  return s;
}

/// ||A||_F.
template <Scalar T>
double frobenius(const Matrix<T>& a) noexcept {
  return std::sqrt(frobenius_norm_sq(a));
}

/// Frobenius inner product sum conj(A(i,j)) * B(i,j).
template <Scalar T>
T frobenius(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("frobenius: shape mismatch");
  T s{};
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < av.size(); ++i) s += conj(av[i]) * bv[i];
  return s;
}

// Products -----------------------------------------------------------------

/// Exact product. Each output entry is accumulated over the inner index in
/// ascending order, so results do not depend on scheduling.
RealMatrix matmul_naive(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix matmul_naive(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul_naive(const RealMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul_naive(const ComplexMatrix& a, const RealMatrix& b);

/// A^T B (A^H B for complex A) without forming the transpose.
RealMatrix matmul_adjoint_left(const RealMatrix& a, const RealMatrix& b);

/// ||ref - m||_F / ||ref||_F. Throws std::domain_error when ||ref||_F == 0.
double relative_error(const RealMatrix& m, const RealMatrix& ref);
double relative_error(const ComplexMatrix& m, const ComplexMatrix& ref);
double relative_error(const ComplexMatrix& m, const RealMatrix& ref);

}  // namespace amm
