#include "amm/matrix.hpp"

namespace amm {

namespace {

template <typename TA, typename TB, typename TC>
Matrix<TC> multiply_ikj(const Matrix<TA>& a, const Matrix<TB>& b) {
  if (a.cols() != b.rows()) {
    throw dimension_error("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                          " vs " + std::to_string(b.rows()) + ")");
  }
  Matrix<TC> c(a.rows(), b.cols());
  const std::size_t p = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    TC* ci = c.data() + i * p;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const TC aik = a(i, k);
      const TB* bk = b.data() + k * p;
      for (std::size_t j = 0; j < p; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

template <typename TM, typename TR>
double relative_error_impl(const Matrix<TM>& m, const Matrix<TR>& ref) {
  if (m.rows() != ref.rows() || m.cols() != ref.cols())
    throw dimension_error("relative_error: shape mismatch");
  double num = 0.0;
  double den = 0.0;
  const auto mv = m.values();
  const auto rv = ref.values();
  for (std::size_t i = 0; i < mv.size(); ++i) {
    num += abs_sq(TM(rv[i]) - mv[i]);
    den += abs_sq(rv[i]);
  }
  if (den == 0.0) throw std::domain_error("relative_error: reference has zero norm");
  return std::sqrt(num / den);
}

}  // namespace

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix c(a.rows(), a.cols());
  auto cv = c.values();
  auto av = a.values();
  for (std::size_t i = 0; i < av.size(); ++i) cv[i] = av[i];
  return c;
}

RealMatrix real_part(const ComplexMatrix& a) {
  RealMatrix r(a.rows(), a.cols());
  auto rv = r.values();
  auto av = a.values();
  for (std::size_t i = 0; i < av.size(); ++i) rv[i] = av[i].real();
  return r;
}

RealMatrix imag_part(const ComplexMatrix& a) {
  RealMatrix r(a.rows(), a.cols());
  auto rv = r.values();
  auto av = a.values();
  for (std::size_t i = 0; i < av.size(); ++i) rv[i] = av[i].imag();
  return r;
}

RealMatrix matmul_naive(const RealMatrix& a, const RealMatrix& b) {
  return multiply_ikj<double, double, double>(a, b);
}
ComplexMatrix matmul_naive(const ComplexMatrix& a, const ComplexMatrix& b) {
  return multiply_ikj<complex, complex, complex>(a, b);
}
ComplexMatrix matmul_naive(const RealMatrix& a, const ComplexMatrix& b) {
  return multiply_ikj<double, complex, complex>(a, b);
}
ComplexMatrix matmul_naive(const ComplexMatrix& a, const RealMatrix& b) {
  return multiply_ikj<complex, double, complex>(a, b);
}

RealMatrix matmul_adjoint_left(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows()) throw dimension_error("matmul_adjoint_left: row counts differ");
  RealMatrix c(a.cols(), b.cols());
  const std::size_t p = b.cols();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double* br = b.data() + r * p;
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double ari = a(r, i);
      if (ari == 0.0) continue;
      double* ci = c.data() + i * p;
      for (std::size_t j = 0; j < p; ++j) ci[j] += ari * br[j];
    }
  }
  return c;
}

double relative_error(const RealMatrix& m, const RealMatrix& ref) {
  return relative_error_impl(m, ref);
}
double relative_error(const ComplexMatrix& m, const ComplexMatrix& ref) {
  return relative_error_impl(m, ref);
}
double relative_error(const ComplexMatrix& m, const RealMatrix& ref) {
  return relative_error_impl(m, ref);
}

}  // namespace amm
