#include "amm/dft.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amm {

namespace {

constexpr std::size_t kMaxDirectRadix = 61;

// Unnormalised forward DFT (exp(-2 pi i pq / n)) by recursive decimation in
// time over the factors of n.
class MixedRadix {
 public:
  MixedRadix(std::size_t n, std::vector<std::size_t> factors)
      : n_(n), factors_(std::move(factors)), twiddles_(n) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_);
      twiddles_[j] = {std::cos(angle), std::sin(angle)};
    }
  }

  void transform(const complex* in, complex* out) const {
    if (n_ == 1) {
      out[0] = in[0];
      return;
    }
    work(out, in, 1, 0, n_);
  }

 private:
  void work(complex* out, const complex* in, std::size_t stride, std::size_t stage,
            std::size_t len) const {
    const std::size_t p = factors_[stage];
    const std::size_t m = len / p;
    if (m == 1) {
      for (std::size_t q = 0; q < p; ++q) out[q] = in[q * stride];
    } else {
      for (std::size_t q = 0; q < p; ++q) work(out + q * m, in + q * stride, stride * p, stage + 1, m);
    }
    butterfly(out, p, m, n_ / len);
  }

  void butterfly(complex* out, std::size_t p, std::size_t m, std::size_t tw_stride) const {
    if (p == 2) {
      for (std::size_t k = 0; k < m; ++k) {
        const complex a = out[k];
        const complex b = out[m + k] * twiddles_[k * tw_stride];
        out[k] = a + b;
        out[m + k] = a - b;
      }
      return;
    }
    if (p == 4) {
      const complex minus_i{0.0, -1.0};
      for (std::size_t k = 0; k < m; ++k) {
        const complex y0 = out[k];
        const complex y1 = out[m + k] * twiddles_[(k * tw_stride) % n_];
        const complex y2 = out[2 * m + k] * twiddles_[(2 * k * tw_stride) % n_];
        const complex y3 = out[3 * m + k] * twiddles_[(3 * k * tw_stride) % n_];
        const complex s02 = y0 + y2;
        const complex d02 = y0 - y2;
        const complex s13 = y1 + y3;
        const complex d13 = minus_i * (y1 - y3);
        out[k] = s02 + s13;
        out[m + k] = d02 + d13;
        out[2 * m + k] = s02 - s13;
        out[3 * m + k] = d02 - d13;
      }
      return;
    }
    // Generic radix-p: O(p^2) per butterfly, p <= kMaxDirectRadix.
    std::array<complex, kMaxDirectRadix + 1> y{};
    const std::size_t root_stride = m * tw_stride;  // exp(-2 pi i / p) = twiddles_[root_stride]
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t q = 0; q < p; ++q) y[q] = out[q * m + k] * twiddles_[(q * k * tw_stride) % n_];
      for (std::size_t r = 0; r < p; ++r) {
        complex sum = y[0];
        for (std::size_t q = 1; q < p; ++q) sum += y[q] * twiddles_[((q * r) % p) * root_stride];
        out[r * m + k] = sum;
      }
    }
  }

  std::size_t n_;
  std::vector<std::size_t> factors_;
  std::vector<complex> twiddles_;
};

// Returns the factor list, or an empty vector if a prime factor exceeds the
// direct radix limit.
std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> f;
  while (n % 4 == 0) {
    f.push_back(4);
    n /= 4;
  }
  while (n % 2 == 0) {
    f.push_back(2);
    n /= 2;
  }
  for (std::size_t p = 3; p <= kMaxDirectRadix && n > 1; p += 2) {
    while (n % p == 0) {
      f.push_back(p);
      n /= p;
    }
  }
  if (n > 1) return {};
  return f;
}

std::size_t next_pow2(std::size_t x) {
  std::size_t m = 1;
  while (m < x) m <<= 1;
  return m;
}

}  // namespace

struct UnitaryDFT::Impl {
  std::size_t n = 0;
  std::unique_ptr<MixedRadix> direct;

  // Bluestein state.
  std::size_t padded = 0;
  std::unique_ptr<MixedRadix> conv;
  std::vector<complex> chirp;       // exp(-i pi j^2 / n)
  std::vector<complex> kernel_hat;  // forward FFT of the conjugate chirp kernel

  void unnormalised_forward(std::span<complex> v) const {
    std::vector<complex> scratch(v.begin(), v.end());
    if (direct) {
      direct->transform(scratch.data(), v.data());
      return;
    }
    std::vector<complex> a(padded);
    for (std::size_t j = 0; j < n; ++j) a[j] = scratch[j] * chirp[j];
    std::vector<complex> a_hat(padded);
    conv->transform(a.data(), a_hat.data());
    for (std::size_t j = 0; j < padded; ++j) a_hat[j] = std::conj(a_hat[j] * kernel_hat[j]);
    conv->transform(a_hat.data(), a.data());  // conj(IFFT * padded)
    const double inv_m = 1.0 / static_cast<double>(padded);
    for (std::size_t k = 0; k < n; ++k) v[k] = std::conj(a[k]) * inv_m * chirp[k];
  }
};

UnitaryDFT::UnitaryDFT(std::size_t n) : impl_(std::make_unique<Impl>()) {
  if (n == 0) throw std::invalid_argument("UnitaryDFT: length must be >= 1");
  impl_->n = n;
  auto factors = factorize(n);
  if (n == 1 || !factors.empty()) {
    impl_->direct = std::make_unique<MixedRadix>(n, std::move(factors));
    return;
  }
  const std::size_t m = next_pow2(2 * n - 1);
  impl_->padded = m;
  impl_->conv = std::make_unique<MixedRadix>(m, factorize(m));
  impl_->chirp.resize(n);
  const std::size_t two_n = 2 * n;
  for (std::size_t j = 0; j < n; ++j) {
    // j^2 mod 2n keeps the phase argument small for large j.
    const std::size_t jj = (j * j) % two_n;
    const double angle = -std::numbers::pi * static_cast<double>(jj) / static_cast<double>(n);
    impl_->chirp[j] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<complex> kernel(m);
  kernel[0] = std::conj(impl_->chirp[0]);
  for (std::size_t j = 1; j < n; ++j) {
    kernel[j] = std::conj(impl_->chirp[j]);
    kernel[m - j] = std::conj(impl_->chirp[j]);
  }
  impl_->kernel_hat.resize(m);
  impl_->conv->transform(kernel.data(), impl_->kernel_hat.data());
}

UnitaryDFT::~UnitaryDFT() = default;
UnitaryDFT::UnitaryDFT(UnitaryDFT&&) noexcept = default;
UnitaryDFT& UnitaryDFT::operator=(UnitaryDFT&&) noexcept = default;

std::size_t UnitaryDFT::size() const noexcept { return impl_->n; }

bool UnitaryDFT::uses_bluestein() const noexcept { return !impl_->direct; }

void UnitaryDFT::apply(std::span<complex> v, Direction dir) const {
  if (v.size() != impl_->n) throw dimension_error("UnitaryDFT: vector length mismatch");
  const double scale = 1.0 / std::sqrt(static_cast<double>(impl_->n));
  if (dir == Direction::forward) {
    impl_->unnormalised_forward(v);
    for (complex& z : v) z *= scale;
  } else {
    // W^* x = conj(W conj(x)).
    for (complex& z : v) z = std::conj(z);
    impl_->unnormalised_forward(v);
    for (complex& z : v) z = std::conj(z) * scale;
  }
}

std::vector<complex> unitary_dft(std::span<const complex> v, Direction dir) {
  std::vector<complex> out(v.begin(), v.end());
  UnitaryDFT(out.size()).apply(out, dir);
  return out;
}

void dft_columns(ComplexMatrix& m, Direction dir) {
  if (m.empty()) return;
  const UnitaryDFT plan(m.rows());
  std::vector<complex> col(m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) col[i] = m(i, j);
    plan.apply(col, dir);
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = col[i];
  }
}

void dft_rows(ComplexMatrix& m, Direction dir) {
  if (m.empty()) return;
  const UnitaryDFT plan(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) plan.apply(m.row(i), dir);
}

}  // namespace amm
