#include "amm/genmat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "amm/random.hpp"
#include "amm/svd.hpp"

namespace amm {

namespace {

RealMatrix haar_from(std::size_t n, Rng& rng) {
  RealMatrix g(n, n);
  for (double& v : g.values()) v = rng.normal();
  QRFactors qr = qr_decompose(g);
  for (std::size_t j = 0; j < n; ++j) {
    if (qr.R(j, j) >= 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) qr.Q(i, j) = -qr.Q(i, j);
  }
  return std::move(qr.Q);
}

RealMatrix with_spectrum(std::span<const double> s, Rng& rng) {
  const std::size_t n = s.size();
  RealMatrix q1 = haar_from(n, rng);
  const RealMatrix q2 = haar_from(n, rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q1(i, j) *= s[j];
  return matmul_naive(q1, transpose(q2));
}

RealMatrix uniform_matrix(std::size_t n, Rng& rng) {
  RealMatrix m(n, n);
  for (double& v : m.values()) v = rng.uniform();
  return m;
}

}  // namespace

MatrixKind parse_kind(std::string_view name) {
  if (name == "toeplitz") return MatrixKind::toeplitz;
  if (name == "hankel") return MatrixKind::hankel;
  if (name == "block-toeplitz") return MatrixKind::block_toeplitz;
  if (name == "symmetric") return MatrixKind::symmetric;
  if (name == "general") return MatrixKind::general;
  if (name == "circulant") return MatrixKind::circulant;
  if (name == "kappa") return MatrixKind::kappa;
  if (name == "type1") return MatrixKind::type1;
  if (name == "type2") return MatrixKind::type2;
  if (name == "type3") return MatrixKind::type3;
  if (name == "haar-spectrum") return MatrixKind::haar_spectrum;
  if (name == "identity") return MatrixKind::identity;
  throw std::invalid_argument("unknown matrix kind '" + std::string(name) + "'");
}

std::string_view to_string(MatrixKind k) noexcept {
  switch (k) {
    case MatrixKind::toeplitz: return "toeplitz";
    case MatrixKind::hankel: return "hankel";
    case MatrixKind::block_toeplitz: return "block-toeplitz";
    case MatrixKind::symmetric: return "symmetric";
    case MatrixKind::general: return "general";
    case MatrixKind::circulant: return "circulant";
    case MatrixKind::kappa: return "kappa";
    case MatrixKind::type1: return "type1";
    case MatrixKind::type2: return "type2";
    case MatrixKind::type3: return "type3";
    case MatrixKind::haar_spectrum: return "haar-spectrum";
    case MatrixKind::identity: return "identity";
  }
  return "?";
}

std::size_t default_block_size(std::size_t n) {
  if (n == 0) return 0;
  std::size_t b = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (b * b > n) --b;
  while (b > 1 && n % b != 0) --b;
  return b == 0 ? 1 : b;
}

std::vector<double> type1_spectrum(std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = std::exp(-static_cast<double>(i) / static_cast<double>(n));
  return s;
}

std::vector<double> type3_spectrum(std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = static_cast<double>(n - i) / static_cast<double>(n);
  return s;
}

RealMatrix generate_haar_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_haar_orthogonal: n must be >= 1");
  Rng rng(derive_stream(seed, "haar", n));
  return haar_from(n, rng);
}

RealMatrix generate_with_spectrum(std::span<const double> s, std::uint64_t seed) {
  if (s.empty()) throw std::invalid_argument("generate_with_spectrum: empty spectrum");
  Rng rng(derive_stream(seed, "haar-spectrum", s.size()));
  return with_spectrum(s, rng);
}

RealMatrix generate(const MatrixSpec& spec) {
  const std::size_t n = spec.n;
  if (n == 0) throw std::invalid_argument("generate: n must be >= 1");
  Rng rng(derive_stream(spec.seed, to_string(spec.kind), n));
  RealMatrix a(n, n);

  switch (spec.kind) {
    case MatrixKind::toeplitz: {
      std::vector<double> t(2 * n - 1);
      for (double& v : t) v = rng.uniform();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = t[i + n - 1 - j];
      return a;
    }
    case MatrixKind::hankel: {
      std::vector<double> h(2 * n - 1);
      for (double& v : h) v = rng.uniform();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = h[i + j];
      return a;
    }
    case MatrixKind::block_toeplitz: {
      const std::size_t b = spec.block == 0 ? default_block_size(n) : spec.block;
      if (b == 0 || n % b != 0)
        throw std::invalid_argument("generate: block size must divide n");
      const std::size_t nb = n / b;
      // Block (I, J) is T[I - J + nb - 1]; blocks drawn in that index order.
      std::vector<RealMatrix> blocks;
      blocks.reserve(2 * nb - 1);
      for (std::size_t d = 0; d < 2 * nb - 1; ++d) {
        RealMatrix t(b, b);
        for (double& v : t.values()) v = rng.uniform();
        blocks.push_back(std::move(t));
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          a(i, j) = blocks[i / b + nb - 1 - j / b](i % b, j % b);
      return a;
    }
    case MatrixKind::symmetric: {
      const RealMatrix g = uniform_matrix(n, rng);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (g(i, j) + g(j, i));
      return a;
    }
    case MatrixKind::general:
      return uniform_matrix(n, rng);
    case MatrixKind::circulant: {
      std::vector<double> c(n);
      for (double& v : c) v = rng.uniform();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = c[(i + n - j) % n];
      return a;
    }
    case MatrixKind::kappa: {
      for (std::size_t i = 0; i < n; ++i) {
        const double s = std::sin(static_cast<double>(i) + 1.0);
        for (std::size_t j = i; j < n; ++j) {
          const double v = std::exp(-0.5 * static_cast<double>(j - i)) * s;
          a(i, j) = v;
          a(j, i) = v;
        }
      }
      return a;
    }
    case MatrixKind::type1: return with_spectrum(type1_spectrum(n), rng);
    case MatrixKind::type3: return with_spectrum(type3_spectrum(n), rng);
    case MatrixKind::type2: {
      RealMatrix t = generate({MatrixKind::type1, n, spec.seed, 0, {}});
      const RealMatrix u = uniform_matrix(n, rng);
      const double scale = 0.5 * frobenius(t) / frobenius(u);
      for (std::size_t i = 0; i < t.size(); ++i) t.values()[i] += scale * u.values()[i];
      return t;
    }
    case MatrixKind::haar_spectrum: {
      if (spec.spectrum.size() != n)
        throw std::invalid_argument("generate: spectrum length must equal n");
      return with_spectrum(spec.spectrum, rng);
    }
    case MatrixKind::identity:
      return RealMatrix::identity(n);
  }
  throw std::invalid_argument("generate: unknown kind");
}

}  // namespace amm
