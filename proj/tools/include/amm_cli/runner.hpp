#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amm/genmat.hpp"
#include "amm/matrix.hpp"
#include "amm/report.hpp"

namespace amm::cli {

/// B is generated with `seed + kSecondOperandOffset` so that A and B of the
/// same kind are independent.
inline constexpr std::uint64_t kSecondOperandOffset = std::uint64_t{1} << 32;

/// Either a file (MatrixMarket or CSV) or a generator spec.
struct MatrixSource {
  std::optional<std::string> path;
  MatrixKind kind = MatrixKind::general;
  std::size_t n = 0;
  std::size_t block = 0;
  std::string label() const;
};

RealMatrix load_matrix(const MatrixSource& src, std::uint64_t seed);

struct OperandPair {
  RealMatrix a;
  RealMatrix b;
};

OperandPair load_pair(const MatrixSource& a, const MatrixSource& b, std::uint64_t seed);

struct RunOutput {
  ComplexMatrix result;
  ApproxReport report;
};

/// Dispatches to the method; `k` is components for svd/cd/sfft and samples
/// for lowrank, ignored for naive. Lowrank and naive reject an order.
RunOutput run_method(Method method, std::optional<Order> order, std::size_t k,
                     const RealMatrix& a, const RealMatrix& b, std::uint64_t seed);

/// ceil(s log2 n), at least 1. Used for every s-driven method.
std::size_t components_from_s(double s, std::size_t n);

/// Arithmetic operations for an n x n product with k components.
///   svd      6 k n^2
///   cd       4 k n^2 + 4 * 5 n^2 log2 n    (four batched FFT passes)
///   sfft     4 k n^2 + 2 * 5 n^2 log2 n
///   lowrank  2 k n^2
///   naive    2 n^3
double operation_count(Method method, std::size_t k, std::size_t n);

struct SweepConfig {
  Method method = Method::svd;
  Order order = Order::first;
  double tol = 0.01;
  MatrixSource a;
  MatrixSource b;
  std::size_t trials = 5;
  std::uint64_t seed_base = 0;
  int s_max = 0;  // 0: no cap besides the operation budget
};

struct SweepStep {
  int s = 0;
  std::size_t k = 0;
  double mean_error = 0.0;
  double operations = 0.0;
};

struct SweepResult {
  std::optional<int> s;  // unset when the operation budget ran out first
  std::vector<SweepStep> steps;
  std::string label() const { return s ? std::to_string(*s) : "-"; }
};

/// Smallest integer s whose mean relative error over trials is <= tol.
/// Trial t uses seed seed_base + t for both the operands and the method.
/// Gives up (s unset) before trying an s > 1 whose operation count exceeds
/// 2 n^3.
SweepResult sweep(const SweepConfig& cfg);

/// Mean relative error over trials at a fixed s (the inner loop of sweep).
double mean_error_at(const SweepConfig& cfg, double s);

struct SpectrumRow {
  std::size_t index = 0;
  double magnitude = 0.0;
};

/// Descending singular values; dense for n <= 1024, else a randomized
/// partial SVD with 10 ceil(log2 n) components and two power iterations.
std::vector<SpectrumRow> svd_spectrum(const RealMatrix& a, std::uint64_t seed);
/// ||r_k||_2 (first column of R_k) for k = 0..n-1 in natural order.
std::vector<SpectrumRow> cd_spectrum(const RealMatrix& a);

}  // namespace amm::cli
