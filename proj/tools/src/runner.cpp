#include "amm_cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "amm/baseline.hpp"
#include "amm/circulant.hpp"
#include "amm/fsparse.hpp"
#include "amm/matrix_io.hpp"
#include "amm/svd.hpp"

namespace amm::cli {

std::string MatrixSource::label() const {
  if (path) return std::filesystem::path(*path).stem().string();
  return std::string(to_string(kind));
}

RealMatrix load_matrix(const MatrixSource& src, std::uint64_t seed) {
  if (src.path) return read_matrix_file(*src.path);
  return generate({src.kind, src.n, seed, src.block, {}});
}

OperandPair load_pair(const MatrixSource& a, const MatrixSource& b, std::uint64_t seed) {
  return {load_matrix(a, seed), load_matrix(b, seed + kSecondOperandOffset)};
}

RunOutput run_method(Method method, std::optional<Order> order, std::size_t k,
                     const RealMatrix& a, const RealMatrix& b, std::uint64_t seed) {
  const bool ordered = method == Method::svd || method == Method::cd || method == Method::sfft;
  if (ordered && !order) throw std::invalid_argument(std::string(to_string(method)) + " needs an order");
  if (!ordered && order)
    throw std::invalid_argument(std::string(to_string(method)) + " takes no order");

  switch (method) {
    case Method::svd: {
      auto [m, r] = svd_multiply_rank(a, b, k, *order, seed);
      return {to_complex(m), r};
    }
    case Method::cd: {
      auto [m, r] = circulant_first_order_multiply(a, b, k, *order);
      return {std::move(m), r};
    }
    case Method::sfft: {
      auto [m, r] = fft_sparse_first_order_multiply(a, b, k, *order);
      return {std::move(m), r};
    }
    case Method::lowrank: {
      auto [m, r] = randomized_outer_product_multiply(a, b, k, seed);
      return {to_complex(m), r};
    }
    case Method::naive: {
      const auto t0 = std::chrono::steady_clock::now();
      RealMatrix m = matmul_naive(a, b);
      ApproxReport r;
      r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      r.method = Method::naive;
      r.norm_A = frobenius(a);
      r.norm_B = frobenius(b);
      r.norm_M = frobenius(m);
      return {to_complex(m), r};
    }
  }
  throw std::invalid_argument("unknown method");
}

std::size_t components_from_s(double s, std::size_t n) {
  if (!(s > 0.0)) throw std::invalid_argument("s must be > 0");
  return std::max<std::size_t>(1, components_for(s, n));
}

double operation_count(Method method, std::size_t k, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double fft = 5.0 * nn * nn * std::log2(std::max(nn, 2.0));
  switch (method) {
    case Method::svd: return 6.0 * kk * nn * nn;
    case Method::cd: return 4.0 * kk * nn * nn + 4.0 * fft;
    case Method::sfft: return 4.0 * kk * nn * nn + 2.0 * fft;
    case Method::lowrank: return 2.0 * kk * nn * nn;
    case Method::naive: return 2.0 * nn * nn * nn;
  }
  return 0.0;
}

namespace {

struct Trial {
  OperandPair pair;
  RealMatrix reference;
  std::uint64_t seed;
};

std::vector<Trial> prepare_trials(const SweepConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be >= 1");
  std::vector<Trial> trials;
  trials.reserve(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = cfg.seed_base + t;
    OperandPair p = load_pair(cfg.a, cfg.b, seed);
    if (p.a.cols() != p.b.rows()) throw dimension_error("sweep: inner dimensions differ");
    RealMatrix ref = matmul_naive(p.a, p.b);
    trials.push_back({std::move(p), std::move(ref), seed});
  }
  return trials;
}

std::optional<Order> order_for(Method m, Order o) {
  if (m == Method::lowrank || m == Method::naive) return std::nullopt;
  return o;
}

double mean_error(const SweepConfig& cfg, const std::vector<Trial>& trials, std::size_t k) {
  double sum = 0.0;
  for (const Trial& t : trials) {
    const RunOutput out =
        run_method(cfg.method, order_for(cfg.method, cfg.order), k, t.pair.a, t.pair.b, t.seed);
    sum += relative_error(out.result, t.reference);
  }
  return sum / static_cast<double>(trials.size());
}

}  // namespace

double mean_error_at(const SweepConfig& cfg, double s) {
  const auto trials = prepare_trials(cfg);
  const std::size_t n = trials.front().pair.a.cols();
  return mean_error(cfg, trials, components_from_s(s, n));
}

SweepResult sweep(const SweepConfig& cfg) {
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw std::invalid_argument("tol must be > 0");
  const auto trials = prepare_trials(cfg);
  const std::size_t n = trials.front().pair.a.cols();
  const double budget = 2.0 * std::pow(static_cast<double>(n), 3);

  SweepResult res;
  for (int s = 1; cfg.s_max <= 0 || s <= cfg.s_max; ++s) {
    const std::size_t k = components_from_s(s, n);
    SweepStep step{s, k, 0.0, operation_count(cfg.method, k, n)};
    // s = 1 is always tried; small n can put the FFT terms alone over budget.
    if (s > 1 && step.operations > budget) break;
    step.mean_error = mean_error(cfg, trials, k);
    res.steps.push_back(step);
    if (step.mean_error <= cfg.tol) {
      res.s = s;
      break;
    }
  }
  return res;
}

std::vector<SpectrumRow> svd_spectrum(const RealMatrix& a, std::uint64_t seed) {
  std::vector<double> sigma;
  if (std::max(a.rows(), a.cols()) <= 1024) {
    sigma = dense_singular_values(a);
  } else {
    const std::size_t n = std::min(a.rows(), a.cols());
    const std::size_t k = std::min<std::size_t>(n, 10 * components_from_s(1.0, a.cols()));
    sigma = randomized_partial_svd_rank(a, k, seed, 2).sigma;
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  std::vector<SpectrumRow> rows(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) rows[i] = {i, sigma[i]};
  return rows;
}

std::vector<SpectrumRow> cd_spectrum(const RealMatrix& a) {
  const CirculantSpectrum s = circulant_decompose(a);
  std::vector<SpectrumRow> rows(s.n);
  for (std::size_t t = 0; t < s.components(); ++t) rows[s.index[t]] = {s.index[t], s.magnitudes[t]};
  return rows;
}

}  // namespace amm::cli
