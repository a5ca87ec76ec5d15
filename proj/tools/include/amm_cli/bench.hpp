#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amm/genmat.hpp"
#include "amm/report.hpp"

namespace amm::cli {

inline constexpr const char* kBenchHeader =
    "method,order,n,kind_a,kind_b,s,k,rel_err,apriori_est,posterior_est,wall_time_s,seed";

struct BenchRow {
  Method method = Method::naive;
  std::optional<Order> order;
  std::size_t n = 0;
  std::string kind_a;
  std::string kind_b;
  std::optional<double> s;
  std::size_t k = 0;
  double rel_err = 0.0;
  std::optional<double> apriori_est;
  std::optional<double> posterior_est;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
};

/// One CSV line without the trailing newline; unset optionals are empty cells.
std::string format_row(const BenchRow& row);

class config_error : public std::runtime_error {
 public:
  config_error(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct MethodChoice {
  Method method = Method::naive;
  std::optional<Order> order;
};

/// "svd-first", "cd-zeroth", "sfft" (first), "lowrank", "naive".
MethodChoice parse_method_choice(std::string_view token);

struct BenchConfig {
  std::vector<MethodChoice> methods;
  std::vector<std::pair<MatrixKind, MatrixKind>> pairs;
  std::vector<std::size_t> sizes;
  std::vector<double> s_values;
  std::vector<double> tolerances;
  std::size_t trials = 25;
  std::size_t sweep_trials = 5;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

/// Flat "key = v1, v2, ..." lines; '#' starts a comment. Keys:
///   methods       list of method tokens (required)
///   pairs         list of kind_a:kind_b (required)
///   sizes         list of n (required)
///   s             list of front factors
///   tolerances    list of target errors; s is swept per tolerance
///   trials        rows per combination (default 25)
///   sweep_trials  trials averaged while sweeping (default 5)
///   seed          base seed; trial t uses seed + t (default 0)
///   threads       worker threads (default 1)
/// At least one of s or tolerances is required unless methods is only naive.
BenchConfig parse_bench_config(std::istream& in);
BenchConfig parse_bench_config_file(const std::string& path);

struct RatioRow {
  Method method = Method::naive;
  std::optional<Order> order;
  std::size_t n = 0;
  std::string kind_a;
  std::string kind_b;
  std::optional<double> s;
  std::size_t k = 0;
  double method_time_s = 0.0;
  double naive_time_s = 0.0;
};

inline constexpr const char* kRatioHeader =
    "method,order,n,kind_a,kind_b,s,k,method_time_s,naive_time_s,speedup";
std::string format_ratio_row(const RatioRow& row);

struct BenchOutput {
  std::vector<BenchRow> rows;
  std::vector<RatioRow> ratios;
};

/// Runs every (method, pair, n, s) combination for cfg.trials trials.
/// Rows are written to `out` (header first unless `header` is false) as each
/// combination finishes; writes are serialized. The returned rows are in combination order.
/// Mean naive/method wall-time ratios are computed when `ratios` is set.
BenchOutput run_bench(const BenchConfig& cfg, std::ostream& out, bool ratios,
                      bool header = true);

}  // namespace amm::cli
