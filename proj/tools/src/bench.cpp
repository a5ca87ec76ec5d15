#include "amm_cli/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "amm_cli/runner.hpp"

namespace amm::cli {

namespace {

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : ""; }

std::string order_cell(const std::optional<Order>& o) {
  return o ? std::string(to_string(*o)) : "";
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line) {
  T v{};
  const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || p != token.data() + token.size())
    throw config_error(line, "not a number: '" + std::string(token) + "'");
  return v;
}

}  // namespace

std::string format_row(const BenchRow& r) {
  std::string out(to_string(r.method));
  out += ',' + order_cell(r.order);
  out += ',' + std::to_string(r.n);
  out += ',' + r.kind_a + ',' + r.kind_b;
  out += ',' + optional_number(r.s);
  out += ',' + std::to_string(r.k);
  out += ',' + number(r.rel_err);
  out += ',' + optional_number(r.apriori_est);
  out += ',' + optional_number(r.posterior_est);
  out += ',' + number(r.wall_time_s);
  out += ',' + std::to_string(r.seed);
  return out;
}

std::string format_ratio_row(const RatioRow& r) {
  std::string out(to_string(r.method));
  out += ',' + order_cell(r.order);
  out += ',' + std::to_string(r.n);
  out += ',' + r.kind_a + ',' + r.kind_b;
  out += ',' + optional_number(r.s);
  out += ',' + std::to_string(r.k);
  out += ',' + number(r.method_time_s);
  out += ',' + number(r.naive_time_s);
  out += ',' + number(r.method_time_s > 0.0 ? r.naive_time_s / r.method_time_s : 0.0);
  return out;
}

config_error::config_error(std::size_t line, const std::string& what)
    : std::runtime_error("config line " + std::to_string(line) + ": " + what), line_(line) {}

MethodChoice parse_method_choice(std::string_view token) {
  const auto dash = token.find('-');
  const Method m = parse_method(token.substr(0, dash));
  MethodChoice c{m, std::nullopt};
  const bool ordered = m == Method::svd || m == Method::cd || m == Method::sfft;
  if (dash != std::string_view::npos) {
    if (!ordered) throw std::invalid_argument(std::string(token) + ": method takes no order");
    c.order = parse_order(token.substr(dash + 1));
  } else if (ordered) {
    c.order = Order::first;
  }
  return c;
}

BenchConfig parse_bench_config(std::istream& in) {
  BenchConfig cfg;
  std::map<std::string, std::size_t> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw config_error(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const auto values = split_list(line.substr(eq + 1));
    if (values.empty()) throw config_error(line_no, "no value for '" + key + "'");
    if (!seen.emplace(key, line_no).second) throw config_error(line_no, "duplicate key '" + key + "'");

    auto single = [&]() {
      if (values.size() != 1) throw config_error(line_no, "'" + key + "' takes one value");
      return values.front();
    };
    try {
      if (key == "methods") {
        for (auto v : values) cfg.methods.push_back(parse_method_choice(v));
      } else if (key == "pairs") {
        for (auto v : values) {
          const auto colon = v.find(':');
          if (colon == std::string_view::npos) throw config_error(line_no, "pair needs kind_a:kind_b");
          cfg.pairs.emplace_back(parse_kind(trim(v.substr(0, colon))),
                                 parse_kind(trim(v.substr(colon + 1))));
        }
      } else if (key == "sizes") {
        for (auto v : values) {
          const auto n = parse_number<std::size_t>(v, line_no);
          if (n == 0) throw config_error(line_no, "size must be >= 1");
          cfg.sizes.push_back(n);
        }
      } else if (key == "s") {
        for (auto v : values) {
          const double s = parse_number<double>(v, line_no);
          if (!(s > 0.0)) throw config_error(line_no, "s must be > 0");
          cfg.s_values.push_back(s);
        }
      } else if (key == "tolerances") {
        for (auto v : values) {
          const double t = parse_number<double>(v, line_no);
          if (!(t > 0.0)) throw config_error(line_no, "tolerance must be > 0");
          cfg.tolerances.push_back(t);
        }
      } else if (key == "trials") {
        cfg.trials = parse_number<std::size_t>(single(), line_no);
        if (cfg.trials == 0) throw config_error(line_no, "trials must be >= 1");
      } else if (key == "sweep_trials") {
        cfg.sweep_trials = parse_number<std::size_t>(single(), line_no);
        if (cfg.sweep_trials == 0) throw config_error(line_no, "sweep_trials must be >= 1");
      } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(single(), line_no);
      } else if (key == "threads") {
        cfg.threads = std::max<std::size_t>(1, parse_number<std::size_t>(single(), line_no));
      } else {
        throw config_error(line_no, "unknown key '" + key + "'");
      }
    } catch (const config_error&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw config_error(line_no, e.what());
    }
  }
  const std::size_t last = line_no;
  if (cfg.methods.empty()) throw config_error(last, "missing 'methods'");
  if (cfg.pairs.empty()) throw config_error(last, "missing 'pairs'");
  if (cfg.sizes.empty()) throw config_error(last, "missing 'sizes'");
  const bool only_naive = std::all_of(cfg.methods.begin(), cfg.methods.end(),
                                      [](const MethodChoice& m) { return m.method == Method::naive; });
  if (!only_naive && cfg.s_values.empty() && cfg.tolerances.empty())
    throw config_error(last, "need 's' or 'tolerances'");
  return cfg;
}

BenchConfig parse_bench_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(0, "cannot open " + path);
  return parse_bench_config(in);
}

namespace {

struct Combination {
  MethodChoice method;
  MatrixKind kind_a;
  MatrixKind kind_b;
  std::size_t n;
  std::optional<double> s;    // set when given directly
  std::optional<double> tol;  // set when s is swept
};

std::vector<Combination> expand(const BenchConfig& cfg) {
  std::vector<Combination> out;
  for (const auto& m : cfg.methods)
    for (const auto& [ka, kb] : cfg.pairs)
      for (std::size_t n : cfg.sizes) {
        if (m.method == Method::naive) {
          out.push_back({m, ka, kb, n, std::nullopt, std::nullopt});
          continue;
        }
        for (double s : cfg.s_values) out.push_back({m, ka, kb, n, s, std::nullopt});
        for (double t : cfg.tolerances) out.push_back({m, ka, kb, n, std::nullopt, t});
      }
  return out;
}

struct ComboResult {
  std::vector<BenchRow> rows;
  std::optional<RatioRow> ratio;
  std::string note;
};

ComboResult run_combination(const BenchConfig& cfg, const Combination& c, bool ratios) {
  const MatrixSource src_a{std::nullopt, c.kind_a, c.n, 0};
  const MatrixSource src_b{std::nullopt, c.kind_b, c.n, 0};
  ComboResult res;

  std::optional<double> s = c.s;
  if (c.tol) {
    SweepConfig sc;
    sc.method = c.method.method;
    sc.order = c.method.order.value_or(Order::first);
    sc.tol = *c.tol;
    sc.a = src_a;
    sc.b = src_b;
    sc.trials = cfg.sweep_trials;
    sc.seed_base = cfg.seed;
    const SweepResult sw = sweep(sc);
    if (!sw.s) {
      res.note = std::string(to_string(c.method.method)) + " " + src_a.label() + "x" +
                 src_b.label() + " n=" + std::to_string(c.n) + " tol=" + number(*c.tol) +
                 ": operation budget exhausted, no rows";
      return res;
    }
    s = *sw.s;
  }
  const std::size_t k = c.method.method == Method::naive ? 0 : components_from_s(*s, c.n);

  double method_time = 0.0, naive_time = 0.0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = cfg.seed + t;
    const OperandPair p = load_pair(src_a, src_b, seed);
    const RunOutput out = run_method(c.method.method, c.method.order, k, p.a, p.b, seed);
    const auto t0 = std::chrono::steady_clock::now();
    const RealMatrix ref = matmul_naive(p.a, p.b);
    naive_time += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    method_time += out.report.wall_time;

    BenchRow row;
    row.method = c.method.method;
    row.order = c.method.order;
    row.n = c.n;
    row.kind_a = src_a.label();
    row.kind_b = src_b.label();
    row.s = s;
    row.k = k;
    row.rel_err = relative_error(out.result, ref);
    row.apriori_est = out.report.apriori_estimate;
    row.posterior_est = out.report.posterior_estimate;
    row.wall_time_s = out.report.wall_time;
    row.seed = seed;
    res.rows.push_back(std::move(row));
  }
  if (ratios && c.method.method != Method::naive) {
    const double trials = static_cast<double>(cfg.trials);
    res.ratio = RatioRow{c.method.method, c.method.order, c.n, src_a.label(), src_b.label(),
                         s, k, method_time / trials, naive_time / trials};
  }
  return res;
}

}  // namespace

BenchOutput run_bench(const BenchConfig& cfg, std::ostream& out, bool ratios, bool header) {
  const auto combos = expand(cfg);
  std::vector<ComboResult> results(combos.size());
  std::mutex out_mutex;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  if (header) out << kBenchHeader << '\n';
  auto worker = [&] {
    for (std::size_t i = next++; i < combos.size(); i = next++) {
      try {
        ComboResult r = run_combination(cfg, combos[i], ratios);
        std::lock_guard lock(out_mutex);
        for (const auto& row : r.rows) out << format_row(row) << '\n';
        out.flush();
        if (!r.note.empty()) std::fprintf(stderr, "%s\n", r.note.c_str());
        results[i] = std::move(r);
      } catch (...) {
        std::lock_guard lock(out_mutex);
        if (!failure) failure = std::current_exception();
        next = combos.size();
      }
    }
  };
  const std::size_t threads = std::min(cfg.threads, std::max<std::size_t>(1, combos.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  BenchOutput res;
  for (auto& r : results) {
    for (auto& row : r.rows) res.rows.push_back(std::move(row));
    if (r.ratio) res.ratios.push_back(*r.ratio);
  }
  return res;
}

}  // namespace amm::cli
