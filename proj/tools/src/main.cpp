#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "amm/errest.hpp"
#include "amm/genmat.hpp"
#include "amm/matrix_io.hpp"
#include "amm_cli/bench.hpp"
#include "amm_cli/runner.hpp"

using namespace amm;
using namespace amm::cli;
using json = nlohmann::json;

namespace {

constexpr const char* kConfigHelp = R"(Bench config: flat "key = v1, v2" lines, '#' comments.
  methods       svd-first, svd-zeroth, cd-first, cd-zeroth, sfft-first, sfft-zeroth, lowrank, naive
  pairs         kind_a:kind_b, ...
  sizes         n, ...
  s             front factors (k = ceil(s log2 n))
  tolerances    target errors; s is swept per tolerance
  trials        rows per combination (default 25)
  sweep_trials  trials averaged while sweeping (default 5)
  seed          base seed; trial t uses seed + t (default 0)
  threads       worker threads (default 1))";

struct PairOptions {
  std::string a_path, b_path;
  std::string kind_a = "general", kind_b = "general";
  std::size_t n = 0;
  std::size_t block = 0;

  void add(CLI::App* app) {
    app->add_option("--a", a_path, "Left operand file (.mtx or .csv)");
    app->add_option("--b", b_path, "Right operand file (.mtx or .csv)");
    app->add_option("--kind-a", kind_a, "Generator kind for A");
    app->add_option("--kind-b", kind_b, "Generator kind for B");
    app->add_option("--n", n, "Size for generated operands");
    app->add_option("--block", block, "Block size for block-toeplitz (0: default)");
  }

  MatrixSource source(const std::string& path, const std::string& kind) const {
    MatrixSource s;
    if (!path.empty()) {
      s.path = path;
    } else {
      if (n == 0) throw CLI::ValidationError("--n", "required for generated operands");
      s.kind = parse_kind(kind);
      s.n = n;
      s.block = block;
    }
    return s;
  }
  MatrixSource a() const { return source(a_path, kind_a); }
  MatrixSource b() const { return source(b_path, kind_b); }
};

void write_matrix(const RealMatrix& m, const std::string& path) {
  if (std::filesystem::path(path).extension() == ".mtx")
    write_matrix_market(m, path);
  else
    write_csv(m, path);
}

std::vector<double> load_vector(const std::string& spec, std::size_t n) {
  if (spec == "type1") return type1_spectrum(n);
  if (spec == "type3") return type3_spectrum(n);
  if (spec == "ones") return std::vector<double>(n, 1.0);
  const RealMatrix m = read_csv(spec);
  return {m.values().begin(), m.values().end()};
}

std::optional<Order> order_option(Method m, const std::string& order) {
  const bool ordered = m == Method::svd || m == Method::cd || m == Method::sfft;
  if (!ordered) {
    if (!order.empty())
      throw CLI::ValidationError("--order", std::string(to_string(m)) + " takes no order");
    return std::nullopt;
  }
  return parse_order(order.empty() ? "first" : order);
}

int cmd_gen(const std::string& kind, std::size_t n, std::uint64_t seed, std::size_t block,
            const std::string& spectrum, const std::string& out) {
  MatrixSpec spec{parse_kind(kind), n, seed, block, {}};
  if (!spectrum.empty()) spec.spectrum = load_vector(spectrum, n);
  write_matrix(generate(spec), out);
  return 0;
}

struct MultiplyOptions {
  std::string method = "naive", order;
  std::optional<double> s;
  std::optional<std::size_t> k, c;
  PairOptions pair;
  std::uint64_t seed = 0;
  std::string out, out_imag;
  bool check = false, real_part = false;
};

int cmd_multiply(const MultiplyOptions& o) {
  const Method method = parse_method(o.method);
  const auto order = order_option(method, o.order);
  if (o.c && method != Method::lowrank) throw CLI::ValidationError("--c", "only for lowrank");
  if (o.k && method == Method::lowrank) throw CLI::ValidationError("--k", "use --c for lowrank");

  const OperandPair p = load_pair(o.pair.a(), o.pair.b(), o.seed);
  if (p.a.cols() != p.b.rows()) throw dimension_error("inner dimensions of A and B differ");
  std::size_t k = 0;
  if (method != Method::naive) {
    if (o.k) k = *o.k;
    else if (o.c) k = *o.c;
    else if (o.s) k = components_from_s(*o.s, p.a.cols());
    else throw CLI::ValidationError("--s/--k/--c", "one is required");
  }
  RunOutput res = run_method(method, order, k, p.a, p.b, o.seed);
  if (o.check) res.report.measured_error = relative_error(res.result, matmul_naive(p.a, p.b));

  const RealMatrix imag = imag_part(res.result);
  const double imag_norm = frobenius(imag);
  if (!o.out.empty()) {
    write_matrix(real_part(res.result), o.out);
    if (!o.real_part && o.out_imag.empty() && imag_norm > 1e-12 * res.report.norm_M)
      std::cerr << "warning: result has imaginary part (norm " << imag_norm
                << "); --out holds the real part. Pass --real-part to silence or --out-imag to keep it.\n";
  }
  if (!o.out_imag.empty()) write_matrix(imag, o.out_imag);
  std::cout << res.report.to_json() << '\n';
  return 0;
}

int cmd_sweep(const std::string& method, const std::string& order, const std::vector<double>& tols,
              const PairOptions& pair, std::size_t trials, int s_max, std::uint64_t seed_base,
              bool verbose) {
  SweepConfig cfg;
  cfg.method = parse_method(method);
  cfg.order = order_option(cfg.method, order).value_or(Order::first);
  cfg.a = pair.a();
  cfg.b = pair.b();
  cfg.trials = trials;
  cfg.s_max = s_max;
  cfg.seed_base = seed_base;
  const auto opt_order = order_option(cfg.method, order);
  std::cout << "method,order,kind_a,kind_b,tol,s,k,mean_rel_err\n";
  for (double tol : tols) {
    cfg.tol = tol;
    const SweepResult r = sweep(cfg);
    if (verbose)
      for (const auto& st : r.steps)
        std::cerr << "s=" << st.s << " k=" << st.k << " mean_rel_err=" << st.mean_error
                  << " ops=" << st.operations << '\n';
    std::cout << to_string(cfg.method) << ',' << (opt_order ? to_string(*opt_order) : "") << ','
              << cfg.a.label() << ',' << cfg.b.label() << ',' << tol << ',' << r.label() << ',';
    if (r.s) std::cout << r.steps.back().k << ',' << r.steps.back().mean_error;
    else std::cout << ',';
    std::cout << '\n';
  }
  return 0;
}

int cmd_spectra(const std::string& path, const std::string& kind, std::size_t n, std::size_t block,
                std::uint64_t seed, const std::string& which, const std::string& out) {
  MatrixSource src;
  if (!path.empty()) {
    src.path = path;
  } else {
    if (n == 0) throw CLI::ValidationError("--n", "required for generated matrices");
    src = {std::nullopt, parse_kind(kind), n, block};
  }
  const RealMatrix a = load_matrix(src, seed);
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw std::runtime_error("cannot write " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  char buf[64];
  auto emit = [&](const std::vector<SpectrumRow>& rows, const char* prefix) {
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%.17g", r.magnitude);
      os << prefix << r.index << ',' << buf << '\n';
    }
  };
  if (which == "svd") {
    os << "index,magnitude\n";
    emit(svd_spectrum(a, seed), "");
  } else if (which == "cd") {
    os << "index,magnitude\n";
    emit(cd_spectrum(a), "");
  } else {
    os << "which,index,magnitude\n";
    emit(svd_spectrum(a, seed), "svd,");
    emit(cd_spectrum(a), "cd,");
  }
  return 0;
}

int cmd_bench(const std::string& config, const std::string& out, const std::string& ratio_out,
              std::optional<std::size_t> threads) {
  BenchConfig cfg = parse_bench_config_file(config);
  if (threads) cfg.threads = std::max<std::size_t>(1, *threads);
  BenchOutput res;
  if (out.empty()) {
    res = run_bench(cfg, std::cout, !ratio_out.empty());
  } else {
    // Append; the header is only written into an empty file.
    const bool fresh = !std::filesystem::exists(out) || std::filesystem::file_size(out) == 0;
    std::ofstream file(out, std::ios::app);
    if (!file) throw std::runtime_error("cannot write " + out);
    res = run_bench(cfg, file, !ratio_out.empty(), fresh);
  }
  if (!ratio_out.empty()) {
    std::ofstream rf(ratio_out);
    if (!rf) throw std::runtime_error("cannot write " + ratio_out);
    rf << kRatioHeader << '\n';
    for (const auto& r : res.ratios) rf << format_ratio_row(r) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate matrix multiplication toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a matrix and write it as .mtx or .csv");
  std::string gen_kind = "general", gen_spectrum, gen_out;
  std::size_t gen_n = 0, gen_block = 0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "toeplitz | hankel | block-toeplitz | symmetric | general | circulant | kappa | type1 | type2 | type3 | haar-spectrum | identity")->required();
  gen->add_option("--n", gen_n, "Size")->required();
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--block", gen_block, "Block size for block-toeplitz");
  gen->add_option("--spectrum", gen_spectrum, "haar-spectrum values: type1, type3, ones or a CSV file");
  gen->add_option("--out", gen_out, "Output path")->required();

  // multiply
  auto* mul = app.add_subcommand("multiply", "Run one approximate product");
  MultiplyOptions mo;
  mul->add_option("--method", mo.method, "svd | cd | sfft | lowrank | naive")->required();
  mul->add_option("--order", mo.order, "zeroth | first (default first)");
  auto* s_opt = mul->add_option("--s", mo.s, "Front factor: k = ceil(s log2 n)");
  auto* k_opt = mul->add_option("--k", mo.k, "Components");
  auto* c_opt = mul->add_option("--c", mo.c, "Samples (lowrank)");
  s_opt->excludes(k_opt)->excludes(c_opt);
  k_opt->excludes(c_opt);
  mo.pair.add(mul);
  mul->add_option("--seed", mo.seed, "Seed for generated operands and the method");
  mul->add_option("--out", mo.out, "Write the (real part of the) result");
  mul->add_option("--out-imag", mo.out_imag, "Write the imaginary part of the result");
  mul->add_flag("--check", mo.check, "Measure relative error against the naive product");
  mul->add_flag("--real-part", mo.real_part, "Keep only the real part without warning");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Smallest integer s reaching a tolerance");
  std::string sw_method = "svd", sw_order;
  std::vector<double> sw_tols;
  PairOptions sw_pair;
  std::size_t sw_trials = 5;
  int sw_smax = 0;
  std::uint64_t sw_seed = 0;
  bool sw_verbose = false;
  sw->add_option("--method", sw_method, "svd | cd | sfft | lowrank")->required();
  sw->add_option("--order", sw_order, "zeroth | first (default first)");
  sw->add_option("--tol", sw_tols, "Target mean relative error (repeatable)")->required();
  sw_pair.add(sw);
  sw->add_option("--trials", sw_trials, "Seeds averaged per s");
  sw->add_option("--s-max", sw_smax, "Largest s tried (0: operation budget only)");
  sw->add_option("--seed-base", sw_seed, "Trial t uses seed-base + t");
  sw->add_flag("--verbose", sw_verbose, "Print every step to stderr");

  // spectra
  auto* sp = app.add_subcommand("spectra", "Singular values and circulant component magnitudes");
  std::string sp_path, sp_kind = "general", sp_which = "both", sp_out;
  std::size_t sp_n = 0, sp_block = 0;
  std::uint64_t sp_seed = 0;
  sp->add_option("--a", sp_path, "Matrix file");
  sp->add_option("--kind", sp_kind, "Generator kind");
  sp->add_option("--n", sp_n, "Size");
  sp->add_option("--block", sp_block, "Block size for block-toeplitz");
  sp->add_option("--seed", sp_seed, "Seed");
  sp->add_option("--which", sp_which, "svd | cd | both")
      ->check(CLI::IsMember({"svd", "cd", "both"}));
  sp->add_option("--out", sp_out, "Output CSV (default stdout)");

  // bench
  auto* be = app.add_subcommand("bench", "Timed runs from a config file");
  be->footer(kConfigHelp);
  std::string be_config, be_out, be_ratio;
  std::optional<std::size_t> be_threads;
  be->add_option("--config", be_config, "Config file")->required()->check(CLI::ExistingFile);
  be->add_option("--out", be_out, "Append rows to this CSV (default stdout)");
  be->add_option("--ratio-out", be_ratio, "Write naive/method wall-time ratios");
  be->add_option("--threads", be_threads, "Override the config's thread count");

  // estimate
  auto* est = app.add_subcommand("estimate", "Error-model quantities");
  est->require_subcommand(1);
  auto* front = est->add_subcommand("front", "Empirical ||AB|| / (||A|| ||B||) for an entry distribution");
  std::string fr_dist = "uniform01";
  std::size_t fr_n = 500, fr_trials = 25;
  std::uint64_t fr_seed = 0;
  front->add_option("--dist", fr_dist, "uniform01 | rademacher | normal | lognormal | student-t");
  front->add_option("--n", fr_n, "Size");
  front->add_option("--trials", fr_trials, "Trials");
  front->add_option("--seed", fr_seed, "Seed");

  auto* haar = est->add_subcommand("haar", "Moments of ||D1 Q D2||_F^2 over Haar Q");
  std::string ha_s1 = "type1", ha_s2 = "type1";
  std::size_t ha_n = 100;
  std::optional<double> ha_t;
  haar->add_option("--spectrum-a", ha_s1, "type1 | type3 | ones | CSV file");
  haar->add_option("--spectrum-b", ha_s2, "type1 | type3 | ones | CSV file");
  haar->add_option("--n", ha_n, "Size for named spectra");
  haar->add_option("--t", ha_t, "Deviation for the tail bound");

  auto* uni = est->add_subcommand("uniform", "E||AB||_F^2 for U(0,a) entries");
  std::size_t un_m = 1, un_n = 1, un_p = 1;
  double un_a = 1.0;
  uni->add_option("--m", un_m, "Rows of A")->required();
  uni->add_option("--n", un_n, "Columns of A, rows of B")->required();
  uni->add_option("--p", un_p, "Columns of B")->required();
  uni->add_option("--a", un_a, "Upper end of the entry range");

  auto* sk = est->add_subcommand("sketch", "Gaussian sketch of ||AB||_F^2");
  PairOptions sk_pair;
  std::size_t sk_k = 8;
  std::uint64_t sk_seed = 0;
  sk_pair.add(sk);
  sk->add_option("--k", sk_k, "Sketch width");
  sk->add_option("--seed", sk_seed, "Seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(gen_kind, gen_n, gen_seed, gen_block, gen_spectrum, gen_out);
    if (*mul) return cmd_multiply(mo);
    if (*sw) return cmd_sweep(sw_method, sw_order, sw_tols, sw_pair, sw_trials, sw_smax, sw_seed, sw_verbose);
    if (*sp) return cmd_spectra(sp_path, sp_kind, sp_n, sp_block, sp_seed, sp_which, sp_out);
    if (*be) return cmd_bench(be_config, be_out, be_ratio, be_threads);
    if (*front) {
      const auto fc = estimate_front_constant(parse_distribution(fr_dist), fr_n, fr_trials, fr_seed);
      json j{{"dist", fr_dist}, {"n", fr_n}, {"trials", fr_trials}, {"c", fc.c},
             {"stddev", fc.stddev}, {"c_sqrt_n", fc.c * std::sqrt(double(fr_n))}};
      std::cout << j.dump() << '\n';
      return 0;
    }
    if (*haar) {
      const auto d1 = load_vector(ha_s1, ha_n);
      const auto d2 = load_vector(ha_s2, ha_n);
      const HaarMoments m = HaarMoments::from_spectra(d1, d2);
      const auto r = haar_product_moments(m);
      json j{{"n", m.n}, {"alpha1", m.alpha1}, {"alpha2", m.alpha2}, {"beta1", m.beta1},
             {"beta2", m.beta2}, {"mean_sq", r.mean_sq}, {"variance", r.variance},
             {"raw_variance", r.raw_variance}, {"variance_clamped", r.variance_clamped},
             {"mean_norm", r.mean_norm}};
      if (ha_t) {
        double d2max = 0.0;
        for (double v : d2) d2max = std::max(d2max, std::abs(v));
        j["tail_bound"] = concentration_tail_bound(m, d2max, *ha_t);
      }
      std::cout << j.dump() << '\n';
      return 0;
    }
    if (*uni) {
      std::cout << json{{"mean_sq", uniform_product_moment(un_m, un_n, un_p, un_a)}}.dump() << '\n';
      return 0;
    }
    if (*sk) {
      const OperandPair p = load_pair(sk_pair.a(), sk_pair.b(), sk_seed);
      const double e = sketch_norm_estimate(p.a, p.b, sk_k, sk_seed);
      const double exact = frobenius_norm_sq(matmul_naive(p.a, p.b));
      std::cout << json{{"estimate", e}, {"exact", exact}}.dump() << '\n';
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
