// Command-line front end: gadget construction, reductions, symbolic
// determinant checks and the gadget benchmark sweep.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zplap/gadget.hpp"
#include "zplap/io.hpp"
#include "zplap/reduce.hpp"
#include "zplap/schur.hpp"
#include "zplap/symbolic.hpp"

using namespace zplap;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

namespace {

constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;
constexpr u64 kDefaultSeed = 0x5eedULL;
constexpr u64 kVerifyLimit = 1000000;

// Raised for bad arguments; main maps it to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

u64 seed_from_env() {
  const char* s = std::getenv("ZPLAP_SEED");
  if (!s || !*s) return kDefaultSeed;
  try {
    std::size_t used = 0;
    const u64 v = std::stoull(s, &used, 0);
    if (s[used] != '\0') throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("ZPLAP_SEED is not an unsigned integer: ") + s);
  }
}

std::int64_t micros_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count();
}

Prime reduction_prime(u64 p) {
  try {
    Prime q(p);
    require_reduction_prime(q);
    return q;
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  return f;
}

void emit(const json& report) { std::cout << report.dump() << std::endl; }

// Schur-complement check that a gadget is a unit-weight circuit of resistance r.
bool gadget_ok(const Circuit& c, u64 r) {
  return is_unit_weight(c.laplacian()) && verify_circuit(c) && c.resistance().value() == r;
}

// ---- gadget -------------------------------------------------------------

struct GadgetArgs {
  u64 p = 0, r = 0;
  bool naive = false;
  std::string out;
};

int cmd_gadget(const GadgetArgs& a) {
  const Prime p = reduction_prime(a.p);
  if (a.r < 1 || a.r >= a.p) throw UsageError("r must lie in [1, p-1]");
  const auto t0 = Clock::now();
  const Circuit c = a.naive ? build_resistance_naive(p, a.r) : build_resistance(p, a.r);
  const auto micros = micros_since(t0);
  const bool verified = gadget_ok(c, a.r);
  if (!a.out.empty()) {
    auto f = open_out(a.out);
    write_symmetric(f, c.laplacian());
  }
  emit({{"command", "gadget"},
        {"p", a.p},
        {"r", a.r},
        {"naive", a.naive},
        {"n", c.dim()},
        {"nnz", c.nnz()},
        {"max_deg", c.max_degree()},
        {"micros", micros},
        {"verified", verified}});
  return verified ? 0 : kVerifyFailed;
}

// ---- reduce -------------------------------------------------------------

struct ReduceArgs {
  std::string to, matrix, rhs, out;
  bool verify = false, no_verify = false;
};

bool small_instance(u64 p, std::size_t n) {
  u128 c = 1;
  for (std::size_t i = 0; i < n; ++i) {
    c *= p;
    if (c > kVerifyLimit) return false;
  }
  return true;
}

Vec load_rhs(const std::string& path, Prime p, std::size_t len) {
  if (path.empty()) return zeros(p, len);
  const VectorFile f = read_vector_file(path);
  if (!(f.p == p)) throw UsageError("rhs prime differs from the matrix prime");
  if (f.v.size() != len) throw UsageError("rhs length does not match the matrix rows");
  return f.v;
}

struct Verdict {
  std::optional<bool> ok;
  std::string method = "skipped";
  json checks = json::object();
};

// Structural post-conditions of each target.
void structural_checks(const std::string& to, const Reduction& r, Verdict& v) {
  const SpSymMatrix& m = r.matrix;
  const Prime p = m.prime();
  bool ok = true;
  if (to == "laplacian") {
    const bool lap = is_laplacian(m);
    v.checks["laplacian"] = lap;
    ok &= lap;
  }
  if (to == "unit" || to == "lowdeg") {
    const bool unit = is_unit_weight(m);
    v.checks["unit_weight"] = unit;
    ok &= unit;
  }
  if (to == "lowdeg") {
    const double cap = 100.0 * std::log(static_cast<double>(p.value()));
    const bool within = static_cast<double>(m.max_weighted_degree()) <= cap;
    v.checks["weighted_degree_cap"] = cap;
    v.checks["weighted_degree_within_cap"] = within;
    ok &= within;
  }
  if (to == "walk") {
    bool diag = true;
    for (std::size_t i = 0; i < m.dim(); ++i) diag &= m.get(i, i).value() == 1;
    v.checks["unit_diagonal"] = diag;
    ok &= diag;
  }
  v.ok = v.ok.value_or(true) && ok;
}

template <class Out>
void set_equality(const LinSystem<Fp>& in, const Out& out, bool enumerate, Verdict& v) {
  const auto s_in = solve_all(in);
  bool eq;
  if constexpr (std::is_same_v<Out, ExtReduction>) {
    eq = spaces_equal_under_map(s_in, solve_all(out.system()), out.back, out.matrix.field());
  } else {
    eq = spaces_equal_under_map(s_in, solve_all(out.system()), out.back);
  }
  v.checks["solution_sets_equal"] = eq;
  v.checks["input_solvable"] = !s_in.empty;
  bool ok = eq;
  v.method = "elimination";
  if (enumerate) {
    const bool same = enumerate_solutions(in) == elements(s_in, in.ctx.p);
    v.checks["enumeration_agrees"] = same;
    ok &= same;
    v.method = "elimination+enumeration";
  }
  v.ok = v.ok.value_or(true) && ok;
}

int cmd_reduce(const ReduceArgs& a) {
  static const std::vector<std::string> general = {"laplacian", "walk"};
  const bool from_general = std::find(general.begin(), general.end(), a.to) != general.end();
  json report = {{"command", "reduce"}, {"reduction", a.to}};
  Verdict v;
  std::optional<LinSystem<Fp>> input;
  u64 p = 0;
  std::size_t n_in = 0;

  auto decide = [&](bool& run, bool& enumerate) {
    const bool small = small_instance(p, n_in);
    run = !a.no_verify && (small || a.verify);
    enumerate = run && small;
    if (!run && !a.no_verify) {
      std::cerr << "warning: p^n exceeds " << kVerifyLimit << "; verification skipped (pass --verify to force)\n";
    }
  };

  if (a.to == "normwalk") {
    const SpSymMatrix l = read_symmetric_file(a.matrix);
    p = l.prime().value();
    reduction_prime(p);
    n_in = l.dim();
    const Vec b = load_rhs(a.rhs, l.prime(), l.dim());
    const ExtReduction r = laplacian_to_normalized_walk(l, b);
    bool run, enumerate;
    decide(run, enumerate);
    if (run) {
      bool diag = true;
      for (std::size_t i = 0; i < r.matrix.dim(); ++i) diag &= r.matrix.get(i, i) == r.matrix.field().one();
      v.checks["unit_diagonal"] = diag;
      v.ok = diag;
      set_equality(make_system(l, b), r, enumerate, v);
    }
    if (!a.out.empty()) {
      auto fm = open_out(a.out);
      write_ext_symmetric(fm, r.matrix);
      auto fv = open_out(a.out + ".rhs");
      write_ext_vector(fv, r.rhs, r.matrix.field());
    }
    report["nnz_in"] = r.stats.nnz_in;
    report["nnz_out"] = r.stats.nnz_out;
    report["maxdeg_out"] = r.stats.maxdeg_out;
    report["backmap_kind"] = to_string(r.back.kind);
    report["in_dim"] = n_in;
    report["out_dim"] = r.matrix.dim();
    report["t"] = r.matrix.field().t().value();
    report["micros"] = r.stats.micros;
  } else {
    std::optional<Reduction> red;
    if (from_general) {
      const SparseMatrix m = read_matrix_file(a.matrix);
      p = m.prime().value();
      reduction_prime(p);
      n_in = m.cols();
      const Vec b = load_rhs(a.rhs, m.prime(), m.rows());
      red = a.to == "laplacian" ? general_to_laplacian(m, b) : general_to_walk(m, b);
      input = make_system(m, b);
    } else if (a.to == "unit" || a.to == "lowdeg") {
      const SpSymMatrix l = read_symmetric_file(a.matrix);
      p = l.prime().value();
      reduction_prime(p);
      n_in = l.dim();
      const Vec b = load_rhs(a.rhs, l.prime(), l.dim());
      red = a.to == "unit" ? laplacian_to_unitweight(l, b) : laplacian_to_lowdegree(l, b);
      input = make_system(l, b);
    } else {
      throw UsageError("unknown reduction target " + a.to);
    }
    const Reduction& r = *red;
    bool run, enumerate;
    decide(run, enumerate);
    if (run) {
      structural_checks(a.to, r, v);
      set_equality(*input, r, enumerate, v);
    }
    if (!a.out.empty()) {
      auto fm = open_out(a.out);
      write_symmetric(fm, r.matrix);
      auto fv = open_out(a.out + ".rhs");
      write_vector(fv, r.rhs, r.matrix.prime());
    }
    report["nnz_in"] = r.stats.nnz_in;
    report["nnz_out"] = r.stats.nnz_out;
    report["maxdeg_out"] = r.stats.maxdeg_out;
    report["maxdeg_weighted_out"] = r.stats.maxdeg_weighted_out;
    report["replacements"] = r.stats.replacements;
    report["backmap_kind"] = to_string(r.back.kind);
    report["in_dim"] = n_in;
    report["out_dim"] = r.matrix.dim();
    report["micros"] = r.stats.micros;
  }
  report["p"] = p;
  report["verification"] = v.method;
  report["verified"] = v.ok ? json(*v.ok) : json(nullptr);
  report["checks"] = v.checks;
  emit(report);
  return v.ok.value_or(true) ? 0 : kVerifyFailed;
}

// ---- symdet -------------------------------------------------------------

struct SymdetArgs {
  std::string matrix;
  int trials = 20;
};

int cmd_symdet(const SymdetArgs& a, u64 seed) {
  const SparseMatrix m = read_matrix_file(a.matrix);
  if (m.rows() != m.cols()) throw UsageError("symdet needs a square matrix");
  const auto t0 = Clock::now();
  SymMatrix b = [&] {
    try {
      return reduce_to_mult3(m);
    } catch (const ZeroRow& e) {
      throw UsageError(e.what());
    }
  }();
  std::vector<std::vector<Fp>> dense(m.rows(), std::vector<Fp>(m.cols(), Fp::zero(m.prime())));
  for (const auto& [ij, v] : m.entries()) dense[ij.first][ij.second] = Fp(v, m.prime());
  const bool scalar_zero = determinant(dense, m.prime()).is_zero();

  json exact = nullptr, randomized = nullptr;
  try {
    exact = det_zero_exact(b);
  } catch (const TooLarge&) {
  }
  try {
    std::mt19937_64 rng(seed);
    randomized = det_zero_randomized(b, a.trials, rng);
  } catch (const DomainError&) {
  }
  // Both testers must agree with the scalar determinant whenever they ran;
  // a randomized "zero" can only be wrong in the one-sided direction.
  bool verified = true;
  if (!exact.is_null()) verified &= exact.get<bool>() == scalar_zero;
  if (!randomized.is_null()) verified &= randomized.get<bool>() == scalar_zero;
  emit({{"command", "symdet"},
        {"p", m.prime().value()},
        {"n", m.rows()},
        {"N", b.dim()},
        {"pdeg", b.pdeg()},
        {"maxm", b.maxm()},
        {"nnz", b.nnz()},
        {"det_zero_exact", exact},
        {"det_zero_randomized", randomized},
        {"trials", a.trials},
        {"scalar_det_zero", scalar_zero},
        {"seed", seed},
        {"micros", micros_since(t0)},
        {"verified", verified}});
  return verified ? 0 : kVerifyFailed;
}

// ---- bench --------------------------------------------------------------

struct BenchArgs {
  std::vector<u64> primes;
  int samples = 50;
  std::string csv = "-";
  unsigned threads = 0;
  bool naive = false;
};

struct BenchRow {
  u64 p = 0, r = 0;
  std::size_t nnz = 0, max_deg = 0;
  std::int64_t micros = 0;
  bool ok = false;
  std::string error;
};

int cmd_bench(const BenchArgs& a, u64 seed) {
  if (a.samples < 0) throw UsageError("samples must be non-negative");
  std::vector<Prime> primes;
  for (u64 p : a.primes) primes.push_back(reduction_prime(p));
  std::mt19937_64 rng(seed);
  std::vector<BenchRow> rows;
  for (const Prime& p : primes) {
    std::uniform_int_distribution<u64> pick(1, p.value() - 1);
    for (int s = 0; s < a.samples; ++s) {
      BenchRow row;
      row.p = p.value();
      row.r = pick(rng);
      rows.push_back(row);
    }
  }

  // Workers claim jobs by index; results land in fixed slots so output order
  // does not depend on scheduling.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      BenchRow& row = rows[k];
      try {
        const Prime p(row.p, Prime::Trusted{});
        const auto t0 = Clock::now();
        const Circuit c = a.naive ? build_resistance_naive(p, row.r) : build_resistance(p, row.r);
        row.micros = micros_since(t0);
        row.nnz = c.nnz();
        row.max_deg = c.max_degree();
        row.ok = gadget_ok(c, row.r);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  unsigned n = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(rows.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (a.csv != "-") {
    file = open_out(a.csv);
    out = &file;
  }
  *out << "p,r,nnz,max_deg,micros\n";
  std::size_t failed = 0;
  std::int64_t worst = 0;
  for (const auto& row : rows) {
    *out << row.p << ',' << row.r << ',' << row.nnz << ',' << row.max_deg << ',' << row.micros << '\n';
    worst = std::max(worst, row.micros);
    if (!row.ok) {
      ++failed;
      std::cerr << "verification failed: p=" << row.p << " r=" << row.r
                << (row.error.empty() ? "" : " (" + row.error + ")") << '\n';
    }
  }
  out->flush();
  const json summary = {{"command", "bench"},   {"rows", rows.size()},  {"failed", failed},
                        {"threads", n},         {"seed", seed},         {"max_micros", worst},
                        {"verified", failed == 0}};
  // Keep stdout pure CSV when the rows go there.
  (a.csv == "-" ? std::cerr : std::cout) << summary.dump() << std::endl;
  return failed ? kVerifyFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact reductions between linear-system classes over Z_p"};
  app.require_subcommand(1);

  GadgetArgs ga;
  auto* g = app.add_subcommand("gadget", "Build a unit-weight circuit with resistance r mod p");
  g->add_option("--p", ga.p, "Prime modulus (> 3)")->required();
  g->add_option("--r", ga.r, "Target resistance in [1, p-1]")->required();
  g->add_flag("--naive", ga.naive, "Use the O(p) path construction");
  g->add_option("--out", ga.out, "Write the circuit Laplacian here");

  ReduceArgs ra;
  auto* r = app.add_subcommand("reduce", "Reduce a linear system and certify the result");
  r->add_option("--to", ra.to, "Target class")
      ->required()
      ->check(CLI::IsMember({"laplacian", "unit", "lowdeg", "walk", "normwalk"}));
  r->add_option("--matrix", ra.matrix, "Input %%ZpMatrix file")->required()->check(CLI::ExistingFile);
  r->add_option("--rhs", ra.rhs, "Input %%ZpVector file (zero when omitted)")->check(CLI::ExistingFile);
  r->add_option("--out", ra.out, "Output matrix path; the rhs goes to <out>.rhs");
  auto* force = r->add_flag("--verify", ra.verify, "Verify even when p^n exceeds 10^6");
  r->add_flag("--no-verify", ra.no_verify, "Skip verification")->excludes(force);

  SymdetArgs sa;
  auto* s = app.add_subcommand("symdet", "Multiplicity-3 symbolic reduction and determinant tests");
  s->add_option("--matrix", sa.matrix, "Square %%ZpMatrix file")->required()->check(CLI::ExistingFile);
  s->add_option("--trials", sa.trials, "Schwartz-Zippel trials")->check(CLI::Range(1, 1000));

  BenchArgs ba;
  auto* b = app.add_subcommand("bench", "Gadget sweep over random resistances");
  b->add_option("--p-list", ba.primes, "Comma-separated primes")->required()->delimiter(',');
  b->add_option("--samples", ba.samples, "Random r per prime");
  b->add_option("--csv", ba.csv, "CSV output path, '-' for stdout");
  b->add_option("--threads", ba.threads, "Worker threads (0 = hardware)");
  b->add_flag("--naive", ba.naive, "Benchmark the path construction instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const u64 seed = seed_from_env();
    if (*g) return cmd_gadget(ga);
    if (*r) return cmd_reduce(ra);
    if (*s) return cmd_symdet(sa, seed);
    if (*b) return cmd_bench(ba, seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
