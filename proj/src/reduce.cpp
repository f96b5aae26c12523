#include "zplap/reduce.hpp"

#include <chrono>
#include <stdexcept>

#include "zplap/gadget.hpp"
#include "zplap/schur.hpp"

namespace zplap {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t micros_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count();
}

Vec rhs_or_zero(const Vec& b, Prime p, std::size_t n) {
  if (b.empty()) return zeros(p, n);
  if (b.size() != n) throw std::invalid_argument("rhs length mismatch");
  return b;
}

// [b; 0] up to length n.
Vec padded(Vec b, Prime p, std::size_t n) {
  b.resize(n, Fp::zero(p));
  return b;
}

void fill_stats(ReductionStats& s, std::size_t nnz_in, const SpSymMatrix& out, Clock::time_point t0) {
  s.nnz_in = nnz_in;
  s.nnz_out = out.nnz();
  s.maxdeg_out = out.max_degree();
  s.maxdeg_weighted_out = out.max_weighted_degree();
  s.micros = micros_since(t0);
}

Reduction rewrite_result(std::string name, SpSymMatrix out, const SpSymMatrix& in, const Vec& b, std::size_t repl,
                         Clock::time_point t0) {
  Reduction r{std::move(name), std::move(out), {}, {}, {}};
  const Prime p = in.prime();
  r.rhs = padded(rhs_or_zero(b, p, in.dim()), p, r.matrix.dim());
  r.back = BackMap::projection(r.matrix.dim(), in.dim());
  r.stats.replacements = repl;
  fill_stats(r.stats, in.nnz(), r.matrix, t0);
  return r;
}

void require_laplacian(const SpSymMatrix& l) {
  require_reduction_prime(l.prime());
  LaplacianView check(l);
}

// The strictly upper triangle, row-major.
std::vector<std::pair<std::pair<std::size_t, std::size_t>, Fp>> off_diagonal(const SpSymMatrix& m) {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Fp>> out;
  for (const auto& e : m.upper_entries()) {
    if (e.first.first != e.first.second) out.push_back(e);
  }
  return out;
}

SpSymMatrix stretched(const SpSymMatrix& l) {
  SpSymMatrix m = l;
  const Fp two(2, l.prime());
  for (const auto& [ij, v] : off_diagonal(l)) {
    const Fp w = -v;
    const std::size_t t = m.add_vertices(1);
    m.add_edge(ij.first, ij.second, -w);
    m.add_edge(ij.first, t, two * w);
    m.add_edge(t, ij.second, two * w);
  }
  return m;
}

SpSymMatrix degree_decreased(const SpSymMatrix& l) {
  SpSymMatrix m = stretched(l);
  const Prime p = l.prime();
  const Fp one = Fp::one(p), two(2, p);
  for (std::size_t v = 0; v < l.dim(); ++v) {
    while (m.degree(v) > 2) {
      std::vector<std::pair<std::size_t, Fp>> inc;
      for (const auto& [u, x] : m.row(v)) {
        if (u != v) inc.push_back({u, -Fp::raw(x, p.value())});
      }
      for (std::size_t k = 0; k + 1 < inc.size(); k += 2) {
        const auto [v1, w1] = inc[k];
        const auto [v2, w2] = inc[k + 1];
        m.add_edge(v, v1, -w1);
        m.add_edge(v, v2, -w2);
        const std::size_t t = m.add_vertices(1);
        const Fp s = w1 + w2;
        Fp a, b, c, d;
        if (!s.is_zero()) {
          a = two * s;
          b = two * w1;
          c = two * w2;
          d = -(w1 * w2 / s);
        } else {
          a = one;
          b = w1;
          c = w2;
          d = -(w1 * w2);
        }
        m.add_edge(t, v, a);
        m.add_edge(t, v1, b);
        m.add_edge(t, v2, c);
        m.add_edge(v1, v2, d);
      }
    }
  }
  return m;
}

SpSymMatrix unit_weighted(const SpSymMatrix& l, std::size_t& replacements) {
  SpSymMatrix m = l;
  const Prime p = l.prime();
  replacements = 0;
  for (const auto& [ij, v] : off_diagonal(l)) {
    if (v.value() == p.value() - 1) continue;
    const Fp w = -v;
    replace_edge_in_place(m, ij.first, ij.second, build_resistance(p, w.inv().value()));
    ++replacements;
  }
  return m;
}

// Weights (w1, w2) with 1/w1 + 1/w2 = 1/w that keep the diagonals of i, j
// and the new vertex nonzero, where i has diagonal 0 and j has diagonal t.
std::pair<Fp, Fp> split_weights(Fp w, Fp t) {
  const Prime p = w.prime();
  const Fp one = Fp::one(p);
  auto partner = [&](Fp w1) { return (w.inv() - w1.inv()).inv(); };
  auto ok = [&](Fp w1) {
    if (w1.is_zero() || w1 == w) return false;
    const Fp w2 = partner(w1);
    return !(w1 + w2).is_zero() && !(t - w + w2).is_zero();
  };
  std::vector<Fp> candidates;
  for (const Fp d : {t - one, t + one, t + one + one}) {
    if (!d.is_zero()) candidates.push_back(d.inv());
  }
  for (u64 c = 1; c < p.value() && c < 8; ++c) candidates.push_back(Fp(c, p));
  for (const Fp w1 : candidates) {
    if (ok(w1)) return {w1, partner(w1)};
  }
  throw std::logic_error("no admissible split");
}

SpSymMatrix diagonal_fixed(const SpSymMatrix& l) {
  SpSymMatrix m = l;
  const Prime p = l.prime();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (!m.get(i, i).is_zero()) continue;
    std::size_t j = i;
    for (const auto& [u, x] : m.row(i)) {
      if (u != i) {
        j = u;
        break;
      }
    }
    const std::size_t k = m.add_vertices(1);
    if (j == i) {
      // Isolated vertex: a pendant unit edge leaves the complement unchanged.
      m.add_edge(i, k, Fp::one(p));
      continue;
    }
    const Fp w = m.edge_weight(i, j);
    const auto [w1, w2] = split_weights(w, m.get(j, j));
    m.add_edge(i, j, -w);
    m.add_edge(i, k, w1);
    m.add_edge(k, j, w2);
  }
  return m;
}

}  // namespace

bool is_unit_weight(const SpSymMatrix& m) {
  const u64 m1 = m.prime().value() - 1;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (const auto& [j, v] : m.row(i)) {
      if (j != i && v != m1) return false;
    }
  }
  return true;
}

Reduction general_to_laplacian(const SparseMatrix& a, const Vec& b) {
  const auto t0 = Clock::now();
  const Prime p = a.prime();
  require_reduction_prime(p);
  if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t o2 = m, o3 = m + n, o4 = 2 * m + n;
  SpSymMatrix l(p, 2 * (m + n));
  for (const auto& [ij, raw] : a.entries()) {
    const Fp v = Fp::raw(raw, p.value());
    const auto [r, c] = ij;
    l.set(r, o2 + c, v);
    l.set(r, o4 + c, -v);
    l.set(o3 + r, o2 + c, -v);
    l.set(o3 + r, o4 + c, v);
  }
  Reduction out{"laplacian", std::move(l), zeros(p, 2 * (m + n)), BackMap::difference(2 * (m + n), n, o2, o4), {}};
  for (std::size_t r = 0; r < m; ++r) {
    out.rhs[r] = b[r];
    out.rhs[o3 + r] = -b[r];
  }
  fill_stats(out.stats, a.nnz(), out.matrix, t0);
  return out;
}

Reduction laplacian_to_unitweight(const SpSymMatrix& l, const Vec& b) {
  const auto t0 = Clock::now();
  require_laplacian(l);
  std::size_t repl = 0;
  SpSymMatrix out = unit_weighted(l, repl);
  return rewrite_result("unit", std::move(out), l, b, repl, t0);
}

Reduction ensure_nonzero_diagonal(const SpSymMatrix& l, const Vec& b) {
  const auto t0 = Clock::now();
  require_laplacian(l);
  SpSymMatrix out = diagonal_fixed(l);
  const std::size_t added = out.dim() - l.dim();
  return rewrite_result("nonzero_diagonal", std::move(out), l, b, added, t0);
}

Reduction stretch(const SpSymMatrix& l, const Vec& b) {
  const auto t0 = Clock::now();
  if (l.prime().value() <= 2) throw DomainError("stretching needs p > 2");
  LaplacianView check(l);
  SpSymMatrix out = stretched(l);
  const std::size_t added = out.dim() - l.dim();
  return rewrite_result("stretch", std::move(out), l, b, added, t0);
}

Reduction decrease_combinatorial_degree(const SpSymMatrix& l, const Vec& b) {
  const auto t0 = Clock::now();
  require_laplacian(l);
  SpSymMatrix out = degree_decreased(l);
  const std::size_t added = out.dim() - l.dim();
  return rewrite_result("degree_decrease", std::move(out), l, b, added, t0);
}

Reduction laplacian_to_lowdegree(const SpSymMatrix& l, const Vec& b) {
  const auto t0 = Clock::now();
  require_laplacian(l);
  std::size_t repl = 0;
  SpSymMatrix out = unit_weighted(degree_decreased(l), repl);
  return rewrite_result("lowdeg", std::move(out), l, b, repl, t0);
}

Reduction general_to_walk(const SparseMatrix& a, const Vec& b) {
  const auto t0 = Clock::now();
  const Prime p = a.prime();
  require_reduction_prime(p);
  if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
  const std::size_t m = a.rows(), n = a.cols(), k = 4 * (m + n);
  // Block offsets for the layout [m, n, m, n, m, n, m, n].
  std::size_t o[8];
  for (std::size_t s = 0, acc = 0; s < 8; ++s) {
    o[s] = acc;
    acc += (s % 2 == 0) ? m : n;
  }
  SpSymMatrix w(p, k);
  const Fp one = Fp::one(p);
  for (std::size_t i = 0; i < k; ++i) w.set(i, i, one);
  for (std::size_t s = 0; s < 4; ++s) {
    const std::size_t len = (s % 2 == 0) ? m : n;
    for (std::size_t i = 0; i < len; ++i) w.set(o[s] + i, o[s + 4] + i, -one);
  }
  for (const auto& [ij, raw] : a.entries()) {
    const Fp v = Fp::raw(raw, p.value());
    const auto [r, c] = ij;
    w.set(o[0] + r, o[1] + c, v);
    w.set(o[0] + r, o[3] + c, -v);
    w.set(o[2] + r, o[1] + c, -v);
    w.set(o[2] + r, o[3] + c, v);
  }
  Reduction out{"walk", std::move(w), zeros(p, k), BackMap::difference(k, n, o[1], o[3]), {}};
  for (std::size_t r = 0; r < m; ++r) {
    out.rhs[o[0] + r] = b[r];
    out.rhs[o[2] + r] = -b[r];
  }
  fill_stats(out.stats, a.nnz(), out.matrix, t0);
  return out;
}

ExtReduction laplacian_to_normalized_walk(const SpSymMatrix& l, const Vec& b) {
  const auto t0 = Clock::now();
  require_laplacian(l);
  const Prime p = l.prime();
  const SpSymMatrix fixed = diagonal_fixed(l);
  const Vec rhs = padded(rhs_or_zero(b, p, l.dim()), p, fixed.dim());
  const ExtField f(p);
  const std::size_t k = fixed.dim();
  // g = D^{-1/2}
  ExtVec g(k);
  for (std::size_t i = 0; i < k; ++i) g[i] = f.sqrt_ext(fixed.get(i, i).inv());
  ExtSymMatrix w(f, k);
  for (const auto& [ij, v] : fixed.upper_entries()) {
    const auto [i, j] = ij;
    w.set(i, j, g[i] * f.embed(v) * g[j]);
  }
  // W y = D^{-1/2} b  <=>  L (D^{-1/2} y) = b.
  ExtVec c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = g[i] * f.embed(rhs[i]);
  ExtReduction out{"normwalk", std::move(w), std::move(c), BackMap::ext_normalized(g, l.dim()), {}};
  out.stats.nnz_in = l.nnz();
  out.stats.nnz_out = out.matrix.nnz();
  out.stats.replacements = k - l.dim();
  std::size_t md = 0;
  for (std::size_t i = 0; i < k; ++i) md = std::max(md, fixed.degree(i));
  out.stats.maxdeg_out = md;
  out.stats.micros = micros_since(t0);
  return out;
}

}  // namespace zplap
