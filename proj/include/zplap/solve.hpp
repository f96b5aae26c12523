#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "zplap/field.hpp"
#include "zplap/matrix.hpp"

namespace zplap {

// Constants of the scalar field an element type lives in.
template <class T>
struct FieldCtx;

template <>
struct FieldCtx<Fp> {
  Prime p;
  Fp zero() const { return Fp::zero(p); }
  Fp one() const { return Fp::one(p); }
};

template <>
struct FieldCtx<Ext> {
  ExtField f;
  Ext zero() const { return f.zero(); }
  Ext one() const { return f.one(); }
};

template <class T>
struct LinSystem {
  FieldCtx<T> ctx;
  std::size_t rows = 0;
  std::size_t cols = 0;
  // Row-wise nonzeros, sorted by column.
  std::vector<std::vector<std::pair<std::size_t, T>>> a;
  std::vector<T> b;
};

LinSystem<Fp> make_system(const SparseMatrix& a, const Vec& b);
LinSystem<Fp> make_system(const SpSymMatrix& a, const Vec& b);
LinSystem<Ext> make_system(const ExtSymMatrix& a, const ExtVec& b);

// Solution set of a linear system in canonical form: the null basis is in
// reduced row echelon form and the particular solution is zero on every
// pivot column of that basis. Equal sets give equal representations.
template <class T>
struct AffineSpace {
  bool empty = true;
  std::size_t dim = 0;
  std::vector<T> particular;
  std::vector<std::vector<T>> basis;

  std::size_t rank() const { return basis.size(); }
  friend bool operator==(const AffineSpace& x, const AffineSpace& y) {
    if (x.empty || y.empty) return x.empty == y.empty && x.dim == y.dim;
    return x.dim == y.dim && x.particular == y.particular && x.basis == y.basis;
  }
};

template <class T>
void canonicalize(AffineSpace<T>& s) {
  if (s.empty) {
    s.particular.clear();
    s.basis.clear();
    return;
  }
  auto& m = s.basis;
  std::size_t r = 0;
  for (std::size_t c = 0; c < s.dim && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    T f = m[r][c].inv();
    for (auto& x : m[r]) x = x * f;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      T g = m[i][c];
      for (std::size_t k = c; k < s.dim; ++k) m[i][k] = m[i][k] - g * m[r][k];
    }
    ++r;
  }
  m.resize(r);
  for (const auto& row : m) {
    std::size_t c = 0;
    while (row[c].is_zero()) ++c;
    T g = s.particular[c];
    if (g.is_zero()) continue;
    for (std::size_t k = c; k < s.dim; ++k) s.particular[k] = s.particular[k] - g * row[k];
  }
}

namespace detail {

template <class T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

template <class T>
const T* find_col(const SparseRow<T>& row, std::size_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
  return (it != row.end() && it->first == c) ? &it->second : nullptr;
}

}  // namespace detail

// Sparse Gaussian elimination with a Markowitz-style pivot choice (fewest
// active rows in the column, then shortest row), followed by back
// substitution for a particular solution and one null vector per free column.
template <class T>
AffineSpace<T> solve_all(const LinSystem<T>& sys) {
  using Row = detail::SparseRow<T>;
  const auto& ctx = sys.ctx;
  std::vector<Row> rows = sys.a;
  std::vector<T> rhs = sys.b;
  const std::size_t nr = sys.rows, nc = sys.cols;

  std::vector<std::size_t> cnt(nc, 0);
  std::vector<std::vector<std::size_t>> col_rows(nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (const auto& [c, v] : rows[r]) {
      ++cnt[c];
      col_rows[c].push_back(r);
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t c = 0; c < nc; ++c) {
    if (cnt[c]) order.insert({cnt[c], c});
  }
  std::vector<char> row_active(nr, 1), col_done(nc, 0);
  auto bump = [&](std::size_t c, long delta) {
    if (col_done[c]) return;
    if (cnt[c]) order.erase({cnt[c], c});
    cnt[c] = static_cast<std::size_t>(static_cast<long>(cnt[c]) + delta);
    if (cnt[c]) order.insert({cnt[c], c});
  };

  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  Row merged;
  while (!order.empty()) {
    const std::size_t c = order.begin()->second;
    std::vector<std::size_t> cand;
    for (std::size_t r : col_rows[c]) {
      if (row_active[r] && detail::find_col(rows[r], c)) cand.push_back(r);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::size_t pr = cand.front();
    for (std::size_t r : cand) {
      if (rows[r].size() < rows[pr].size()) pr = r;
    }
    T f = detail::find_col(rows[pr], c)->inv();
    for (auto& e : rows[pr]) e.second = e.second * f;
    rhs[pr] = rhs[pr] * f;
    row_active[pr] = 0;
    for (const auto& e : rows[pr]) bump(e.first, -1);
    order.erase({cnt[c], c});
    col_done[c] = 1;

    for (std::size_t r2 : cand) {
      if (r2 == pr) continue;
      T g = *detail::find_col(rows[r2], c);
      merged.clear();
      const Row& a = rows[r2];
      const Row& b = rows[pr];
      std::size_t i = 0, j = 0;
      while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
          merged.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
          T v = ctx.zero() - g * b[j].second;
          if (!v.is_zero()) {
            merged.push_back({b[j].first, v});
            bump(b[j].first, +1);
            col_rows[b[j].first].push_back(r2);
          }
          ++j;
        } else {
          T v = a[i].second - g * b[j].second;
          if (!v.is_zero()) {
            merged.push_back({a[i].first, v});
          } else {
            bump(a[i].first, -1);
          }
          ++i;
          ++j;
        }
      }
      rows[r2].swap(merged);
      rhs[r2] = rhs[r2] - g * rhs[pr];
    }
    col_rows[c].clear();
    pivots.push_back({pr, c});
  }

  AffineSpace<T> out;
  out.dim = nc;
  for (std::size_t r = 0; r < nr; ++r) {
    if (row_active[r] && !rhs[r].is_zero()) {
      out.empty = true;
      return out;
    }
  }
  out.empty = false;

  auto back_substitute = [&](std::vector<T>& x, bool homogeneous) {
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
      const auto [r, c] = *it;
      T acc = homogeneous ? ctx.zero() : rhs[r];
      for (const auto& [k, v] : rows[r]) {
        if (k != c) acc = acc - v * x[k];
      }
      x[c] = acc;
    }
  };
  std::vector<char> is_pivot(nc, 0);
  for (const auto& pc : pivots) is_pivot[pc.second] = 1;

  out.particular.assign(nc, ctx.zero());
  back_substitute(out.particular, false);
  for (std::size_t f = 0; f < nc; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(nc, ctx.zero());
    v[f] = ctx.one();
    back_substitute(v, true);
    out.basis.push_back(std::move(v));
  }
  canonicalize(out);
  return out;
}

template <class T>
std::vector<T> apply(const LinSystem<T>& sys, const std::vector<T>& x) {
  std::vector<T> y(sys.rows, sys.ctx.zero());
  for (std::size_t r = 0; r < sys.rows; ++r) {
    for (const auto& [c, v] : sys.a[r]) y[r] = y[r] + v * x[c];
  }
  return y;
}

// True when every representative of the space really solves the system.
template <class T>
bool space_solves(const LinSystem<T>& sys, const AffineSpace<T>& s) {
  if (s.empty) return true;
  if (zplap::apply(sys, s.particular) != sys.b) return false;
  const std::vector<T> z(sys.rows, sys.ctx.zero());
  for (const auto& v : s.basis) {
    if (zplap::apply(sys, v) != z) return false;
  }
  return true;
}

// How an output solution maps back to an input solution.
struct BackMap {
  enum class Kind {
    Projection,     // x = y[0..n)
    Difference,     // x = y[pos..pos+n) - y[neg..neg+n)
    ExtNormalized,  // x = Re(g o y)[0..n), g = D^{-1/2}
  };
  Kind kind = Kind::Projection;
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::size_t pos = 0;
  std::size_t neg = 0;
  ExtVec scale;

  static BackMap projection(std::size_t in_dim, std::size_t out_dim);
  static BackMap difference(std::size_t in_dim, std::size_t out_dim, std::size_t pos, std::size_t neg);
  static BackMap ext_normalized(ExtVec scale, std::size_t out_dim);

  Vec apply(const Vec& y) const;
  Vec apply(const ExtVec& y) const;
};

const char* to_string(BackMap::Kind k);

// Image of a solution space under a back-map, in canonical form.
AffineSpace<Fp> image(const AffineSpace<Fp>& s, const BackMap& m);
AffineSpace<Fp> image(const AffineSpace<Ext>& s, const BackMap& m, const ExtField& f);

bool spaces_equal_under_map(const AffineSpace<Fp>& s1, const AffineSpace<Fp>& s2, const BackMap& m);
bool spaces_equal_under_map(const AffineSpace<Fp>& s1, const AffineSpace<Ext>& s2, const BackMap& m,
                            const ExtField& f);

using VecKey = std::vector<u64>;

// Brute force over all p^n vectors. Throws TooLarge above 10^6 candidates.
std::set<VecKey> enumerate_solutions(const LinSystem<Fp>& sys);

// All members of an affine space over Z_p. Throws TooLarge above `limit`.
std::set<VecKey> elements(const AffineSpace<Fp>& s, Prime p, std::size_t limit = 1000000);

VecKey key(const Vec& v);

}  // namespace zplap
