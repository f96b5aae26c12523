#include "zplap/symbolic.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace zplap {

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].first, a[i].second + b[j].second});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly::Poly(Prime q) : q_(q) {}

Poly Poly::constant(Fp c) {
  Poly p(c.prime());
  p.add_term({}, c);
  return p;
}

Poly Poly::variable(Prime q, std::uint32_t var) {
  Poly p(q);
  p.add_term({{var, 1}}, Fp::one(q));
  return p;
}

void Poly::add_term(const Monomial& m, Fp c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(m, c.value());
  if (fresh) return;
  it->second = add_mod(it->second, c.value(), q_.value());
  if (it->second == 0) terms_.erase(it);
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) {
    std::uint32_t s = 0;
    for (const auto& ve : m) s += ve.second;
    d = std::max(d, s);
  }
  return d;
}

std::uint64_t Poly::multiplicity(std::uint32_t var) const {
  std::uint64_t s = 0;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) {
      if (v == var) s += e;
    }
  }
  return s;
}

Fp Poly::evaluate(const std::vector<Fp>& point) const {
  Fp acc = Fp::zero(q_);
  for (const auto& [m, c] : terms_) {
    Fp t = Fp::raw(c, q_.value());
    for (const auto& [v, e] : m) t *= point.at(v).pow(e);
    acc += t;
  }
  return acc;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, Fp::raw(c, q_.value()));
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const { return scaled(-Fp::one(q_)); }

Poly Poly::scaled(Fp c) const {
  Poly r(q_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, (Fp::raw(v, q_.value()) * c).value());
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(q_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      r.add_term(multiply(ma, mb), Fp::raw(mul_mod(ca, cb, q_.value()), q_.value()));
    }
  }
  return r;
}

SymMatrix::SymMatrix(Prime q, std::size_t n, std::size_t vars) : q_(q), n_(n), vars_(vars), cells_(n * n, Poly(q)) {}

void SymMatrix::set(std::size_t i, std::size_t j, Poly v) {
  if (i >= n_ || j >= n_) throw std::out_of_range("SymMatrix index");
  cells_[i * n_ + j] = std::move(v);
}

std::uint32_t SymMatrix::pdeg() const {
  std::uint32_t d = 0;
  for (const auto& c : cells_) d = std::max(d, c.total_degree());
  return d;
}

std::uint64_t SymMatrix::multiplicity(std::uint32_t var) const {
  std::uint64_t s = 0;
  for (const auto& c : cells_) s += c.multiplicity(var);
  return s;
}

std::uint64_t SymMatrix::maxm() const {
  std::vector<std::uint64_t> m(vars_, 0);
  for (const auto& c : cells_) {
    for (const auto& [mono, coeff] : c.terms()) {
      for (const auto& [v, e] : mono) m.at(v) += e;
    }
  }
  return m.empty() ? 0 : *std::max_element(m.begin(), m.end());
}

std::uint64_t SymMatrix::nnz() const {
  std::uint64_t s = 0;
  for (const auto& c : cells_) {
    for (const auto& [mono, coeff] : c.terms()) {
      for (const auto& ve : mono) s += ve.second;
    }
  }
  return s;
}

std::vector<std::vector<Fp>> SymMatrix::evaluate(const std::vector<Fp>& point) const {
  std::vector<std::vector<Fp>> out(n_, std::vector<Fp>(n_, Fp::zero(q_)));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = cells_[i * n_ + j].evaluate(point);
  }
  return out;
}

SymMatrix edmonds(Prime q, const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::size_t n) {
  SymMatrix m(q, n, edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    if (!m.get(i, j).is_zero()) throw std::invalid_argument("repeated edge");
    m.set(i, j, Poly::variable(q, static_cast<std::uint32_t>(e)));
  }
  return m;
}

SymMatrix tutte(Prime q, const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::size_t n) {
  SymMatrix m(q, n, edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [i, j] = edges[e];
    if (i == j) throw std::invalid_argument("self loop");
    if (i > j) std::swap(i, j);
    if (!m.get(i, j).is_zero()) throw std::invalid_argument("repeated edge");
    const Poly x = Poly::variable(q, static_cast<std::uint32_t>(e));
    m.set(i, j, x);
    m.set(j, i, -x);
  }
  return m;
}

SparseMatrix chain_expansion(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("chain expansion needs a square matrix");
  const Prime q = a.prime();
  const std::size_t n = a.rows();
  std::vector<std::vector<std::pair<std::size_t, Fp>>> rows(n);
  for (const auto& [ij, v] : a.entries()) rows[ij.first].push_back({ij.second, Fp::raw(v, q.value())});
  for (const auto& r : rows) {
    if (r.empty()) throw ZeroRow();
  }
  const std::size_t big = a.nnz();
  SparseMatrix out(q, big, big);
  const Fp one = Fp::one(q);
  std::size_t eq = 0, var = n;
  for (const auto& r : rows) {
    const std::size_t k = r.size();
    if (k == 1) {
      out.set(eq++, r[0].first, r[0].second);
      continue;
    }
    // v1 y1 + v2 y2 - z1 = 0, then z_{s-1} + v y - z_s = 0, then z_last = 0.
    std::size_t z = var++;
    out.set(eq, r[0].first, r[0].second);
    out.set(eq, r[1].first, r[1].second);
    out.set(eq++, z, -one);
    for (std::size_t s = 2; s < k; ++s) {
      const std::size_t zn = var++;
      out.set(eq, z, one);
      out.set(eq, r[s].first, r[s].second);
      out.set(eq++, zn, -one);
      z = zn;
    }
    out.set(eq++, z, one);
  }
  if (eq != big || var != big) throw std::logic_error("chain expansion miscounted");
  return out;
}

SymMatrix reduce_to_mult3(const SparseMatrix& a) {
  const SparseMatrix hat = chain_expansion(a);
  const Prime q = a.prime();
  const std::size_t big = hat.rows();
  SymMatrix b(q, big, big);
  for (const auto& [ij, v] : hat.entries()) {
    Poly cell(q);
    cell.add_term({{static_cast<std::uint32_t>(ij.first), 1}}, Fp::raw(v, q.value()));
    b.set(ij.first, ij.second, std::move(cell));
  }
  return b;
}

Poly determinant(const SymMatrix& m) {
  const std::size_t n = m.dim();
  const Prime q = m.field();
  if (n > 24) throw TooLarge("exact determinant limited to 24 rows");
  if (n == 0) return Poly::constant(Fp::one(q));
  constexpr std::size_t state_limit = 1u << 20;
  std::unordered_map<std::uint32_t, Poly> layer;
  layer.emplace(0u, Poly::constant(Fp::one(q)));
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c) {
      if (!m.get(r, c).is_zero()) cols.push_back(c);
    }
    std::unordered_map<std::uint32_t, Poly> next;
    for (const auto& [mask, val] : layer) {
      for (std::size_t c : cols) {
        const std::uint32_t bit = 1u << c;
        if (mask & bit) continue;
        const int above = std::popcount(mask >> (c + 1));
        Poly term = val * m.get(r, c);
        if (above % 2) term = -term;
        auto it = next.find(mask | bit);
        if (it == next.end()) {
          next.emplace(mask | bit, std::move(term));
        } else {
          it->second = it->second + term;
        }
      }
    }
    for (auto it = next.begin(); it != next.end();) {
      it = it->second.is_zero() ? next.erase(it) : std::next(it);
    }
    if (next.size() > state_limit) throw TooLarge("determinant state space too large");
    layer = std::move(next);
  }
  auto it = layer.find(static_cast<std::uint32_t>((u64{1} << n) - 1));
  return it == layer.end() ? Poly(q) : it->second;
}

bool det_zero_exact(const SymMatrix& m) { return determinant(m).is_zero(); }

Fp determinant(std::vector<std::vector<Fp>> a, Prime q) {
  const std::size_t n = a.size();
  Fp det = Fp::one(q);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return Fp::zero(q);
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const Fp inv = a[c][c].inv();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const Fp f = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

bool det_zero_randomized(const SymMatrix& m, int trials, std::mt19937_64& rng) {
  const Prime q = m.field();
  const u128 need = static_cast<u128>(2) * m.dim() * m.pdeg();
  if (static_cast<u128>(q.value()) < need) throw DomainError("evaluation field too small for Schwartz-Zippel");
  std::uniform_int_distribution<u64> pick(0, q.value() - 1);
  for (int t = 0; t < trials; ++t) {
    std::vector<Fp> point(m.num_vars());
    for (auto& x : point) x = Fp(pick(rng), q);
    if (!determinant(m.evaluate(point), q).is_zero()) return false;
  }
  return true;
}

}  // namespace zplap
