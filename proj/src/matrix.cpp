#include "zplap/matrix.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace zplap {

Vec zeros(Prime p, std::size_t n) { return Vec(n, Fp::zero(p)); }

Vec ones(Prime p, std::size_t n) { return Vec(n, Fp::one(p)); }

Vec chi(Prime p, std::size_t n, std::size_t i, std::size_t j) {
  Vec v = zeros(p, n);
  v.at(i) += Fp::one(p);
  v.at(j) -= Fp::one(p);
  return v;
}

SparseMatrix::SparseMatrix(Prime p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols) {}

Fp SparseMatrix::get(std::size_t i, std::size_t j) const {
  auto it = entries_.find({i, j});
  return Fp::raw(it == entries_.end() ? 0 : it->second, p_.value());
}

void SparseMatrix::set(std::size_t i, std::size_t j, Fp v) {
  if (i >= rows_ || j >= cols_) throw std::out_of_range("SparseMatrix index");
  if (v.is_zero()) {
    entries_.erase({i, j});
  } else {
    entries_[{i, j}] = v.value();
  }
}

void SparseMatrix::add(std::size_t i, std::size_t j, Fp v) { set(i, j, get(i, j) + v); }

Vec SparseMatrix::multiply(const Vec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("dimension mismatch");
  Vec y = zeros(p_, rows_);
  for (const auto& [ij, v] : entries_) y[ij.first] += Fp::raw(v, p_.value()) * x[ij.second];
  return y;
}

SpSymMatrix::SpSymMatrix(Prime p, std::size_t n) : p_(p), rows_(n) {}

Fp SpSymMatrix::get(std::size_t i, std::size_t j) const {
  const Row& r = rows_.at(i);
  auto it = r.find(j);
  return Fp::raw(it == r.end() ? 0 : it->second, p_.value());
}

void SpSymMatrix::put(std::size_t i, std::size_t j, u64 v) {
  if (v == 0) {
    rows_[i].erase(j);
    rows_[j].erase(i);
  } else {
    rows_[i][j] = v;
    rows_[j][i] = v;
  }
}

void SpSymMatrix::set(std::size_t i, std::size_t j, Fp v) {
  if (i >= dim() || j >= dim()) throw std::out_of_range("SpSymMatrix index");
  put(i, j, v.value());
}

void SpSymMatrix::add(std::size_t i, std::size_t j, Fp v) { set(i, j, get(i, j) + v); }

void SpSymMatrix::add_edge(std::size_t i, std::size_t j, Fp w) {
  if (i == j) throw std::invalid_argument("self loop");
  add(i, j, -w);
  add(i, i, w);
  add(j, j, w);
}

std::size_t SpSymMatrix::add_vertices(std::size_t k) {
  std::size_t first = rows_.size();
  rows_.resize(first + k);
  return first;
}

std::size_t SpSymMatrix::nnz() const {
  std::size_t s = 0;
  for (const auto& r : rows_) s += r.size();
  return s;
}

std::size_t SpSymMatrix::stored_nnz() const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    s += static_cast<std::size_t>(std::distance(rows_[i].lower_bound(i), rows_[i].end()));
  }
  return s;
}

std::size_t SpSymMatrix::degree(std::size_t v) const {
  const Row& r = rows_.at(v);
  return r.size() - (r.count(v) ? 1 : 0);
}

u64 SpSymMatrix::weighted_degree(std::size_t v) const {
  u128 s = 0;
  for (const auto& [u, x] : rows_.at(v)) {
    if (u != v) s += p_.value() - x;
  }
  constexpr u64 cap = std::numeric_limits<u64>::max();
  return s > cap ? cap : static_cast<u64>(s);
}

std::size_t SpSymMatrix::max_degree() const {
  std::size_t m = 0;
  for (std::size_t v = 0; v < dim(); ++v) m = std::max(m, degree(v));
  return m;
}

u64 SpSymMatrix::max_weighted_degree() const {
  u64 m = 0;
  for (std::size_t v = 0; v < dim(); ++v) m = std::max(m, weighted_degree(v));
  return m;
}

std::vector<std::pair<std::pair<std::size_t, std::size_t>, Fp>> SpSymMatrix::upper_entries() const {
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Fp>> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (auto it = rows_[i].lower_bound(i); it != rows_[i].end(); ++it) {
      out.push_back({{i, it->first}, Fp::raw(it->second, p_.value())});
    }
  }
  return out;
}

Vec SpSymMatrix::multiply(const Vec& x) const {
  if (x.size() != dim()) throw std::invalid_argument("dimension mismatch");
  Vec y = zeros(p_, dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (const auto& [j, v] : rows_[i]) y[i] += Fp::raw(v, p_.value()) * x[j];
  }
  return y;
}

ExtVec SpSymMatrix::multiply(const ExtVec& x) const {
  if (x.size() != dim()) throw std::invalid_argument("dimension mismatch");
  ExtVec y(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    Ext acc = Ext::embed(Fp::zero(p_), x.empty() ? Fp::zero(p_) : x[0].t());
    for (const auto& [j, v] : rows_[i]) acc += Ext::embed(Fp::raw(v, p_.value()), acc.t()) * x[j];
    y[i] = acc;
  }
  return y;
}

SparseMatrix SpSymMatrix::to_sparse() const {
  SparseMatrix s(p_, dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (const auto& [j, v] : rows_[i]) s.set(i, j, Fp::raw(v, p_.value()));
  }
  return s;
}

std::vector<std::vector<Fp>> SpSymMatrix::to_dense() const {
  std::vector<std::vector<Fp>> d(dim(), zeros(p_, dim()));
  for (std::size_t i = 0; i < dim(); ++i) {
    for (const auto& [j, v] : rows_[i]) d[i][j] = Fp::raw(v, p_.value());
  }
  return d;
}

SpSymMatrix SpSymMatrix::principal(const std::vector<std::size_t>& idx) const {
  std::vector<std::size_t> pos(dim(), SIZE_MAX);
  for (std::size_t k = 0; k < idx.size(); ++k) pos.at(idx[k]) = k;
  SpSymMatrix out(p_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    for (const auto& [j, v] : rows_[idx[k]]) {
      if (pos[j] != SIZE_MAX) out.rows_[k][pos[j]] = v;
    }
  }
  return out;
}

bool is_laplacian(const SpSymMatrix& m) {
  u64 p = m.prime().value();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    u64 s = 0;
    for (const auto& [j, v] : m.row(i)) s = add_mod(s, v, p);
    if (s != 0) return false;
  }
  return true;
}

LaplacianView::LaplacianView(const SpSymMatrix& m) : m_(&m) {
  if (!is_laplacian(m)) throw NotLaplacian();
}

DegreeStats LaplacianView::degrees() const { return {m_->max_degree(), m_->max_weighted_degree()}; }

DegreeStats degrees(const LaplacianView& l) { return l.degrees(); }

SpSymMatrix add_padded(const SpSymMatrix& a, const SpSymMatrix& b, const std::vector<std::size_t>& embed_a,
                       const std::vector<std::size_t>& embed_b, std::size_t n) {
  if (!(a.prime() == b.prime())) throw std::invalid_argument("prime mismatch");
  auto check = [n](const std::vector<std::size_t>& e, std::size_t dim) {
    if (e.size() != dim) throw std::invalid_argument("embedding size mismatch");
    std::vector<char> seen(n, 0);
    for (std::size_t x : e) {
      if (x >= n) throw std::out_of_range("embedding target");
      if (seen[x]) throw IndexCollision();
      seen[x] = 1;
    }
  };
  check(embed_a, a.dim());
  check(embed_b, b.dim());
  SpSymMatrix out(a.prime(), n);
  for (const auto& [ij, v] : a.upper_entries()) out.add(embed_a[ij.first], embed_a[ij.second], v);
  for (const auto& [ij, v] : b.upper_entries()) out.add(embed_b[ij.first], embed_b[ij.second], v);
  return out;
}

ExtSymMatrix::ExtSymMatrix(ExtField f, std::size_t n) : f_(f), rows_(n) {}

Ext ExtSymMatrix::get(std::size_t i, std::size_t j) const {
  const Row& r = rows_.at(i);
  auto it = r.find(j);
  return it == r.end() ? f_.zero() : it->second;
}

void ExtSymMatrix::set(std::size_t i, std::size_t j, const Ext& v) {
  if (i >= dim() || j >= dim()) throw std::out_of_range("ExtSymMatrix index");
  if (v.is_zero()) {
    rows_[i].erase(j);
    rows_[j].erase(i);
  } else {
    rows_[i][j] = v;
    rows_[j][i] = v;
  }
}

std::size_t ExtSymMatrix::nnz() const {
  std::size_t s = 0;
  for (const auto& r : rows_) s += r.size();
  return s;
}

ExtVec ExtSymMatrix::multiply(const ExtVec& x) const {
  if (x.size() != dim()) throw std::invalid_argument("dimension mismatch");
  ExtVec y(dim(), f_.zero());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (const auto& [j, v] : rows_[i]) y[i] += v * x[j];
  }
  return y;
}

}  // namespace zplap
