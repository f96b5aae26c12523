#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "zplap/field.hpp"

namespace zplap {

class IndexCollision : public Error {
 public:
  IndexCollision() : Error("index map is not injective") {}
};

class NotLaplacian : public Error {
 public:
  NotLaplacian() : Error("matrix is not a Laplacian") {}
};

using Vec = std::vector<Fp>;
using ExtVec = std::vector<Ext>;

Vec zeros(Prime p, std::size_t n);
Vec ones(Prime p, std::size_t n);
// e_i - e_j
Vec chi(Prime p, std::size_t n, std::size_t i, std::size_t j);

// Rectangular sparse matrix over Z_p, used for general inputs A.
class SparseMatrix {
 public:
  SparseMatrix(Prime p, std::size_t rows, std::size_t cols);

  Prime prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fp get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Fp v);
  void add(std::size_t i, std::size_t j, Fp v);
  std::size_t nnz() const { return entries_.size(); }
  const std::map<std::pair<std::size_t, std::size_t>, u64>& entries() const { return entries_; }
  Vec multiply(const Vec& x) const;
  bool operator==(const SparseMatrix&) const = default;

 private:
  Prime p_;
  std::size_t rows_, cols_;
  std::map<std::pair<std::size_t, std::size_t>, u64> entries_;
};

// Sparse symmetric matrix over Z_p. Each row keeps its nonzeros in an
// ordered map, so (i, j) and (j, i) are written together and iteration is
// deterministic. No zero is ever stored.
class SpSymMatrix {
 public:
  using Row = std::map<std::size_t, u64>;

  SpSymMatrix(Prime p, std::size_t n);

  Prime prime() const { return p_; }
  std::size_t dim() const { return rows_.size(); }
  Fp get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Fp v);
  void add(std::size_t i, std::size_t j, Fp v);

  // Laplacian edge of weight w: off-diagonals -= w, both diagonals += w.
  // Parallel edges merge; an edge whose weight cancels disappears.
  void add_edge(std::size_t i, std::size_t j, Fp w);
  // Weight of edge (i, j), i.e. -M[i][j].
  Fp edge_weight(std::size_t i, std::size_t j) const { return -get(i, j); }

  // Appends k empty rows and returns the index of the first one.
  std::size_t add_vertices(std::size_t k);

  const Row& row(std::size_t i) const { return rows_.at(i); }
  // Nonzero positions counted over both triangles.
  std::size_t nnz() const;
  // Nonzero positions with i <= j.
  std::size_t stored_nnz() const;
  // Off-diagonal nonzeros in row v.
  std::size_t degree(std::size_t v) const;
  // Sum over u != v of (p - M[u][v]) mod p, saturated to 64 bits.
  u64 weighted_degree(std::size_t v) const;
  std::size_t max_degree() const;
  u64 max_weighted_degree() const;

  // Every upper-triangle entry (i <= j) in row-major order.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Fp>> upper_entries() const;

  Vec multiply(const Vec& x) const;
  ExtVec multiply(const ExtVec& x) const;
  SparseMatrix to_sparse() const;
  std::vector<std::vector<Fp>> to_dense() const;
  SpSymMatrix principal(const std::vector<std::size_t>& idx) const;

  friend bool operator==(const SpSymMatrix& a, const SpSymMatrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_;
  }

 private:
  void put(std::size_t i, std::size_t j, u64 v);
  Prime p_;
  std::vector<Row> rows_;
};

bool is_laplacian(const SpSymMatrix& m);

struct DegreeStats {
  std::size_t max_combinatorial = 0;
  u64 max_weighted = 0;
};

// Checked view of a matrix that satisfies the Laplacian predicate.
class LaplacianView {
 public:
  explicit LaplacianView(const SpSymMatrix& m);
  const SpSymMatrix& matrix() const { return *m_; }
  DegreeStats degrees() const;

 private:
  const SpSymMatrix* m_;
};

DegreeStats degrees(const LaplacianView& l);

// Entrywise sum after embedding A and B into an n-dimensional matrix.
SpSymMatrix add_padded(const SpSymMatrix& a, const SpSymMatrix& b, const std::vector<std::size_t>& embed_a,
                       const std::vector<std::size_t>& embed_b, std::size_t n);

// Symmetric matrix over the extension, used for the normalized walk output.
class ExtSymMatrix {
 public:
  using Row = std::map<std::size_t, Ext>;
  ExtSymMatrix(ExtField f, std::size_t n);
  const ExtField& field() const { return f_; }
  std::size_t dim() const { return rows_.size(); }
  Ext get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Ext& v);
  const Row& row(std::size_t i) const { return rows_.at(i); }
  std::size_t nnz() const;
  ExtVec multiply(const ExtVec& x) const;

 private:
  ExtField f_;
  std::vector<Row> rows_;
};

}  // namespace zplap
