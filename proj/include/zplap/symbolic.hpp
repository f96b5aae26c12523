#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "zplap/matrix.hpp"

namespace zplap {

class ZeroRow : public Error {
 public:
  ZeroRow() : Error("matrix has an all-zero row") {}
};

// Sorted (variable, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Sparse multivariate polynomial over Z_q in canonical form: distinct
// monomials, no zero coefficients.
class Poly {
 public:
  explicit Poly(Prime q);
  static Poly constant(Fp c);
  static Poly variable(Prime q, std::uint32_t var);

  Prime field() const { return q_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, u64>& terms() const { return terms_; }
  std::uint32_t total_degree() const;
  // Summed exponent of `var` over all terms.
  std::uint64_t multiplicity(std::uint32_t var) const;
  Fp evaluate(const std::vector<Fp>& point) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(Fp c) const;
  void add_term(const Monomial& m, Fp c);

  friend bool operator==(const Poly& a, const Poly& b) { return a.q_ == b.q_ && a.terms_ == b.terms_; }

 private:
  Prime q_;
  std::map<Monomial, u64> terms_;
};

// n x n matrix of polynomials over Z_q in variables x_0 .. x_{vars-1}.
class SymMatrix {
 public:
  SymMatrix(Prime q, std::size_t n, std::size_t vars);

  Prime field() const { return q_; }
  std::size_t dim() const { return n_; }
  std::size_t num_vars() const { return vars_; }
  const Poly& get(std::size_t i, std::size_t j) const { return cells_.at(i * n_ + j); }
  void set(std::size_t i, std::size_t j, Poly v);

  // Maximum total degree over the entries.
  std::uint32_t pdeg() const;
  // Summed multiplicity of variable j across the matrix.
  std::uint64_t multiplicity(std::uint32_t var) const;
  std::uint64_t maxm() const;
  // Sum of all variable multiplicities.
  std::uint64_t nnz() const;
  std::vector<std::vector<Fp>> evaluate(const std::vector<Fp>& point) const;

 private:
  Prime q_;
  std::size_t n_, vars_;
  std::vector<Poly> cells_;
};

// Entry (i, j) is a fresh variable for every edge (i, j) of a bipartite graph
// with both sides indexed 0..n-1.
SymMatrix edmonds(Prime q, const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::size_t n);

// Skew-symmetric: A[i][j] = x_e, A[j][i] = -x_e for edge e = (i, j), i < j.
SymMatrix tutte(Prime q, const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::size_t n);

// Each row of A becomes a chain of equations with at most three terms. The
// result is square of size nnz(A); det(A) = 0 iff det of the result = 0.
SparseMatrix chain_expansion(const SparseMatrix& a);

// B = diag(b_1 .. b_N) * chain_expansion(A): degree 1, multiplicity <= 3.
SymMatrix reduce_to_mult3(const SparseMatrix& a);

// Exact determinant by dynamic programming over sets of used columns.
// Throws TooLarge above 24 rows or when the state space explodes.
Poly determinant(const SymMatrix& m);
bool det_zero_exact(const SymMatrix& m);

// Scalar determinant by Gaussian elimination.
Fp determinant(std::vector<std::vector<Fp>> a, Prime q);

// Schwartz-Zippel: false as soon as an evaluation is nonzero.
bool det_zero_randomized(const SymMatrix& m, int trials, std::mt19937_64& rng);

}  // namespace zplap
