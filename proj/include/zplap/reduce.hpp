#pragma once

#include <cstdint>
#include <string>

#include "zplap/matrix.hpp"
#include "zplap/solve.hpp"

namespace zplap {

struct ReductionStats {
  std::size_t nnz_in = 0;
  std::size_t nnz_out = 0;
  std::size_t maxdeg_out = 0;
  u64 maxdeg_weighted_out = 0;
  std::size_t replacements = 0;
  std::int64_t micros = 0;
};

// Output system (symmetric) plus the map that carries its solutions back.
struct Reduction {
  std::string name;
  SpSymMatrix matrix;
  Vec rhs;
  BackMap back;
  ReductionStats stats;

  LinSystem<Fp> system() const { return make_system(matrix, rhs); }
};

struct ExtReduction {
  std::string name;
  ExtSymMatrix matrix;
  ExtVec rhs;
  BackMap back;
  ReductionStats stats;

  LinSystem<Ext> system() const { return make_system(matrix, rhs); }
};

// In the Laplacian-to-Laplacian rewrites an empty b stands for the zero vector.

// 2(m+n)-dimensional Laplacian [[0,A,0,-A],[A^T,0,-A^T,0],[0,-A,0,A],[-A^T,0,A^T,0]]
// with rhs [b; 0; -b; 0].
Reduction general_to_laplacian(const SparseMatrix& a, const Vec& b);

// Every edge whose weight is not 1 becomes a unit-weight gadget.
Reduction laplacian_to_unitweight(const SpSymMatrix& l, const Vec& b);

// Splits edges until every diagonal entry is nonzero.
Reduction ensure_nonzero_diagonal(const SpSymMatrix& l, const Vec& b = {});

// Subdivides every edge (x, y, w) into (x, t, 2w), (t, y, 2w).
Reduction stretch(const SpSymMatrix& l, const Vec& b = {});

// Stretching followed by pairing at original vertices until their degree is
// at most 2; every vertex ends with degree at most 4.
Reduction decrease_combinatorial_degree(const SpSymMatrix& l, const Vec& b = {});

// Degree decrease followed by the unit-weight replacement.
Reduction laplacian_to_lowdegree(const SpSymMatrix& l, const Vec& b);

// 4(m+n)-dimensional walk matrix with all-ones diagonal.
Reduction general_to_walk(const SparseMatrix& a, const Vec& b);

// D^{-1/2} L D^{-1/2} over Z_p[sqrt t] after the diagonal fix-up.
ExtReduction laplacian_to_normalized_walk(const SpSymMatrix& l, const Vec& b);

// True when all off-diagonal entries are 0 or p - 1.
bool is_unit_weight(const SpSymMatrix& m);

}  // namespace zplap
