#pragma once

#include <cstddef>
#include <vector>

#include "zplap/matrix.hpp"

namespace zplap {

class Circuit;

class SingularBlock : public Error {
 public:
  SingularBlock() : Error("eliminated block is singular") {}
};

class WeightMismatch : public Error {
 public:
  WeightMismatch() : Error("circuit weight does not match the edge") {}
};

class SingularCenter : public Error {
 public:
  SingularCenter() : Error("star center has zero total weight") {}
};

// sc(M, T) = M_TT - M_TS M_SS^-1 M_ST, indexed by position in T.
// T must be sorted, duplicate free and nonempty. Throws SingularBlock when
// M_SS is singular mod p.
SpSymMatrix schur(const SpSymMatrix& m, const std::vector<std::size_t>& terminals);

// Terminal set {0, .., k-1}.
std::vector<std::size_t> first_indices(std::size_t k);

struct EdgeReplacement {
  SpSymMatrix u;
  // Solutions of the new system project back by truncating to this length.
  std::size_t kept;
};

// Swap edge (i0, j0) of L for circuit R. Interior vertices of R are appended
// after the existing ones; R's terminals land on i0 and j0.
EdgeReplacement replace_edge(const SpSymMatrix& l, std::size_t i0, std::size_t j0, const Circuit& r);

// In-place form of replace_edge used by the reductions.
void replace_edge_in_place(SpSymMatrix& l, std::size_t i0, std::size_t j0, const Circuit& r);

// Eliminates `center` from a Laplacian by joining its neighbours with a
// clique of weights w_i w_j / sum(w). Vertices after `center` shift down.
SpSymMatrix star_mesh(const SpSymMatrix& l, std::size_t center);

// sc(L, T1) == sc(sc(L, T2), T1) for T1 subset of T2.
bool check_commutativity(const SpSymMatrix& l, const std::vector<std::size_t>& t1, const std::vector<std::size_t>& t2);

}  // namespace zplap
