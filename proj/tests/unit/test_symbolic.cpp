#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "random.hpp"
#include "zplap/symbolic.hpp"

using namespace zplap;

namespace {

const Prime kQ((u64{1} << 61) - 1);

Monomial mono(std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> xs) { return Monomial(xs); }

SparseMatrix matrix(Prime q, const std::vector<std::vector<u64>>& rows) {
  SparseMatrix a(q, rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) a.set(i, j, Fp(rows[i][j], q));
  return a;
}

}  // namespace

TEST_CASE("polynomial canonical form") {
  const Prime q(101);
  const Poly x = Poly::variable(q, 0), y = Poly::variable(q, 1);
  CHECK((x - x).is_zero());
  const Poly s = (x + y) * (x - y);
  CHECK(s.terms().size() == 2);
  CHECK(s.terms().at(mono({{0, 2}})) == 1);
  CHECK(s.terms().at(mono({{1, 2}})) == 100);
  CHECK(s.total_degree() == 2);
  CHECK(s.evaluate({Fp(3, q), Fp(2, q)}).value() == 5);
  CHECK((x * y).terms().begin()->first == mono({{0, 1}, {1, 1}}));
  CHECK(Poly::constant(Fp(0, q)).is_zero());
}

TEST_CASE("edmonds examples") {
  const SymMatrix diag = edmonds(kQ, {{0, 0}, {1, 1}}, 2);
  CHECK(diag.pdeg() == 1);
  CHECK(diag.maxm() == 1);
  const Poly d = determinant(diag);
  CHECK(d.terms().size() == 1);
  CHECK(d.terms().at(mono({{0, 1}, {1, 1}})) == 1);

  CHECK(det_zero_exact(edmonds(kQ, {}, 2)));

  const Poly k22 = determinant(edmonds(kQ, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 2));
  CHECK(k22.terms().size() == 2);
  CHECK(k22.terms().at(mono({{0, 1}, {3, 1}})) == 1);
  CHECK(k22.terms().at(mono({{1, 1}, {2, 1}})) == kQ.value() - 1);
}

TEST_CASE("tutte examples") {
  const SymMatrix edge = tutte(kQ, {{0, 1}}, 2);
  CHECK(edge.maxm() == 2);
  const Poly d = determinant(edge);
  CHECK(d.terms().size() == 1);
  CHECK(d.terms().at(mono({{0, 2}})) == 1);
  CHECK(!det_zero_exact(edge));

  CHECK(det_zero_exact(tutte(kQ, {{0, 1}, {1, 2}}, 3)));
  CHECK(!det_zero_exact(tutte(kQ, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 4)));
  // Two disjoint triangles: no perfect matching.
  CHECK(det_zero_exact(tutte(kQ, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}, 6)));
}

TEST_CASE("symbolic determinant matches permutation expansion at random points") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = 2 + rng() % 4;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (gen::coin(0.5, rng)) edges.push_back({i, j});
    const SymMatrix m = edmonds(kQ, edges, n);
    const Poly d = determinant(m);
    std::vector<Fp> point;
    for (std::size_t v = 0; v < m.num_vars(); ++v) point.push_back(gen::element(kQ, rng));
    CHECK(d.evaluate(point) == oracle::permutation_det(m.evaluate(point), kQ));
    CHECK(determinant(m.evaluate(point), kQ) == oracle::permutation_det(m.evaluate(point), kQ));
  }
}

TEST_CASE("reduction to multiplicity three examples") {
  const SymMatrix singular = reduce_to_mult3(matrix(kQ, {{1, 1}, {1, 1}}));
  CHECK(singular.dim() == 4);
  CHECK(det_zero_exact(singular));
  const SymMatrix id = reduce_to_mult3(matrix(kQ, {{1, 0}, {0, 1}}));
  CHECK(!det_zero_exact(id));
  const SymMatrix one = reduce_to_mult3(matrix(kQ, {{2}}));
  CHECK(one.dim() == 1);
  CHECK(!det_zero_exact(one));
  CHECK_THROWS_AS(reduce_to_mult3(matrix(kQ, {{1, 2}, {0, 0}})), ZeroRow);
}

TEST_CASE("chain expansion keeps rows short and the determinant zero pattern") {
  std::mt19937_64 rng(9);
  const Prime q(101);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng() % 4;
    SparseMatrix a = gen::sparse(q, n, n, 0.6, rng);
    for (std::size_t i = 0; i < n; ++i)
      if (a.get(i, 0).is_zero() && a.get(i, n - 1).is_zero()) a.set(i, rng() % n, gen::nonzero(q, rng));
    bool zero_row = false;
    for (std::size_t i = 0; i < n; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) any |= !a.get(i, j).is_zero();
      zero_row |= !any;
    }
    if (zero_row) continue;
    const SparseMatrix hat = chain_expansion(a);
    CHECK(hat.rows() == a.nnz());
    std::vector<int> per_row(hat.rows(), 0);
    for (const auto& [ij, v] : hat.entries()) ++per_row[ij.first];
    for (int c : per_row) CHECK(c <= 3);
    const bool singular = oracle::permutation_det(oracle::dense(a), q).is_zero();
    if (hat.rows() <= 8) CHECK(oracle::permutation_det(oracle::dense(hat), q).is_zero() == singular);
    CHECK(determinant(oracle::dense(hat), q).is_zero() == singular);
    const SymMatrix b = reduce_to_mult3(a);
    CHECK(b.pdeg() == 1);
    CHECK(b.maxm() <= 3);
    CHECK(b.nnz() == hat.nnz());
  }
}

TEST_CASE("randomized determinant test") {
  std::mt19937_64 rng(77);
  CHECK(det_zero_randomized(SymMatrix(kQ, 3, 0), 20, rng));
  CHECK(!det_zero_randomized(tutte(kQ, {{0, 1}}, 2), 20, rng));
  CHECK(det_zero_randomized(tutte(kQ, {{0, 1}, {1, 2}}, 3), 20, rng));
  const Prime tiny(3);
  CHECK_THROWS_AS(det_zero_randomized(edmonds(tiny, {{0, 0}, {1, 1}}, 2), 5, rng), DomainError);
  for (int k = 0; k < 50; ++k) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (gen::coin(0.4, rng)) edges.push_back({i, j});
    const SymMatrix m = edmonds(kQ, edges, n);
    CHECK(det_zero_randomized(m, 20, rng) == det_zero_exact(m));
  }
}

TEST_CASE("exact determinant guard") {
  CHECK_THROWS_AS(det_zero_exact(SymMatrix(kQ, 25, 0)), TooLarge);
}
