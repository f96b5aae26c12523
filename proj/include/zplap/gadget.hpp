#pragma once

#include <cstddef>
#include <vector>

#include "zplap/matrix.hpp"

namespace zplap {

class ZeroWeight : public Error {
 public:
  ZeroWeight() : Error("combined circuit weight is zero mod p") {}
};

class ZeroResistance : public Error {
 public:
  ZeroResistance() : Error("combined circuit resistance is zero mod p") {}
};

class NotCircuit : public Error {
 public:
  NotCircuit() : Error("matrix is not a two-terminal circuit") {}
};

// A Laplacian whose Schur complement onto terminals {0, 1} is
// weight * (e0 - e1)(e0 - e1)^T.
class Circuit {
 public:
  // Trusts the caller that `weight` is the true weight.
  Circuit(SpSymMatrix l, Fp weight);
  // Computes the weight with a Schur complement; throws NotCircuit.
  static Circuit from_laplacian(SpSymMatrix l);

  const SpSymMatrix& laplacian() const { return l_; }
  Prime prime() const { return l_.prime(); }
  Fp weight() const { return w_; }
  Fp resistance() const { return w_.inv(); }
  std::size_t dim() const { return l_.dim(); }
  std::size_t nnz() const { return l_.nnz(); }
  std::size_t max_degree() const { return l_.max_degree(); }
  bool is_unit_weight() const;
  bool has_direct_edge() const { return !l_.get(0, 1).is_zero(); }

 private:
  SpSymMatrix l_;
  Fp w_;
};

// Weight of a circuit computed from scratch. Throws NotCircuit if the
// complement onto {0, 1} is not a multiple of chi chi^T, SingularBlock if it
// does not exist.
Fp circuit_weight(const SpSymMatrix& l);

// Recomputes the weight and checks it against the stored one.
bool verify_circuit(const Circuit& c);

Circuit unit(Prime p);
// Single edge of weight w.
Circuit single_edge(Fp w);
// Rhombus: the direct terminal edge of weight w becomes two length-two paths
// of weight w per edge, which keeps the total weight.
Circuit rhombus(const Circuit& c);
Circuit seri(const Circuit& c1, const Circuit& c2);
// Series composition of many circuits at once. Only the total resistance
// has to be nonzero.
Circuit seri_chain(const std::vector<Circuit>& parts);
Circuit para(const Circuit& c1, const Circuit& c2);
// Unit path of length len (len >= 1).
Circuit unit_path(Prime p, u64 len);

// Euclid-style construction of resistance a / b, 1 <= a, b.
Circuit build_ratio(Prime p, u64 a, u64 b);

struct NearFraction {
  Circuit circuit;
  // Integer representative of the resistance: ceil(p i / j), or 1 when i = 0.
  i128 w;
};

// Circuit of resistance ceil(p i / j), for -j <= i <= j <= k < p.
NearFraction build_near_fraction(Prime p, i64 i, u64 j, u64 k);

struct CrtPlan {
  std::vector<u64> primes;
  std::vector<i64> coeffs;
  i128 i = 0;
  i128 j = 1;
};

// Writes i / j as sum a_s / j_s with |a_s| <= j_s, where j is the product of
// the distinct primes j_s.
CrtPlan rev_crt(i128 i, const std::vector<u64>& primes);

// Smallest prefix of the primes whose product is at least p.
std::vector<u64> small_primes_for(Prime p);

// Integer representative sum_s ceil(p a_s / j_s) of the chain for plan i.
i128 anchor(Prime p, i128 i, const std::vector<u64>& primes);

struct FractionChain {
  Circuit circuit;
  i128 w;
};

// Series chain of near-fraction circuits for plan i.
FractionChain compose_fraction(Prime p, i128 i, const std::vector<u64>& primes);

Circuit build_resistance(Prime p, u64 r);
Circuit build_resistance_naive(Prime p, u64 r);

}  // namespace zplap
