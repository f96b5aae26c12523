#include "zplap/gadget.hpp"

#include <stdexcept>
#include <utility>

#include "zplap/schur.hpp"

namespace zplap {

namespace {

// Edge-list form of a unit-weight circuit under construction. Terminal s is
// vertex 0; terminal t moves as series steps extend the circuit.
struct Builder {
  std::size_t n = 2;
  std::size_t t = 1;
  bool direct = false;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  static Builder unit() {
    Builder b;
    b.edges.push_back({0, 1});
    b.direct = true;
    return b;
  }

  void series_unit() {
    const std::size_t x = n++;
    edges.push_back({t, x});
    t = x;
    direct = false;
  }

  // Parallel unit edge; when a direct edge already exists the new unit edge
  // goes in as a rhombus.
  void parallel_unit() {
    if (!direct) {
      edges.push_back({0, t});
      direct = true;
      return;
    }
    const std::size_t u = n++, v = n++;
    edges.push_back({0, u});
    edges.push_back({u, t});
    edges.push_back({0, v});
    edges.push_back({v, t});
  }

  Circuit finish(Prime p, Fp weight) const {
    auto label = [this](std::size_t k) { return k == t ? 1 : (k == 1 ? t : k); };
    SpSymMatrix l(p, n);
    const Fp one = Fp::one(p);
    for (const auto& [a, b] : edges) l.add_edge(label(a), label(b), one);
    return Circuit(std::move(l), weight);
  }
};

i128 ceil_div(i128 num, i128 den) {
  i128 q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

// Integer representative of the near-fraction circuit for a / js.
i128 near_w(u64 p, i64 a, u64 js) {
  if (a == 0) return 1;
  if (a == static_cast<i64>(js)) return static_cast<i128>(p) + 1;
  if (a == -static_cast<i64>(js)) return 1 - static_cast<i128>(p);
  return ceil_div(static_cast<i128>(p) * a, js);
}

i128 product(const std::vector<u64>& primes) {
  i128 j = 1;
  for (u64 q : primes) j *= q;
  return j;
}

i128 mod_floor(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

Fp residue(i128 v, Prime p) { return Fp(static_cast<u64>(mod_floor(v, p.value())), p); }

}  // namespace

Circuit::Circuit(SpSymMatrix l, Fp weight) : l_(std::move(l)), w_(weight) {
  if (l_.dim() < 2) throw NotCircuit();
  if (w_.is_zero()) throw ZeroWeight();
}

Circuit Circuit::from_laplacian(SpSymMatrix l) {
  Fp w = circuit_weight(l);
  return Circuit(std::move(l), w);
}

bool Circuit::is_unit_weight() const {
  const u64 m1 = l_.prime().value() - 1;
  for (std::size_t i = 0; i < l_.dim(); ++i) {
    for (const auto& [j, v] : l_.row(i)) {
      if (j != i && v != m1) return false;
    }
  }
  return true;
}

Fp circuit_weight(const SpSymMatrix& l) {
  if (l.dim() < 2 || !is_laplacian(l)) throw NotCircuit();
  SpSymMatrix sc = schur(l, {0, 1});
  const Fp w = sc.get(0, 0);
  if (w.is_zero() || !(sc.get(1, 1) == w) || !(sc.get(0, 1) == -w)) throw NotCircuit();
  return w;
}

bool verify_circuit(const Circuit& c) {
  try {
    return circuit_weight(c.laplacian()) == c.weight();
  } catch (const Error&) {
    return false;
  }
}

Circuit unit(Prime p) { return Builder::unit().finish(p, Fp::one(p)); }

Circuit single_edge(Fp w) {
  SpSymMatrix l(w.prime(), 2);
  l.add_edge(0, 1, w);
  return Circuit(std::move(l), w);
}

Circuit rhombus(const Circuit& c) {
  const Fp w = c.laplacian().edge_weight(0, 1);
  if (w.is_zero()) return c;
  SpSymMatrix l = c.laplacian();
  l.add_edge(0, 1, -w);
  const std::size_t u = l.add_vertices(2), v = u + 1;
  l.add_edge(0, u, w);
  l.add_edge(u, 1, w);
  l.add_edge(0, v, w);
  l.add_edge(v, 1, w);
  return Circuit(std::move(l), c.weight());
}

Circuit seri(const Circuit& c1, const Circuit& c2) { return seri_chain({c1, c2}); }

Circuit seri_chain(const std::vector<Circuit>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty series chain");
  if (parts.size() == 1) return parts.front();
  const Prime p = parts.front().prime();
  const std::size_t k = parts.size();
  // Layout: [first terminal, last terminal, k-1 junctions, interiors in order].
  std::size_t n = 2 + (k - 1);
  for (const auto& c : parts) n += c.dim() - 2;
  SpSymMatrix l(p, n);
  Fp r = Fp::zero(p);
  std::size_t next = 2 + (k - 1);
  for (std::size_t s = 0; s < k; ++s) {
    const Circuit& c = parts[s];
    if (!(c.prime() == p)) throw std::invalid_argument("prime mismatch");
    const std::size_t left = s == 0 ? 0 : 1 + s;
    const std::size_t right = s + 1 == k ? 1 : 2 + s;
    const std::size_t base = next;
    auto at = [&](std::size_t v) { return v == 0 ? left : v == 1 ? right : base + v - 2; };
    for (const auto& [ij, v] : c.laplacian().upper_entries()) l.add(at(ij.first), at(ij.second), v);
    next += c.dim() - 2;
    r += c.resistance();
  }
  if (r.is_zero()) throw ZeroResistance();
  return Circuit(std::move(l), r.inv());
}

Circuit para(const Circuit& c1, const Circuit& c2) {
  if (!(c1.prime() == c2.prime())) throw std::invalid_argument("prime mismatch");
  const Fp w = c1.weight() + c2.weight();
  if (w.is_zero()) throw ZeroWeight();
  const Circuit second = (c1.has_direct_edge() && c2.has_direct_edge()) ? rhombus(c2) : c2;
  const std::size_t n1 = c1.dim(), n2 = second.dim();
  std::vector<std::size_t> e1(n1), e2(n2);
  for (std::size_t v = 0; v < n1; ++v) e1[v] = v;
  e2[0] = 0;
  e2[1] = 1;
  for (std::size_t v = 2; v < n2; ++v) e2[v] = n1 + v - 2;
  return Circuit(add_padded(c1.laplacian(), second.laplacian(), e1, e2, n1 + n2 - 2), w);
}

Circuit unit_path(Prime p, u64 len) {
  if (len == 0) throw std::invalid_argument("path length must be positive");
  Builder b = Builder::unit();
  for (u64 s = 1; s < len; ++s) b.series_unit();
  return b.finish(p, Fp(len, p).inv());
}

Circuit build_ratio(Prime p, u64 a, u64 b) {
  if (a == 0 || b == 0) throw std::invalid_argument("build_ratio needs positive a, b");
  const Fp fa(a, p), fb(b, p);
  if (fa.is_zero() || fb.is_zero()) throw std::invalid_argument("build_ratio arguments vanish mod p");
  // Record the Euclid steps outermost first, then replay from the unit.
  std::vector<char> series;
  while (a != b) {
    if (a > b) {
      series.push_back(1);
      a -= b;
    } else {
      series.push_back(0);
      b -= a;
    }
  }
  Builder g = Builder::unit();
  for (auto it = series.rbegin(); it != series.rend(); ++it) {
    if (*it) {
      g.series_unit();
    } else {
      g.parallel_unit();
    }
  }
  return g.finish(p, fb / fa);
}

NearFraction build_near_fraction(Prime p, i64 i, u64 j, u64 k) {
  const u64 pv = p.value();
  if (j < 1 || j > k || k >= pv) throw std::invalid_argument("near fraction needs 1 <= j <= k < p");
  const i64 sj = static_cast<i64>(j);
  if (i < -sj || i > sj) throw std::invalid_argument("near fraction needs -j <= i <= j");
  if (i == 0 || i == sj || i == -sj) {
    return {unit(p), near_w(pv, i, j)};
  }
  if (i < 0) {
    NearFraction up = build_near_fraction(p, sj + i, j, k);
    return {std::move(up.circuit), up.w - static_cast<i128>(pv)};
  }
  const i128 w = ceil_div(static_cast<i128>(pv) * i, j);
  // w j - p i lies in [1, j), so resistance a / j equals w mod p.
  const u64 a = static_cast<u64>(w * static_cast<i128>(j) - static_cast<i128>(pv) * i);
  return {build_ratio(p, a, j), w};
}

CrtPlan rev_crt(i128 i, const std::vector<u64>& primes) {
  CrtPlan plan;
  plan.primes = primes;
  plan.i = i;
  plan.j = product(primes);
  if (primes.empty()) throw std::invalid_argument("rev_crt needs at least one prime");
  if (i < -plan.j || i > plan.j) throw std::invalid_argument("rev_crt needs -j <= i <= j");
  plan.coeffs.assign(primes.size(), 0);
  i128 cur = i;
  i128 j = plan.j;
  for (std::size_t s = primes.size(); s-- > 1;) {
    const i128 jt = primes[s];
    const i128 rest = j / jt;
    const i128 inv = inv_mod(static_cast<u64>(rest % jt), static_cast<u64>(jt));
    i128 at = mod_floor(mod_floor(cur, jt) * inv, jt);
    i128 next = (cur - at * rest) / jt;
    if (next < -rest) {
      at -= jt;
      next += rest;
    }
    plan.coeffs[s] = static_cast<i64>(at);
    cur = next;
    j = rest;
  }
  plan.coeffs[0] = static_cast<i64>(cur);
  return plan;
}

std::vector<u64> small_primes_for(Prime p) {
  std::vector<u64> out;
  i128 prod = 1;
  for (u64 c = 2; prod < static_cast<i128>(p.value()); ++c) {
    bool prime = true;
    for (u64 q : out) {
      if (q * q > c) break;
      if (c % q == 0) {
        prime = false;
        break;
      }
    }
    if (!prime) continue;
    out.push_back(c);
    prod *= c;
  }
  return out;
}

i128 anchor(Prime p, i128 i, const std::vector<u64>& primes) {
  const i128 j = product(primes);
  if (i == 0) return 0;
  if (i == j + 1) return p.value();
  const CrtPlan plan = rev_crt(i, primes);
  i128 x = 0;
  for (std::size_t s = 0; s < primes.size(); ++s) x += near_w(p.value(), plan.coeffs[s], primes[s]);
  return x;
}

FractionChain compose_fraction(Prime p, i128 i, const std::vector<u64>& primes) {
  const CrtPlan plan = rev_crt(i, primes);
  std::vector<Circuit> parts;
  i128 w = 0;
  for (std::size_t s = 0; s < primes.size(); ++s) {
    NearFraction nf = build_near_fraction(p, plan.coeffs[s], primes[s], primes[s]);
    w += nf.w;
    parts.push_back(std::move(nf.circuit));
  }
  return {seri_chain(parts), w};
}

Circuit build_resistance_naive(Prime p, u64 r) {
  if (r == 0 || r >= p.value()) throw std::invalid_argument("resistance must lie in [1, p-1]");
  return unit_path(p, r);
}

Circuit build_resistance(Prime p, u64 r) {
  if (r == 0 || r >= p.value()) throw std::invalid_argument("resistance must lie in [1, p-1]");
  if (r == 1) return unit(p);
  const std::vector<u64> primes = small_primes_for(p);
  if (primes.back() >= p.value()) return build_resistance_naive(p, r);
  const i128 j = product(primes);
  const i128 target = r;
  // Invariant: anchor(lo) <= r < anchor(hi).
  i128 lo = 0, hi = j + 1, xlo = 0;
  while (hi - lo > 1) {
    const i128 mid = lo + (hi - lo) / 2;
    const i128 xm = anchor(p, mid, primes);
    if (xm <= target) {
      lo = mid;
      xlo = xm;
    } else {
      hi = mid;
    }
  }
  const i128 y = target - xlo;
  std::vector<Circuit> parts;
  if (lo > 0) {
    FractionChain fc = compose_fraction(p, lo, primes);
    if (fc.w != xlo) throw std::logic_error("anchor disagrees with its chain");
    parts.push_back(std::move(fc.circuit));
  }
  if (y > 0) parts.push_back(unit_path(p, static_cast<u64>(y)));
  Circuit c = seri_chain(parts);
  if (!(c.resistance() == residue(target, p))) throw std::logic_error("gadget resistance drifted");
  if (p.value() <= 13) {
    Circuit naive = build_resistance_naive(p, r);
    if (naive.nnz() <= c.nnz()) return naive;
  }
  return c;
}

}  // namespace zplap
