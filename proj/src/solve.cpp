#include "zplap/solve.hpp"

#include <stdexcept>

namespace zplap {

LinSystem<Fp> make_system(const SparseMatrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
  LinSystem<Fp> s{FieldCtx<Fp>{a.prime()}, a.rows(), a.cols(), {}, b};
  s.a.resize(a.rows());
  for (const auto& [ij, v] : a.entries()) s.a[ij.first].push_back({ij.second, Fp::raw(v, a.prime().value())});
  return s;
}

LinSystem<Fp> make_system(const SpSymMatrix& a, const Vec& b) {
  if (b.size() != a.dim()) throw std::invalid_argument("rhs length mismatch");
  LinSystem<Fp> s{FieldCtx<Fp>{a.prime()}, a.dim(), a.dim(), {}, b};
  s.a.resize(a.dim());
  const u64 p = a.prime().value();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (const auto& [j, v] : a.row(i)) s.a[i].push_back({j, Fp::raw(v, p)});
  }
  return s;
}

LinSystem<Ext> make_system(const ExtSymMatrix& a, const ExtVec& b) {
  if (b.size() != a.dim()) throw std::invalid_argument("rhs length mismatch");
  LinSystem<Ext> s{FieldCtx<Ext>{a.field()}, a.dim(), a.dim(), {}, b};
  s.a.resize(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (const auto& [j, v] : a.row(i)) s.a[i].push_back({j, v});
  }
  return s;
}

BackMap BackMap::projection(std::size_t in_dim, std::size_t out_dim) {
  if (out_dim > in_dim) throw std::invalid_argument("projection widens");
  BackMap m;
  m.kind = Kind::Projection;
  m.in_dim = in_dim;
  m.out_dim = out_dim;
  return m;
}

BackMap BackMap::difference(std::size_t in_dim, std::size_t out_dim, std::size_t pos, std::size_t neg) {
  if (pos + out_dim > in_dim || neg + out_dim > in_dim) throw std::invalid_argument("difference out of range");
  BackMap m;
  m.kind = Kind::Difference;
  m.in_dim = in_dim;
  m.out_dim = out_dim;
  m.pos = pos;
  m.neg = neg;
  return m;
}

BackMap BackMap::ext_normalized(ExtVec scale, std::size_t out_dim) {
  if (out_dim > scale.size()) throw std::invalid_argument("projection widens");
  BackMap m;
  m.kind = Kind::ExtNormalized;
  m.in_dim = scale.size();
  m.out_dim = out_dim;
  m.scale = std::move(scale);
  return m;
}

Vec BackMap::apply(const Vec& y) const {
  if (y.size() != in_dim) throw std::invalid_argument("back-map input length");
  switch (kind) {
    case Kind::Projection:
      return Vec(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(out_dim));
    case Kind::Difference: {
      Vec x(out_dim);
      for (std::size_t i = 0; i < out_dim; ++i) x[i] = y[pos + i] - y[neg + i];
      return x;
    }
    case Kind::ExtNormalized:
      break;
  }
  throw std::logic_error("extension back-map applied to a base-field vector");
}

Vec BackMap::apply(const ExtVec& y) const {
  if (kind != Kind::ExtNormalized) throw std::logic_error("base-field back-map applied to an extension vector");
  if (y.size() != in_dim) throw std::invalid_argument("back-map input length");
  Vec x(out_dim);
  for (std::size_t i = 0; i < out_dim; ++i) {
    // (z + conj z) / 2 is the rational part of z.
    Ext z = scale[i] * y[i];
    Ext s = z + z.conj();
    x[i] = s.a() * Fp(2, z.a().prime()).inv();
  }
  return x;
}

const char* to_string(BackMap::Kind k) {
  switch (k) {
    case BackMap::Kind::Projection:
      return "projection";
    case BackMap::Kind::Difference:
      return "difference";
    case BackMap::Kind::ExtNormalized:
      return "ext_normalized";
  }
  return "?";
}

AffineSpace<Fp> image(const AffineSpace<Fp>& s, const BackMap& m) {
  AffineSpace<Fp> out;
  out.dim = m.out_dim;
  out.empty = s.empty;
  if (s.empty) return out;
  out.particular = m.apply(s.particular);
  for (const auto& v : s.basis) out.basis.push_back(m.apply(v));
  canonicalize(out);
  return out;
}

AffineSpace<Fp> image(const AffineSpace<Ext>& s, const BackMap& m, const ExtField& f) {
  AffineSpace<Fp> out;
  out.dim = m.out_dim;
  out.empty = s.empty;
  if (s.empty) return out;
  out.particular = m.apply(s.particular);
  // The extension span of v is the Z_p span of v and sqrt(t) v.
  const Ext r = f.sqrt_t();
  for (const auto& v : s.basis) {
    out.basis.push_back(m.apply(v));
    ExtVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = r * v[i];
    out.basis.push_back(m.apply(w));
  }
  canonicalize(out);
  return out;
}

bool spaces_equal_under_map(const AffineSpace<Fp>& s1, const AffineSpace<Fp>& s2, const BackMap& m) {
  return image(s2, m) == s1;
}

bool spaces_equal_under_map(const AffineSpace<Fp>& s1, const AffineSpace<Ext>& s2, const BackMap& m,
                            const ExtField& f) {
  return image(s2, m, f) == s1;
}

VecKey key(const Vec& v) {
  VecKey k(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) k[i] = v[i].value();
  return k;
}

namespace {

bool bounded_power(u64 p, std::size_t n, u64 limit) {
  u128 c = 1;
  for (std::size_t i = 0; i < n; ++i) {
    c *= p;
    if (c > limit) return false;
  }
  return true;
}

}  // namespace

std::set<VecKey> enumerate_solutions(const LinSystem<Fp>& sys) {
  const Prime p = sys.ctx.p;
  const std::size_t n = sys.cols;
  if (!bounded_power(p.value(), n, 1000000)) throw TooLarge("p^n exceeds 10^6");
  std::set<VecKey> out;
  Vec x = zeros(p, n);
  while (true) {
    if (zplap::apply(sys, x) == sys.b) out.insert(key(x));
    std::size_t i = 0;
    while (i < n) {
      x[i] += Fp::one(p);
      if (!x[i].is_zero()) break;
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

std::set<VecKey> elements(const AffineSpace<Fp>& s, Prime p, std::size_t limit) {
  std::set<VecKey> out;
  if (s.empty) return out;
  const std::size_t d = s.basis.size();
  if (!bounded_power(p.value(), d, limit)) throw TooLarge("affine space too large to list");
  Vec coeff = zeros(p, d);
  while (true) {
    Vec x = s.particular;
    for (std::size_t k = 0; k < d; ++k) {
      if (coeff[k].is_zero()) continue;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += coeff[k] * s.basis[k][i];
    }
    out.insert(key(x));
    std::size_t i = 0;
    while (i < d) {
      coeff[i] += Fp::one(p);
      if (!coeff[i].is_zero()) break;
      ++i;
    }
    if (i == d) break;
  }
  return out;
}

}  // namespace zplap
