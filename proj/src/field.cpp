#include "zplap/field.hpp"

namespace zplap {

namespace {

u64 pow_mod64(u64 a, u64 e, u64 n) {
  u64 r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * a % n);
    a = static_cast<u64>(static_cast<u128>(a) * a % n);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 w : witnesses) {
    if (n % w == 0) return n == w;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 w : witnesses) {
    u64 x = pow_mod64(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<u64>(static_cast<u128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 prev_prime(u64 n) {
  for (u64 c = n; c >= 2; --c) {
    if (is_prime(c)) return c;
  }
  return 0;
}

Prime::Prime(u64 p) : p_(p) {
  if (p < 3 || p >= (u64{1} << 62) || !is_prime(p)) {
    throw DomainError("not an odd prime below 2^62: " + std::to_string(p));
  }
}

void require_reduction_prime(Prime p) {
  if (p.value() <= 3) throw DomainError("reductions require p > 3");
}

u64 pow_mod(u64 a, u64 e, u64 p) { return pow_mod64(a, e, p); }

u64 inv_mod(u64 a, u64 p) {
  a %= p;
  if (a == 0) throw ZeroInverse();
  // Extended Euclid on signed 128-bit to stay exact for p < 2^62.
  i128 r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    i128 q = r0 / r1;
    i128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (s0 < 0) s0 += p;
  return static_cast<u64>(s0);
}

Fp Fp::from_signed(i64 v, Prime p) {
  i64 m = static_cast<i64>(p.value());
  i64 r = v % m;
  if (r < 0) r += m;
  return Fp(static_cast<u64>(r), p);
}

Fp Fp::inv() const { return raw(inv_mod(v_, p_), p_); }

Fp inv(Fp x) { return x.inv(); }
Fp neg(Fp x) { return -x; }

bool is_residue(Fp x) {
  if (x.is_zero()) return true;
  return x.pow((x.modulus() - 1) / 2).value() == 1;
}

Fp find_nonresidue(Prime p) {
  for (u64 c = 2; c < p.value(); ++c) {
    Fp x(c, p);
    if (x.pow((p.value() - 1) / 2).value() == p.value() - 1) return x;
  }
  throw DomainError("no non-residue");
}

Fp sqrt_residue(Fp x, Fp z) {
  if (x.is_zero()) return x;
  const u64 p = x.modulus();
  if (!is_residue(x)) throw DomainError("sqrt of a non-residue");
  u64 q = p - 1;
  u64 s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Fp c = z.pow(q);
  Fp t = x.pow(q);
  Fp r = x.pow((q + 1) / 2);
  u64 m = s;
  while (t.value() != 1) {
    u64 i = 0;
    Fp tt = t;
    while (tt.value() != 1) {
      tt = tt * tt;
      ++i;
    }
    Fp b = c;
    for (u64 k = 0; k + i + 1 < m; ++k) b = b * b;
    m = i;
    c = b * b;
    t = t * c;
    r = r * b;
  }
  return r;
}

Ext Ext::inv() const {
  Fp norm = a_ * a_ - b_ * b_ * t_;
  Fp ni = norm.inv();
  return Ext(a_ * ni, -b_ * ni, t_);
}

ExtField::ExtField(Prime p) : p_(p), t_(find_nonresidue(p)) {}

ExtField::ExtField(Prime p, Fp t) : p_(p), t_(t) {
  if (is_residue(t)) throw DomainError("extension needs a non-residue");
}

Ext ExtField::sqrt_ext(Fp x) const {
  if (is_residue(x)) return Ext(sqrt_residue(x, t_), Fp::zero(p_), t_);
  Fp s = sqrt_residue(x * t_.inv(), t_);
  return Ext(Fp::zero(p_), s, t_);
}

Ext conjugate(const Ext& y) { return y.conj(); }

std::string to_string(Fp x) { return std::to_string(x.value()); }

std::string to_string(const Ext& x) {
  return "(" + std::to_string(x.a().value()) + ", " + std::to_string(x.b().value()) + ")";
}

}  // namespace zplap
