#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zplap {

// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroInverse : public Error {
 public:
  ZeroInverse() : Error("inverse of zero") {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

// Deterministic Miller-Rabin, exact for every n < 2^64.
bool is_prime(u64 n);

// Largest prime <= n, or 0 if none exists.
u64 prev_prime(u64 n);

// A validated odd prime below 2^62.
class Prime {
 public:
  explicit Prime(u64 p);
  // Skips validation; only for values that already came from a Prime.
  struct Trusted {};
  Prime(u64 p, Trusted) noexcept : p_(p) {}
  u64 value() const noexcept { return p_; }
  friend bool operator==(Prime, Prime) = default;

 private:
  u64 p_;
};

// Reject primes the reductions cannot handle (they need p > 3).
void require_reduction_prime(Prime p);

// Raw modular helpers on residues in [0, p).
inline u64 add_mod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 pow_mod(u64 a, u64 e, u64 p);
u64 inv_mod(u64 a, u64 p);

class Fp {
 public:
  Fp() = default;
  Fp(u64 v, Prime p) : v_(v % p.value()), p_(p.value()) {}
  static Fp from_signed(i64 v, Prime p);
  static Fp zero(Prime p) { return Fp(0, p); }
  static Fp one(Prime p) { return Fp(1, p); }

  u64 value() const noexcept { return v_; }
  Prime prime() const { return Prime(p_, Prime::Trusted{}); }
  u64 modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return v_ == 0; }

  Fp operator+(Fp o) const { return raw(add_mod(v_, o.v_, p_), p_); }
  Fp operator-(Fp o) const { return raw(sub_mod(v_, o.v_, p_), p_); }
  Fp operator*(Fp o) const { return raw(mul_mod(v_, o.v_, p_), p_); }
  Fp operator/(Fp o) const { return *this * o.inv(); }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  Fp inv() const;
  Fp pow(u64 e) const { return raw(pow_mod(v_, e, p_), p_); }

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }

  // Construct from an already reduced residue without revalidating p.
  static Fp raw(u64 v, u64 p) {
    Fp f;
    f.v_ = v;
    f.p_ = p;
    return f;
  }

 private:
  u64 v_ = 0;
  u64 p_ = 0;
};

Fp inv(Fp x);
Fp neg(Fp x);

// Euler's criterion; zero counts as a residue.
bool is_residue(Fp x);

// Smallest quadratic non-residue mod p.
Fp find_nonresidue(Prime p);

// Tonelli-Shanks. Requires x to be a residue.
Fp sqrt_residue(Fp x, Fp nonresidue);

// Element a + b*sqrt(t) of Z_p[sqrt t].
class Ext {
 public:
  Ext() = default;
  Ext(Fp a, Fp b, Fp t) : a_(a), b_(b), t_(t) {}
  static Ext embed(Fp a, Fp t) { return Ext(a, Fp::zero(a.prime()), t); }

  Fp a() const { return a_; }
  Fp b() const { return b_; }
  Fp t() const { return t_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  Ext operator+(const Ext& o) const { return Ext(a_ + o.a_, b_ + o.b_, t_); }
  Ext operator-(const Ext& o) const { return Ext(a_ - o.a_, b_ - o.b_, t_); }
  Ext operator*(const Ext& o) const { return Ext(a_ * o.a_ + b_ * o.b_ * t_, a_ * o.b_ + b_ * o.a_, t_); }
  Ext operator-() const { return Ext(-a_, -b_, t_); }
  Ext operator/(const Ext& o) const { return *this * o.inv(); }
  Ext& operator+=(const Ext& o) { return *this = *this + o; }
  Ext& operator-=(const Ext& o) { return *this = *this - o; }
  Ext& operator*=(const Ext& o) { return *this = *this * o; }

  // (a + b sqrt t)^-1 = (a - b sqrt t) / (a^2 - b^2 t)
  Ext inv() const;
  Ext conj() const { return Ext(a_, -b_, t_); }

  friend bool operator==(const Ext& x, const Ext& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  Fp a_, b_, t_;
};

// The quadratic extension Z_p[sqrt t] with t the smallest non-residue.
class ExtField {
 public:
  explicit ExtField(Prime p);
  ExtField(Prime p, Fp t);
  Prime prime() const { return p_; }
  Fp t() const { return t_; }
  Ext zero() const { return Ext::embed(Fp::zero(p_), t_); }
  Ext one() const { return Ext::embed(Fp::one(p_), t_); }
  Ext embed(Fp x) const { return Ext::embed(x, t_); }
  Ext make(Fp a, Fp b) const { return Ext(a, b, t_); }
  Ext sqrt_t() const { return Ext(Fp::zero(p_), Fp::one(p_), t_); }

  // A square root of x inside the extension.
  Ext sqrt_ext(Fp x) const;

 private:
  Prime p_;
  Fp t_;
};

Ext conjugate(const Ext& y);

std::string to_string(Fp x);
std::string to_string(const Ext& x);

}  // namespace zplap
