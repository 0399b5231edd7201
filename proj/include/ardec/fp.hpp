#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "ardec/errors.hpp"

namespace ardec {

// Primality by trial division; moduli are capped at 2^31 - 1 so products of
// two residues fit in a signed 64-bit intermediate.
inline bool is_prime_modulus(unsigned long p) {
  if (p < 2 || p > 0x7fffffffUL) return false;
  if (p % 2 == 0) return p == 2;
  for (unsigned long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

// Prime-field scalar. The modulus travels with the value; scalars built from
// bare integer literals carry modulus 0 ("unbound") and behave as plain
// integers until they touch a bound operand, at which point they are reduced.
// Bound residues lie in [0, p). Mixing two distinct bound moduli throws.
class Fp {
 public:
  Fp() = default;
  Fp(int n) : v_(n) {}
  Fp(long long n) : v_(n) {}
  Fp(long long n, unsigned long p) : p_(p) {
    if (!is_prime_modulus(p)) throw DomainError("Fp: modulus must be prime and < 2^31");
    v_ = reduce(n, p);
  }

  bool bound() const { return p_ != 0; }
  unsigned long modulus() const { return p_; }
  long long value() const { return v_; }

  bool is_zero() const { return v_ == 0; }

  // Returns a copy reduced into [0, p).
  Fp bind(unsigned long p) const {
    if (bound()) {
      if (p_ != p) throw DomainError("Fp: modulus mismatch");
      return *this;
    }
    return Fp(v_, p);
  }

  Fp& operator+=(const Fp& o) { return *this = add(*this, o); }
  Fp& operator-=(const Fp& o) { return *this = add(*this, o.negated()); }
  Fp& operator*=(const Fp& o) { return *this = mul(*this, o); }
  Fp& operator/=(const Fp& o) { return *this = div(*this, o); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  Fp operator-() const { return negated(); }

  friend bool operator==(const Fp& a, const Fp& b) {
    const Aligned al = align(a, b);
    return al.x == al.y;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
  // Order on the residue values; used only for canonical sorting.
  friend bool operator<(const Fp& a, const Fp& b) {
    const Aligned al = align(a, b);
    return al.x < al.y;
  }
  friend bool operator>(const Fp& a, const Fp& b) { return b < a; }
  friend bool operator<=(const Fp& a, const Fp& b) { return !(b < a); }
  friend bool operator>=(const Fp& a, const Fp& b) { return !(a < b); }

  std::string str() const { return std::to_string(v_); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) {
    return os << x.str();
  }

 private:
  long long v_ = 0;
  unsigned long p_ = 0;  // 0 = unbound literal

  static long long reduce(long long n, unsigned long p) {
    long long m = static_cast<long long>(p);
    long long r = n % m;
    return r < 0 ? r + m : r;
  }

  Fp negated() const {
    Fp r;
    r.p_ = p_;
    r.v_ = bound() ? (v_ == 0 ? 0 : static_cast<long long>(p_) - v_) : -v_;
    return r;
  }

  struct Aligned {
    long long x, y;
    unsigned long p;
  };
  static Aligned align(const Fp& a, const Fp& b) {
    if (a.bound() && b.bound()) {
      if (a.p_ != b.p_) throw DomainError("Fp: modulus mismatch");
      return {a.v_, b.v_, a.p_};
    }
    if (a.bound()) return {a.v_, reduce(b.v_, a.p_), a.p_};
    if (b.bound()) return {reduce(a.v_, b.p_), b.v_, b.p_};
    return {a.v_, b.v_, 0};
  }

  static Fp make(long long v, unsigned long p) {
    Fp r;
    r.v_ = p ? reduce(v, p) : v;
    r.p_ = p;
    return r;
  }

  static Fp add(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    return make(x + y, p);
  }

  static Fp mul(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    if (p) return make((x * y) % static_cast<long long>(p), p);
    __int128 wide = static_cast<__int128>(x) * y;
    if (wide > INT64_MAX || wide < INT64_MIN)
      throw DomainError("Fp: unbound literal product overflow");
    return make(static_cast<long long>(wide), 0);
  }

  static Fp div(const Fp& a, const Fp& b) {
    auto [x, y, p] = align(a, b);
    if (y == 0) throw DomainError("Fp: division by zero");
    if (p == 0) {
      if (x % y != 0)
        throw DomainError("Fp: inexact division of unbound literals");
      return make(x / y, 0);
    }
    return make((x * inverse(y, p)) % static_cast<long long>(p), p);
  }

  static long long inverse(long long a, unsigned long p) {
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(p), nr = a;
    while (nr != 0) {
      long long q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    return t < 0 ? t + static_cast<long long>(p) : t;
  }
};

inline Fp abs(const Fp& x) { return x; }

}  // namespace ardec

namespace Eigen {

template <>
struct NumTraits<ardec::Fp> : GenericNumTraits<ardec::Fp> {
  using Real = ardec::Fp;
  using NonInteger = ardec::Fp;
  using Nested = ardec::Fp;
  using Literal = ardec::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 8,
  };
  static inline Real epsilon() { return ardec::Fp(0); }
  static inline Real dummy_precision() { return ardec::Fp(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
