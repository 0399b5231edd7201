#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "ardec/errors.hpp"

namespace ardec {

// Arbitrary-precision rational scalar over ℚ. Values are always kept in
// canonical form: lowest terms with positive denominator (mpq_class keeps the
// invariant for arithmetic results; constructors canonicalize explicitly).
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(int n) : q_(n) {}
  Rational(long n) : q_(n) {}
  explicit Rational(const mpz_class& n) : q_(n) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  bool is_zero() const { return q_ == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  // Canonical rendering: "p/q" with q > 0, plain "p" when q = 1.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  // Accepts "p", "-p", "p/q", "-p/q" in base 10. Returns nullopt on anything else.
  static std::optional<Rational> parse(std::string_view s) {
    auto is_int = [](std::string_view t) {
      if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
      if (t.empty()) return false;
      for (char c : t)
        if (c < '0' || c > '9') return false;
      return true;
    };
    const auto strip_plus = [](std::string_view t) {
      if (!t.empty() && t[0] == '+') t.remove_prefix(1);
      return std::string(t);
    };
    const auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    if (!is_int(num)) return std::nullopt;
    mpz_class n(strip_plus(num), 10);
    if (slash == std::string_view::npos) return Rational(n);
    std::string_view den = s.substr(slash + 1);
    if (!is_int(den)) return std::nullopt;
    mpz_class d(strip_plus(den), 10);
    if (d == 0) return std::nullopt;
    return Rational(n, d);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace ardec

namespace Eigen {

template <>
struct NumTraits<ardec::Rational> : GenericNumTraits<ardec::Rational> {
  using Real = ardec::Rational;
  using NonInteger = ardec::Rational;
  using Nested = ardec::Rational;
  using Literal = ardec::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64,
  };
  static inline Real epsilon() { return ardec::Rational(0); }
  static inline Real dummy_precision() { return ardec::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
