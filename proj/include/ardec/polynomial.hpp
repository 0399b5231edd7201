#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ardec/errors.hpp"
#include "ardec/fp.hpp"
#include "ardec/matrix.hpp"
#include "ardec/rational.hpp"

namespace ardec {

// Dense univariate polynomial over an exact field. Coefficients are stored
// lowest degree first; the zero polynomial has no coefficients, every other
// polynomial has a nonzero trailing (leading-degree) coefficient.
template <class K>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<K> coeffs) : c_(coeffs) { normalize(); }

  static Polynomial one() { return Polynomial({K(1)}); }
  static Polynomial x() { return Polynomial({K(0), K(1)}); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == K(1); }
  // degree of the zero polynomial is -1
  Index degree() const { return static_cast<Index>(c_.size()) - 1; }

  K coeff(Index i) const {
    return (i >= 0 && i < static_cast<Index>(c_.size())) ? c_[i] : K(0);
  }
  const std::vector<K>& coeffs() const { return c_; }
  K leading() const { return c_.empty() ? K(0) : c_.back(); }

  K eval(const K& x) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const K& s, const Polynomial& p) {
    std::vector<K> r = p.c_;
    for (auto& c : r) c = s * c;
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  // Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<Polynomial, Polynomial> divrem(const Polynomial& d) const {
    if (d.is_zero()) throw DomainError("Polynomial: division by zero polynomial");
    std::vector<K> rem = c_;
    std::vector<K> quo;
    const Index dd = d.degree();
    while (static_cast<Index>(rem.size()) - 1 >= dd && !rem.empty()) {
      const K lead = rem.back();
      if (lead == K(0)) {
        rem.pop_back();
        continue;
      }
      const Index shift = static_cast<Index>(rem.size()) - 1 - dd;
      const K f = lead / d.leading();
      if (static_cast<Index>(quo.size()) < shift + 1) quo.resize(shift + 1, K(0));
      quo[shift] += f;
      for (Index i = 0; i <= dd; ++i) rem[shift + i] -= f * d.c_[i];
      rem.pop_back();
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return (K(1) / leading()) * *this;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<K> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = K(static_cast<int>(i)) * c_[i];
    return Polynomial(std::move(r));
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (Index i = degree(); i >= 0; --i) {
      if (c_[i] == K(0)) continue;
      std::ostringstream os;
      os << c_[i];
      std::string coeff = os.str();
      if (!s.empty()) {
        if (!coeff.empty() && coeff[0] == '-') {
          s += " - ";
          coeff.erase(0, 1);
        } else {
          s += " + ";
        }
      }
      std::string term;
      if (i == 0 || coeff != "1") term = coeff;
      if (i > 0) {
        if (!term.empty()) term += "*";
        term += "x";
        if (i > 1) term += "^" + std::to_string(i);
      }
      s += term;
    }
    return s;
  }

 private:
  std::vector<K> c_;

  void normalize() {
    while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
  }
};

template <class K>
Polynomial<K> poly_gcd(Polynomial<K> a, Polynomial<K> b) {
  while (!b.is_zero()) {
    auto [q, r] = a.divrem(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Characteristic polynomial det(x E - m) by the Berkowitz vector recursion:
// division-free, hence exact over any commutative coefficient ring.
template <class K>
Polynomial<K> char_poly(const Mat<K>& m) {
  if (m.rows() != m.cols()) throw DimensionError("char_poly: matrix not square");
  const Index n = m.rows();
  std::vector<K> c{K(1)};  // highest degree first
  for (Index k = 1; k <= n; ++k) {
    std::vector<K> q(k + 1, K(0));
    q[0] = K(1);
    q[1] = -m(k - 1, k - 1);
    if (k >= 2) {
      Vec<K> v = m.col(k - 1).head(k - 1);
      for (Index t = 2; t <= k; ++t) {
        K dot(0);
        for (Index j = 0; j < k - 1; ++j) dot += m(k - 1, j) * v(j);
        q[t] = -dot;
        if (t < k) v = (m.topLeftCorner(k - 1, k - 1) * v).eval();
      }
    }
    std::vector<K> next(k + 1, K(0));
    for (Index i = 0; i <= k; ++i)
      for (Index j = 0; j <= std::min<Index>(i, k - 1); ++j)
        if (i - j <= k) next[i] += q[i - j] * c[j];
    c = std::move(next);
  }
  std::reverse(c.begin(), c.end());
  return Polynomial<K>(std::move(c));
}

template <class K>
struct LinearRoots {
  std::vector<std::pair<K, Index>> roots;  // (root, multiplicity), canonically sorted
  Polynomial<K> nonsplit;                  // monic factor with no roots in the field
};

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> low, high;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      low.push_back(d);
      if (d * d != n) high.push_back(n / d);
    }
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

// Clears denominators and strips integer content; preserves the root set.
inline std::vector<mpz_class> primitive_integer_coeffs(const Polynomial<Rational>& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  std::vector<mpz_class> z;
  z.reserve(p.coeffs().size());
  mpz_class g = 0;
  for (const auto& c : p.coeffs()) {
    z.push_back(c.num() * (l / c.den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (g > 1)
    for (auto& c : z) c /= g;
  return z;
}

// Distinct rational roots of a squarefree rational polynomial, by the
// rational root theorem on its primitive integer form.
inline std::vector<Rational> rational_roots_squarefree(const Polynomial<Rational>& sf) {
  std::vector<Rational> roots;
  if (sf.degree() < 1) return roots;
  const auto z = primitive_integer_coeffs(sf);
  if (z.front() == 0) throw ConsistencyError("rational_roots: squarefree part has zero constant term");
  for (const auto& u : positive_divisors(z.front())) {
    for (const auto& w : positive_divisors(z.back())) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t());
      if (g != 1) continue;
      for (int s : {1, -1}) {
        const Rational cand(s < 0 ? mpz_class(-u) : u, w);
        if (sf.eval(cand).is_zero()) roots.push_back(cand);
      }
    }
  }
  return roots;
}

}  // namespace detail

// Splits off every linear factor over the active field. Over the rationals
// this runs a rational-root search on the primitive part of the squarefree
// reduction; over F_p it evaluates all residues. Multiplicities are taken
// from the input polynomial, and roots * nonsplit reassemble its monic
// normalization.
template <class K>
LinearRoots<K> linear_roots(const Polynomial<K>& p) {
  if (p.is_zero()) throw DomainError("linear_roots: zero polynomial");
  LinearRoots<K> out;
  Polynomial<K> work = p.monic();

  std::vector<K> candidates;
  if constexpr (std::is_same_v<K, Rational>) {
    Index zero_mult = 0;
    {
      auto x = Polynomial<K>::x();
      while (!work.is_zero() && work.coeff(0).is_zero() && work.degree() >= 1) {
        work = work.divrem(x).first;
        ++zero_mult;
      }
    }
    if (zero_mult > 0) out.roots.emplace_back(K(0), zero_mult);
    if (work.degree() >= 1) {
      const Polynomial<K> sf = work.divrem(poly_gcd(work, work.derivative())).first;
      candidates = detail::rational_roots_squarefree(sf);
    }
  } else {
    if (work.degree() >= 1) {
      unsigned long mod = 0;
      for (const auto& c : work.coeffs())
        if (c.bound()) mod = c.modulus();
      if (mod == 0)
        throw DomainError("linear_roots: cannot enumerate residues of an unbound F_p polynomial");
      for (unsigned long r = 0; r < mod; ++r) {
        const K cand(static_cast<long long>(r), mod);
        if (work.eval(cand).is_zero()) candidates.push_back(cand);
      }
    }
  }

  for (const K& r : candidates) {
    const Polynomial<K> lin({-r, K(1)});
    Index mult = 0;
    for (;;) {
      auto [q, rem] = work.divrem(lin);
      if (!rem.is_zero()) break;
      work = std::move(q);
      ++mult;
    }
    if (mult > 0) out.roots.emplace_back(r, mult);
  }

  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.nonsplit = work.monic();
  return out;
}

}  // namespace ardec
