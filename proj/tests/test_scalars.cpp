#include <doctest.h>

#include "ardec/fp.hpp"
#include "ardec/rational.hpp"
#include "test_helpers.hpp"

using namespace ardec;
using ardec::testing::q;

TEST_CASE("rationals are canonical: lowest terms, positive denominator") {
  CHECK(q(2, 4).str() == "1/2");
  CHECK(q(1, -2).str() == "-1/2");
  CHECK(q(-6, -3).str() == "2");
  CHECK(q(0, 7).str() == "0");
  CHECK(q(2, 4) == q(1, 2));
  CHECK(q(2, 4).den() == 2);
}

TEST_CASE("rational arithmetic is exact and bit-stable") {
  const Rational a = q(22, 7), b = q(355, 113);
  CHECK((a + b) - b == a);
  CHECK((a / b) * b == a);
  CHECK(((a + b) - b).str() == a.str());
  CHECK(q(1, 3) + q(1, 6) == q(1, 2));
  CHECK(-q(3, 5) < q(0));
  CHECK_THROWS_AS(a / Rational(0), DomainError);
  CHECK_THROWS_AS(Rational(mpz_class(1), mpz_class(0)), DomainError);
}

TEST_CASE("rational parsing") {
  CHECK(*Rational::parse("3") == q(3));
  CHECK(*Rational::parse("-1/2") == q(-1, 2));
  CHECK(*Rational::parse("+4/6") == q(2, 3));
  CHECK(!Rational::parse("1/0"));
  CHECK(!Rational::parse("a"));
  CHECK(!Rational::parse("1.5"));
  CHECK(!Rational::parse(""));
  CHECK(!Rational::parse("1/"));
}

TEST_CASE("prime-field residues stay in [0, p)") {
  const Fp a(-1, 7);
  CHECK(a.value() == 6);
  CHECK((a + Fp(1, 7)).is_zero());
  CHECK((Fp(3, 7) * Fp(5, 7)).value() == 1);
  CHECK((Fp(1, 7) / Fp(3, 7)).value() == 5);
  CHECK((Fp(2, 5) - Fp(4, 5)).value() == 3);
}

TEST_CASE("unbound literals adopt a modulus on contact") {
  const Fp lit(10);
  CHECK(!lit.bound());
  const Fp bound = lit + Fp(0, 7);
  CHECK(bound.bound());
  CHECK(bound.value() == 3);
  CHECK((Fp(-1) * Fp(2, 5)).value() == 3);
  CHECK_THROWS_AS(Fp(1, 5) + Fp(1, 7), DomainError);
  CHECK_THROWS_AS(Fp(2, 7) / Fp(0, 7), DomainError);
}

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(Fp(1, 6), DomainError);
  CHECK_THROWS_AS(Fp(1, 1), DomainError);
  CHECK(is_prime_modulus(2));
  CHECK(is_prime_modulus(2147483647UL));
  CHECK(!is_prime_modulus(2147483649UL));
}
