#include <doctest.h>

#include "cfl/rational.hpp"

using cfl::Rational;

TEST_CASE("construction normalizes sign and gcd") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).is_integer());
    CHECK_THROWS_AS(Rational(1, 0), cfl::error);
}

TEST_CASE("field operations are exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(a < Rational(1, 2));
    CHECK(Rational(-3, 2) < Rational(-1, 2));
    CHECK(Rational(5, 2).sign() == 1);
    CHECK(Rational(-5, 2).sign() == -1);
    CHECK(Rational(0).sign() == 0);
}

TEST_CASE("large intermediates go through 128-bit arithmetic") {
    // 13!!^2 / 2^14 appears in the order-13 derivative product.
    Rational p(1);
    for (int k = 0; k <= 13; ++k) p *= Rational(13, 2) - Rational(k);
    CHECK(p == Rational(-18261468225LL, 16384));
}

TEST_CASE("parse and print round-trip") {
    CHECK(Rational::parse("5/2") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("9/2").str() == "9/2");
    CHECK(Rational::parse("4/2").str() == "2");
    CHECK_THROWS_AS(Rational::parse("x/2"), cfl::error);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), cfl::error);
    CHECK_THROWS_AS(Rational::parse(""), cfl::error);
}

TEST_CASE("decimal parsing uses exact powers of ten") {
    CHECK(Rational::parse_decimal("0.6") == Rational(3, 5));
    CHECK(Rational::parse_decimal("-1.25") == Rational(-5, 4));
    CHECK(Rational::parse_decimal("2") == Rational(2));
    CHECK(Rational::parse_decimal("0.5").to_double() == 0.5);
}
