// Exact rational arithmetic checks, including overflow detection.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "liesym/rational.hpp"

#include <cstdint>

using liesym::Rational;

TEST_CASE("normalization and equality") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(3, 1).is_integer());
    CHECK_FALSE(Rational(3, 2).is_integer());
}

TEST_CASE("field operations") {
    Rational a(3, 4), b(-5, 6);
    CHECK(a + b == Rational(-1, 12));
    CHECK(a - b == Rational(19, 12));
    CHECK(a * b == Rational(-5, 8));
    CHECK(a / b == Rational(-9, 10));
    CHECK(-a == Rational(-3, 4));
    CHECK(a.pow(3) == Rational(27, 64));
    CHECK(a.pow(-2) == Rational(16, 9));
    CHECK(Rational(5, 3) > Rational(3, 2));
}

TEST_CASE("division by zero throws") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("overflow throws instead of wrapping") {
    Rational big(INT64_MAX - 1, 1);
    CHECK_THROWS_AS(big * big, std::overflow_error);
    CHECK_THROWS_AS(big + big, std::overflow_error);
    // Intermediate products that cancel back into range are fine.
    Rational x(1, INT64_MAX / 4);
    CHECK(x / x == Rational(1));
}

TEST_CASE("string round trip") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("-7/2").str() == "-7/2");
    CHECK(Rational(5).str() == "5");
    CHECK_THROWS(Rational::parse("x"));
}
