// Polynomial ring over the model parameters a, b, d, e with rational
// coefficients.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "liesym/parampoly.hpp"

using liesym::Param;
using liesym::ParamPoly;
using liesym::Rational;

TEST_CASE("construction and equality") {
    ParamPoly b = liesym::param_b();
    ParamPoly e = liesym::param_e();
    CHECK(b == b);
    CHECK_FALSE(b == e);
    CHECK((b - b).is_zero());
    CHECK(ParamPoly(Rational(0)).is_zero());
}

TEST_CASE("ring laws on sample elements") {
    ParamPoly a = liesym::param_a();
    ParamPoly b = liesym::param_b();
    ParamPoly d = liesym::param_d();
    ParamPoly p = a * b + ParamPoly(Rational(1, 2)) * d;
    ParamPoly q = b * b - a;
    ParamPoly r = d * a + ParamPoly(Rational(3));

    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK((p - p).is_zero());
}

TEST_CASE("difference of squares factors") {
    ParamPoly b = liesym::param_b();
    ParamPoly e = liesym::param_e();
    CHECK((b - e) * (b + e) == b * b - e * e);
}

TEST_CASE("pow and substitute") {
    ParamPoly b = liesym::param_b();
    ParamPoly e = liesym::param_e();
    CHECK(b.pow(3) == b * b * b);
    CHECK(b.pow(0) == ParamPoly(Rational(1)));

    // b^2 - e^2 vanishes after substituting e -> b.
    ParamPoly diff = b * b - e * e;
    CHECK(diff.substitute(Param::e, b).is_zero());
    CHECK_FALSE(diff.substitute(Param::e, -b + ParamPoly(Rational(1))).is_zero());
}

TEST_CASE("evaluation agrees with direct arithmetic") {
    ParamPoly a = liesym::param_a();
    ParamPoly b = liesym::param_b();
    ParamPoly d = liesym::param_d();
    ParamPoly e = liesym::param_e();
    ParamPoly p = a * b * b - d * e + ParamPoly(Rational(7, 3));

    std::array<Rational, 4> at{Rational(1, 4), Rational(2), Rational(1, 2),
                               Rational(-3)};
    Rational expect = Rational(1, 4) * Rational(4) -
                      Rational(1, 2) * Rational(-3) + Rational(7, 3);
    CHECK(p.eval(at) == expect);

    std::array<double, 4> atd{0.25, 2.0, 0.5, -3.0};
    CHECK(p.eval_double(atd) == doctest::Approx(expect.to_double()));
}

TEST_CASE("linearity check in b and e") {
    ParamPoly a = liesym::param_a();
    ParamPoly b = liesym::param_b();
    ParamPoly e = liesym::param_e();
    CHECK(b.is_linear_be());
    CHECK((b - e).is_linear_be());
    CHECK((b * ParamPoly(Rational(1, 2)) + ParamPoly(Rational(3))).is_linear_be());
    CHECK_FALSE((b * e).is_linear_be());
    CHECK_FALSE((b * b).is_linear_be());
    CHECK_FALSE(a.is_linear_be());
}

TEST_CASE("printing") {
    ParamPoly a = liesym::param_a();
    ParamPoly b = liesym::param_b();
    CHECK(ParamPoly(Rational(1, 4)).str() == "1/4");
    CHECK((ParamPoly(Rational(1, 4)) - a).str() == "-a + 1/4");
    CHECK((b * b - a).str() == "b^2 - a");
    CHECK(ParamPoly(Rational(0)).str() == "0");
}
