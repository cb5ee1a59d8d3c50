// Canonical expression algebra: arithmetic, differentiation, substitution,
// and numeric evaluation over the coordinate/jet atoms.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "liesym/expr.hpp"

#include <cmath>
#include <vector>

using namespace liesym;

namespace {

EvalPoint sample_point() {
    EvalPoint p;
    p.x = 1.7;
    p.y = 0.6;
    p.t = -0.3;
    p.u = 2.1;
    p.params = {0.25, 1.5, 0.5, -2.0};
    return p;
}

} // namespace

TEST_CASE("constants and zero detection") {
    CHECK(Expr::constant(Rational(0)).is_zero());
    CHECK((ex_x() - ex_x()).is_zero());
    CHECK_FALSE(ex_x().is_zero());
    CHECK((ex_x() * Expr::constant(Rational(0))).is_zero());
}

TEST_CASE("ring laws") {
    Expr p = ex_x() * ex_jet(1, 0, 0) + Expr::param(Param::b) * ex_t();
    Expr q = ex_sqrt_x() * ex_sqrt_y() - ex_u();
    Expr r = ex_exp_bt(1) * ex_y();
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
}

TEST_CASE("half powers multiply correctly") {
    CHECK(ex_sqrt_x() * ex_sqrt_x() == ex_x());
    Expr inv_sqrt = ex_x().pow_int(-1) * ex_sqrt_x();
    CHECK(inv_sqrt * ex_sqrt_x() == Expr::constant(Rational(1)));
}

TEST_CASE("half powers are rejected off x and y") {
    CHECK_THROWS_AS(Expr::atom(Atom::T(), 1), std::domain_error);
    CHECK_THROWS_AS(Expr::atom(Atom::U(), -2), std::domain_error);
    CHECK_THROWS_AS(Expr::atom(Atom::Jet(JetIndex{1, 0, 0}), 3),
                    std::domain_error);
}

TEST_CASE("differentiation basics") {
    CHECK(ex_x().diff(Atom::X()) == Expr::constant(Rational(1)));
    CHECK(ex_x().diff(Atom::Y()).is_zero());
    CHECK(ex_sqrt_x().diff(Atom::X()) ==
          Expr::constant(Rational(1, 2)) * ex_x().pow_int(-1) * ex_sqrt_x());
    // d/dt exp((b - e) t) = (b - e) exp((b - e) t)
    Expr g = Expr::exponential(1, -1, Rational(0));
    Expr expect = (Expr::param(Param::b) - Expr::param(Param::e)) * g;
    CHECK(g.diff(Atom::T()) == expect);
}

TEST_CASE("Leibniz rule on random-ish expressions") {
    std::vector<Expr> pool = {
        ex_x() * ex_jet(2, 0, 0),
        ex_sqrt_x() * ex_sqrt_y() * ex_exp_bt(1),
        Expr::param(Param::a) * ex_t() * ex_t() + ex_u(),
        ex_y().pow_int(-1) * ex_jet(0, 1, 0),
    };
    std::vector<Atom> vars = {Atom::X(), Atom::Y(), Atom::T(), Atom::U(),
                              Atom::Jet(JetIndex{1, 0, 0})};
    for (const Expr& f : pool)
        for (const Expr& g : pool)
            for (const Atom& v : vars) {
                Expr lhs = (f * g).diff(v);
                Expr rhs = f.diff(v) * g + f * g.diff(v);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("mixed partials commute") {
    Expr f = ex_sqrt_x() * ex_y() * ex_exp_bt(2) * ex_jet(1, 1, 0) +
             ex_x() * ex_u() * ex_t();
    std::vector<Atom> vars = {Atom::X(), Atom::Y(), Atom::T(), Atom::U()};
    for (const Atom& v : vars)
        for (const Atom& w : vars)
            CHECK(f.diff(v).diff(w) == f.diff(w).diff(v));
}

TEST_CASE("opaque atoms pick up derivative tags") {
    Expr xi = Expr::atom(Atom::Opaque(OpaqueBase::xi, OpaqueDeriv{}), 2);
    Expr dxt = xi.diff(Atom::X()).diff(Atom::T());
    OpaqueDeriv want;
    want.dx = 1;
    want.dt = 1;
    CHECK(dxt == Expr::atom(Atom::Opaque(OpaqueBase::xi, want), 2));
    CHECK(dxt == xi.diff(Atom::T()).diff(Atom::X()));
}

TEST_CASE("substituting an atom") {
    // (u_x)^2 + x u_x with u_x -> sqrt(y)
    Expr f = ex_jet(1, 0, 0) * ex_jet(1, 0, 0) + ex_x() * ex_jet(1, 0, 0);
    Expr g = f.subst_atom(Atom::Jet(JetIndex{1, 0, 0}), ex_sqrt_y());
    CHECK(g == ex_y() + ex_x() * ex_sqrt_y());
}

TEST_CASE("substituting parameters updates exponentials") {
    // exp((b - e) t) with e -> b collapses to 1.
    Expr g = Expr::exponential(1, -1, Rational(0));
    CHECK(g.subst_param(Param::e, param_b()) == Expr::constant(Rational(1)));
    // b^2 - e^2 with e -> -b vanishes.
    Expr h = Expr::param(Param::b) * Expr::param(Param::b) -
             Expr::param(Param::e) * Expr::param(Param::e);
    CHECK(h.subst_param(Param::e, -param_b()).is_zero());
}

TEST_CASE("coordinate swap is an involution matching the relabeling") {
    Expr f = Expr::param(Param::a) * ex_sqrt_x() * ex_jet(2, 1, 0) +
             ex_exp_bt(1) * ex_y();
    Expr g = f.swap_xy();
    CHECK(g.swap_xy() == f);
    Expr expect = Expr::param(Param::d) * ex_sqrt_y() * ex_jet(1, 2, 0) +
                  ex_exp_et(1) * ex_x();
    CHECK(g == expect);
}

TEST_CASE("evaluation is a homomorphism") {
    EvalPoint p = sample_point();
    Expr f = ex_sqrt_x() * ex_y() + Expr::param(Param::b) * ex_exp_bt(1);
    Expr g = ex_x().pow_int(-1) * ex_u() - ex_t();
    CHECK((f + g).eval(p) == doctest::Approx(f.eval(p) + g.eval(p)));
    CHECK((f * g).eval(p) == doctest::Approx(f.eval(p) * g.eval(p)));
    double direct = std::sqrt(p.x) * p.y +
                    p.params[1] * std::exp(p.params[1] * p.t);
    CHECK(f.eval(p) == doctest::Approx(direct));
}

TEST_CASE("printing canonical forms") {
    CHECK(ex_x().str() == "x");
    CHECK(ex_sqrt_x().str() == "x^(1/2)");
    CHECK((ex_x() * ex_x()).str() == "x^2");
    CHECK(ex_jet(1, 0, 0).str() == "u_x");
    CHECK(ex_jet(2, 0, 1).str() == "u_xxt");
    CHECK(Expr::exponential(1, -1, Rational(0)).str() == "exp((b - e)*t)");
    Expr f = Expr::constant(Rational(1, 2)) * ex_x() - ex_y();
    CHECK(f.str() == "1/2*x - y");
    CHECK(Expr::constant(Rational(0)).str() == "0");
}
