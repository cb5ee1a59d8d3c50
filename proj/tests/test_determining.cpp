// Determining system of the square-root-drift family: frozen rows,
// candidate checks along both routes, and the univariate reduction.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>

#include "liesym/determining.hpp"
#include "liesym/liealg.hpp"
#include "liesym/parse.hpp"

using namespace liesym;

namespace {

const DeterminingSystem& ls_system() {
    static const DeterminingSystem sys = build_determining_system(ls_family());
    return sys;
}

const DeterminingEquation* entry_for(const DeterminingSystem& sys, const std::string& mono) {
    for (const DeterminingEquation& eq : sys)
        if (eq.monomial.str() == mono) return &eq;
    return nullptr;
}

}  // namespace

TEST_CASE("system shape: 27 jet groups led by the constant slot") {
    const auto& sys = ls_system();
    CHECK(sys.size() == 27);
    CHECK(sys.front().monomial.str() == "1");
    // Every documented monomial appears.
    std::set<std::string> monos;
    for (const auto& eq : sys) monos.insert(eq.monomial.str());
    for (const char* m :
         {"u_x", "u_y", "u_y*u_x", "u_x^2", "u_y^2", "u_xx", "u_yy", "u_x*u_xx",
          "u_y*u_yy", "u_xy", "u_xt", "u_yt", "1"})
        CHECK_MESSAGE(monos.count(m) == 1, m);
}

TEST_CASE("frozen rows") {
    const auto& sys = ls_system();

    SUBCASE("constant slot") {
        const auto* eq = entry_for(sys, "1");
        REQUIRE(eq != nullptr);
        Expr expected = parse_expr(
            "phi_t + (a-b*x)*phi_x + (d-e*y)*phi_y + (x/2)*phi_xx + (y/2)*phi_yy");
        CHECK((eq->coefficient - expected).is_zero());
    }

    SUBCASE("mixed space-time rows pin tau to t and u only") {
        REQUIRE(entry_for(sys, "u_xt") != nullptr);
        CHECK((entry_for(sys, "u_xt")->coefficient - parse_expr("-x*tau_x")).is_zero());
        REQUIRE(entry_for(sys, "u_yt") != nullptr);
        CHECK((entry_for(sys, "u_yt")->coefficient - parse_expr("-y*tau_y")).is_zero());
    }

    SUBCASE("cross-derivative row couples the two shifts") {
        const auto* eq = entry_for(sys, "u_xy");
        REQUIRE(eq != nullptr);
        CHECK((eq->coefficient + parse_expr("x*gamma_x + y*xi_y")).is_zero());
    }

    SUBCASE("u_x row, full engine form") {
        const auto* eq = entry_for(sys, "u_x");
        REQUIRE(eq != nullptr);
        Expr expected = parse_expr(
            "-b*xi - xi_t + (e*y-d)*xi_y - (y/2)*xi_yy + (b*x-a)*xi_x - (x/2)*xi_xx"
            " + (a-b*x)*tau_t + (b*x-a)*(e*y-d)*tau_y + (y/2)*(a-b*x)*tau_yy"
            " + (b*x-a)*(b*x-a)*tau_x + (x/2)*(a-b*x)*tau_xx + x*phi_xu");
        CHECK((eq->coefficient - expected).is_zero());
    }

    SUBCASE("u_xx row restricted to tau = tau(t) and u-independent xi") {
        const auto* eq = entry_for(sys, "u_xx");
        REQUIRE(eq != nullptr);
        Expr restricted = eq->coefficient;
        // Drop spatial and u derivatives of tau.
        for (const Atom& a : restricted.atoms()) {
            if (a.kind != AtomKind::opaque || a.base != OpaqueBase::tau) continue;
            if (a.der.dx + a.der.dy + a.der.du > 0)
                restricted = restricted.subst_atom(a, Expr());
        }
        CHECK((restricted - parse_expr("xi/2 - x*xi_x + (x/2)*tau_t")).is_zero());
    }
}

TEST_CASE("heat fixture: 6 generators pass, tampering fails") {
    PdeFamily heat = heat_family();
    GeneratorBasis basis = heat_basis();
    REQUIRE(basis.dimension() == 6);
    for (const BasisElement& el : basis.elements) {
        CheckReport rep = check_symmetry(heat, el.field);
        CHECK(rep.symbolic_ok);
        CHECK(rep.numeric_ok);
        CHECK(rep.max_abs < 1e-10);
    }
    // The six generators are linearly independent.
    CHECK(TermSpan(basis.fields_at_sample()).dim() == 6);

    // A perturbed field must fail both routes.
    VectorField bad = basis.elements[3].field;  // x d/dx + 2t d/dt - (u/2) d/du
    bad.xi = bad.xi + parse_expr("t");
    CheckReport rep = check_symmetry(heat, bad);
    CHECK_FALSE(rep.symbolic_ok);
    CHECK_FALSE(rep.numeric_ok);
    CHECK_FALSE(rep.failing_monomial.empty());
}

TEST_CASE("check_candidate flags the scaling counterexample") {
    const auto& sys = ls_system();
    ParamCase pc = classify(Rational(3, 10), Rational(1, 2), Rational(1), Rational(2));
    VectorField v;
    v.xi = ex_x();
    Verdict verdict = check_candidate(v, sys, pc);
    CHECK_FALSE(verdict.all_pass());
    bool found = false;
    for (const VerdictFailure& f : verdict.failures)
        if (f.monomial == "u_xx") found = true;
    CHECK(found);
    // The residual of that entry is -x/2: sampled magnitude stays in [0.05, 5].
    for (const VerdictFailure& f : verdict.failures)
        if (f.monomial == "u_xx") {
            CHECK(f.residual >= 0.05);
            CHECK(f.residual <= 5.0);
        }
}

TEST_CASE("check_candidate rejects jet-dependent candidates") {
    const auto& sys = ls_system();
    ParamCase pc = classify(Rational(3, 10), Rational(1, 2), Rational(1), Rational(2));
    VectorField v;
    v.xi = ex_jet(1, 0, 0);
    CHECK_THROWS_AS((void)check_candidate(v, sys, pc), std::invalid_argument);
}

TEST_CASE("verdict invariant: symbolic pass forces small numeric residual") {
    const auto& sys = ls_system();
    for (const ParamCase& pc : catalog_cases()) {
        for (const BasisElement& el : basis_for(pc).elements) {
            Verdict verdict = check_candidate(el.field, sys, pc);
            bool all_symbolic = true;
            for (char f : verdict.symbolic_pass) all_symbolic = all_symbolic && f;
            CHECK(all_symbolic);
            CHECK(verdict.numeric_max_residual < 1e-10);
            CHECK(verdict.all_pass());
        }
    }
}

TEST_CASE("reduced system: modes solve the governing relations") {
    for (const ParamCase& pc : catalog_cases()) {
        ReducedSystem rs = reduced_system(pc);
        const Expr zero;

        auto all_zero = [&](const std::vector<Expr>& res) {
            for (const Expr& r : res)
                if (!r.is_zero()) return false;
            return true;
        };

        for (const Expr& tau : rs.tau_modes) {
            Expr h = rs.h_modes.empty() ? zero : rs.h_modes.front();
            Expr l = rs.l_modes.empty() ? zero : rs.l_modes.front();
            Expr k = rs.k_modes.empty() ? zero : rs.k_modes.front();
            CHECK(all_zero(reduced_relation_residuals(pc, tau, h, l, k, s_for_tau(tau))));
        }
        // Junk tuples must not satisfy the relations.
        if (pc.b_e_relation == BERelation::generic)
            CHECK_FALSE(all_zero(reduced_relation_residuals(pc, ex_t(), zero, zero, zero, zero)));
    }
}

TEST_CASE("reduced system: example shapes") {
    SUBCASE("generic column with both rates off the quarter line") {
        ParamCase pc = case_by_label("2.1");
        ReducedSystem rs = reduced_system(pc);
        CHECK(rs.tau_modes.size() == 1);
        CHECK(rs.h_modes.empty());
        CHECK(rs.l_modes.empty());
        CHECK(rs.k_modes.empty());
        REQUIRE(rs.relations.size() == 5);
        CHECK(rs.relations[0] == "h = 0");
        CHECK(rs.relations[1] == "l = 0");
        CHECK(rs.relations[2] == "k = 0");
        CHECK(rs.relations[3] == "tau_t = 0");
        CHECK(rs.relations[4] == "s_t = 0");
    }
    SUBCASE("zero-rate column on the quarter line") {
        ParamCase pc = case_by_label("1.4");
        ReducedSystem rs = reduced_system(pc);
        CHECK(rs.tau_modes.size() == 3);
        CHECK(rs.h_modes.size() == 1);
        CHECK(rs.l_modes.size() == 2);
        CHECK(rs.k_modes.size() == 2);
        REQUIRE(rs.relations.size() == 5);
        CHECK(rs.relations[0] == "h_t = 0");
        CHECK(rs.relations[1] == "l_tt = 0");
        CHECK(rs.relations[2] == "k_tt = 0");
        CHECK(rs.relations[3] == "tau_ttt = 0");
        CHECK(rs.relations[4] == "s_t + (1/2) tau_tt = 0");
    }
    SUBCASE("tied rates with a quarter, d off") {
        ParamCase pc = case_by_label("3.2");
        ReducedSystem rs = reduced_system(pc);
        CHECK(rs.tau_modes.size() == 3);
        CHECK(rs.h_modes.empty());
        CHECK(rs.l_modes.size() == 2);
        CHECK(rs.k_modes.empty());
        bool has_tau_ode = false, has_l_ode = false;
        for (const std::string& r : rs.relations) {
            if (r == "tau_ttt - b^2 tau_t = 0") has_tau_ode = true;
            if (r == "l_tt - (b^2/4) l = 0") has_l_ode = true;
        }
        CHECK(has_tau_ode);
        CHECK(has_l_ode);
    }
}

TEST_CASE("s_for_tau closed forms") {
    const Expr t = ex_t();
    CHECK(s_for_tau(Expr::constant(1)).is_zero());
    CHECK((s_for_tau(t) + parse_expr("(a*b+d*e)*t")).is_zero());
    CHECK((s_for_tau(t * t) + parse_expr("2*(a+d)*t + (a*b+d*e)*t^2")).is_zero());
    Expr tau = ex_exp_bt(Rational(1));
    Expr expected = parse_expr("-((a+d)*b + a*b + d*e)*exp(b*t)");
    CHECK((s_for_tau(tau) - expected).is_zero());
}

TEST_CASE("round trip: every solved generator satisfies the raw system") {
    const auto& sys = ls_system();
    for (const ParamCase& pc : catalog_cases()) {
        GeneratorBasis basis = solve_reduced(pc);
        for (const BasisElement& el : basis.elements) {
            Verdict verdict = check_candidate(el.field, sys, pc);
            CHECK_MESSAGE(verdict.all_pass(), pc.label());
            CHECK(verdict.numeric_max_residual < 1e-10);
        }
    }
}

TEST_CASE("solve_reduced rejects inconsistent samples") {
    ParamCase pc = case_by_label("2.2");
    pc.sample = {Rational(3, 10), Rational(1), Rational(1, 2), Rational(2)};  // b != e
    CHECK_THROWS_AS((void)solve_reduced(pc), std::invalid_argument);
}
