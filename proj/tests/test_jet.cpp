// Total derivatives and second prolongation of point vector fields.
// The generic expansions below were frozen from the classical coefficient
// formulas expanded by hand; the engine must reproduce them verbatim.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "liesym/jet.hpp"
#include "liesym/parse.hpp"

using namespace liesym;

TEST_CASE("total derivative of explicit functions") {
    // D_x (x u) = u + x u_x
    Expr f = ex_x() * ex_u();
    CHECK(total_derivative(f, 0) == ex_u() + ex_x() * ex_jet(1, 0, 0));
    // D_t (exp(b t) u_x) = b exp(b t) u_x + exp(b t) u_xt
    Expr g = ex_exp_bt(1) * ex_jet(1, 0, 0);
    Expr want = Expr::param(Param::b) * ex_exp_bt(1) * ex_jet(1, 0, 0) +
                ex_exp_bt(1) * ex_jet(1, 0, 1);
    CHECK(total_derivative(g, 2) == want);
    // D_y of a y-free expression still chains through the jets.
    CHECK(total_derivative(ex_jet(1, 0, 0), 1) == ex_jet(1, 1, 0));
}

TEST_CASE("total derivatives commute") {
    Expr f = ex_x() * ex_jet(1, 1, 0) + ex_sqrt_y() * ex_u() * ex_u() +
             ex_exp_bt(1) * ex_jet(0, 0, 1);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(total_derivative(total_derivative(f, i), j) ==
                  total_derivative(total_derivative(f, j), i));
}

TEST_CASE("total derivative chains opaque coefficients through u") {
    // D_x xi(x,y,t,u) = xi_x + u_x xi_u
    Expr xi = Expr::atom(Atom::Opaque(OpaqueBase::xi));
    CHECK(total_derivative(xi, 0) == parse_expr("xi_x + u_x*xi_u"));
}

TEST_CASE("order-zero prolongation coefficient is phi") {
    VectorField v = opaque_field();
    CHECK(prolongation_coeff(v, JetIndex{0, 0, 0}) == v.phi);
}

TEST_CASE("generic first-order coefficients") {
    VectorField v = opaque_field();
    Expr phi_x = parse_expr(
        "phi_x + (phi_u - xi_x)*u_x - gamma_x*u_y - tau_x*u_t"
        " - xi_u*u_x^2 - gamma_u*u_x*u_y - tau_u*u_x*u_t");
    CHECK(prolongation_coeff(v, JetIndex{1, 0, 0}) == phi_x);

    Expr phi_t = parse_expr(
        "phi_t + (phi_u - tau_t)*u_t - xi_t*u_x - gamma_t*u_y"
        " - xi_u*u_x*u_t - gamma_u*u_y*u_t - tau_u*u_t^2");
    CHECK(prolongation_coeff(v, JetIndex{0, 0, 1}) == phi_t);
}

TEST_CASE("generic second-order coefficient in x") {
    VectorField v = opaque_field();
    Expr phi_xx = parse_expr(
        "phi_xx + (2*phi_xu - xi_xx)*u_x - gamma_xx*u_y - tau_xx*u_t"
        " + (phi_uu - 2*xi_xu)*u_x^2 - 2*gamma_xu*u_x*u_y - 2*tau_xu*u_x*u_t"
        " - xi_uu*u_x^3 - gamma_uu*u_x^2*u_y - tau_uu*u_x^2*u_t"
        " + (phi_u - 2*xi_x)*u_xx - 2*gamma_x*u_xy - 2*tau_x*u_xt"
        " - 3*xi_u*u_x*u_xx - gamma_u*(u_y*u_xx + 2*u_x*u_xy)"
        " - tau_u*(u_t*u_xx + 2*u_x*u_xt)");
    CHECK(prolongation_coeff(v, JetIndex{2, 0, 0}) == phi_xx);
}

TEST_CASE("prolongation of simple concrete fields") {
    // Scaling x d/dx: phi^x = -u_x, phi^xx = -2 u_xx.
    VectorField scale{ex_x(), Expr(), Expr(), Expr()};
    CHECK(prolongation_coeff(scale, JetIndex{1, 0, 0}) == -ex_jet(1, 0, 0));
    CHECK(prolongation_coeff(scale, JetIndex{2, 0, 0}) ==
          Expr::constant(-2) * ex_jet(2, 0, 0));
    // Translation d/dt prolongs trivially.
    VectorField shift{Expr(), Expr(), Expr::constant(1), Expr()};
    CHECK(prolongation_coeff(shift, JetIndex{1, 0, 0}).is_zero());
    CHECK(prolongation_coeff(shift, JetIndex{0, 0, 2}).is_zero());
    // u d/du: phi^J = u_J for every J.
    VectorField vu{Expr(), Expr(), Expr(), ex_u()};
    CHECK(prolongation_coeff(vu, JetIndex{1, 1, 0}) == ex_jet(1, 1, 0));
}

TEST_CASE("prolonged action on a jet expression") {
    // pr(x d/dx) applied to u_xx - u_t gives -2 u_xx.
    VectorField scale{ex_x(), Expr(), Expr(), Expr()};
    Expr heat = ex_jet(2, 0, 0) - ex_jet(0, 0, 1);
    CHECK(apply_prolonged(scale, heat) == Expr::constant(-2) * ex_jet(2, 0, 0));
    // Base-variable expressions reduce to the point action.
    Expr base = ex_x() * ex_t();
    CHECK(apply_prolonged(scale, base) == apply_point(scale, base));
}

TEST_CASE("field swap exchanges the coordinate roles") {
    VectorField v{ex_sqrt_x() * ex_sqrt_y(), Expr(), ex_t(),
                  Expr::param(Param::b) * ex_u()};
    VectorField w = v.swap_xy();
    CHECK(w.gamma == ex_sqrt_x() * ex_sqrt_y());
    CHECK(w.xi.is_zero());
    CHECK(w.phi == Expr::param(Param::e) * ex_u());
    CHECK(w.swap_xy() == v);
}
