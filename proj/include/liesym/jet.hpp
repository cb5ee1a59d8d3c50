// Point vector fields on (x, y, t, u)-space and their second prolongation
// to the jet variables. One code path serves both the formal derivation
// (opaque coefficient functions) and concrete catalog fields.

#ifndef LIESYM_JET_HPP
#define LIESYM_JET_HPP

#include <string>

#include "liesym/expr.hpp"

namespace liesym {

// v = xi d/dx + gamma d/dy + tau d/dt + phi d/du.
struct VectorField {
    Expr xi, gamma, tau, phi;

    bool is_zero() const {
        return xi.is_zero() && gamma.is_zero() && tau.is_zero() && phi.is_zero();
    }
    friend bool operator==(const VectorField& a, const VectorField& b) {
        return a.xi == b.xi && a.gamma == b.gamma && a.tau == b.tau && a.phi == b.phi;
    }
    friend VectorField operator+(const VectorField& a, const VectorField& b) {
        return {a.xi + b.xi, a.gamma + b.gamma, a.tau + b.tau, a.phi + b.phi};
    }
    friend VectorField operator-(const VectorField& a, const VectorField& b) {
        return {a.xi - b.xi, a.gamma - b.gamma, a.tau - b.tau, a.phi - b.phi};
    }
    friend VectorField operator*(const Rational& c, const VectorField& v) {
        Expr ce = Expr::constant(c);
        return {ce * v.xi, ce * v.gamma, ce * v.tau, ce * v.phi};
    }
    friend VectorField operator*(const Expr& c, const VectorField& v) {
        return {c * v.xi, c * v.gamma, c * v.tau, c * v.phi};
    }

    VectorField swap_xy() const {
        return {gamma.swap_xy(), xi.swap_xy(), tau.swap_xy(), phi.swap_xy()};
    }

    std::string str() const;
};

// Field whose coefficients are the formal functions xi(x,y,t,u), ...,
// phi(x,y,t,u). Derivatives of these atoms stay symbolic.
VectorField opaque_field();

// Field with a, b, d, e pinned to rational values.
VectorField subst_params(const VectorField& v, const std::array<Rational, 4>& vals);

// Total derivative D_axis on jet-space expressions; axis 0 = x, 1 = y,
// 2 = t. Chains through u and every jet coordinate present in f.
Expr total_derivative(const Expr& f, int axis);

// Action of v on a function of the base variables only:
//   v(f) = xi f_x + gamma f_y + tau f_t + phi f_u.
Expr apply_point(const VectorField& v, const Expr& f);

// Coefficient of d/du_J in the second prolongation of v, computed from the
// characteristic Q = phi - xi u_x - gamma u_y - tau u_t as
//   phi^J = D_J Q + xi u_{J,x} + gamma u_{J,y} + tau u_{J,t}.
Expr prolongation_coeff(const VectorField& v, const JetIndex& J);

// Prolonged action on a jet-space expression F of order <= 2.
Expr apply_prolonged(const VectorField& v, const Expr& F);

}  // namespace liesym

#endif
