#include "liesym/jet.hpp"

#include <stdexcept>

namespace liesym {

std::string VectorField::str() const {
    std::string out;
    auto piece = [&out](const Expr& c, const char* dir) {
        if (c.is_zero()) return;
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*" + dir;
    };
    piece(xi, "d/dx");
    piece(gamma, "d/dy");
    piece(tau, "d/dt");
    piece(phi, "d/du");
    if (out.empty()) out = "0";
    return out;
}

VectorField opaque_field() {
    return {Expr::atom(Atom::Opaque(OpaqueBase::xi)),
            Expr::atom(Atom::Opaque(OpaqueBase::gamma)),
            Expr::atom(Atom::Opaque(OpaqueBase::tau)),
            Expr::atom(Atom::Opaque(OpaqueBase::phi))};
}

VectorField subst_params(const VectorField& v, const std::array<Rational, 4>& vals) {
    VectorField out = v;
    for (int i = 0; i < 4; ++i) {
        ParamPoly c{vals[i]};
        out.xi = out.xi.subst_param(Param(i), c);
        out.gamma = out.gamma.subst_param(Param(i), c);
        out.tau = out.tau.subst_param(Param(i), c);
        out.phi = out.phi.subst_param(Param(i), c);
    }
    return out;
}

Expr total_derivative(const Expr& f, int axis) {
    if (axis < 0 || axis > 2) throw std::domain_error("total_derivative axis");
    const Atom coord = axis == 0 ? Atom::X() : axis == 1 ? Atom::Y() : Atom::T();
    auto bump = [axis](const JetIndex& j) {
        return axis == 0 ? j.bump_x() : axis == 1 ? j.bump_y() : j.bump_t();
    };
    Expr out = f.diff(coord);
    // The u chain term covers both explicit u atoms and the u-dependence
    // of opaque coefficient functions, so it always applies.
    Expr fu = f.diff(Atom::U());
    if (!fu.is_zero()) out += Expr::atom(Atom::Jet(bump(JetIndex{}))) * fu;
    for (const Atom& a : f.atoms()) {
        if (a.kind != AtomKind::jet) continue;
        out += Expr::atom(Atom::Jet(bump(a.jet))) * f.diff(a);
    }
    return out;
}

Expr apply_point(const VectorField& v, const Expr& f) {
    return v.xi * f.diff(Atom::X()) + v.gamma * f.diff(Atom::Y()) +
           v.tau * f.diff(Atom::T()) + v.phi * f.diff(Atom::U());
}

Expr prolongation_coeff(const VectorField& v, const JetIndex& J) {
    Expr q = v.phi - v.xi * ex_jet(1, 0, 0) - v.gamma * ex_jet(0, 1, 0) -
             v.tau * ex_jet(0, 0, 1);
    for (int i = 0; i < J.nx; ++i) q = total_derivative(q, 0);
    for (int i = 0; i < J.ny; ++i) q = total_derivative(q, 1);
    for (int i = 0; i < J.nt; ++i) q = total_derivative(q, 2);
    return q + v.xi * Expr::atom(Atom::Jet(J.bump_x())) +
           v.gamma * Expr::atom(Atom::Jet(J.bump_y())) +
           v.tau * Expr::atom(Atom::Jet(J.bump_t()));
}

Expr apply_prolonged(const VectorField& v, const Expr& F) {
    Expr out = apply_point(v, F);
    for (const Atom& a : F.atoms()) {
        if (a.kind != AtomKind::jet) continue;
        out += prolongation_coeff(v, a.jet) * F.diff(a);
    }
    return out;
}

}  // namespace liesym
