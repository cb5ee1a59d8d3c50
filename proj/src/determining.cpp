#include "liesym/determining.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace liesym {

PdeFamily ls_family() {
    Expr drift_x = Expr::param(Param::a) - Expr::param(Param::b) * ex_x();
    Expr drift_y = Expr::param(Param::d) - Expr::param(Param::e) * ex_y();
    Expr half = Expr::constant(Rational(1, 2));
    Expr rhs = -(drift_x * ex_jet(1, 0, 0) + drift_y * ex_jet(0, 1, 0) +
                 half * ex_x() * ex_jet(2, 0, 0) +
                 half * ex_y() * ex_jet(0, 2, 0));
    return {"square-root-drift", ex_jet(0, 0, 1) - rhs, rhs};
}

PdeFamily heat_family() {
    Expr rhs = ex_jet(2, 0, 0);
    return {"heat", ex_jet(0, 0, 1) - rhs, rhs};
}

Expr symmetry_residual(const PdeFamily& pde, const VectorField& v) {
    Expr res = apply_prolonged(v, pde.delta);
    return res.subst_atom(Atom::Jet(JetIndex{0, 0, 1}), pde.rhs);
}

PdeFamily subst_params(const PdeFamily& pde, const std::array<Rational, 4>& vals) {
    PdeFamily out = pde;
    for (int i = 0; i < 4; ++i) {
        out.delta = out.delta.subst_param(Param(i), ParamPoly(vals[i]));
        out.rhs = out.rhs.subst_param(Param(i), ParamPoly(vals[i]));
    }
    return out;
}

DeterminingSystem group_by_jets(const Expr& residual) {
    using Key = std::vector<std::pair<Atom, int>>;
    std::map<Key, Expr> groups;
    for (const Term& t : residual.terms()) {
        Key key;
        Term rest;
        rest.coeff = t.coeff;
        rest.ex = t.ex;
        for (const auto& pw : t.pows) {
            if (pw.first.kind == AtomKind::jet)
                key.push_back(pw);
            else
                rest.pows.push_back(pw);
        }
        Expr part = Expr::from_poly(rest.coeff);
        for (const auto& [atom, e2] : rest.pows) part *= Expr::atom(atom, e2);
        part *= Expr::exponential(rest.ex);
        groups[key] += part;
    }
    std::vector<DeterminingEquation> out;
    for (const auto& [key, coeff] : groups) {
        if (coeff.is_zero()) continue;
        Expr mono = Expr::constant(1);
        for (const auto& [atom, e2] : key) mono *= Expr::atom(atom, e2);
        out.push_back({mono, coeff});
    }
    // Lower jet degree first; the constant slot leads.
    std::stable_sort(out.begin(), out.end(),
                     [](const DeterminingEquation& l, const DeterminingEquation& r) {
                         auto degree = [](const Expr& m) {
                             int d = 0;
                             for (const Term& t : m.terms())
                                 for (const auto& [a, e2] : t.pows)
                                     d += e2 / 2 * (a.kind == AtomKind::jet ? a.jet.order() : 0);
                             return d;
                         };
                         int dl = degree(l.monomial), dr = degree(r.monomial);
                         if (dl != dr) return dl < dr;
                         return l.monomial.str() < r.monomial.str();
                     });
    return out;
}

DeterminingSystem build_determining_system(const PdeFamily& pde) {
    return group_by_jets(symmetry_residual(pde, opaque_field()));
}

namespace {

// Jet coordinates that remain free once u_t is eliminated. pr^2 v(delta)
// involves nothing of higher order for a second-order family.
const JetIndex kFreeJets[] = {
    {1, 0, 0}, {0, 1, 0}, {2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1},
};

}  // namespace

CheckReport check_symmetry(const PdeFamily& pde, const VectorField& v,
                           const CheckOptions& opt) {
    CheckReport report;
    Expr residual = symmetry_residual(pde, v);
    report.symbolic_ok = residual.is_zero();
    if (!report.symbolic_ok) {
        auto groups = group_by_jets(residual);
        if (!groups.empty()) report.failing_monomial = groups.front().monomial.str();
    }

    // Independent numeric route. The criterion value
    //   xi D_x(delta)-part + ... + sum_J phi^J d(delta)/du_J
    // is assembled in floating point from separately evaluated pieces, at
    // jet samples satisfying u_t = rhs.
    std::vector<std::pair<Atom, Expr>> pieces;
    pieces.emplace_back(Atom::X(), v.xi);
    pieces.emplace_back(Atom::Y(), v.gamma);
    pieces.emplace_back(Atom::T(), v.tau);
    pieces.emplace_back(Atom::U(), v.phi);
    for (const Atom& a : pde.delta.atoms())
        if (a.kind == AtomKind::jet)
            pieces.emplace_back(a, prolongation_coeff(v, a.jet));

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> coord(0.1, 10.0);
    std::uniform_real_distribution<double> timev(-2.0, 2.0);
    std::uniform_real_distribution<double> val(-5.0, 5.0);

    double worst = 0.0;
    for (int s = 0; s < opt.samples; ++s) {
        EvalPoint p;
        p.x = coord(rng);
        p.y = coord(rng);
        p.t = timev(rng);
        p.u = val(rng);
        // Random values are harmless when no parameter symbol remains; a
        // case-specific candidate must be checked against a family
        // instantiated at the same parameter point.
        for (double& q : p.params) q = timev(rng);
        for (const JetIndex& j : kFreeJets) p.extra[Atom::Jet(j)] = val(rng);
        p.extra[Atom::Jet(JetIndex{0, 0, 1})] = pde.rhs.eval(p);

        double acc = 0.0;
        for (const auto& [var, coeff] : pieces) {
            if (coeff.is_zero()) continue;
            acc += coeff.eval(p) * pde.delta.diff(var).eval(p);
        }
        worst = std::max(worst, std::fabs(acc));
    }
    report.max_abs = worst;
    report.numeric_ok = worst <= opt.tol;
    return report;
}

Verdict check_candidate(const VectorField& v, const DeterminingSystem& sys,
                        const ParamCase& constraints, const CheckOptions& opt) {
    for (const Expr* comp : {&v.xi, &v.gamma, &v.tau, &v.phi})
        for (const Atom& a : comp->atoms())
            if (a.kind == AtomKind::jet)
                throw std::invalid_argument(
                    "candidate coefficients must depend on (x, y, t, u) only");

    auto component = [&](OpaqueBase base) -> const Expr& {
        switch (base) {
            case OpaqueBase::xi: return v.xi;
            case OpaqueBase::gamma: return v.gamma;
            case OpaqueBase::tau: return v.tau;
            case OpaqueBase::phi: return v.phi;
        }
        return v.phi;
    };

    // Each opaque atom of the system stands for a partial derivative of a
    // formal coefficient; bind it to that derivative of the candidate.
    std::map<Atom, Expr> bound;
    for (const DeterminingEquation& eq : sys)
        for (const Atom& a : eq.coefficient.atoms()) {
            if (a.kind != AtomKind::opaque || bound.count(a)) continue;
            Expr dv = component(a.base);
            for (int i = 0; i < a.der.dx; ++i) dv = dv.diff(Atom::X());
            for (int i = 0; i < a.der.dy; ++i) dv = dv.diff(Atom::Y());
            for (int i = 0; i < a.der.dt; ++i) dv = dv.diff(Atom::T());
            for (int i = 0; i < a.der.du; ++i) dv = dv.diff(Atom::U());
            bound.emplace(a, std::move(dv));
        }

    // Sample points for the numeric route, shared across the entries. The
    // opaque atoms carry floating-point values of the bound derivatives and
    // the parameters sit at the case sample, so this route never sees the
    // canonical cancellations of the symbolic one.
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> coord(0.1, 10.0);
    std::uniform_real_distribution<double> timev(-2.0, 2.0);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::vector<EvalPoint> pts(std::size_t(std::max(opt.samples, 1)));
    for (EvalPoint& p : pts) {
        p.x = coord(rng);
        p.y = coord(rng);
        p.t = timev(rng);
        p.u = val(rng);
        for (int i = 0; i < 4; ++i) p.params[std::size_t(i)] = constraints.sample[std::size_t(i)].to_double();
        for (const auto& [atom, expr] : bound) p.extra[atom] = expr.eval(p);
    }

    Verdict verdict;
    verdict.symbolic_pass.assign(sys.size(), 0);
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const DeterminingEquation& eq = sys[i];

        Expr sym = eq.coefficient;
        for (const auto& [atom, expr] : bound) sym = sym.subst_atom(atom, expr);
        sym = subst_case(constraints, sym);
        const bool sym_ok = sym.is_zero();
        verdict.symbolic_pass[i] = sym_ok ? 1 : 0;

        double worst = 0.0;
        for (const EvalPoint& p : pts)
            worst = std::max(worst, std::fabs(eq.coefficient.eval(p)));
        verdict.numeric_max_residual = std::max(verdict.numeric_max_residual, worst);
        if (!sym_ok || worst > opt.tol)
            verdict.failures.push_back({i, eq.monomial.str(), worst, !sym_ok});
    }
    return verdict;
}

namespace {

// s relation string with the case equalities substituted and vanished
// terms dropped, e.g. "s_t + (1/2) tau_tt = 0" in the zero-rate column.
std::string s_relation_string(const ParamCase& pcase) {
    if (pcase.b_e_relation == BERelation::generic) return "s_t = 0";
    ParamPoly c1 = param_a() + param_d();
    ParamPoly c2 = param_a() * param_b() + param_d() * param_e();
    for (const auto& [p, val] : equality_substitutions(pcase)) {
        c1 = c1.substitute(p, val);
        c2 = c2.substitute(p, val);
    }
    std::string out = "s_t";
    if (!c1.is_zero()) out += " + (" + c1.str() + ") tau_tt";
    if (!c2.is_zero()) out += " + (" + c2.str() + ") tau_t";
    return out + " = 0";
}

}  // namespace

ReducedSystem reduced_system(const ParamCase& pcase) {
    ReducedSystem rs;
    rs.pcase = pcase;
    const bool b_zero = pcase.sample[1].is_zero();
    const bool e_zero = pcase.sample[3].is_zero();
    const Expr one = Expr::constant(1);
    const Expr t = ex_t();

    if (pcase.a_quarter && pcase.d_quarter && pcase.b_e_relation != BERelation::generic) {
        rs.h_modes = {one};
        rs.relations.push_back("h_t = 0");
    } else {
        rs.relations.push_back("h = 0");
    }

    if (pcase.a_quarter) {
        if (b_zero) {
            rs.l_modes = {t, one};
            rs.relations.push_back("l_tt = 0");
        } else {
            rs.l_modes = {ex_exp_bt(Rational(1, 2)), ex_exp_bt(Rational(-1, 2))};
            rs.relations.push_back("l_tt - (b^2/4) l = 0");
        }
    } else {
        rs.relations.push_back("l = 0");
    }

    if (pcase.d_quarter) {
        if (e_zero) {
            rs.k_modes = {t, one};
            rs.relations.push_back("k_tt = 0");
        } else {
            rs.k_modes = {ex_exp_et(Rational(1, 2)), ex_exp_et(Rational(-1, 2))};
            rs.relations.push_back("k_tt - (e^2/4) k = 0");
        }
    } else {
        rs.relations.push_back("k = 0");
    }

    switch (pcase.b_e_relation) {
        case BERelation::generic:
            rs.tau_modes = {one};
            rs.relations.push_back("tau_t = 0");
            break;
        case BERelation::equal_nonzero:
        case BERelation::opposite_nonzero:
            rs.tau_modes = {ex_exp_bt(Rational(1)), ex_exp_bt(Rational(-1)), one};
            rs.relations.push_back("tau_ttt - b^2 tau_t = 0");
            break;
        case BERelation::both_zero:
            rs.tau_modes = {t * t, t, one};
            rs.relations.push_back("tau_ttt = 0");
            break;
    }

    rs.relations.push_back(s_relation_string(pcase));
    return rs;
}

std::vector<Expr> reduced_relation_residuals(const ParamCase& pcase, const Expr& tau,
                                             const Expr& h, const Expr& l, const Expr& k,
                                             const Expr& s) {
    const Atom t = Atom::T();
    const Expr pa = Expr::param(Param::a), pb = Expr::param(Param::b);
    const Expr pd = Expr::param(Param::d), pe = Expr::param(Param::e);
    const Expr quarter = Expr::constant(Rational(1, 4));
    const Expr tau_t = tau.diff(t), tau_tt = tau_t.diff(t), tau_ttt = tau_tt.diff(t);
    const Expr b2e2 = pb * pb - pe * pe;

    std::vector<Expr> res;
    res.push_back(h.diff(t));
    res.push_back(b2e2 * tau_t);
    res.push_back(b2e2 * h);
    res.push_back((quarter - pa) * h);
    res.push_back((quarter - pd) * h);
    res.push_back((quarter - pa) * l);
    res.push_back((quarter - pd) * k);
    res.push_back(l.diff(t).diff(t) - Expr::constant(Rational(1, 4)) * pb * pb * l);
    res.push_back(k.diff(t).diff(t) - Expr::constant(Rational(1, 4)) * pe * pe * k);
    res.push_back(tau_ttt - pb * pb * tau_t);
    res.push_back((pa + pd) * tau_tt + (pa * pb + pd * pe) * tau_t + s.diff(t));
    for (Expr& r : res) r = subst_case(pcase, r);
    return res;
}

Expr s_for_tau(const Expr& tau) {
    const Expr A = Expr::param(Param::a) + Expr::param(Param::d);
    const Expr B = Expr::param(Param::a) * Expr::param(Param::b) +
                   Expr::param(Param::d) * Expr::param(Param::e);
    bool has_exp = false;
    for (const Term& term : tau.terms())
        if (!term.ex.is_zero()) has_exp = true;

    if (!has_exp) {
        // Polynomial in t: integrate termwise, fixing s(0) = 0.
        auto at0 = [](const Expr& f) { return f.subst_atom(Atom::T(), Expr::constant(0)); };
        const Expr tau_t = tau.diff(Atom::T());
        return -(A * (tau_t - at0(tau_t)) + B * (tau - at0(tau)));
    }
    if (tau.terms().size() != 1 || !tau.terms()[0].pows.empty())
        throw std::invalid_argument("tau must be a polynomial in t or a single exponential");
    // Pure exponential exp(r t): s_t = -((a+d) r^2 + (ab+de) r) exp(r t).
    const ParamPoly r = tau.terms()[0].ex.as_poly();
    return -(A * Expr::from_poly(r) + B) * tau;
}

GeneratorBasis solve_reduced(const ParamCase& pcase) {
    if (!pcase.contains(pcase.sample))
        throw std::invalid_argument("sample values inconsistent with the case constraints");
    const ReducedSystem rs = reduced_system(pcase);

    GeneratorBasis basis;
    basis.id = pcase.label();
    basis.pcase = pcase;

    const Atom t = Atom::T();
    const Expr x = ex_x(), y = ex_y(), u = ex_u();
    const Expr sx = ex_sqrt_x(), sy = ex_sqrt_y();
    const Expr pb = Expr::param(Param::b), pe = Expr::param(Param::e);
    const Expr two = Expr::constant(2);

    auto profile_of = [&](const Expr& f, bool y_axis) {
        const Term& lead = f.terms()[0];
        if (!lead.ex.is_zero()) {
            const Rational rate = y_axis ? lead.ex.ce : lead.ex.cb;
            return Rational(0) < rate ? ShiftProfile::exp_plus : ShiftProfile::exp_minus;
        }
        return f == ex_t() ? ShiftProfile::linear_t : ShiftProfile::constant_one;
    };

    for (const Expr& tau : rs.tau_modes) {
        const Expr tau_t = tau.diff(t), tau_tt = tau_t.diff(t);
        VectorField f;
        f.xi = tau_t * x;
        f.gamma = tau_t * y;
        f.tau = tau;
        f.phi = ((tau_tt + pb * tau_t) * x + (tau_tt + pe * tau_t) * y + s_for_tau(tau)) * u;
        ElementKind kind;
        if (!tau.terms().empty() && !tau.terms()[0].ex.is_zero()) {
            kind.kind = GenKind::exp_scaling;
            kind.rate_sign = Rational(0) < tau.terms()[0].ex.cb ? +1 : -1;
        } else if (tau == ex_t() * ex_t()) {
            kind.kind = GenKind::projective;
        } else if (tau == ex_t()) {
            kind.kind = GenKind::dilation;
        } else {
            kind.kind = GenKind::time_translate;
        }
        basis.elements.push_back({std::move(f), kind, ""});
    }

    for (const Expr& h : rs.h_modes) {
        VectorField f;
        f.xi = sx * sy * h;
        f.gamma = -(sx * sy) * h;
        f.phi = (pb - pe) * h * sx * sy * u;
        ElementKind kind;
        kind.kind = GenKind::rotation_pair;
        basis.elements.push_back({std::move(f), kind, ""});
    }

    for (const Expr& l : rs.l_modes) {
        VectorField f;
        f.xi = sx * l;
        f.phi = (two * l.diff(t) + pb * l) * sx * u;
        ElementKind kind;
        kind.kind = GenKind::sqrt_shift;
        kind.axis = 0;
        kind.profile = profile_of(l, false);
        basis.elements.push_back({std::move(f), kind, ""});
    }

    for (const Expr& k : rs.k_modes) {
        VectorField f;
        f.gamma = sy * k;
        f.phi = (two * k.diff(t) + pe * k) * sy * u;
        ElementKind kind;
        kind.kind = GenKind::sqrt_shift;
        kind.axis = 1;
        kind.profile = profile_of(k, true);
        basis.elements.push_back({std::move(f), kind, ""});
    }

    {
        VectorField f;
        f.phi = u;
        ElementKind kind;
        kind.kind = GenKind::scale_u;
        basis.elements.push_back({std::move(f), kind, ""});
    }

    for (BasisElement& e : basis.elements) {
        for (const auto& [p, val] : equality_substitutions(pcase)) {
            e.field.xi = e.field.xi.subst_param(p, val);
            e.field.gamma = e.field.gamma.subst_param(p, val);
            e.field.tau = e.field.tau.subst_param(p, val);
            e.field.phi = e.field.phi.subst_param(p, val);
        }
    }
    return basis;
}

}  // namespace liesym
