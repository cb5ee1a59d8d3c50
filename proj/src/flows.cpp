#include "liesym/flows.hpp"

#include <cmath>
#include <sstream>

namespace liesym {

namespace {

Real rat(const Rational& q) { return static_cast<Real>(q.to_double()); }

std::string fmt_eps(double eps) {
    std::ostringstream os;
    os << eps;
    return os.str();
}

bool always_valid(const FlowPoint&, Real) { return true; }

FlowMap make_time_translate(Real c) {
    FlowMap fm;
    fm.kind = "time_translate";
    fm.map = [c](const FlowPoint& p, Real eps) {
        return FlowPoint{p.x, p.y, p.t + eps, p.u * std::exp(c * eps)};
    };
    fm.validity = always_valid;
    return fm;
}

FlowMap make_scale_u() {
    FlowMap fm;
    fm.kind = "scale_u";
    fm.map = [](const FlowPoint& p, Real eps) {
        return FlowPoint{p.x, p.y, p.t, p.u * std::exp(eps)};
    };
    fm.validity = always_valid;
    return fm;
}

FlowMap make_dilation() {
    FlowMap fm;
    fm.kind = "dilation";
    fm.map = [](const FlowPoint& p, Real eps) {
        const Real s = std::exp(eps);
        return FlowPoint{p.x * s, p.y * s, p.t * s, p.u};
    };
    fm.validity = always_valid;
    return fm;
}

// tau = t^2: time reparameterizes by 1/(1 - t eps), space by its square,
// and u picks up exp(2 eps (x~ + y~) ... ) collected at the base point.
FlowMap make_projective(Real kappa) {
    FlowMap fm;
    fm.kind = "projective";
    fm.map = [kappa](const FlowPoint& p, Real eps) {
        const Real D = 1 - p.t * eps;
        const Real mult = std::exp(2 * eps * (p.x + p.y) / D) * std::pow(D, kappa);
        return FlowPoint{p.x / (D * D), p.y / (D * D), p.t / D, p.u * mult};
    };
    fm.validity = [](const FlowPoint& p, Real eps) { return 1 - p.t * eps > 0; };
    return fm;
}

// tau = exp(rt): xi = r e^{rt} x, gamma = r e^{rt} y. The u multiplier
// collects the case's exponential-scaling coefficient, whose quadratic
// part is A x + B y and whose logarithmic part is sigma.
FlowMap make_exp_scaling(int sign, Real a, Real b, Real d, Real e) {
    const Real r = sign * b;
    const Real A = r * (r + b);
    const Real B = r * (r + e);
    const Real sigma = (a + d) + (a * b + d * e) / r;
    FlowMap fm;
    fm.kind = sign > 0 ? "exp_scaling(+)" : "exp_scaling(-)";
    fm.map = [r, A, B, sigma](const FlowPoint& p, Real eps) {
        const Real E = std::exp(r * p.t);
        const Real D = 1 - r * eps * E;
        const Real mult = std::exp((A * p.x + B * p.y) * eps * E / D) * std::pow(D, sigma);
        return FlowPoint{p.x / D, p.y / D, p.t - std::log(D) / r, p.u * mult};
    };
    fm.validity = [r](const FlowPoint& p, Real eps) {
        return 1 - r * eps * std::exp(r * p.t) > 0;
    };
    return fm;
}

// xi (or gamma) = sqrt(w) f(t): the square root of the moving coordinate
// advances linearly, sqrt(w~) = sqrt(w) + f(t) eps / 2, and u picks up
// exp(C(t)(sqrt(w) eps + f(t) eps^2/4)) with C the element's u rate.
FlowMap make_sqrt_shift(int axis, ShiftProfile profile, Real rho) {
    std::function<Real(Real)> f, C;
    std::string tag;
    switch (profile) {
        case ShiftProfile::exp_plus:
            f = [rho](Real t) { return std::exp(rho * t / 2); };
            C = [rho](Real t) { return 2 * rho * std::exp(rho * t / 2); };
            tag = "exp+";
            break;
        case ShiftProfile::exp_minus:
            f = [rho](Real t) { return std::exp(-rho * t / 2); };
            C = [](Real) { return Real(0); };
            tag = "exp-";
            break;
        case ShiftProfile::linear_t:
            f = [](Real t) { return t; };
            C = [](Real) { return Real(2); };
            tag = "t";
            break;
        case ShiftProfile::constant_one:
            f = [](Real) { return Real(1); };
            C = [](Real) { return Real(0); };
            tag = "1";
            break;
    }
    FlowMap fm;
    fm.kind = std::string("sqrt_shift(") + (axis == 0 ? "x" : "y") + "," + tag + ")";
    fm.map = [axis, f, C](const FlowPoint& p, Real eps) {
        const Real w = axis == 0 ? p.x : p.y;
        const Real root = std::sqrt(w) + f(p.t) * eps / 2;
        const Real mult =
            std::exp(C(p.t) * (std::sqrt(w) * eps + f(p.t) * eps * eps / 4));
        FlowPoint out = p;
        (axis == 0 ? out.x : out.y) = root * root;
        out.u = p.u * mult;
        return out;
    };
    fm.validity = [axis, f](const FlowPoint& p, Real eps) {
        const Real w = axis == 0 ? p.x : p.y;
        return w > 0 && std::sqrt(w) + f(p.t) * eps / 2 > 0;
    };
    return fm;
}

// xi = sqrt(xy), gamma = -sqrt(xy): the square roots rotate with
// half-angle eps/2; u carries exp(((b-e)/2)((x~-y~)-(x-y))).
FlowMap make_rotation(Real coef) {
    FlowMap fm;
    fm.kind = "rotation_pair";
    auto roots = [](const FlowPoint& p, Real eps) {
        const Real c = std::cos(eps / 2), s = std::sin(eps / 2);
        const Real px = std::sqrt(p.x), py = std::sqrt(p.y);
        return std::pair<Real, Real>{px * c + py * s, py * c - px * s};
    };
    fm.map = [coef, roots](const FlowPoint& p, Real eps) {
        const auto [rx, ry] = roots(p, eps);
        const Real xn = rx * rx, yn = ry * ry;
        const Real mult = std::exp(coef * ((xn - yn) - (p.x - p.y)));
        return FlowPoint{xn, yn, p.t, p.u * mult};
    };
    fm.validity = [roots](const FlowPoint& p, Real eps) {
        if (!(p.x > 0 && p.y > 0)) return false;
        const auto [rx, ry] = roots(p, eps);
        return rx > 0 && ry > 0;
    };
    return fm;
}

FlowMap make_heat(GenKind kind) {
    FlowMap fm;
    fm.validity = always_valid;
    switch (kind) {
        case GenKind::heat_translate_x:
            fm.kind = "heat_translate_x";
            fm.map = [](const FlowPoint& p, Real eps) {
                return FlowPoint{p.x + eps, p.y, p.t, p.u};
            };
            break;
        case GenKind::heat_translate_t:
            fm.kind = "heat_translate_t";
            fm.map = [](const FlowPoint& p, Real eps) {
                return FlowPoint{p.x, p.y, p.t + eps, p.u};
            };
            break;
        case GenKind::heat_scale_u:
            fm.kind = "heat_scale_u";
            fm.map = [](const FlowPoint& p, Real eps) {
                return FlowPoint{p.x, p.y, p.t, p.u * std::exp(eps)};
            };
            break;
        case GenKind::heat_dilation:
            fm.kind = "heat_dilation";
            fm.map = [](const FlowPoint& p, Real eps) {
                return FlowPoint{p.x * std::exp(eps), p.y, p.t * std::exp(2 * eps),
                                 p.u * std::exp(-eps / 2)};
            };
            break;
        case GenKind::heat_galilean:
            fm.kind = "heat_galilean";
            fm.map = [](const FlowPoint& p, Real eps) {
                return FlowPoint{p.x + 2 * p.t * eps, p.y, p.t,
                                 p.u * std::exp(-(p.x * eps + p.t * eps * eps))};
            };
            break;
        case GenKind::heat_projective:
            fm.kind = "heat_projective";
            fm.map = [](const FlowPoint& p, Real eps) {
                const Real D = 1 - 4 * p.t * eps;
                const Real mult = std::sqrt(D) * std::exp(-p.x * p.x * eps / D);
                return FlowPoint{p.x / D, p.y, p.t / D, p.u * mult};
            };
            fm.validity = [](const FlowPoint& p, Real eps) {
                return 1 - 4 * p.t * eps > 0;
            };
            break;
        default:
            throw std::logic_error("not a heat element kind");
    }
    return fm;
}

}  // namespace

FlowPoint FlowMap::apply(const FlowPoint& p, Real eps) const {
    if (!validity(p, eps))
        throw std::domain_error("flow " + kind + ": outside the validity domain");
    return map(p, eps);
}

FlowMap flow_for_element(const BasisElement& el, const std::array<Rational, 4>& sample) {
    const Real a = rat(sample[0]), b = rat(sample[1]);
    const Real d = rat(sample[2]), e = rat(sample[3]);
    switch (el.kind.kind) {
        case GenKind::time_translate:
            return make_time_translate(rat(el.kind.shift.eval(sample)));
        case GenKind::scale_u:
            return make_scale_u();
        case GenKind::dilation:
            return make_dilation();
        case GenKind::projective:
            return make_projective(2 * (a + d));
        case GenKind::exp_scaling:
            return make_exp_scaling(el.kind.rate_sign, a, b, d, e);
        case GenKind::sqrt_shift:
            return make_sqrt_shift(el.kind.axis, el.kind.profile,
                                   el.kind.axis == 0 ? b : e);
        case GenKind::rotation_pair:
            return make_rotation((b - e) / 2);
        default:
            return make_heat(el.kind.kind);
    }
}

FlowMap closed_form_flow(const ParamCase& pcase, int i) {
    GeneratorBasis basis = basis_for(pcase);
    if (i < 0 || i >= basis.dimension())
        throw std::out_of_range("no basis element " + std::to_string(i) + " in case " +
                                pcase.label());
    return flow_for_element(basis.elements[i], pcase.sample);
}

FlowMap heat_closed_form_flow(int i) {
    GeneratorBasis basis = heat_basis();
    if (i < 0 || i >= basis.dimension())
        throw std::out_of_range("no heat basis element " + std::to_string(i));
    return flow_for_element(basis.elements[i], basis.pcase.sample);
}

FlowPoint integrate_flow(const VectorField& v, const FlowPoint& p0, double eps,
                         const std::array<double, 4>& params, double step,
                         bool positivity_guard) {
    const int n = std::max(1, int(std::ceil(std::abs(eps) / step - 1e-12)));
    const Real h = Real(eps) / n;

    auto rhs = [&](const FlowPoint& s) {
        EvalPoint pt;
        pt.x = double(s.x);
        pt.y = double(s.y);
        pt.t = double(s.t);
        pt.u = double(s.u);
        pt.params = params;
        return FlowPoint{Real(v.xi.eval(pt)), Real(v.gamma.eval(pt)),
                         Real(v.tau.eval(pt)), Real(v.phi.eval(pt))};
    };
    auto shifted = [](const FlowPoint& s, const FlowPoint& k, Real c) {
        return FlowPoint{s.x + c * k.x, s.y + c * k.y, s.t + c * k.t, s.u + c * k.u};
    };

    FlowPoint s = p0;
    for (int i = 0; i < n; ++i) {
        const FlowPoint k1 = rhs(s);
        const FlowPoint k2 = rhs(shifted(s, k1, h / 2));
        const FlowPoint k3 = rhs(shifted(s, k2, h / 2));
        const FlowPoint k4 = rhs(shifted(s, k3, h));
        s.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
        s.y += h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
        s.t += h / 6 * (k1.t + 2 * k2.t + 2 * k3.t + k4.t);
        s.u += h / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u);
        if (positivity_guard && (s.x <= 0 || s.y <= 0))
            throw DomainExitError("trajectory left the quadrant x, y > 0",
                                  double((i + 1) * h));
    }
    return s;
}

SolutionFn one_solution() {
    SolutionFn u;
    u.fn = [](Real, Real, Real) { return Real(1); };
    u.provenance = {"one"};
    return u;
}

SolutionFn transform_solution(const FlowMap& flow, const SolutionFn& u, double eps) {
    SolutionFn out;
    out.provenance = u.provenance;
    out.provenance.push_back("transform(" + flow.kind + ", eps=" + fmt_eps(eps) + ")");
    const Real e = eps;
    out.fn = [flow, u, e](Real x, Real y, Real t) {
        const FlowPoint here{x, y, t, 1};
        const FlowPoint back = flow.apply(here, -e);
        const Real mult = flow.apply(FlowPoint{back.x, back.y, back.t, 1}, e).u;
        return mult * u(back.x, back.y, back.t);
    };
    return out;
}

namespace {

double residual_value(const std::array<double, 4>& params, const SolutionFn& u,
                      double x, double y, double t, bool heat) {
    const Real hx = 1e-5 * std::max(1.0, std::abs(x));
    const Real hy = 1e-5 * std::max(1.0, std::abs(y));
    const Real ht = 1e-5 * std::max(1.0, std::abs(t));
    const Real X = x, Y = y, T = t;

    const Real f0 = u(X, Y, T);
    const Real fxp = u(X + hx, Y, T), fxm = u(X - hx, Y, T);
    const Real ftp = u(X, Y, T + ht), ftm = u(X, Y, T - ht);
    const Real ut = (ftp - ftm) / (2 * ht);
    const Real ux = (fxp - fxm) / (2 * hx);
    const Real uxx = (fxp - 2 * f0 + fxm) / (hx * hx);
    if (heat) return double(std::abs(ut - uxx));

    const Real fyp = u(X, Y + hy, T), fym = u(X, Y - hy, T);
    const Real uy = (fyp - fym) / (2 * hy);
    const Real uyy = (fyp - 2 * f0 + fym) / (hy * hy);
    const Real a = params[0], b = params[1], d = params[2], e = params[3];
    return double(std::abs(ut + (a - b * X) * ux + (d - e * Y) * uy + X / 2 * uxx +
                           Y / 2 * uyy));
}

}  // namespace

double residual(const std::array<double, 4>& params, const SolutionFn& u, double x,
                double y, double t) {
    return residual_value(params, u, x, y, t, false);
}

double heat_residual(const SolutionFn& u, double x, double t) {
    return residual_value({}, u, x, 1.0, t, true);
}

}  // namespace liesym
