#include "liesym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace liesym {

std::string JetIndex::str() const {
    if (order() == 0) return "u";
    std::string s = "u_";
    s.append(nx, 'x');
    s.append(ny, 'y');
    s.append(nt, 't');
    return s;
}

std::string opaque_base_name(OpaqueBase b) {
    switch (b) {
        case OpaqueBase::xi: return "xi";
        case OpaqueBase::gamma: return "gamma";
        case OpaqueBase::tau: return "tau";
        case OpaqueBase::phi: return "phi";
    }
    return "?";
}

std::string Atom::str() const {
    switch (kind) {
        case AtomKind::x: return "x";
        case AtomKind::y: return "y";
        case AtomKind::t: return "t";
        case AtomKind::u: return "u";
        case AtomKind::jet: return jet.str();
        case AtomKind::opaque: {
            std::string s = opaque_base_name(base);
            if (der.order() > 0) {
                s += "_";
                s.append(der.dx, 'x');
                s.append(der.dy, 'y');
                s.append(der.dt, 't');
                s.append(der.du, 'u');
            }
            return s;
        }
    }
    return "?";
}

ParamPoly ExpArg::as_poly() const {
    return ParamPoly(cb) * param_b() + ParamPoly(ce) * param_e() + ParamPoly(c0);
}

bool ExpArg::less(const ExpArg& o) const {
    if (cb != o.cb) return cb < o.cb;
    if (ce != o.ce) return ce < o.ce;
    return c0 < o.c0;
}

namespace {

int exp2_of(const Term& t, AtomKind k) {
    for (const auto& [a, e] : t.pows)
        if (a.kind == k) return e;
    return 0;
}

}  // namespace

// Display and storage order: jet content first (higher jet grade leads),
// then u, opaque tags, coordinate powers, and the exponential argument.
bool Expr::term_key_less(const Term& ta, const Term& tb) {
    auto grade = [](const Term& t) {
        int g = 0;
        for (const auto& [a, e] : t.pows)
            if (a.kind == AtomKind::jet) g += e;
        return g;
    };
    int ga = grade(ta), gb = grade(tb);
    if (ga != gb) return ga > gb;
    auto slice = [](const Term& t, AtomKind k) {
        std::vector<std::pair<Atom, int>> v;
        for (const auto& [a, e] : t.pows)
            if (a.kind == k) v.push_back({a, e});
        return v;
    };
    for (AtomKind k : {AtomKind::jet, AtomKind::opaque}) {
        auto va = slice(ta, k), vb = slice(tb, k);
        if (va != vb) return va < vb;
    }
    for (AtomKind k : {AtomKind::u, AtomKind::x, AtomKind::y, AtomKind::t}) {
        int ea = exp2_of(ta, k), eb = exp2_of(tb, k);
        if (ea != eb) return ea > eb;
    }
    if (!(ta.ex == tb.ex)) return ta.ex.less(tb.ex);
    return false;
}

void Expr::normalize_term(Term& t) {
    std::sort(t.pows.begin(), t.pows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<Atom, int>> merged;
    for (const auto& [a, e] : t.pows) {
        if (!merged.empty() && merged.back().first == a)
            merged.back().second += e;
        else
            merged.push_back({a, e});
    }
    std::erase_if(merged, [](const auto& p) { return p.second == 0; });
    for (const auto& [a, e] : merged) {
        bool half_ok = (a.kind == AtomKind::x || a.kind == AtomKind::y);
        if (!half_ok && (e % 2 != 0 || e < 0))
            throw std::domain_error("invalid exponent on atom " + a.str());
    }
    t.pows = std::move(merged);
}

void Expr::insert_term(Term t) {
    if (t.coeff.is_zero()) return;
    normalize_term(t);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), t, term_key_less);
    if (it != terms_.end() && !term_key_less(t, *it) && !term_key_less(*it, t)) {
        it->coeff += t.coeff;
        if (it->coeff.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, std::move(t));
    }
}

Expr Expr::constant(Rational c) { return from_poly(ParamPoly(c)); }

Expr Expr::from_poly(const ParamPoly& p) {
    Expr e;
    if (!p.is_zero()) e.terms_.push_back({p, {}, {}});
    return e;
}

Expr Expr::atom(Atom a, int exp2) {
    Expr e;
    Term t{ParamPoly(Rational(1)), {{a, exp2}}, {}};
    e.insert_term(std::move(t));
    return e;
}

Expr Expr::exponential(const ExpArg& alpha) {
    Expr e;
    Term t{ParamPoly(Rational(1)), {}, alpha};
    e.terms_.push_back(std::move(t));
    return e;
}

bool Expr::is_param_poly() const {
    for (const auto& t : terms_)
        if (!t.pows.empty() || !t.ex.is_zero()) return false;
    return true;
}

ParamPoly Expr::as_param_poly() const {
    if (!is_param_poly()) throw std::logic_error("expression is not a parameter polynomial: " + str());
    return terms_.empty() ? ParamPoly() : terms_[0].coeff;
}

Expr Expr::operator-() const {
    Expr r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Expr operator+(const Expr& a, const Expr& b) {
    Expr r = a;
    for (const auto& t : b.terms_) r.insert_term(t);
    return r;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    Expr r;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            Term t;
            t.coeff = ta.coeff * tb.coeff;
            t.pows = ta.pows;
            t.pows.insert(t.pows.end(), tb.pows.begin(), tb.pows.end());
            t.ex = {ta.ex.cb + tb.ex.cb, ta.ex.ce + tb.ex.ce, ta.ex.c0 + tb.ex.c0};
            r.insert_term(std::move(t));
        }
    return r;
}

Expr operator*(const ParamPoly& c, const Expr& e) { return Expr::from_poly(c) * e; }
Expr operator*(const Rational& c, const Expr& e) { return Expr::constant(c) * e; }

bool operator==(const Expr& a, const Expr& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const Term& ta = a.terms_[i];
        const Term& tb = b.terms_[i];
        if (!(ta.coeff == tb.coeff) || ta.pows != tb.pows || !(ta.ex == tb.ex)) return false;
    }
    return true;
}

Expr Expr::pow_int(int n) const {
    if (n < 0) {
        if (terms_.size() != 1 || !terms_[0].coeff.is_constant())
            throw std::domain_error("reciprocal requires a single constant-coefficient term");
        const Term& t = terms_[0];
        Term inv;
        inv.coeff = ParamPoly(Rational(1) / t.coeff.constant_value());
        for (const auto& [a, e2] : t.pows) inv.pows.push_back({a, -e2});
        inv.ex = ExpArg{-t.ex.cb, -t.ex.ce, -t.ex.c0};
        Expr base;
        base.insert_term(std::move(inv));
        return base.pow_int(-n);
    }
    Expr r = Expr::constant(1);
    for (int i = 0; i < n; ++i) r *= *this;
    return r;
}

Expr Expr::diff(const Atom& var) const {
    if (var.kind == AtomKind::opaque)
        throw std::domain_error("cannot differentiate by an opaque atom");
    Expr out;
    for (const auto& term : terms_) {
        for (std::size_t i = 0; i < term.pows.size(); ++i) {
            const auto& [a, e2] = term.pows[i];
            if (a == var) {
                // d/dv v^(e2/2) = (e2/2) v^(e2/2 - 1)
                Term t = term;
                t.coeff = t.coeff * ParamPoly(Rational(e2, 2));
                t.pows[i].second -= 2;
                out.insert_term(std::move(t));
            } else if (a.kind == AtomKind::opaque) {
                OpaqueDeriv d = a.der;
                switch (var.kind) {
                    case AtomKind::x: d.dx++; break;
                    case AtomKind::y: d.dy++; break;
                    case AtomKind::t: d.dt++; break;
                    case AtomKind::u: d.du++; break;
                    default: continue;  // opaque functions do not depend on jets
                }
                Term t = term;
                t.coeff = t.coeff * ParamPoly(Rational(e2, 2));
                t.pows[i].second -= 2;
                t.pows.push_back({Atom::Opaque(a.base, d), 2});
                out.insert_term(std::move(t));
            }
        }
        if (var.kind == AtomKind::t && !term.ex.is_zero()) {
            Term t = term;
            t.coeff = t.coeff * term.ex.as_poly();
            out.insert_term(std::move(t));
        }
    }
    return out;
}

Expr Expr::subst_atom(const Atom& a, const Expr& value) const {
    Expr out;
    for (const auto& term : terms_) {
        int e2 = 0;
        Term rest = term;
        for (std::size_t i = 0; i < rest.pows.size(); ++i) {
            if (rest.pows[i].first == a) {
                e2 = rest.pows[i].second;
                rest.pows.erase(rest.pows.begin() + i);
                break;
            }
        }
        if (e2 == 0) {
            out.insert_term(rest);
            continue;
        }
        if (e2 < 0 || e2 % 2 != 0)
            throw std::domain_error("cannot substitute atom with fractional or negative power: " + a.str());
        Expr piece;
        piece.insert_term(rest);
        out += piece * value.pow_int(e2 / 2);
    }
    return out;
}

Expr Expr::subst_param(Param p, const ParamPoly& value) const {
    if (!value.is_linear_be())
        throw std::domain_error("parameter substitution must be linear in b and e");
    Rational vb, ve, v0;
    for (const auto& [mono, c] : value.terms()) {
        if (mono == ParamPoly::Mono{0, 0, 0, 0}) v0 = c;
        else if (mono == ParamPoly::Mono{0, 1, 0, 0}) vb = c;
        else if (mono == ParamPoly::Mono{0, 0, 0, 1}) ve = c;
    }
    Expr out;
    for (const auto& term : terms_) {
        Term t = term;
        t.coeff = t.coeff.substitute(p, value);
        if (p == Param::b && !t.ex.cb.is_zero()) {
            Rational k = t.ex.cb;
            t.ex.cb = k * vb;
            t.ex.ce += k * ve;
            t.ex.c0 += k * v0;
        } else if (p == Param::e && !t.ex.ce.is_zero()) {
            Rational k = t.ex.ce;
            t.ex.ce = k * ve;
            t.ex.cb += k * vb;
            t.ex.c0 += k * v0;
        }
        out.insert_term(std::move(t));
    }
    return out;
}

Expr Expr::swap_xy() const {
    Expr out;
    for (const auto& term : terms_) {
        Term t;
        t.coeff = ParamPoly();
        for (const auto& [mono, c] : term.coeff.terms()) {
            ParamPoly::Mono m = {mono[2], mono[3], mono[0], mono[1]};  // a<->d, b<->e
            ParamPoly piece(c);
            ParamPoly v[4] = {param_a(), param_b(), param_d(), param_e()};
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < m[i]; ++k) piece *= v[i];
            t.coeff += piece;
        }
        for (const auto& [a, e2] : term.pows) {
            Atom na = a;
            switch (a.kind) {
                case AtomKind::x: na = Atom::Y(); break;
                case AtomKind::y: na = Atom::X(); break;
                case AtomKind::jet:
                    na.jet = JetIndex{a.jet.ny, a.jet.nx, a.jet.nt};
                    break;
                case AtomKind::opaque:
                    if (a.base == OpaqueBase::xi) na.base = OpaqueBase::gamma;
                    else if (a.base == OpaqueBase::gamma) na.base = OpaqueBase::xi;
                    na.der = OpaqueDeriv{a.der.dy, a.der.dx, a.der.dt, a.der.du};
                    break;
                default: break;
            }
            t.pows.push_back({na, e2});
        }
        t.ex = {term.ex.ce, term.ex.cb, term.ex.c0};
        out.insert_term(std::move(t));
    }
    return out;
}

double Expr::eval(const EvalPoint& pt) const {
    double acc = 0.0;
    for (const auto& term : terms_) {
        double v = term.coeff.eval_double(pt.params);
        for (const auto& [a, e2] : term.pows) {
            double base;
            switch (a.kind) {
                case AtomKind::x: base = pt.x; break;
                case AtomKind::y: base = pt.y; break;
                case AtomKind::t: base = pt.t; break;
                case AtomKind::u: base = pt.u; break;
                default: {
                    auto it = pt.extra.find(a);
                    if (it == pt.extra.end())
                        throw std::domain_error("no value supplied for atom " + a.str());
                    base = it->second;
                }
            }
            v *= (e2 % 2 == 0) ? std::pow(base, e2 / 2) : std::pow(base, e2 / 2.0);
        }
        if (!term.ex.is_zero()) {
            double alpha = term.ex.cb.to_double() * pt.params[1] +
                           term.ex.ce.to_double() * pt.params[3] + term.ex.c0.to_double();
            v *= std::exp(alpha * pt.t);
        }
        acc += v;
    }
    return acc;
}

std::vector<Atom> Expr::atoms() const {
    std::set<Atom> s;
    for (const auto& t : terms_)
        for (const auto& [a, e] : t.pows) s.insert(a);
    return {s.begin(), s.end()};
}

int Expr::max_jet_order() const {
    int m = 0;
    for (const auto& t : terms_)
        for (const auto& [a, e] : t.pows)
            if (a.kind == AtomKind::jet) m = std::max(m, a.jet.order());
    return m;
}

namespace {

std::string exponent_str(int e2) {
    if (e2 == 2) return "";
    if (e2 % 2 == 0) {
        int e = e2 / 2;
        if (e > 0) return "^" + std::to_string(e);
        return "^(" + std::to_string(e) + ")";
    }
    Rational r(e2, 2);
    return "^(" + r.str() + ")";
}

std::string exp_factor_str(const ExpArg& ex) {
    ParamPoly alpha = ex.as_poly();
    std::string a = alpha.str();
    bool wrap = alpha.terms().size() > 1 || a.find('-') != std::string::npos;
    return "exp(" + (wrap ? "(" + a + ")" : a) + "*t)";
}

}  // namespace

std::string Expr::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& term : terms_) {
        std::string body;
        for (const auto& [a, e2] : term.pows) {
            if (!body.empty()) body += "*";
            body += a.str() + exponent_str(e2);
        }
        if (!term.ex.is_zero()) {
            if (!body.empty()) body += "*";
            body += exp_factor_str(term.ex);
        }
        ParamPoly c = term.coeff;
        bool neg = false;
        std::string cs;
        if (c.terms().size() == 1) {
            Rational r = c.terms()[0].second;
            if (r < Rational(0)) {
                neg = true;
                c = -c;
            }
            cs = c.str();
            if (cs == "1" && !body.empty()) cs.clear();
        } else {
            cs = "(" + c.str() + ")";
        }
        std::string piece = cs;
        if (!body.empty()) {
            if (!piece.empty()) piece += "*";
            piece += body;
        }
        if (piece.empty()) piece = "1";
        if (out.empty())
            out = (neg ? "-" : "") + piece;
        else
            out += (neg ? " - " : " + ") + piece;
    }
    return out;
}

}  // namespace liesym
