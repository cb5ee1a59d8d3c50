#include "liesym/parampoly.hpp"

#include <algorithm>
#include <cmath>

namespace liesym {

ParamPoly::ParamPoly(Rational c) {
    if (!c.is_zero()) terms_.push_back({Mono{0, 0, 0, 0}, c});
}

ParamPoly ParamPoly::var(Param p) {
    ParamPoly r;
    Mono m{0, 0, 0, 0};
    m[static_cast<std::size_t>(p)] = 1;
    r.terms_.push_back({m, Rational(1)});
    return r;
}

bool ParamPoly::mono_less(const Mono& x, const Mono& y) {
    int dx = x[0] + x[1] + x[2] + x[3];
    int dy = y[0] + y[1] + y[2] + y[3];
    if (dx != dy) return dx < dy;
    return x < y;
}

bool ParamPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Mono{0, 0, 0, 0});
}

Rational ParamPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("parameter polynomial is not constant: " + str());
    return terms_[0].second;
}

void ParamPoly::insert(const Mono& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const auto& t, const Mono& k) { return mono_less(t.first, k); });
    if (it != terms_.end() && it->first == m) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, {m, c});
    }
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r = a;
    for (const auto& t : b.terms_) r.insert(t.first, t.second);
    return r;
}

ParamPoly operator-(const ParamPoly& a, const ParamPoly& b) { return a + (-b); }

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            ParamPoly::Mono m;
            for (int i = 0; i < 4; ++i) {
                int s = ta.first[i] + tb.first[i];
                if (s > 255) throw std::overflow_error("parameter monomial degree overflow");
                m[i] = static_cast<std::uint8_t>(s);
            }
            r.insert(m, ta.second * tb.second);
        }
    return r;
}

ParamPoly ParamPoly::pow(unsigned n) const {
    ParamPoly r(Rational(1));
    for (unsigned i = 0; i < n; ++i) r *= *this;
    return r;
}

ParamPoly ParamPoly::substitute(Param p, const ParamPoly& value) const {
    std::size_t idx = static_cast<std::size_t>(p);
    ParamPoly out;
    for (const auto& t : terms_) {
        Mono m = t.first;
        unsigned k = m[idx];
        m[idx] = 0;
        ParamPoly piece;
        piece.insert(m, t.second);
        out += piece * value.pow(k);
    }
    return out;
}

Rational ParamPoly::eval(const std::array<Rational, 4>& vals) const {
    Rational acc(0);
    for (const auto& t : terms_) {
        Rational v = t.second;
        for (int i = 0; i < 4; ++i) v *= vals[i].pow(t.first[i]);
        acc += v;
    }
    return acc;
}

double ParamPoly::eval_double(const std::array<double, 4>& vals) const {
    double acc = 0.0;
    for (const auto& t : terms_) {
        double v = t.second.to_double();
        for (int i = 0; i < 4; ++i) v *= std::pow(vals[i], t.first[i]);
        acc += v;
    }
    return acc;
}

bool ParamPoly::is_linear_be() const {
    for (const auto& t : terms_) {
        const Mono& m = t.first;
        if (m[0] != 0 || m[2] != 0) return false;
        if (m[1] + m[3] > 1) return false;
    }
    return true;
}

std::string ParamPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    // Highest-degree terms print first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->second;
        bool first = out.empty();
        if (c < Rational(0)) {
            out += first ? "-" : " - ";
            c = -c;
        } else if (!first) {
            out += " + ";
        }
        std::string vars;
        for (int i = 0; i < 4; ++i) {
            int deg = it->first[i];
            if (deg == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += kParamNames[i];
            if (deg > 1) vars += "^" + std::to_string(deg);
        }
        if (vars.empty()) {
            out += c.str();
        } else {
            if (c != Rational(1)) out += c.str() + "*";
            out += vars;
        }
    }
    return out;
}

}  // namespace liesym
