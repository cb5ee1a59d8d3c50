#include "liesym/parse.hpp"

#include <cctype>
#include <optional>

namespace liesym {

namespace {

struct Lexer {
    std::string src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) pos++;
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            pos++;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(pos) +
                             " in \"" + src + "\"");
    }
    std::optional<std::int64_t> number() {
        skip_ws();
        if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos]))) return std::nullopt;
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) pos++;
        return std::stoll(src.substr(start, pos - start));
    }
    std::optional<std::string> ident() {
        skip_ws();
        if (pos >= src.size()) return std::nullopt;
        char c = src[pos];
        if (!std::isalpha(static_cast<unsigned char>(c))) return std::nullopt;
        std::size_t start = pos;
        while (pos < src.size()) {
            char ch = src[pos];
            if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') pos++;
            else break;
        }
        return src.substr(start, pos - start);
    }
};

struct Parser {
    Lexer lex;

    Expr parse() {
        Expr e = sum();
        if (!lex.eof())
            throw ParseError("trailing input at offset " + std::to_string(lex.pos) + " in \"" +
                             lex.src + "\"");
        return e;
    }

    Expr sum() {
        Expr acc = product();
        while (true) {
            if (lex.accept('+')) acc += product();
            else if (lex.accept('-')) acc -= product();
            else return acc;
        }
    }

    Expr product() {
        Expr acc = unary();
        while (true) {
            if (lex.accept('*')) {
                acc *= unary();
            } else if (lex.accept('/')) {
                Expr d = unary();
                if (!d.is_param_poly() || !d.as_param_poly().is_constant())
                    throw ParseError("division is only defined by rational constants");
                Rational r = d.as_param_poly().constant_value();
                if (r.is_zero()) throw ParseError("division by zero");
                acc = (Rational(1) / r) * acc;
            } else {
                return acc;
            }
        }
    }

    Expr unary() {
        if (lex.accept('-')) return -unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!lex.accept('^')) return base;
        Rational e = exponent();
        Rational e2 = e * Rational(2);
        if (!e2.is_integer()) throw ParseError("exponents live on the half-integer lattice");
        // A bare atom may take any half-integer power; anything else needs
        // a non-negative integer.
        if (base.terms().size() == 1 && base.terms()[0].pows.size() == 1 &&
            base.terms()[0].ex.is_zero() &&
            base.terms()[0].coeff == ParamPoly(Rational(1)) &&
            base.terms()[0].pows[0].second == 2) {
            return Expr::atom(base.terms()[0].pows[0].first, static_cast<int>(e2.num()));
        }
        if (!e.is_integer() || e < Rational(0))
            throw ParseError("fractional or negative power of a compound expression");
        return base.pow_int(static_cast<int>(e.num()));
    }

    Rational exponent() {
        bool paren = lex.accept('(');
        bool neg = lex.accept('-');
        auto n = lex.number();
        if (!n) throw ParseError("expected exponent at offset " + std::to_string(lex.pos));
        Rational r(*n);
        if (paren && lex.accept('/')) {
            auto q = lex.number();
            if (!q) throw ParseError("expected exponent denominator");
            r = r / Rational(*q);
        }
        if (neg) r = -r;
        if (paren) lex.expect(')');
        return r;
    }

    Expr primary() {
        if (lex.accept('(')) {
            Expr e = sum();
            lex.expect(')');
            return e;
        }
        if (auto n = lex.number()) return Expr::constant(*n);
        auto id = lex.ident();
        if (!id) throw ParseError("unexpected character at offset " + std::to_string(lex.pos) +
                                  " in \"" + lex.src + "\"");
        if (*id == "sqrt") {
            lex.expect('(');
            auto arg = lex.ident();
            if (!arg || (*arg != "x" && *arg != "y"))
                throw ParseError("sqrt is only defined for x and y");
            lex.expect(')');
            return *arg == "x" ? ex_sqrt_x() : ex_sqrt_y();
        }
        if (*id == "exp") {
            lex.expect('(');
            Expr inner = sum();
            lex.expect(')');
            return make_exponential(inner);
        }
        return resolve(*id);
    }

    static Expr make_exponential(const Expr& inner) {
        if (inner.is_zero()) return Expr::constant(1);
        if (inner.terms().size() != 1)
            throw ParseError("exp argument must be a single multiple of t");
        const Term& t = inner.terms()[0];
        if (!t.ex.is_zero() || t.pows.size() != 1 || !(t.pows[0].first == Atom::T()) ||
            t.pows[0].second != 2)
            throw ParseError("exp argument must be (linear in b, e) * t");
        const ParamPoly& alpha = t.coeff;
        if (!alpha.is_linear_be())
            throw ParseError("exp argument must be linear in b and e");
        ExpArg ex;
        for (const auto& [mono, c] : alpha.terms()) {
            if (mono == ParamPoly::Mono{0, 0, 0, 0}) ex.c0 = c;
            else if (mono == ParamPoly::Mono{0, 1, 0, 0}) ex.cb = c;
            else if (mono == ParamPoly::Mono{0, 0, 0, 1}) ex.ce = c;
        }
        return Expr::exponential(ex);
    }

    static Expr resolve(const std::string& id) {
        if (id == "x") return ex_x();
        if (id == "y") return ex_y();
        if (id == "t") return ex_t();
        if (id == "u") return ex_u();
        if (id == "a") return Expr::param(Param::a);
        if (id == "b") return Expr::param(Param::b);
        if (id == "d") return Expr::param(Param::d);
        if (id == "e") return Expr::param(Param::e);
        auto suffix_counts = [](const std::string& s, bool allow_u,
                                int& cx, int& cy, int& ct, int& cu) {
            cx = cy = ct = cu = 0;
            for (char ch : s) {
                if (ch == 'x') cx++;
                else if (ch == 'y') cy++;
                else if (ch == 't') ct++;
                else if (ch == 'u' && allow_u) cu++;
                else return false;
            }
            return true;
        };
        if (id.size() > 2 && id.rfind("u_", 0) == 0) {
            int cx, cy, ct, cu;
            if (!suffix_counts(id.substr(2), false, cx, cy, ct, cu))
                throw ParseError("bad jet name: " + id);
            return ex_jet(cx, cy, ct);
        }
        for (OpaqueBase b : {OpaqueBase::xi, OpaqueBase::gamma, OpaqueBase::tau, OpaqueBase::phi}) {
            std::string name = opaque_base_name(b);
            if (id == name) return Expr::atom(Atom::Opaque(b));
            if (id.size() > name.size() + 1 && id.rfind(name + "_", 0) == 0) {
                int cx, cy, ct, cu;
                if (!suffix_counts(id.substr(name.size() + 1), true, cx, cy, ct, cu))
                    throw ParseError("bad derivative suffix: " + id);
                OpaqueDeriv d{std::uint8_t(cx), std::uint8_t(cy), std::uint8_t(ct), std::uint8_t(cu)};
                return Expr::atom(Atom::Opaque(b, d));
            }
        }
        throw ParseError("unknown symbol: " + id);
    }
};

}  // namespace

Expr parse_expr(const std::string& text) {
    Parser p{Lexer{text, 0}};
    return p.parse();
}

}  // namespace liesym
