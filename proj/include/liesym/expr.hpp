// Canonical multivariate expressions for the symmetry engine.
//
// An expression is a combined sum of terms. Each term is
//
//     coeff * prod(atom^power) * exp(alpha * t)
//
// where coeff is an exact polynomial in the parameters a,b,d,e, atoms are
// coordinates (x,y,t), the dependent variable u, jet coordinates u_J, or
// opaque coefficient functions (xi, gamma, tau, phi and their formal
// partial derivatives), and alpha is a rational-linear combination of b, e
// and a rational constant. Powers live on a half-integer lattice for x and
// y (so sqrt(x)*sqrt(x) collapses to x by exponent addition) and are
// non-negative integers everywhere else. Equality of canonical forms
// decides zero-testing for this class.

#ifndef LIESYM_EXPR_HPP
#define LIESYM_EXPR_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "liesym/parampoly.hpp"
#include "liesym/rational.hpp"

namespace liesym {

// Multi-index of a jet coordinate u_J; (0,0,0) denotes u itself.
struct JetIndex {
    std::uint8_t nx = 0, ny = 0, nt = 0;
    int order() const { return nx + ny + nt; }
    JetIndex bump_x() const { return {std::uint8_t(nx + 1), ny, nt}; }
    JetIndex bump_y() const { return {nx, std::uint8_t(ny + 1), nt}; }
    JetIndex bump_t() const { return {nx, ny, std::uint8_t(nt + 1)}; }
    auto operator<=>(const JetIndex&) const = default;
    std::string str() const;  // "u", "u_x", "u_xxt", ...
};

enum class OpaqueBase : std::uint8_t { xi = 0, gamma = 1, tau = 2, phi = 3 };

std::string opaque_base_name(OpaqueBase b);

// Formal partial-derivative record of an opaque coefficient function.
struct OpaqueDeriv {
    std::uint8_t dx = 0, dy = 0, dt = 0, du = 0;
    int order() const { return dx + dy + dt + du; }
    auto operator<=>(const OpaqueDeriv&) const = default;
};

enum class AtomKind : std::uint8_t { jet = 0, u = 1, x = 2, y = 3, t = 4, opaque = 5 };

struct Atom {
    AtomKind kind = AtomKind::u;
    JetIndex jet;       // kind == jet
    OpaqueBase base = OpaqueBase::xi;  // kind == opaque
    OpaqueDeriv der;    // kind == opaque

    static Atom X() { return {AtomKind::x, {}, OpaqueBase::xi, {}}; }
    static Atom Y() { return {AtomKind::y, {}, OpaqueBase::xi, {}}; }
    static Atom T() { return {AtomKind::t, {}, OpaqueBase::xi, {}}; }
    static Atom U() { return {AtomKind::u, {}, OpaqueBase::xi, {}}; }
    static Atom Jet(JetIndex j) { return {AtomKind::jet, j, OpaqueBase::xi, {}}; }
    static Atom Opaque(OpaqueBase b, OpaqueDeriv d = {}) { return {AtomKind::opaque, {}, b, d}; }

    auto operator<=>(const Atom&) const = default;
    std::string str() const;
};

// Argument of the exponential factor exp((cb*b + ce*e + c0) * t).
struct ExpArg {
    Rational cb, ce, c0;
    bool is_zero() const { return cb.is_zero() && ce.is_zero() && c0.is_zero(); }
    ParamPoly as_poly() const;
    friend bool operator==(const ExpArg&, const ExpArg&) = default;
    bool less(const ExpArg& o) const;
};

struct Term {
    ParamPoly coeff;
    // Sorted by atom; exponents stored doubled (exp2), so x^(1/2) has exp2 = 1.
    std::vector<std::pair<Atom, int>> pows;
    ExpArg ex;
};

// Numeric evaluation point. Jet and opaque atoms take values from `extra`.
struct EvalPoint {
    double x = 0, y = 0, t = 0, u = 0;
    std::array<double, 4> params{0, 0, 0, 0};  // a, b, d, e
    std::map<Atom, double> extra;
};

class Expr {
public:
    Expr() = default;

    static Expr constant(Rational c);
    static Expr constant(std::int64_t c) { return constant(Rational(c)); }
    static Expr from_poly(const ParamPoly& p);
    static Expr param(Param p) { return from_poly(ParamPoly::var(p)); }
    // exp2 is twice the exponent; atom(A) with exp2 = 2 is the plain atom.
    static Expr atom(Atom a, int exp2 = 2);
    static Expr exponential(const ExpArg& alpha);
    static Expr exponential(Rational cb, Rational ce, Rational c0) {
        return exponential(ExpArg{cb, ce, c0});
    }

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    // true when the expression is a bare parameter polynomial (no atoms,
    // no exponential factor).
    bool is_param_poly() const;
    ParamPoly as_param_poly() const;

    Expr operator-() const;
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    friend Expr operator*(const ParamPoly& c, const Expr& e);
    friend Expr operator*(const Rational& c, const Expr& e);
    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

    // Integer powers. Negative n requires a single term with a constant
    // rational coefficient (so the reciprocal stays in class).
    Expr pow_int(int n) const;

    // Partial derivative with respect to a coordinate atom, u, or a jet
    // coordinate. Opaque atoms pick up a formal derivative tag.
    Expr diff(const Atom& var) const;

    // Replaces every occurrence of `a` (which must carry non-negative
    // integer powers) by `value`.
    Expr subst_atom(const Atom& a, const Expr& value) const;

    // Replaces a parameter by a polynomial; the polynomial must be linear
    // in b and e (plus a rational constant) so exponential arguments stay
    // in class.
    Expr subst_param(Param p, const ParamPoly& value) const;

    // Simultaneous swap x<->y, u_J indices, xi<->gamma, a<->d, b<->e.
    Expr swap_xy() const;

    double eval(const EvalPoint& pt) const;

    std::vector<Atom> atoms() const;
    int max_jet_order() const;

    std::string str() const;

private:
    std::vector<Term> terms_;  // sorted by term key, canonical
    static bool term_key_less(const Term& a, const Term& b);
    static void normalize_term(Term& t);
    void insert_term(Term t);
};

inline Expr ex_x() { return Expr::atom(Atom::X()); }
inline Expr ex_y() { return Expr::atom(Atom::Y()); }
inline Expr ex_t() { return Expr::atom(Atom::T()); }
inline Expr ex_u() { return Expr::atom(Atom::U()); }
inline Expr ex_jet(int nx, int ny, int nt) {
    return Expr::atom(Atom::Jet({std::uint8_t(nx), std::uint8_t(ny), std::uint8_t(nt)}));
}
inline Expr ex_sqrt_x() { return Expr::atom(Atom::X(), 1); }
inline Expr ex_sqrt_y() { return Expr::atom(Atom::Y(), 1); }
// exp(c*b*t + ...) helpers used by catalog builders.
inline Expr ex_exp_bt(Rational cb) { return Expr::exponential({cb, Rational(0), Rational(0)}); }
inline Expr ex_exp_et(Rational ce) { return Expr::exponential({Rational(0), ce, Rational(0)}); }

}  // namespace liesym

#endif
