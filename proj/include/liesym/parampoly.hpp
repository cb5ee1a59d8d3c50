// Polynomials in the four equation parameters a, b, d, e with exact
// rational coefficients. These appear as term coefficients in symbolic
// expressions; parameter constraints (a = 1/4, e = b, ...) are applied
// by substitution, never by modular tricks.

#ifndef LIESYM_PARAMPOLY_HPP
#define LIESYM_PARAMPOLY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "liesym/rational.hpp"

namespace liesym {

enum class Param : std::uint8_t { a = 0, b = 1, d = 2, e = 3 };

constexpr std::array<char, 4> kParamNames = {'a', 'b', 'd', 'e'};

class ParamPoly {
public:
    using Mono = std::array<std::uint8_t, 4>;  // exponents of a, b, d, e

    ParamPoly() = default;
    ParamPoly(Rational c);
    ParamPoly(std::int64_t c) : ParamPoly(Rational(c)) {}
    static ParamPoly var(Param p);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()

    ParamPoly operator-() const;
    friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b);
    friend ParamPoly operator-(const ParamPoly& a, const ParamPoly& b);
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
    ParamPoly& operator+=(const ParamPoly& o) { return *this = *this + o; }
    ParamPoly& operator-=(const ParamPoly& o) { return *this = *this - o; }
    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }
    friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ParamPoly& a, const ParamPoly& b) { return !(a == b); }
    friend bool operator<(const ParamPoly& a, const ParamPoly& b) { return a.terms_ < b.terms_; }

    ParamPoly pow(unsigned n) const;

    // Replaces one parameter by a polynomial.
    ParamPoly substitute(Param p, const ParamPoly& value) const;

    Rational eval(const std::array<Rational, 4>& vals) const;
    double eval_double(const std::array<double, 4>& vals) const;

    // true when the polynomial is c0 + cb*b + ce*e (degree <= 1, no a or d).
    bool is_linear_be() const;

    std::string str() const;

    const std::vector<std::pair<Mono, Rational>>& terms() const { return terms_; }

private:
    // Sorted by monomial (graded lexicographic), no zero coefficients.
    std::vector<std::pair<Mono, Rational>> terms_;
    void insert(const Mono& m, const Rational& c);
    static bool mono_less(const Mono& x, const Mono& y);
};

inline ParamPoly param_a() { return ParamPoly::var(Param::a); }
inline ParamPoly param_b() { return ParamPoly::var(Param::b); }
inline ParamPoly param_d() { return ParamPoly::var(Param::d); }
inline ParamPoly param_e() { return ParamPoly::var(Param::e); }

}  // namespace liesym

#endif
