// Text form of expressions. The grammar covers sums, products, division
// by rational constants, integer and half-integer powers, sqrt(x)/sqrt(y),
// exp(<linear in b,e>*t), the coordinates, parameters, u and its jets,
// and the opaque coefficient names xi, gamma, tau, phi with derivative
// suffixes (xi_x, phi_xu, ...). print followed by parse is the identity.

#ifndef LIESYM_PARSE_HPP
#define LIESYM_PARSE_HPP

#include <stdexcept>
#include <string>

#include "liesym/expr.hpp"

namespace liesym {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

Expr parse_expr(const std::string& text);

}  // namespace liesym

#endif
