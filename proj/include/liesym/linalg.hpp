// Dense exact linear algebra over the rationals. Used for decomposing
// brackets in a basis, rank and span computations, and solving the small
// linear systems that arise when matching algebra morphisms.

#ifndef LIESYM_LINALG_HPP
#define LIESYM_LINALG_HPP

#include <optional>
#include <vector>

#include "liesym/rational.hpp"

namespace liesym {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;  // row major

// Reduced row echelon form in place; returns the pivot column of each
// pivot row in order.
std::vector<std::size_t> rref(RatMat& m);

std::size_t rank(RatMat m);

// Solves A x = rhs. Empty optional when inconsistent. With a nontrivial
// kernel the particular solution with free variables set to zero is
// returned.
std::optional<RatVec> solve(const RatMat& a, const RatVec& rhs);

// Basis of the null space of A.
std::vector<RatVec> kernel(const RatMat& a);

// Inverse of a square matrix; empty optional when singular.
std::optional<RatMat> inverse(const RatMat& a);

// True when v lies in the row span of m.
bool in_row_span(const RatMat& m, const RatVec& v);

}  // namespace liesym

#endif
