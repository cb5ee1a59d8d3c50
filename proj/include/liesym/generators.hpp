// Parameter-case classifier and the catalog of symmetry bases for the
// square-root-drift family, plus the heat-equation fixture.
//
// The parameter plane splits into a 4x4 grid: rows by which of a, d equal
// 1/4, columns by the relation between b and e. Each case carries a
// canonical sample and a finite basis of point symmetries on top of the
// superposition family mu(x,y,t) d/du. Stored fields are transcriptions
// of a reference table; where the transcription source shows an evident
// misprint the corrected field is stored and the correction is recorded
// in the element note. The determining system is the arbiter for every
// stored field, not the transcription.

#ifndef LIESYM_GENERATORS_HPP
#define LIESYM_GENERATORS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "liesym/jet.hpp"

namespace liesym {

enum class BERelation : std::uint8_t {
    generic = 0,           // b != +-e
    equal_nonzero = 1,     // b = e != 0
    opposite_nonzero = 2,  // b = -e != 0
    both_zero = 3,         // b = e = 0
};

struct ParamCase {
    bool a_quarter = false;
    bool d_quarter = false;
    BERelation b_e_relation = BERelation::generic;
    std::array<Rational, 4> sample{};  // a, b, d, e

    // 1: a=d=1/4, 2: neither, 3: a=1/4 only, 4: d=1/4 only.
    int row() const;
    // 1: generic, 2: equal_nonzero, 3: opposite_nonzero, 4: both_zero.
    int col() const;
    std::string label() const;  // "row.col"

    // Constraint membership; ignores the stored sample.
    bool contains(const std::array<Rational, 4>& vals) const;

    // Mirror case under x<->y (a<->d, b<->e).
    ParamCase swapped() const;

    // Human-readable constraint list, e.g. "a=1/4, d!=1/4, b=e!=0".
    std::string constraints_str() const;
};

// Unique case of the query values, with the query stored as the sample.
ParamCase classify(const Rational& a, const Rational& d, const Rational& b,
                   const Rational& e);

// Parameter substitutions implied by the case: row and column equality
// constraints, plus a pinned rate when the sample sits at b = 0 or e = 0
// inside the generic column.
std::vector<std::pair<Param, ParamPoly>> equality_substitutions(const ParamCase& pcase);

// Expression with those substitutions applied.
Expr subst_case(const ParamCase& pcase, Expr ex);

// The 16 cases with their canonical samples, ordered 1.1 ... 4.4.
const std::vector<ParamCase>& catalog_cases();
const ParamCase& case_by_label(const std::string& label);

// Structural tag a basis element carries so the flow module can attach
// the matching closed-form group action.
enum class GenKind : std::uint8_t {
    time_translate,  // d/dt + c u d/du
    scale_u,         // u d/du
    exp_scaling,     // tau = exp(r t), r = rate_sign * b
    dilation,        // x d/dx + y d/dy + t d/dt
    projective,      // tau = t^2
    sqrt_shift,      // sqrt(w) f(t) d/dw along one space axis
    rotation_pair,   // mixes the two space axes, h = 1
    heat_translate_x,
    heat_translate_t,
    heat_scale_u,
    heat_dilation,
    heat_galilean,
    heat_projective,
};

// Shape of f(t) in a sqrt_shift element. Exponential profiles have rate
// +-b/2 on the x axis and +-e/2 on the y axis; the polynomial profiles
// appear when that rate vanishes.
enum class ShiftProfile : std::uint8_t { exp_plus, exp_minus, linear_t, constant_one };

struct ElementKind {
    GenKind kind = GenKind::scale_u;
    int axis = 0;  // sqrt_shift: 0 = x, 1 = y
    ShiftProfile profile = ShiftProfile::constant_one;
    int rate_sign = +1;  // exp_scaling
    ParamPoly shift;     // time_translate u-coefficient c
};

struct BasisElement {
    VectorField field;  // symbolic in the case's free parameters
    ElementKind kind;
    std::string note;  // non-empty when the stored field departs from the source
};

struct GeneratorBasis {
    std::string id;  // case label, or "heat" for the fixture
    ParamCase pcase;
    std::vector<BasisElement> elements;

    int dimension() const { return int(elements.size()); }
    std::vector<VectorField> fields() const;
    // Fields with the case sample substituted for the parameters.
    std::vector<VectorField> fields_at_sample() const;
};

// Catalog basis. Equality constraints are substituted into the stored
// fields; remaining parameters stay symbolic. In the generic column the
// shift sectors switch to polynomial profiles when the sample sits at
// b = 0 (x axis, a = 1/4) or e = 0 (y axis, d = 1/4).
GeneratorBasis basis_for(const ParamCase& pcase);

// The six classical generators of u_t = u_xx on (x, t, u).
GeneratorBasis heat_basis();

}  // namespace liesym

#endif
