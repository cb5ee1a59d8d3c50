#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <string>

#include "liesym/determining.hpp"
#include "liesym/generators.hpp"
#include "liesym/liealg.hpp"
#include "liesym/parse.hpp"

using namespace liesym;

namespace {

const std::map<std::string, int>& dimension_table() {
    static const std::map<std::string, int> dims = {
        {"1.1", 6}, {"1.2", 9}, {"1.3", 9}, {"1.4", 9},
        {"2.1", 2}, {"2.2", 4}, {"2.3", 4}, {"2.4", 4},
        {"3.1", 4}, {"3.2", 6}, {"3.3", 6}, {"3.4", 6},
        {"4.1", 4}, {"4.2", 6}, {"4.3", 6}, {"4.4", 6},
    };
    return dims;
}

}  // namespace

TEST_CASE("classify puts the canonical samples in their own cases") {
    REQUIRE(catalog_cases().size() == 16);
    for (const ParamCase& pc : catalog_cases()) {
        ParamCase again = classify(pc.sample[0], pc.sample[2], pc.sample[1], pc.sample[3]);
        CHECK(again.label() == pc.label());
        CHECK(pc.contains(pc.sample));
    }
}

TEST_CASE("classify on hand-picked parameter values") {
    CHECK(classify(Rational(1, 4), Rational(1, 4), Rational(0), Rational(0)).label() == "1.4");
    CHECK(classify(Rational(3, 10), Rational(1, 2), Rational(1), Rational(2)).label() == "2.1");
    CHECK(classify(Rational(1, 4), Rational(1, 2), Rational(1), Rational(1)).label() == "3.2");
    CHECK(classify(Rational(1, 2), Rational(1, 4), Rational(2), Rational(-2)).label() == "4.3");
    CHECK(classify(Rational(1, 4), Rational(1, 4), Rational(3), Rational(3)).label() == "1.2");
    // b = 0 with e nonzero still sits in the generic column.
    CHECK(classify(Rational(1, 4), Rational(1, 2), Rational(0), Rational(2)).label() == "3.1");
}

TEST_CASE("case membership is exclusive across the grid") {
    for (const ParamCase& pc : catalog_cases())
        for (const ParamCase& other : catalog_cases())
            CHECK(other.contains(pc.sample) == (other.label() == pc.label()));
}

TEST_CASE("swapped mirrors the case across the diagonal") {
    CHECK(case_by_label("3.2").swapped().label() == "4.2");
    CHECK(case_by_label("4.3").swapped().label() == "3.3");
    CHECK(case_by_label("1.1").swapped().label() == "1.1");
    CHECK(case_by_label("2.4").swapped().label() == "2.4");
    ParamCase pc = case_by_label("3.1");
    ParamCase sw = pc.swapped();
    CHECK(sw.sample[0] == pc.sample[2]);
    CHECK(sw.sample[1] == pc.sample[3]);
}

TEST_CASE("equality substitutions pin the tied parameters") {
    Expr e_sym = parse_expr("e");
    CHECK(subst_case(case_by_label("2.2"), e_sym).str() == "b");
    CHECK(subst_case(case_by_label("2.3"), e_sym).str() == "-b");
    CHECK(subst_case(case_by_label("2.4"), e_sym).is_zero());
    CHECK((subst_case(case_by_label("1.4"), parse_expr("a + d")) -
           parse_expr("1/2")).is_zero());
    // Generic column leaves b and e free at a nonzero sample ...
    CHECK(subst_case(case_by_label("2.1"), e_sym).str() == "e");
    // ... but pins a rate that the sample sets to zero.
    ParamCase degenerate = classify(Rational(1, 4), Rational(1, 2), Rational(0), Rational(2));
    CHECK(subst_case(degenerate, parse_expr("b")).is_zero());
    CHECK(subst_case(degenerate, e_sym).str() == "e");
}

TEST_CASE("catalog dimensions match the case table") {
    for (const ParamCase& pc : catalog_cases()) {
        GeneratorBasis cat = basis_for(pc);
        CHECK(cat.dimension() == dimension_table().at(pc.label()));
        CHECK(cat.id == pc.label());
        // The fields are linearly independent at the sample.
        CHECK(TermSpan(cat.fields_at_sample()).dim() == std::size_t(cat.dimension()));
    }
}

TEST_CASE("derived bases span the same space as the catalog") {
    for (const ParamCase& pc : catalog_cases()) {
        GeneratorBasis cat = basis_for(pc);
        GeneratorBasis red = solve_reduced(pc);
        REQUIRE(cat.dimension() == red.dimension());

        std::vector<VectorField> cat_fields = cat.fields_at_sample();
        std::vector<VectorField> red_fields = red.fields_at_sample();
        std::vector<VectorField> joint = cat_fields;
        joint.insert(joint.end(), red_fields.begin(), red_fields.end());

        const std::size_t n = cat_fields.size();
        CHECK(TermSpan(cat_fields).dim() == n);
        CHECK(TermSpan(red_fields).dim() == n);
        CHECK(TermSpan(joint).dim() == n);
    }
}

TEST_CASE("element kinds line up with the flow attachments") {
    GeneratorBasis b12 = basis_for(case_by_label("1.2"));
    REQUIRE(b12.dimension() == 9);
    CHECK(b12.elements[0].kind.kind == GenKind::exp_scaling);
    CHECK(b12.elements[0].kind.rate_sign == 1);
    CHECK(b12.elements[1].kind.kind == GenKind::exp_scaling);
    CHECK(b12.elements[1].kind.rate_sign == -1);
    CHECK(b12.elements[2].kind.kind == GenKind::time_translate);
    CHECK(b12.elements[3].kind.kind == GenKind::rotation_pair);
    CHECK(b12.elements[4].kind.kind == GenKind::sqrt_shift);
    CHECK(b12.elements[4].kind.axis == 0);
    CHECK(b12.elements[4].kind.profile == ShiftProfile::exp_plus);
    CHECK(b12.elements[5].kind.profile == ShiftProfile::exp_minus);
    CHECK(b12.elements[6].kind.axis == 1);
    CHECK(b12.elements[8].kind.kind == GenKind::scale_u);

    GeneratorBasis b24 = basis_for(case_by_label("2.4"));
    CHECK(b24.elements[0].kind.kind == GenKind::projective);
    CHECK(b24.elements[1].kind.kind == GenKind::dilation);
    CHECK(b24.elements[2].kind.kind == GenKind::time_translate);

    GeneratorBasis b14 = basis_for(case_by_label("1.4"));
    CHECK(b14.elements[4].kind.profile == ShiftProfile::linear_t);
    CHECK(b14.elements[5].kind.profile == ShiftProfile::constant_one);
}

TEST_CASE("time translate shift records the u-coefficient") {
    GeneratorBasis b22 = basis_for(case_by_label("2.2"));
    const BasisElement& tt = b22.elements[2];
    REQUIRE(tt.kind.kind == GenKind::time_translate);
    // d/dt - b(a+d) u d/du: the stored shift evaluates to -b(a+d).
    const auto& s = case_by_label("2.2").sample;
    CHECK(tt.kind.shift.eval(s) == -s[1] * (s[0] + s[2]));

    GeneratorBasis b13 = basis_for(case_by_label("1.3"));
    CHECK(b13.elements[2].kind.shift.is_zero());
}

TEST_CASE("catalog corrections carry explanatory notes") {
    auto note_of = [](const std::string& id, int index) {
        return basis_for(case_by_label(id)).elements[index].note;
    };
    CHECK(note_of("1.4", 0) != "");  // projective u-coefficient
    CHECK(note_of("2.2", 0) != "");  // missing exp(bt) d/dt term
    CHECK(note_of("2.3", 2) != "");  // extra factor b in the u-coefficient
    CHECK(note_of("3.3", 0) != "");  // leftover free constant
    CHECK(note_of("4.2", 3) != "");  // shift axis
    CHECK(note_of("4.4", 0) != "");  // (1/4+d) misprint
    // Clean entries carry no note.
    CHECK(note_of("1.2", 0) == "");
    CHECK(note_of("3.2", 1) == "");
}

TEST_CASE("degenerate generic-column sample switches to polynomial shifts") {
    ParamCase pc = classify(Rational(1, 4), Rational(1, 2), Rational(0), Rational(2));
    REQUIRE(pc.label() == "3.1");
    GeneratorBasis basis = basis_for(pc);
    REQUIRE(basis.dimension() == 4);
    CHECK(basis.elements[2].kind.profile == ShiftProfile::linear_t);
    CHECK(basis.elements[3].kind.profile == ShiftProfile::constant_one);
    CHECK((basis.elements[2].field.xi - parse_expr("sqrt(x)*t")).is_zero());
    CHECK((basis.elements[2].field.phi - parse_expr("2*sqrt(x)*u")).is_zero());
    CHECK((basis.elements[3].field.xi - parse_expr("sqrt(x)")).is_zero());
    CHECK(basis.elements[3].field.phi.is_zero());
}

TEST_CASE("sample substitution freezes the parameters") {
    GeneratorBasis b12 = basis_for(case_by_label("1.2"));
    std::vector<VectorField> at_sample = b12.fields_at_sample();
    // v1 = b e^{bt} x d/dx + ... at b = 1.
    CHECK((at_sample[0].xi - parse_expr("exp(b*t)*x").subst_param(Param::b, ParamPoly(Rational(1))))
              .is_zero());
    // The symbolic field still carries b.
    EvalPoint p;
    p.x = 1.0;
    p.y = 1.0;
    p.t = 0.0;
    p.u = 1.0;
    p.params = {0.25, 2.0, 0.25, 2.0};
    CHECK(b12.fields()[0].xi.eval(p) == doctest::Approx(2.0));
}

TEST_CASE("heat fixture shape") {
    GeneratorBasis heat = heat_basis();
    REQUIRE(heat.dimension() == 6);
    CHECK(heat.id == "heat");
    CHECK(heat.elements[0].kind.kind == GenKind::heat_translate_x);
    CHECK(heat.elements[1].kind.kind == GenKind::heat_translate_t);
    CHECK(heat.elements[2].kind.kind == GenKind::heat_scale_u);
    CHECK(heat.elements[3].kind.kind == GenKind::heat_dilation);
    CHECK(heat.elements[4].kind.kind == GenKind::heat_galilean);
    CHECK(heat.elements[5].kind.kind == GenKind::heat_projective);
    CHECK((heat.elements[5].field.xi - parse_expr("4*x*t")).is_zero());
    CHECK((heat.elements[5].field.phi - parse_expr("-(x^2+2*t)*u")).is_zero());
}
