// Symmetry criterion for the evolution family
//
//     u_t = -[(a - b x) u_x + (d - e y) u_y + (x/2) u_xx + (y/2) u_yy]
//
// and for the heat fixture u_t = u_xx. A point field is a symmetry when
// the prolonged action of the field on the defining expression vanishes
// after eliminating u_t on the solution set. Grouping the residual of the
// formal field by jet monomials yields the determining system.

#ifndef LIESYM_DETERMINING_HPP
#define LIESYM_DETERMINING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "liesym/generators.hpp"
#include "liesym/jet.hpp"

namespace liesym {

struct PdeFamily {
    std::string name;
    Expr delta;  // vanishes on solutions
    Expr rhs;    // value of u_t on solutions, so delta = u_t - rhs
};

PdeFamily ls_family();
PdeFamily heat_family();

// pr v(delta) with u_t replaced by rhs. Identically zero exactly when v
// generates a symmetry.
Expr symmetry_residual(const PdeFamily& pde, const VectorField& v);

// Family with a, b, d, e pinned to rational values.
PdeFamily subst_params(const PdeFamily& pde, const std::array<Rational, 4>& vals);

struct DeterminingEquation {
    Expr monomial;     // product of jet coordinates; 1 for the constant slot
    Expr coefficient;  // must vanish identically
};

using DeterminingSystem = std::vector<DeterminingEquation>;

// Splits an on-solution residual by its jet monomials, ordered graded-lex.
DeterminingSystem group_by_jets(const Expr& residual);

// Determining system of the family for a formal field xi(x,y,t,u), ...
DeterminingSystem build_determining_system(const PdeFamily& pde);

struct CheckOptions {
    int samples = 120;
    double tol = 1e-10;
    std::uint64_t seed = 1;
};

struct CheckReport {
    bool symbolic_ok = false;
    bool numeric_ok = false;
    double max_abs = 0.0;           // worst numeric residual over the samples
    std::string failing_monomial;   // first non-vanishing group, when any
    bool ok() const { return symbolic_ok && numeric_ok; }
};

// Dual-route check of a concrete candidate field: exact zero test of the
// canonical residual, plus a floating-point assembly of the criterion at
// random on-solution jet samples. The two routes share the prolongation
// formulas but cancel terms independently.
CheckReport check_symmetry(const PdeFamily& pde, const VectorField& v,
                           const CheckOptions& opt = {});

struct VerdictFailure {
    std::size_t entry;      // index into the determining system
    std::string monomial;   // printed jet monomial of that entry
    double residual;        // worst sampled magnitude for the entry
    bool symbolic;          // true when the symbolic route already failed
};

struct Verdict {
    std::vector<char> symbolic_pass;      // one flag per determining entry
    double numeric_max_residual = 0.0;    // over all entries and samples
    std::vector<VerdictFailure> failures;
    bool all_pass() const { return failures.empty(); }
};

// Checks a candidate against the determining system along two routes.
// The symbolic route substitutes the candidate's derivatives for the
// opaque atoms plus the case equality constraints and zero-tests the
// canonical form; the numeric route evaluates the raw entry coefficients
// at random points with the opaque atoms bound to floating-point values
// of those derivatives and the parameters bound to the case sample.
// Throws std::invalid_argument when v contains jet atoms.
Verdict check_candidate(const VectorField& v, const DeterminingSystem& sys,
                        const ParamCase& constraints, const CheckOptions& opt = {});

// Univariate reduction of the determining system. The unknowns are the
// functions tau(t), h(t), l(t), k(t), s(t); a field is assembled from a
// solution tuple by
//   xi     = tau_t x + sqrt(x)(sqrt(y) h + l)
//   gamma  = tau_t y + sqrt(y)(-sqrt(x) h + k)
//   lambda = (tau_tt + b tau_t)x + (tau_tt + e tau_t)y + h(b-e)sqrt(x)sqrt(y)
//            + 2(l_t + (b/2)l)sqrt(x) + 2(k_t + (e/2)k)sqrt(y) + s.
struct ReducedSystem {
    ParamCase pcase;
    // Closed-form solution families, as expressions in t.
    std::vector<Expr> tau_modes, h_modes, l_modes, k_modes;
    std::vector<std::string> relations;  // case-specialized governing relations
};

ReducedSystem reduced_system(const ParamCase& pcase);

// Residuals of the governing relations at a candidate tuple, with the
// case equality constraints substituted. All must vanish identically.
std::vector<Expr> reduced_relation_residuals(const ParamCase& pcase, const Expr& tau,
                                             const Expr& h, const Expr& l, const Expr& k,
                                             const Expr& s);

// Particular s(t) with zero free constant solving
//   s_t = -(a+d) tau_tt - (ab+de) tau_t
// for the mode shapes produced by reduced_system.
Expr s_for_tau(const Expr& tau);

// Basis assembled from the reduction: one field per mode, constants set
// one-hot, plus the u d/du element. Independent construction route from
// the transcription catalog in basis_for.
GeneratorBasis solve_reduced(const ParamCase& pcase);

}  // namespace liesym

#endif
