// One-parameter symmetry groups: closed-form group actions attached to
// the catalog elements, a fixed-step RK4 exponentiator used to cross
// check them, and the solution-transform operator with finite-difference
// residual verification.
//
// Numeric flow work runs in extended precision (Real): the residual
// sweeps difference second derivatives at a step of 1e-5, which leaves
// too little headroom in double when the transformed solutions grow to
// O(10) on the sweep grid.

#ifndef LIESYM_FLOWS_HPP
#define LIESYM_FLOWS_HPP

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "liesym/generators.hpp"

namespace liesym {

using Real = long double;

struct FlowPoint {
    Real x = 0, y = 0, t = 0, u = 1;
};

// An RK4 trajectory left the open quadrant x, y > 0.
struct DomainExitError : std::runtime_error {
    DomainExitError(const std::string& msg, double eps)
        : std::runtime_error(msg), exit_eps(eps) {}
    double exit_eps = 0;
};

// Closed-form action exp(eps v): component maps for (x, y, t) plus the
// multiplier rule for u. `map` assumes the validity constraint holds;
// `apply` checks it first and throws std::domain_error when violated.
struct FlowMap {
    std::string kind;
    std::function<FlowPoint(const FlowPoint&, Real)> map;
    std::function<bool(const FlowPoint&, Real)> validity;

    FlowPoint apply(const FlowPoint& p, Real eps) const;
    bool valid(const FlowPoint& p, Real eps) const { return validity(p, eps); }
};

// Action of basis element i (0-based) of the case, parameters bound to
// the case sample. Throws std::out_of_range on a bad index.
FlowMap closed_form_flow(const ParamCase& pcase, int i);
// Same for the heat fixture basis.
FlowMap heat_closed_form_flow(int i);
// Shared dispatch: the element's structural kind plus parameter values.
FlowMap flow_for_element(const BasisElement& el, const std::array<Rational, 4>& sample);

// Fixed-step RK4 for d(x,y,t,u)/deps = (xi, gamma, tau, phi) from p0;
// `params` supplies (a, b, d, e) for fields that still mention them.
// Guards x, y > 0 after every step unless positivity_guard is false
// (the heat fixture lives on the whole line).
FlowPoint integrate_flow(const VectorField& v, const FlowPoint& p0, double eps,
                         const std::array<double, 4>& params, double step = 1e-3,
                         bool positivity_guard = true);

// Evaluable scalar solution u(x, y, t) with a provenance chain naming
// the transforms that built it.
struct SolutionFn {
    std::function<Real(Real, Real, Real)> fn;
    std::vector<std::string> provenance;
    Real operator()(Real x, Real y, Real t) const { return fn(x, y, t); }
};

// u == 1, a solution of the equation family for every parameter value.
SolutionFn one_solution();

// Transformed solution: pull the point back by the (-eps)-action,
// evaluate u there, push the value forward by the eps-action's u rule.
// Evaluation throws std::domain_error where validity fails.
SolutionFn transform_solution(const FlowMap& flow, const SolutionFn& u, double eps);

// |u_t + (a-bx)u_x + (d-ey)u_y + (x/2)u_xx + (y/2)u_yy| by second-order
// central differences, step 1e-5 * max(1, |coord|) per coordinate.
double residual(const std::array<double, 4>& params, const SolutionFn& u,
                double x, double y, double t);
// |u_t - u_xx| for the heat fixture, same stencil.
double heat_residual(const SolutionFn& u, double x, double t);

}  // namespace liesym

#endif
