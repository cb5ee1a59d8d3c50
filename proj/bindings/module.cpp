// Python bindings: thin dict-based wrappers over the main operations.
// Expressions cross the boundary as strings in the engine's grammar;
// rationals as "p/q" strings; points as doubles.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "liesym/determining.hpp"
#include "liesym/flows.hpp"
#include "liesym/generators.hpp"
#include "liesym/liealg.hpp"
#include "liesym/parse.hpp"

namespace py = pybind11;
using namespace liesym;

namespace {

const std::vector<std::string>& all_case_ids() {
    static const std::vector<std::string> ids = {
        "1.1", "1.2", "1.3", "1.4", "2.1", "2.2", "2.3", "2.4",
        "3.1", "3.2", "3.3", "3.4", "4.1", "4.2", "4.3", "4.4"};
    return ids;
}

GeneratorBasis basis_by_id(const std::string& id) {
    if (id == "heat") return heat_basis();
    return basis_for(case_by_label(id));
}

std::array<double, 4> sample_doubles(const ParamCase& pc) {
    return {pc.sample[0].to_double(), pc.sample[1].to_double(),
            pc.sample[2].to_double(), pc.sample[3].to_double()};
}

const DeterminingSystem& ls_system() {
    static const DeterminingSystem sys = build_determining_system(ls_family());
    return sys;
}

py::dict case_dict(const ParamCase& pc) {
    py::dict out;
    out["case_id"] = pc.label();
    out["constraints"] = pc.constraints_str();
    py::dict s;
    s["a"] = pc.sample[0].str();
    s["b"] = pc.sample[1].str();
    s["d"] = pc.sample[2].str();
    s["e"] = pc.sample[3].str();
    out["sample"] = s;
    out["dimension"] = basis_for(pc).dimension();
    out["algebra"] = structure_report(pc).label;
    return out;
}

py::dict classify_py(const std::string& a, const std::string& b, const std::string& d,
                     const std::string& e) {
    return case_dict(classify(Rational::parse(a), Rational::parse(d), Rational::parse(b),
                              Rational::parse(e)));
}

py::list basis_py(const std::string& id) {
    const GeneratorBasis gb = basis_by_id(id);
    py::list out;
    for (int i = 0; i < gb.dimension(); ++i) {
        const BasisElement& el = gb.elements[std::size_t(i)];
        py::dict f;
        f["name"] = "v" + std::to_string(i + 1);
        f["xi"] = el.field.xi.str();
        f["gamma"] = el.field.gamma.str();
        f["tau"] = el.field.tau.str();
        f["phi"] = el.field.phi.str();
        f["lambda"] =
            el.field.phi.subst_atom(Atom::U(), Expr::constant(Rational(1))).str();
        f["note"] = el.note;
        out.append(f);
    }
    return out;
}

py::list determining_py(const std::string& family) {
    const PdeFamily fam = family == "heat" ? heat_family() : ls_family();
    if (family != "heat" && family != "ls")
        throw std::invalid_argument("family must be 'ls' or 'heat'");
    py::list rows;
    for (const DeterminingEquation& eq : build_determining_system(fam))
        rows.append(py::make_tuple(eq.monomial.str(), eq.coefficient.str()));
    return rows;
}

py::dict check_field_py(const std::string& id, const std::string& xi,
                        const std::string& gamma, const std::string& tau,
                        const std::string& phi, int samples, double tol,
                        std::uint64_t seed) {
    const VectorField v{parse_expr(xi), parse_expr(gamma), parse_expr(tau),
                        parse_expr(phi)};
    CheckOptions opt;
    opt.samples = samples;
    opt.tol = tol;
    opt.seed = seed;
    py::dict out;
    py::list fails;
    if (id == "heat") {
        const CheckReport cr = check_symmetry(heat_family(), v, opt);
        out["ok"] = cr.ok();
        out["symbolic_ok"] = cr.symbolic_ok;
        out["max_residual"] = cr.max_abs;
        if (!cr.ok()) {
            py::dict f;
            f["monomial"] = cr.failing_monomial;
            f["residual"] = cr.max_abs;
            f["symbolic"] = !cr.symbolic_ok;
            fails.append(f);
        }
    } else {
        const Verdict vd = check_candidate(v, ls_system(), case_by_label(id), opt);
        bool symbolic_ok = true;
        for (char flag : vd.symbolic_pass) symbolic_ok = symbolic_ok && flag;
        out["ok"] = vd.all_pass();
        out["symbolic_ok"] = symbolic_ok;
        out["max_residual"] = vd.numeric_max_residual;
        for (const VerdictFailure& f : vd.failures) {
            py::dict d;
            d["monomial"] = f.monomial;
            d["residual"] = f.residual;
            d["symbolic"] = f.symbolic;
            fails.append(d);
        }
    }
    out["failures"] = fails;
    return out;
}

StructureConstants table_by_id(const std::string& id) {
    if (id == "heat") return commutator_table(heat_basis().fields());
    return commutator_table(basis_for(case_by_label(id)).fields_at_sample());
}

py::dict bracket_table_py(const std::string& id) {
    const StructureConstants sc = table_by_id(id);
    py::dict out;
    out["names"] = sc.names;
    out["closed"] = sc.closed;
    out["antisymmetric"] = sc.antisymmetric();
    out["jacobi"] = sc.jacobi();
    py::list entries;
    for (int i = 0; i < sc.dim(); ++i)
        for (int j = i + 1; j < sc.dim(); ++j) {
            const std::string val = sc.entry_str(i, j);
            if (val == "0") continue;
            py::dict e;
            e["i"] = i + 1;
            e["j"] = j + 1;
            e["value"] = val;
            entries.append(e);
        }
    out["entries"] = entries;
    return out;
}

py::list transcription_diffs_py(const std::string& id) {
    py::list out;
    for (const TableDiff& d : diff_against_transcription(case_by_label(id))) {
        py::dict e;
        e["i"] = d.i;
        e["j"] = d.j;
        e["transcribed"] = d.transcribed;
        e["recomputed"] = d.recomputed;
        out.append(e);
    }
    return out;
}

py::dict structure_py(const std::string& id) {
    const StructureReport rep =
        id == "heat" ? heat_structure_report() : structure_report(case_by_label(id));
    py::dict out;
    out["case_id"] = rep.case_id;
    out["dimension"] = rep.dimension;
    out["center_dim"] = rep.center_dim;
    out["derived_dim"] = rep.derived_dim;
    out["solvable"] = rep.solvable;
    out["nilpotent"] = rep.nilpotent;
    out["label"] = rep.label;
    out["reference"] = rep.reference;
    out["witness_domain"] = rep.witness_domain;
    out["witness_names"] = rep.witness_names;
    py::list rows;
    for (const auto& row : rep.witness) {
        py::list r;
        for (const Rational& q : row) r.append(q.str());
        rows.append(r);
    }
    out["witness"] = rows;
    out["witness_verified"] = rep.witness_verified;
    out["notes"] = rep.notes;
    return out;
}

py::dict grid_py() {
    py::dict out;
    py::list isos;
    for (const GridIsomorphism& gi : grid_isomorphisms()) {
        py::dict e;
        e["from"] = gi.from;
        e["to"] = gi.to;
        e["verified"] = gi.verified;
        isos.append(e);
    }
    py::list incs;
    for (const GridInclusion& gi : grid_inclusions()) {
        py::dict e;
        e["small"] = gi.small;
        e["big"] = gi.big;
        e["verified"] = gi.verified;
        incs.append(e);
    }
    out["isomorphisms"] = isos;
    out["inclusions"] = incs;
    return out;
}

py::dict dimension_table_py() {
    py::dict out;
    for (const std::string& id : all_case_ids())
        out[py::str(id)] = basis_for(case_by_label(id)).dimension();
    return out;
}

FlowMap flow_by_id(const std::string& id, int gen) {
    const GeneratorBasis gb = basis_by_id(id);
    if (gen < 1 || gen > gb.dimension())
        throw std::out_of_range("generator index out of range for case " + id);
    if (id == "heat") return heat_closed_form_flow(gen - 1);
    return closed_form_flow(gb.pcase, gen - 1);
}

py::dict flow_py(const std::string& id, int gen, double eps, double x, double y,
                 double t, double u, const std::string& method, double step) {
    const GeneratorBasis gb = basis_by_id(id);
    if (gen < 1 || gen > gb.dimension())
        throw std::out_of_range("generator index out of range for case " + id);
    const bool heat = id == "heat";
    const FlowPoint p0{Real(x), Real(y), Real(t), Real(u)};
    FlowPoint q;
    std::string kind;
    if (method == "closed") {
        const FlowMap fm = flow_by_id(id, gen);
        kind = fm.kind;
        q = fm.apply(p0, Real(eps));
    } else if (method == "rk4") {
        kind = "rk4";
        const std::array<double, 4> params =
            heat ? std::array<double, 4>{0, 0, 0, 0} : sample_doubles(gb.pcase);
        q = integrate_flow(gb.fields()[std::size_t(gen - 1)], p0, eps, params, step,
                           !heat);
    } else {
        throw std::invalid_argument("method must be 'closed' or 'rk4'");
    }
    py::dict out;
    out["kind"] = kind;
    out["x"] = double(q.x);
    out["y"] = double(q.y);
    out["t"] = double(q.t);
    out["u"] = double(q.u);
    return out;
}

double transform_value_py(const std::string& id, int gen, double eps, double x,
                          double y, double t) {
    const SolutionFn sol = transform_solution(flow_by_id(id, gen), one_solution(), eps);
    return double(sol(x, y, t));
}

double transported_residual_py(const std::string& id, int gen, double eps, double x,
                               double y, double t) {
    const SolutionFn sol = transform_solution(flow_by_id(id, gen), one_solution(), eps);
    if (id == "heat") return heat_residual(sol, x, t);
    return residual(sample_doubles(basis_by_id(id).pcase), sol, x, y, t);
}

}  // namespace

PYBIND11_MODULE(_liesym, m) {
    m.doc() =
        "Lie point symmetries of a two-factor Kolmogorov backward equation: "
        "classification, verification, brackets, and flows";
    m.attr("__version__") = "1.0.0";

    m.def("case_ids", [] { return all_case_ids(); },
          "Labels of the sixteen parameter cases.");
    m.def("classify", &classify_py, py::arg("a"), py::arg("b"), py::arg("d"),
          py::arg("e"),
          "Classify rational parameter values 'p/q' into their case; returns "
          "case_id, constraints, canonical sample, dimension, and algebra label.");
    m.def("case_info", [](const std::string& id) { return case_dict(case_by_label(id)); },
          py::arg("case_id"), "Constraints, sample, dimension, and algebra of a case.");
    m.def("dimension_table", &dimension_table_py,
          "Symmetry algebra dimension for every case.");
    m.def("basis", &basis_py, py::arg("case_id"),
          "Cataloged generator basis of a case (or 'heat'); component expressions "
          "as strings, phi = lambda * u.");
    m.def("determining_system", &determining_py, py::arg("family") = "ls",
          "Determining equations as (jet monomial, coefficient) string pairs; "
          "family 'ls' or 'heat'.");
    m.def("check_field", &check_field_py, py::arg("case_id"), py::arg("xi"),
          py::arg("gamma"), py::arg("tau"), py::arg("phi"), py::arg("samples") = 120,
          py::arg("tol") = 1e-10, py::arg("seed") = 1,
          "Dual-route symmetry check of a candidate field against a case (or 'heat').");
    m.def("bracket_table", &bracket_table_py, py::arg("case_id"),
          "Exact commutator table at the case sample (or 'heat').");
    m.def("transcription_diffs", &transcription_diffs_py, py::arg("case_id"),
          "Positions where the recomputed table differs from the transcription "
          "source.");
    m.def("structure", &structure_py, py::arg("case_id"),
          "Structure report: invariants, classification label, and the verified "
          "witness morphism.");
    m.def("isomorphism_grid", &grid_py,
          "Verified pairwise isomorphisms and inclusion chains across the case grid.");
    m.def("flow", &flow_py, py::arg("case_id"), py::arg("gen"), py::arg("eps"),
          py::arg("x"), py::arg("y") = 1.0, py::arg("t") = 0.0, py::arg("u") = 1.0,
          py::arg("method") = "closed", py::arg("step") = 1e-3,
          "One-parameter flow of generator gen (1-based); closed form or RK4.");
    m.def("transform_value", &transform_value_py, py::arg("case_id"), py::arg("gen"),
          py::arg("eps"), py::arg("x"), py::arg("y") = 0.0, py::arg("t") = 0.0,
          "Value at (x, y, t) of u = 1 transported by the generator's flow.");
    m.def("transported_residual", &transported_residual_py, py::arg("case_id"),
          py::arg("gen"), py::arg("eps"), py::arg("x"), py::arg("y") = 0.0,
          py::arg("t") = 0.0,
          "Finite-difference PDE residual of the transported solution at a point.");
}
