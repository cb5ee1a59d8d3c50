// Command-line front end: classification, determining-system dumps, basis
// catalogs, commutator tables, structure reports, verification sweeps,
// flow evaluation, and solution-transform residual sweeps, in text or
// JSON. JSON output is deterministic for a fixed argument list and seed.

#include "run.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "liesym/determining.hpp"
#include "liesym/flows.hpp"
#include "liesym/generators.hpp"
#include "liesym/liealg.hpp"
#include "liesym/parse.hpp"

namespace liesym_cli {
namespace {

using nlohmann::ordered_json;
using namespace liesym;

constexpr const char* kSchema = "liesym/1";

const std::vector<std::string>& case_ids() {
    static const std::vector<std::string> ids = {"1.1", "1.2", "1.3", "1.4", "2.1", "2.2",
                                                 "2.3", "2.4", "3.1", "3.2", "3.3", "3.4",
                                                 "4.1", "4.2", "4.3", "4.4"};
    return ids;
}

struct Global {
    std::string format = "text";
    std::uint64_t seed = 1;
    double tol_sym = 1e-10;
    double tol_fd = 1e-5;
    std::string out_path;
};

// Bad input that should surface as exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational_arg(const std::string& name, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::exception&) {
        throw UsageError("malformed rational for --" + name + ": '" + text + "'");
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::string sample_str(const std::array<Rational, 4>& s) {
    return "a = " + s[0].str() + ", b = " + s[1].str() + ", d = " + s[2].str() +
           ", e = " + s[3].str();
}

ordered_json sample_json(const std::array<Rational, 4>& s) {
    return ordered_json{{"a", s[0].str()}, {"b", s[1].str()}, {"d", s[2].str()},
                        {"e", s[3].str()}};
}

std::array<double, 4> sample_doubles(const ParamCase& pc) {
    return {pc.sample[0].to_double(), pc.sample[1].to_double(),
            pc.sample[2].to_double(), pc.sample[3].to_double()};
}

// Writes the selected rendering to stdout or to --out, then returns code.
int emit(const Global& g, std::ostream& out, std::ostream& err, const ordered_json& doc,
         const std::string& text, int code) {
    const std::string payload = g.format == "json" ? doc.dump(2) + "\n" : text;
    if (!g.out_path.empty()) {
        std::ofstream f(g.out_path, std::ios::binary);
        if (!f) {
            err << "error: cannot open output path '" << g.out_path << "'\n";
            return 2;
        }
        f << payload;
        return code;
    }
    out << payload;
    return code;
}

GeneratorBasis basis_by_id(const std::string& id) {
    if (id == "heat") return heat_basis();
    return basis_for(case_by_label(id));
}

std::string lambda_str(const VectorField& f) {
    return f.phi.subst_atom(Atom::U(), Expr::constant(Rational(1))).str();
}

// ---------------------------------------------------------------- classify

int cmd_classify(const Global& g, std::ostream& out, std::ostream& err,
                 const std::string& a, const std::string& d, const std::string& b,
                 const std::string& e) {
    const ParamCase pc = classify(parse_rational_arg("a", a), parse_rational_arg("d", d),
                                  parse_rational_arg("b", b), parse_rational_arg("e", e));
    const GeneratorBasis basis = basis_for(pc);
    const StructureReport rep = structure_report(pc);

    ordered_json doc{{"schema", kSchema},
                     {"command", "classify"},
                     {"input", sample_json(pc.sample)},
                     {"case_id", pc.label()},
                     {"constraints", pc.constraints_str()},
                     {"dimension", basis.dimension()},
                     {"algebra", rep.label}};

    std::ostringstream ts;
    ts << "case " << pc.label() << "  (" << pc.constraints_str() << ")\n"
       << "values: " << sample_str(pc.sample) << "\n"
       << "dimension: " << basis.dimension() << "\n"
       << "algebra: " << rep.label << "\n";
    return emit(g, out, err, doc, ts.str(), 0);
}

// --------------------------------------------------------------- determine

int cmd_determine(const Global& g, std::ostream& out, std::ostream& err,
                  const std::string& family) {
    const PdeFamily fam = family == "heat" ? heat_family() : ls_family();
    const DeterminingSystem sys = build_determining_system(fam);

    ordered_json rows = ordered_json::array();
    std::size_t width = 0;
    for (const DeterminingEquation& eq : sys) width = std::max(width, eq.monomial.str().size());
    std::ostringstream ts;
    ts << "determining system of the " << (family == "heat" ? "heat fixture" : "family")
       << " (" << sys.size() << " rows, graded-lex monomial order)\n";
    for (const DeterminingEquation& eq : sys) {
        const std::string m = eq.monomial.str();
        rows.push_back(ordered_json{{"monomial", m}, {"coefficient", eq.coefficient.str()}});
        ts << "  " << m << std::string(width - m.size(), ' ') << " : "
           << eq.coefficient.str() << "\n";
    }
    ordered_json doc{{"schema", kSchema},
                     {"command", "determine"},
                     {"family", family},
                     {"rows", rows}};
    return emit(g, out, err, doc, ts.str(), 0);
}

// ------------------------------------------------------------------- basis

int cmd_basis(const Global& g, std::ostream& out, std::ostream& err,
              const std::string& id) {
    const GeneratorBasis basis = basis_by_id(id);
    const bool heat = id == "heat";

    ordered_json fields = ordered_json::array();
    std::ostringstream ts;
    if (heat) {
        ts << "heat fixture (u_t = u_xx), dimension " << basis.dimension() << "\n";
    } else {
        ts << "case " << id << "  (" << basis.pcase.constraints_str() << ")\n"
           << "sample: " << sample_str(basis.pcase.sample) << "\n"
           << "dimension: " << basis.dimension() << "\n";
    }
    for (int i = 0; i < basis.dimension(); ++i) {
        const BasisElement& el = basis.elements[i];
        ordered_json f{{"name", "v" + std::to_string(i + 1)},
                       {"xi", el.field.xi.str()},
                       {"gamma", el.field.gamma.str()},
                       {"tau", el.field.tau.str()},
                       {"lambda", lambda_str(el.field)},
                       {"mu", "0"}};
        if (!el.note.empty()) f["note"] = el.note;
        fields.push_back(std::move(f));
        ts << "v" << i + 1 << ": xi = " << el.field.xi.str()
           << ", gamma = " << el.field.gamma.str() << ", tau = " << el.field.tau.str()
           << ", lambda = " << lambda_str(el.field) << "\n";
        if (!el.note.empty()) ts << "    note: " << el.note << "\n";
    }

    ordered_json doc{{"schema", kSchema}, {"command", "basis"}, {"case_id", id}};
    if (!heat) {
        doc["constraints"] = basis.pcase.constraints_str();
        doc["sample"] = sample_json(basis.pcase.sample);
    }
    doc["dimension"] = basis.dimension();
    doc["fields"] = fields;
    return emit(g, out, err, doc, ts.str(), 0);
}

// ----------------------------------------------------------- bracket-table

std::string render_grid(const std::vector<std::string>& names,
                        const std::vector<std::vector<std::string>>& cells) {
    const int n = int(names.size());
    std::vector<std::size_t> width(n + 1, 0);
    for (int i = 0; i < n; ++i) width[0] = std::max(width[0], names[i].size());
    for (int j = 0; j < n; ++j) {
        width[j + 1] = names[j].size();
        for (int i = 0; i < n; ++i) width[j + 1] = std::max(width[j + 1], cells[i][j].size());
    }
    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    std::ostringstream os;
    os << pad("", width[0]);
    for (int j = 0; j < n; ++j) os << "  " << pad(names[j], width[j + 1]);
    os << "\n";
    for (int i = 0; i < n; ++i) {
        os << pad(names[i], width[0]);
        for (int j = 0; j < n; ++j) os << "  " << pad(cells[i][j], width[j + 1]);
        os << "\n";
    }
    return os.str();
}

std::string render_transcribed_entry(const TableEntry& e) {
    std::string s;
    for (std::size_t k = 0; k < e.sum.size(); ++k) {
        const auto& [coeff, target] = e.sum[k];
        std::string term;
        if (coeff == "1") term = "v" + std::to_string(target);
        else if (coeff == "-1") term = "-v" + std::to_string(target);
        else term = coeff + "*v" + std::to_string(target);
        if (k == 0) s = term;
        else if (!term.empty() && term[0] == '-') s += " - " + term.substr(1);
        else s += " + " + term;
    }
    return s.empty() ? "0" : s;
}

int cmd_bracket_table(const Global& g, std::ostream& out, std::ostream& err,
                      const std::string& id, bool paper_tables) {
    if (paper_tables && id == "heat")
        throw UsageError("--paper-tables applies to the sixteen parameter cases only");
    const GeneratorBasis basis = basis_by_id(id);
    const StructureConstants sc = commutator_table(basis.fields_at_sample());
    const int n = sc.dim();

    std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n));
    ordered_json entries = ordered_json::array();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cells[i][j] = sc.entry_str(i, j);
            ordered_json coeffs = ordered_json::object();
            for (int k = 0; k < n; ++k)
                if (!sc.c[i][j][k].is_zero())
                    coeffs[std::to_string(k + 1)] = sc.c[i][j][k].str();
            if (!coeffs.empty())
                entries.push_back(ordered_json{
                    {"i", i + 1}, {"j", j + 1}, {"coeffs", coeffs}, {"value", cells[i][j]}});
        }

    std::ostringstream ts;
    ts << (id == "heat" ? std::string("heat fixture") : "case " + id)
       << " commutator table (recomputed";
    if (id != "heat") ts << " at " << sample_str(basis.pcase.sample);
    ts << ")\n" << render_grid(sc.names, cells);

    ordered_json doc{{"schema", kSchema},
                     {"command", "bracket-table"},
                     {"case_id", id},
                     {"dimension", n},
                     {"names", sc.names},
                     {"closed", sc.closed},
                     {"entries", entries}};

    if (paper_tables) {
        const TranscribedTable& printed = transcribed_table(id);
        std::vector<std::vector<std::string>> tcells(n, std::vector<std::string>(n, "0"));
        ordered_json tentries = ordered_json::array();
        for (const TableEntry& e : printed.entries) {
            tcells[e.i - 1][e.j - 1] = render_transcribed_entry(e);
            ordered_json sum = ordered_json::array();
            for (const auto& [coeff, target] : e.sum)
                sum.push_back(ordered_json{{"coefficient", coeff}, {"target", target}});
            tentries.push_back(ordered_json{{"i", e.i}, {"j", e.j}, {"sum", sum}});
        }
        const std::vector<TableDiff> diffs = diff_against_transcription(basis.pcase);
        ordered_json jdiffs = ordered_json::array();
        ts << "\ntranscribed table (as printed by the source):\n"
           << render_grid(sc.names, tcells) << "\ndifferences (" << diffs.size() << "):\n";
        if (diffs.empty()) ts << "  none\n";
        for (const TableDiff& dd : diffs) {
            jdiffs.push_back(ordered_json{{"i", dd.i},
                                          {"j", dd.j},
                                          {"transcribed", dd.transcribed},
                                          {"recomputed", dd.recomputed}});
            ts << "  [v" << dd.i << ",v" << dd.j << "]: printed " << dd.transcribed
               << ", recomputed " << dd.recomputed << "\n";
        }
        doc["transcribed"] = tentries;
        doc["diffs"] = jdiffs;
    }
    return emit(g, out, err, doc, ts.str(), 0);
}

// --------------------------------------------------------------- structure

std::string render_witness_row(const RatVec& row, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k].is_zero()) continue;
        std::string term;
        if (row[k] == Rational(1)) term = names[k];
        else if (row[k] == Rational(-1)) term = "-" + names[k];
        else term = row[k].str() + "*" + names[k];
        if (s.empty()) s = term;
        else if (term[0] == '-') s += " - " + term.substr(1);
        else s += " + " + term;
    }
    return s.empty() ? "0" : s;
}

int cmd_structure(const Global& g, std::ostream& out, std::ostream& err,
                  const std::string& id) {
    const StructureReport rep =
        id == "heat" ? heat_structure_report() : structure_report(case_by_label(id));

    ordered_json doc{{"schema", kSchema},
                     {"command", "structure"},
                     {"case_id", rep.case_id},
                     {"dimension", rep.dimension},
                     {"center_dim", rep.center_dim},
                     {"derived_dim", rep.derived_dim},
                     {"solvable", rep.solvable},
                     {"nilpotent", rep.nilpotent},
                     {"label", rep.label},
                     {"reference", rep.reference},
                     {"witness_domain", rep.witness_domain},
                     {"witness_verified", rep.witness_verified}};

    std::ostringstream ts;
    ts << "case " << rep.case_id << ": dimension " << rep.dimension << "\n"
       << "center " << rep.center_dim << ", derived " << rep.derived_dim << ", solvable "
       << (rep.solvable ? "yes" : "no") << ", nilpotent " << (rep.nilpotent ? "yes" : "no")
       << "\n"
       << "label: " << rep.label << "\n";
    if (!rep.reference.empty()) {
        const std::vector<std::string>& rnames = reference_algebra(rep.reference).names;
        ordered_json rows = ordered_json::array();
        ts << "reference: " << rep.reference << "  (witness domain: " << rep.witness_domain
           << ", verified: " << (rep.witness_verified ? "yes" : "no") << ")\n";
        for (std::size_t i = 0; i < rep.witness.size(); ++i) {
            ordered_json row = ordered_json::array();
            for (const Rational& c : rep.witness[i]) row.push_back(c.str());
            rows.push_back(std::move(row));
            const std::string from =
                i < rep.witness_names.size() ? rep.witness_names[i] : "v" + std::to_string(i + 1);
            ts << "  " << from << " -> " << render_witness_row(rep.witness[i], rnames) << "\n";
        }
        doc["witness_names"] = rep.witness_names;
        doc["witness"] = rows;
    }
    doc["notes"] = rep.notes;
    for (const std::string& note : rep.notes) ts << "note: " << note << "\n";
    return emit(g, out, err, doc, ts.str(), 0);
}

// ------------------------------------------------------------------ verify

struct CaseOutcome {
    std::string id;
    int fields_total = 0, fields_pass = 0;
    bool closure = false;
    int diff_count = 0;
    bool diffs_match = true;
    bool structure_ok = false;
    bool flows_ok = true;
    std::vector<std::string> failures;
    bool pass() const {
        return fields_pass == fields_total && closure && diffs_match && structure_ok &&
               flows_ok;
    }
};

VectorField tamper_field() {
    VectorField v;
    v.xi = parse_expr("x");
    v.gamma = parse_expr("0");
    v.tau = parse_expr("0");
    v.phi = parse_expr("0");
    return v;
}

void flow_checks(const GeneratorBasis& basis, bool heat, const Global& g,
                 CaseOutcome& oc) {
    std::mt19937_64 rng(g.seed);
    std::uniform_real_distribution<double> Ux(0.8, 2.5);
    std::uniform_real_distribution<double> Ut(heat ? 0.1 : -0.4, heat ? 0.6 : 0.4);
    std::uniform_real_distribution<double> Ue(heat ? -0.15 : -0.2, heat ? 0.15 : 0.2);
    std::uniform_real_distribution<double> Gxy(0.5, 5.0), Gt(-1.0, 1.0);
    const std::array<double, 4> params =
        heat ? std::array<double, 4>{0, 0, 0, 0} : sample_doubles(basis.pcase);
    const std::vector<VectorField> flds = basis.fields();

    for (int i = 0; i < basis.dimension(); ++i) {
        const std::string name = "v" + std::to_string(i + 1);
        const FlowMap fm = heat ? heat_closed_form_flow(i)
                                : flow_for_element(basis.elements[i], basis.pcase.sample);
        int done = 0;
        for (int guard = 0; done < 5 && guard < 300; ++guard) {
            const FlowPoint p{Real(Ux(rng)), Real(Ux(rng)), Real(Ut(rng)), 1.0L};
            const Real eps = Ue(rng);
            if (!fm.valid(p, eps) || !fm.valid(p, Real(1.6) * eps)) continue;
            const FlowPoint c = fm.apply(p, eps);
            const FlowPoint r =
                integrate_flow(flds[i], p, double(eps), params, 1e-3, !heat);
            const double diff =
                std::max(std::max(std::abs(double(c.x - r.x)), std::abs(double(c.y - r.y))),
                         std::max(std::abs(double(c.t - r.t)), std::abs(double(c.u - r.u))));
            if (diff > 1e-7) {
                oc.flows_ok = false;
                oc.failures.push_back(name + " flow: RK4 vs closed form differs by " +
                                      fmt(diff));
                break;
            }
            ++done;
        }
        if (done < 5 && oc.flows_ok) {
            oc.flows_ok = false;
            oc.failures.push_back(name + " flow: could not sample valid points");
        }

        const SolutionFn sol = transform_solution(fm, one_solution(), 0.05);
        for (int k = 0; k < 5; ++k) {
            const double x = Gxy(rng), y = Gxy(rng), t = Gt(rng);
            const double r = heat ? heat_residual(sol, x, t) : residual(params, sol, x, y, t);
            if (!(r < g.tol_fd)) {
                oc.flows_ok = false;
                oc.failures.push_back(name + " transport: residual " + fmt(r) + " at (" +
                                      fmt(x) + ", " + fmt(y) + ", " + fmt(t) + ")");
                break;
            }
        }
    }
}

const DeterminingSystem& ls_system() {
    static const DeterminingSystem sys = build_determining_system(ls_family());
    return sys;
}

CaseOutcome verify_ls_case(const std::string& id, const Global& g, bool tamper) {
    CaseOutcome oc;
    oc.id = id;
    const ParamCase pc = case_by_label(id);
    const GeneratorBasis basis = basis_for(pc);
    const std::vector<VectorField> flds = basis.fields();

    CheckOptions opt;
    opt.samples = 120;
    opt.tol = g.tol_sym;
    opt.seed = g.seed;

    std::vector<std::pair<std::string, VectorField>> candidates;
    for (std::size_t i = 0; i < flds.size(); ++i)
        candidates.emplace_back("v" + std::to_string(i + 1), flds[i]);
    if (tamper) candidates.emplace_back("tamper(x d/dx)", tamper_field());

    oc.fields_total = int(candidates.size());
    for (const auto& [name, f] : candidates) {
        const Verdict vd = check_candidate(f, ls_system(), pc, opt);
        if (vd.all_pass()) {
            ++oc.fields_pass;
        } else {
            oc.failures.push_back(name + " fails determining entry " +
                                  vd.failures[0].monomial + " (worst residual " +
                                  fmt(vd.failures[0].residual) + ")");
        }
    }

    const StructureConstants sc = commutator_table(basis.fields_at_sample());
    oc.closure = sc.closed && sc.antisymmetric() && sc.jacobi();
    if (!oc.closure) oc.failures.push_back("commutator table fails to close exactly");

    const std::vector<TableDiff> diffs = diff_against_transcription(pc);
    oc.diff_count = int(diffs.size());
    std::set<std::pair<int, int>> got, expected;
    for (const TableDiff& dd : diffs) got.insert({dd.i, dd.j});
    for (const auto& p : expected_table_diffs(id)) expected.insert(p);
    oc.diffs_match = got == expected;
    if (!oc.diffs_match)
        oc.failures.push_back("transcription diff positions differ from the frozen list");

    const StructureReport rep = structure_report(pc);
    oc.structure_ok =
        !rep.label.empty() && (rep.reference.empty() || rep.witness_verified);
    if (!oc.structure_ok) oc.failures.push_back("structure witness failed to verify");

    flow_checks(basis, false, g, oc);
    return oc;
}

CaseOutcome verify_heat_case(const Global& g) {
    CaseOutcome oc;
    oc.id = "heat";
    const GeneratorBasis basis = heat_basis();
    const std::vector<VectorField> flds = basis.fields();
    const PdeFamily fam = heat_family();

    CheckOptions opt;
    opt.samples = 120;
    opt.tol = g.tol_sym;
    opt.seed = g.seed;

    oc.fields_total = basis.dimension();
    for (int i = 0; i < basis.dimension(); ++i) {
        const CheckReport cr = check_symmetry(fam, flds[i], opt);
        if (cr.ok()) {
            ++oc.fields_pass;
        } else {
            oc.failures.push_back("v" + std::to_string(i + 1) +
                                  " fails the heat criterion at " + cr.failing_monomial);
        }
    }

    const StructureConstants sc = commutator_table(flds);
    oc.closure = sc.closed && sc.antisymmetric() && sc.jacobi();
    const StructureReport rep = heat_structure_report();
    oc.structure_ok = !rep.label.empty() && rep.witness_verified;
    flow_checks(basis, true, g, oc);
    return oc;
}

std::string outcome_line(const CaseOutcome& oc) {
    std::ostringstream os;
    if (oc.id == "heat") {
        os << "heat: " << oc.fields_pass << "/" << oc.fields_total << " generators pass";
    } else {
        os << "case " << oc.id << ": fields " << oc.fields_pass << "/" << oc.fields_total;
    }
    os << ", closure " << (oc.closure ? "ok" : "FAIL");
    if (oc.id != "heat")
        os << ", table diffs " << oc.diff_count
           << (oc.diffs_match ? " (frozen positions)" : " (UNEXPECTED positions)");
    os << ", structure " << (oc.structure_ok ? "ok" : "FAIL") << ", flows "
       << (oc.flows_ok ? "ok" : "FAIL") << "\n";
    for (const std::string& f : oc.failures) os << "  - " << f << "\n";
    return os.str();
}

ordered_json outcome_json(const CaseOutcome& oc) {
    ordered_json j{{"id", oc.id},
                   {"fields_pass", oc.fields_pass},
                   {"fields_total", oc.fields_total},
                   {"closure", oc.closure}};
    if (oc.id != "heat") {
        j["table_diffs"] = oc.diff_count;
        j["diffs_match"] = oc.diffs_match;
    }
    j["structure"] = oc.structure_ok;
    j["flows"] = oc.flows_ok;
    j["failures"] = oc.failures;
    j["pass"] = oc.pass();
    return j;
}

int cmd_verify(const Global& g, std::ostream& out, std::ostream& err,
               const std::string& id, bool all, bool tamper) {
    if (!all && id.empty()) throw UsageError("verify needs --case ID or --all");

    std::vector<CaseOutcome> outcomes;
    if (all) {
        for (const std::string& cid : case_ids())
            outcomes.push_back(verify_ls_case(cid, g, tamper));
        outcomes.push_back(verify_heat_case(g));
    } else if (id == "heat") {
        outcomes.push_back(verify_heat_case(g));
    } else {
        case_by_label(id);  // validates the label
        outcomes.push_back(verify_ls_case(id, g, tamper));
    }

    int ls_total = 0, ls_pass = 0;
    bool all_pass = true;
    std::ostringstream ts;
    ordered_json jcases = ordered_json::array();
    for (const CaseOutcome& oc : outcomes) {
        ts << outcome_line(oc);
        jcases.push_back(outcome_json(oc));
        all_pass = all_pass && oc.pass();
        if (oc.id != "heat") {
            ++ls_total;
            if (oc.pass()) ++ls_pass;
        }
    }

    ordered_json doc{{"schema", kSchema}, {"command", "verify"},
                     {"seed", g.seed},    {"samples", 120},
                     {"tol_sym", g.tol_sym}, {"tol_fd", g.tol_fd},
                     {"cases", jcases}};

    if (all) {
        const std::vector<GridIsomorphism> isos = grid_isomorphisms();
        const std::vector<GridInclusion> incs = grid_inclusions();
        int iso_ok = 0, inc_ok = 0;
        for (const GridIsomorphism& gi : isos) iso_ok += gi.verified ? 1 : 0;
        for (const GridInclusion& gi : incs) inc_ok += gi.verified ? 1 : 0;
        all_pass = all_pass && iso_ok == int(isos.size()) && inc_ok == int(incs.size());
        ts << "isomorphism grid: " << iso_ok << "/" << isos.size() << " verified\n"
           << "inclusion grid: " << inc_ok << "/" << incs.size() << " verified\n";
        doc["isomorphisms"] = ordered_json{{"total", isos.size()}, {"verified", iso_ok}};
        doc["inclusions"] = ordered_json{{"total", incs.size()}, {"verified", inc_ok}};
    }
    if (ls_total > 0) ts << "verify: " << ls_pass << "/" << ls_total << " cases pass\n";
    doc["all_pass"] = all_pass;
    return emit(g, out, err, doc, ts.str(), all_pass ? 0 : 1);
}

// -------------------------------------------------------------------- flow

ordered_json point_json(const FlowPoint& p) {
    return ordered_json{{"x", double(p.x)}, {"y", double(p.y)}, {"t", double(p.t)},
                        {"u", double(p.u)}};
}

std::string point_str(const FlowPoint& p) {
    return "x = " + fmt(double(p.x)) + ", y = " + fmt(double(p.y)) +
           ", t = " + fmt(double(p.t)) + ", u = " + fmt(double(p.u));
}

int cmd_flow(const Global& g, std::ostream& out, std::ostream& err, const std::string& id,
             int gen, double eps, double x, double y, double t, double u,
             const std::string& method, double step) {
    const GeneratorBasis basis = basis_by_id(id);
    if (gen < 1 || gen > basis.dimension())
        throw UsageError("unknown generator index " + std::to_string(gen) + " for case " +
                         id + " (dimension " + std::to_string(basis.dimension()) + ")");
    const int i = gen - 1;
    const bool heat = id == "heat";
    const FlowMap fm =
        heat ? heat_closed_form_flow(i) : flow_for_element(basis.elements[i], basis.pcase.sample);
    const FlowPoint p0{Real(x), Real(y), Real(t), Real(u)};

    ordered_json doc{{"schema", kSchema}, {"command", "flow"},   {"case_id", id},
                     {"generator", gen},  {"kind", fm.kind},     {"eps", eps},
                     {"start", point_json(p0)}};
    std::ostringstream ts;
    ts << "flow v" << gen << " (" << fm.kind << ") of "
       << (heat ? std::string("the heat fixture") : "case " + id) << ", eps = " << fmt(eps)
       << "\n"
       << "start:  " << point_str(p0) << "\n";

    FlowPoint closed{}, rk4{};
    bool have_closed = false, have_rk4 = false;
    if (method != "rk4") {
        if (!fm.valid(p0, Real(eps))) {
            err << "error: eps = " << fmt(eps) << " lies outside the validity domain of "
                << fm.kind << " at the start point\n";
            return 1;
        }
        closed = fm.apply(p0, Real(eps));
        have_closed = true;
        doc["closed"] = point_json(closed);
        ts << "closed: " << point_str(closed) << "\n";
    }
    if (method != "closed") {
        try {
            rk4 = integrate_flow(basis.fields()[i], p0, eps,
                                 heat ? std::array<double, 4>{0, 0, 0, 0}
                                      : sample_doubles(basis.pcase),
                                 step, !heat);
        } catch (const DomainExitError& ex) {
            err << "error: trajectory left the quadrant x, y > 0 at eps = "
                << fmt(ex.exit_eps) << "\n";
            return 1;
        }
        have_rk4 = true;
        doc["rk4"] = point_json(rk4);
        ts << "rk4:    " << point_str(rk4) << "\n";
    }
    if (have_closed && have_rk4) {
        const double diff = std::max(
            std::max(std::abs(double(closed.x - rk4.x)), std::abs(double(closed.y - rk4.y))),
            std::max(std::abs(double(closed.t - rk4.t)), std::abs(double(closed.u - rk4.u))));
        doc["max_component_diff"] = diff;
        ts << "max component difference: " << fmt(diff) << "\n";
    }
    return emit(g, out, err, doc, ts.str(), 0);
}

// --------------------------------------------------------------- transform

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

SolutionFn solution_from_expr(const std::string& text, const std::array<double, 4>& params) {
    Expr e;
    try {
        e = parse_expr(text);
    } catch (const std::exception& ex) {
        throw UsageError("cannot parse --solution expression: " + std::string(ex.what()));
    }
    for (const Atom& a : e.atoms())
        if (a.kind != AtomKind::x && a.kind != AtomKind::y && a.kind != AtomKind::t)
            throw UsageError("--solution must be a closed form in x, y, t");
    SolutionFn s;
    s.provenance = {"closed-form: " + text};
    s.fn = [e, params](Real x, Real y, Real t) {
        EvalPoint pt;
        pt.x = double(x);
        pt.y = double(y);
        pt.t = double(t);
        pt.params = params;
        return Real(e.eval(pt));
    };
    return s;
}

int resolve_generator(const GeneratorBasis& basis, const std::string& gen, bool heat) {
    if (gen == "v_t") {
        for (int i = 0; i < basis.dimension(); ++i) {
            const GenKind k = basis.elements[i].kind.kind;
            if ((heat && k == GenKind::heat_translate_t) ||
                (!heat && k == GenKind::time_translate))
                return i;
        }
        throw UsageError("no time-translation element in this basis");
    }
    int gi = 0;
    try {
        std::size_t pos = 0;
        gi = std::stoi(gen, &pos);
        if (pos != gen.size()) throw std::invalid_argument(gen);
    } catch (const std::exception&) {
        throw UsageError("--gen expects a 1-based index or 'v_t', got '" + gen + "'");
    }
    if (gi < 1 || gi > basis.dimension())
        throw UsageError("unknown generator index " + gen + " (dimension " +
                         std::to_string(basis.dimension()) + ")");
    return gi - 1;
}

int cmd_transform(const Global& g, std::ostream& out, std::ostream& err, std::string id,
                  const std::string& gen, double eps, const std::string& solution,
                  bool shift_t, int grid_n) {
    if (id == "any") id = "2.1";  // a time shift transports solutions in every case
    const bool heat = id == "heat";
    if (shift_t && !heat) throw UsageError("--shift-t applies to --case heat only");
    if (shift_t && eps == 0.0) throw UsageError("--shift-t needs a nonzero --eps");

    const GeneratorBasis basis = basis_by_id(id);
    const int gi = resolve_generator(basis, gen, heat);
    const std::array<double, 4> params =
        heat ? std::array<double, 4>{0, 0, 0, 0} : sample_doubles(basis.pcase);
    const FlowMap fm = heat ? heat_closed_form_flow(gi)
                            : flow_for_element(basis.elements[gi], basis.pcase.sample);

    SolutionFn base = solution == "one" ? one_solution() : solution_from_expr(solution, params);
    SolutionFn sol = transform_solution(fm, base, eps);
    if (shift_t) sol = transform_solution(heat_closed_form_flow(1), sol, 1.0 / (4.0 * eps));

    ordered_json doc{{"schema", kSchema},
                     {"command", "transform"},
                     {"case_id", id},
                     {"generator", "v" + std::to_string(gi + 1)},
                     {"kind", fm.kind},
                     {"eps", eps},
                     {"solution", solution},
                     {"shift_t", shift_t}};

    std::ostringstream ts;
    ts << "transform " << (heat ? std::string("heat fixture") : "case " + id) << " v"
       << gi + 1 << " (" << fm.kind << "), eps = " << fmt(eps) << ", solution = " << solution;
    if (shift_t) ts << ", t shifted by -1/(4*eps)";
    ts << "\n";

    // Residual sweep. The heat fixture sweeps an (x, t) rectangle with
    // t > 0 (the shifted Gaussian family lives there); the parameter cases
    // sweep the standard box.
    double max_res = 0.0;
    long double sum = 0.0L;
    long count = 0;
    ordered_json violations = ordered_json::array();
    const std::vector<double> xs = linspace(0.5, 5.0, grid_n);
    const std::vector<double> ys = heat ? std::vector<double>{0.0} : xs;
    const std::vector<double> tvals =
        heat ? linspace(0.5, 5.0, grid_n) : linspace(-1.0, 1.0, grid_n);
    try {
        for (double xv : xs)
            for (double yv : ys)
                for (double tv : tvals) {
                    const double r = heat ? heat_residual(sol, xv, tv)
                                          : residual(params, sol, xv, yv, tv);
                    max_res = std::max(max_res, r);
                    sum += r;
                    ++count;
                    if (!(r < g.tol_fd)) {
                        ordered_json v{{"x", xv}};
                        if (!heat) v["y"] = yv;
                        v["t"] = tv;
                        v["residual"] = r;
                        violations.push_back(std::move(v));
                    }
                }
    } catch (const std::domain_error& ex) {
        err << "error: validity domain violated during the sweep: " << ex.what() << "\n";
        return 1;
    }

    if (heat) {
        doc["grid"] = ordered_json{{"x", {0.5, 5.0, grid_n}}, {"t", {0.5, 5.0, grid_n}}};
        ts << "grid: " << grid_n << " x " << grid_n << " over [0.5,5] x [0.5,5]\n";
    } else {
        doc["grid"] = ordered_json{{"x", {0.5, 5.0, grid_n}},
                                   {"y", {0.5, 5.0, grid_n}},
                                   {"t", {-1.0, 1.0, grid_n}}};
        ts << "grid: " << grid_n << " x " << grid_n << " x " << grid_n
           << " over [0.5,5]^2 x [-1,1]\n";
    }
    doc["max_residual"] = max_res;
    doc["mean_residual"] = double(sum / count);
    doc["violations"] = violations;
    ts << "max residual = " << fmt(max_res) << ", mean residual = " << fmt(double(sum / count))
       << "\nviolations: " << violations.size() << "\n";

    if (heat) {
        const double probe = double(sol(1.0L, 0.0L, 1.0L));
        doc["probe"] = ordered_json{{"x", 1.0}, {"t", 1.0}, {"value", probe}};
        ts << "u(x = 1, t = 1) = " << fmt(probe) << "\n";
    }
    return emit(g, out, err, doc, ts.str(), violations.empty() ? 0 : 1);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Global g;
    CLI::App app{"Lie point symmetries of a Kolmogorov backward equation family"};
    app.require_subcommand(1);
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Sampling seed")->capture_default_str();
    app.add_option("--tol-sym", g.tol_sym, "Numeric tolerance for symmetry residuals")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--tol-fd", g.tol_fd, "Finite-difference residual tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--out", g.out_path, "Write the report to this path");

    std::vector<std::string> all_ids = case_ids();
    all_ids.push_back("heat");

    // classify
    std::string ca, cb, cd, ce;
    CLI::App* classify_cmd = app.add_subcommand("classify", "Classify parameter values");
    classify_cmd->add_option("--a", ca, "Parameter a, as p/q")->required();
    classify_cmd->add_option("--b", cb, "Parameter b, as p/q")->required();
    classify_cmd->add_option("--d", cd, "Parameter d, as p/q")->required();
    classify_cmd->add_option("--e", ce, "Parameter e, as p/q")->required();

    // determine
    std::string family = "ls";
    CLI::App* determine_cmd =
        app.add_subcommand("determine", "Dump the determining system rows");
    determine_cmd->add_option("--family", family, "Equation family")
        ->check(CLI::IsMember({"ls", "heat"}))
        ->capture_default_str();

    // basis
    std::string basis_id;
    CLI::App* basis_cmd = app.add_subcommand("basis", "Print a case's generator basis");
    basis_cmd->add_option("--case", basis_id, "Case label or 'heat'")
        ->check(CLI::IsMember(all_ids))
        ->required();

    // bracket-table
    std::string table_id;
    bool paper_tables = false;
    CLI::App* table_cmd =
        app.add_subcommand("bracket-table", "Print the commutator table of a case");
    table_cmd->add_option("--case", table_id, "Case label or 'heat'")
        ->check(CLI::IsMember(all_ids))
        ->required();
    table_cmd->add_flag("--paper-tables", paper_tables,
                        "Also print the transcribed source table and the diff");

    // structure
    std::string structure_id;
    CLI::App* structure_cmd =
        app.add_subcommand("structure", "Print the structure report of a case");
    structure_cmd->add_option("--case", structure_id, "Case label or 'heat'")
        ->check(CLI::IsMember(all_ids))
        ->required();

    // verify
    std::string verify_id;
    bool verify_all = false, tamper = false;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run the verification sweep for cases");
    verify_cmd->add_option("--case", verify_id, "Case label or 'heat'")
        ->check(CLI::IsMember(all_ids));
    verify_cmd->add_flag("--all", verify_all, "Verify all sixteen cases plus the fixture");
    verify_cmd->add_flag("--tamper", tamper, "Inject x d/dx and require the check to fail");

    // flow
    std::string flow_id, flow_method = "both";
    int flow_gen = 0;
    double flow_eps = 0, fx = 1, fy = 1, ft = 0, fu = 1, fstep = 1e-3;
    CLI::App* flow_cmd = app.add_subcommand("flow", "Evaluate a one-parameter group action");
    flow_cmd->add_option("--case", flow_id, "Case label or 'heat'")
        ->check(CLI::IsMember(all_ids))
        ->required();
    flow_cmd->add_option("--gen", flow_gen, "Generator index, 1-based")->required();
    flow_cmd->add_option("--eps", flow_eps, "Group parameter")->required();
    flow_cmd->add_option("--x", fx, "Start x")->capture_default_str();
    flow_cmd->add_option("--y", fy, "Start y")->capture_default_str();
    flow_cmd->add_option("--t", ft, "Start t")->capture_default_str();
    flow_cmd->add_option("--u", fu, "Start u")->capture_default_str();
    flow_cmd->add_option("--method", flow_method, "Evaluation route")
        ->check(CLI::IsMember({"both", "closed", "rk4"}))
        ->capture_default_str();
    flow_cmd->add_option("--step", fstep, "RK4 step size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    // transform
    std::string tr_id, tr_gen, tr_solution = "one";
    double tr_eps = 0;
    bool tr_shift = false;
    int tr_grid = 10;
    CLI::App* transform_cmd =
        app.add_subcommand("transform", "Transport a solution and sweep PDE residuals");
    {
        std::vector<std::string> tr_ids = all_ids;
        tr_ids.push_back("any");
        transform_cmd->add_option("--case", tr_id, "Case label, 'heat', or 'any'")
            ->check(CLI::IsMember(tr_ids))
            ->required();
    }
    transform_cmd->add_option("--gen", tr_gen, "Generator index (1-based) or 'v_t'")
        ->required();
    transform_cmd->add_option("--eps", tr_eps, "Group parameter")->required();
    transform_cmd->add_option("--solution", tr_solution, "'one' or a closed form in x,y,t")
        ->capture_default_str();
    transform_cmd->add_flag("--shift-t", tr_shift,
                            "After transforming, shift t by -1/(4*eps) (heat only)");
    transform_cmd->add_option("--grid", tr_grid, "Grid points per axis")
        ->check(CLI::Range(2, 64))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(classify_cmd))
            return cmd_classify(g, out, err, ca, cd, cb, ce);
        if (app.got_subcommand(determine_cmd)) return cmd_determine(g, out, err, family);
        if (app.got_subcommand(basis_cmd)) return cmd_basis(g, out, err, basis_id);
        if (app.got_subcommand(table_cmd))
            return cmd_bracket_table(g, out, err, table_id, paper_tables);
        if (app.got_subcommand(structure_cmd)) return cmd_structure(g, out, err, structure_id);
        if (app.got_subcommand(verify_cmd))
            return cmd_verify(g, out, err, verify_id, verify_all, tamper);
        if (app.got_subcommand(flow_cmd))
            return cmd_flow(g, out, err, flow_id, flow_gen, flow_eps, fx, fy, ft, fu,
                            flow_method, fstep);
        if (app.got_subcommand(transform_cmd))
            return cmd_transform(g, out, err, tr_id, tr_gen, tr_eps, tr_solution, tr_shift,
                                 tr_grid);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace liesym_cli
