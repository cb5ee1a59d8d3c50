// Acceptance gate: nine fixed criteria, one pass/fail line each. Exit
// code is the number of failing criteria. Tolerances and budgets are
// pinned here; the suite is deterministic for the seeds below.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
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

using namespace liesym;

namespace {

const std::vector<std::string> kCaseIds = {"1.1", "1.2", "1.3", "1.4", "2.1", "2.2",
                                           "2.3", "2.4", "3.1", "3.2", "3.3", "3.4",
                                           "4.1", "4.2", "4.3", "4.4"};

std::array<double, 4> sample_doubles(const ParamCase& pc) {
    return {pc.sample[0].to_double(), pc.sample[1].to_double(),
            pc.sample[2].to_double(), pc.sample[3].to_double()};
}

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(1) << v;
    return os.str();
}

VectorField make_field(const std::string& xi, const std::string& gamma,
                       const std::string& tau, const std::string& phi) {
    return {parse_expr(xi), parse_expr(gamma), parse_expr(tau), parse_expr(phi)};
}

// ------------------------------------------------------------ criterion 1

bool criterion1(std::string& msg) {
    const GeneratorBasis hb = heat_basis();
    const std::vector<VectorField> flds = hb.fields();
    const PdeFamily fam = heat_family();

    int symbolic = 0;
    for (const VectorField& f : flds) {
        const CheckReport cr = check_symmetry(fam, f);
        if (cr.symbolic_ok && cr.numeric_ok) ++symbolic;
    }

    // Perturbations drawn from a pool of non-symmetries; symmetries form a
    // linear space, so generator + c * non-symmetry is never a symmetry.
    const std::vector<VectorField> pool = {
        make_field("x", "0", "0", "0"),   make_field("t", "0", "0", "0"),
        make_field("0", "x", "0", "0"),   make_field("0", "0", "0", "x*u"),
        make_field("0", "0", "x", "0")};
    std::mt19937_64 rng(11);
    int rejected = 0;
    for (int k = 0; k < 20; ++k) {
        const VectorField& base = flds[rng() % flds.size()];
        const VectorField& pert = pool[rng() % pool.size()];
        const Rational c(1 + std::int64_t(rng() % 5), 2 + std::int64_t(rng() % 7));
        const VectorField v = base + c * pert;
        if (!check_symmetry(fam, v).ok()) ++rejected;
    }

    msg = "heat fixture: " + std::to_string(symbolic) + "/6 generators pass exactly, " +
          std::to_string(rejected) + "/20 perturbations rejected";
    return symbolic == 6 && rejected == 20;
}

// ------------------------------------------------------------ criterion 2

bool criterion2(std::string& msg) {
    const std::map<std::string, int> expected = {
        {"1.1", 6}, {"1.2", 9}, {"1.3", 9}, {"1.4", 9}, {"2.1", 2}, {"2.2", 4},
        {"2.3", 4}, {"2.4", 4}, {"3.1", 4}, {"3.2", 6}, {"3.3", 6}, {"3.4", 6},
        {"4.1", 4}, {"4.2", 6}, {"4.3", 6}, {"4.4", 6}};
    int ok = 0;
    std::string bad;
    for (const std::string& id : kCaseIds) {
        const int dim = basis_for(case_by_label(id)).dimension();
        if (dim == expected.at(id)) ++ok;
        else bad += " " + id + "=" + std::to_string(dim);
    }
    msg = "dimension table: " + std::to_string(ok) + "/16 exact matches" +
          (bad.empty() ? "" : ";  mismatches:" + bad);
    return ok == 16;
}

// ------------------------------------------------------------ criterion 3

bool criterion3(std::string& msg) {
    const DeterminingSystem& sys = [] {
        static const DeterminingSystem s = build_determining_system(ls_family());
        return s;
    }();
    CheckOptions opt;
    opt.samples = 120;
    opt.tol = 1e-10;
    opt.seed = 2024;

    int total = 0, pass = 0;
    double worst = 0.0;
    for (const std::string& id : kCaseIds) {
        const ParamCase pc = case_by_label(id);
        for (const VectorField& f : basis_for(pc).fields()) {
            ++total;
            const Verdict vd = check_candidate(f, sys, pc, opt);
            worst = std::max(worst, vd.numeric_max_residual);
            if (vd.all_pass()) ++pass;
        }
    }
    msg = "round-trip: " + std::to_string(pass) + "/" + std::to_string(total) +
          " fields symbolic-zero, worst numeric residual " + sci(worst);
    return pass == total && worst < 1e-10;
}

// ------------------------------------------------------------ criterion 4

bool criterion4(std::string& msg) {
    int closed_cases = 0, diff_total = 0;
    bool positions_ok = true;
    for (const std::string& id : kCaseIds) {
        const ParamCase pc = case_by_label(id);
        const StructureConstants sc = commutator_table(basis_for(pc).fields_at_sample());
        if (sc.closed && sc.antisymmetric() && sc.jacobi()) ++closed_cases;
        std::set<std::pair<int, int>> got, expected;
        for (const TableDiff& dd : diff_against_transcription(pc)) {
            got.insert({dd.i, dd.j});
            ++diff_total;
        }
        for (const auto& p : expected_table_diffs(id)) expected.insert(p);
        positions_ok = positions_ok && got == expected;
    }
    const StructureConstants hsc = commutator_table(heat_basis().fields());
    const bool heat_ok = hsc.closed && hsc.antisymmetric() && hsc.jacobi();
    msg = "closure: " + std::to_string(closed_cases) + "/16 cases exact (heat " +
          (heat_ok ? "ok" : "FAIL") + "); " + std::to_string(diff_total) +
          " transcription diffs, positions " + (positions_ok ? "frozen" : "UNEXPECTED");
    return closed_cases == 16 && heat_ok && positions_ok;
}

// ------------------------------------------------------------ criterion 5

bool criterion5(std::string& msg) {
    struct Want {
        std::string ref, label, domain;
    };
    std::map<std::string, Want> want;
    want["2.1"] = {"abelian2", "abelian", "algebra"};
    for (const std::string& id : {"2.2", "2.3", "2.4"})
        want[id] = {"N", "sl2 x R", "algebra"};
    for (const std::string& id : {"3.2", "3.3", "3.4", "4.2", "4.3", "4.4"})
        want[id] = {"M", "sl2 semidirect h3", "algebra"};
    for (const std::string& id : {"3.1", "4.1"})
        want[id] = {"iso2", "central extension of iso2", "center quotient"};
    for (const std::string& id : {"1.2", "1.3", "1.4"})
        want[id] = {"sl2", "sl2 semidirect 6-dim ideal", "ideal quotient"};

    int ok = 0;
    std::string bad;
    for (const auto& [id, w] : want) {
        const StructureReport rep = structure_report(case_by_label(id));
        const bool good = rep.reference == w.ref && rep.label == w.label &&
                          rep.witness_domain == w.domain && rep.witness_verified &&
                          (id != "2.1" || rep.dimension == 2);
        if (good) ++ok;
        else bad += " " + id;
    }
    msg = "structure witnesses: " + std::to_string(ok) + "/" + std::to_string(want.size()) +
          " verified exactly" + (bad.empty() ? "" : ";  failing:" + bad);
    return ok == int(want.size());
}

// ------------------------------------------------------------ criterion 6

bool criterion6(std::string& msg) {
    auto key = [](std::string a, std::string b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    };
    std::set<std::pair<std::string, std::string>> expected;
    const std::vector<std::string> nine = {"1.2", "1.3", "1.4"};
    const std::vector<std::string> six = {"3.2", "3.3", "3.4", "4.2", "4.3", "4.4"};
    const std::vector<std::string> four = {"2.2", "2.3", "2.4"};
    for (std::size_t i = 0; i < nine.size(); ++i)
        for (std::size_t j = i + 1; j < nine.size(); ++j) expected.insert(key(nine[i], nine[j]));
    for (std::size_t i = 0; i < six.size(); ++i)
        for (std::size_t j = i + 1; j < six.size(); ++j) expected.insert(key(six[i], six[j]));
    for (std::size_t i = 0; i < four.size(); ++i)
        for (std::size_t j = i + 1; j < four.size(); ++j) expected.insert(key(four[i], four[j]));
    expected.insert(key("3.1", "4.1"));

    std::set<std::pair<std::string, std::string>> got;
    int verified = 0;
    const std::vector<GridIsomorphism> isos = grid_isomorphisms();
    for (const GridIsomorphism& gi : isos) {
        got.insert(key(gi.from, gi.to));
        if (gi.verified) ++verified;
    }
    int inc_verified = 0;
    const std::vector<GridInclusion> incs = grid_inclusions();
    for (const GridInclusion& gi : incs) inc_verified += gi.verified ? 1 : 0;

    msg = "grid: " + std::to_string(verified) + "/" + std::to_string(isos.size()) +
          " isomorphisms verified (" + std::to_string(expected.size()) +
          " declared pairs), " + std::to_string(inc_verified) + "/" +
          std::to_string(incs.size()) + " inclusions verified";
    return got == expected && verified == int(isos.size()) && int(isos.size()) == 22 &&
           inc_verified == int(incs.size()) && int(incs.size()) == 16;
}

// ------------------------------------------------------------ criterion 7

struct FlowUnit {
    std::string name;
    FlowMap fm;
    VectorField field;
    std::array<double, 4> params;
    bool heat = false;
};

std::vector<FlowUnit> all_flow_units() {
    std::vector<FlowUnit> units;
    for (const std::string& id : kCaseIds) {
        const ParamCase pc = case_by_label(id);
        const GeneratorBasis basis = basis_for(pc);
        const std::vector<VectorField> flds = basis.fields();
        for (int i = 0; i < basis.dimension(); ++i)
            units.push_back({id + " v" + std::to_string(i + 1),
                             flow_for_element(basis.elements[i], pc.sample), flds[i],
                             sample_doubles(pc), false});
    }
    const GeneratorBasis hb = heat_basis();
    const std::vector<VectorField> hf = hb.fields();
    for (int i = 0; i < 6; ++i)
        units.push_back(
            {"heat v" + std::to_string(i + 1), heat_closed_form_flow(i), hf[i],
             {0, 0, 0, 0}, true});
    return units;
}

bool criterion7(std::string& msg) {
    std::mt19937_64 rng(20240814);
    double worst_flow = 0.0, worst_group = 0.0;
    int flows_checked = 0;
    bool sampled_ok = true;

    for (const FlowUnit& u : all_flow_units()) {
        std::uniform_real_distribution<double> Ux(0.8, 2.5);
        std::uniform_real_distribution<double> Ut(u.heat ? 0.1 : -0.4, u.heat ? 0.6 : 0.4);
        std::uniform_real_distribution<double> Ue(u.heat ? -0.15 : -0.2,
                                                  u.heat ? 0.15 : 0.2);
        int done = 0;
        for (int guard = 0; done < 50 && guard < 4000; ++guard) {
            const FlowPoint p{Real(Ux(rng)), Real(Ux(rng)), Real(Ut(rng)), 1.0L};
            const Real eps = Ue(rng);
            if (!u.fm.valid(p, eps) || !u.fm.valid(p, Real(1.6) * eps)) continue;
            const FlowPoint c = u.fm.apply(p, eps);
            const FlowPoint r = integrate_flow(u.field, p, double(eps), u.params, 1e-3,
                                               !u.heat);
            worst_flow = std::max(
                worst_flow,
                std::max(std::max(std::abs(double(c.x - r.x)), std::abs(double(c.y - r.y))),
                         std::max(std::abs(double(c.t - r.t)), std::abs(double(c.u - r.u)))));
            ++done;
        }
        sampled_ok = sampled_ok && done == 50;

        // Group law, closed form at 10 samples and RK4 at 3.
        int laws = 0;
        for (int guard = 0; laws < 10 && guard < 1000; ++guard) {
            const FlowPoint p{Real(Ux(rng)), Real(Ux(rng)), Real(Ut(rng)), 1.0L};
            const Real e1 = Ue(rng) / 2, e2 = Ue(rng) / 2;
            if (!u.fm.valid(p, Real(1.8) * (e1 + e2)) || !u.fm.valid(p, Real(1.8) * e1))
                continue;
            const FlowPoint q1 = u.fm.apply(p, e1);
            if (!u.fm.valid(q1, Real(1.8) * e2)) continue;
            const FlowPoint two = u.fm.apply(q1, e2);
            const FlowPoint one = u.fm.apply(p, e1 + e2);
            worst_group = std::max(
                worst_group,
                std::max(
                    std::max(std::abs(double(two.x - one.x)), std::abs(double(two.y - one.y))),
                    std::max(std::abs(double(two.t - one.t)),
                             std::abs(double(two.u - one.u)))));
            if (laws < 3) {
                const FlowPoint r1 = integrate_flow(u.field, p, double(e1), u.params, 1e-3,
                                                    !u.heat);
                const FlowPoint r2 =
                    integrate_flow(u.field, r1, double(e2), u.params, 1e-3, !u.heat);
                const FlowPoint r12 = integrate_flow(u.field, p, double(e1 + e2), u.params,
                                                     1e-3, !u.heat);
                worst_group = std::max(
                    worst_group,
                    std::max(std::max(std::abs(double(r2.x - r12.x)),
                                      std::abs(double(r2.y - r12.y))),
                             std::max(std::abs(double(r2.t - r12.t)),
                                      std::abs(double(r2.u - r12.u)))));
            }
            ++laws;
        }
        sampled_ok = sampled_ok && laws == 10;
        ++flows_checked;
    }
    msg = std::to_string(flows_checked) + " flows x 50 samples: max |RK4 - closed| " +
          sci(worst_flow) + "; group law max " + sci(worst_group);
    return sampled_ok && worst_flow < 1e-7 && worst_group < 1e-7;
}

// ------------------------------------------------------------ criterion 8

bool criterion8(std::string& msg) {
    std::vector<double> xs(10), ts(10);
    for (int i = 0; i < 10; ++i) {
        xs[i] = 0.5 + (5.0 - 0.5) * i / 9;
        ts[i] = -1.0 + 2.0 * i / 9;
    }
    double worst = 0.0;
    int flows = 0;
    std::string worst_name;
    for (const FlowUnit& u : all_flow_units()) {
        const SolutionFn sol = transform_solution(u.fm, one_solution(), 0.05);
        double local = 0.0;
        if (u.heat) {
            for (double x : xs)
                for (double t : ts) local = std::max(local, heat_residual(sol, x, t));
        } else {
            for (double x : xs)
                for (double y : xs)
                    for (double t : ts)
                        local = std::max(local, residual(u.params, sol, x, y, t));
        }
        if (local > worst) {
            worst = local;
            worst_name = u.name;
        }
        ++flows;
    }
    msg = std::to_string(flows) + " transported solutions on the 10x10x10 grid: worst "
          "residual " + sci(worst) + " (" + worst_name + ")";
    return worst < 1e-5;
}

// ------------------------------------------------------------ criterion 9

bool criterion9(std::string& msg) {
    const double pi = std::acos(-1.0);
    const SolutionFn gpi =
        transform_solution(heat_closed_form_flow(5), one_solution(), pi);
    const SolutionFn kernel =
        transform_solution(heat_closed_form_flow(1), gpi, 1.0 / (4.0 * pi));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> Ux(-3.0, 3.0), Ut(0.05, 4.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double x = Ux(rng), t = Ut(rng);
        const double oracle = std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * pi * t);
        worst = std::max(worst, std::abs(double(kernel(x, 0.0, t)) - oracle));
    }
    msg = "heat kernel at 100 points: max |transform - oracle| " + sci(worst);
    return worst < 1e-8;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        double budget;  // seconds; 0 = unbudgeted
        std::function<bool(std::string&)> fn;
    };
    const std::vector<Entry> entries = {
        {1, 5.0, criterion1},  {2, 0.0, criterion2}, {3, 60.0, criterion3},
        {4, 0.0, criterion4},  {5, 0.0, criterion5}, {6, 0.0, criterion6},
        {7, 30.0, criterion7}, {8, 0.0, criterion8}, {9, 0.0, criterion9}};

    int failures = 0;
    for (const Entry& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string msg;
        bool ok = false;
        try {
            ok = e.fn(msg);
        } catch (const std::exception& ex) {
            ok = false;
            msg = std::string("exception: ") + ex.what();
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (e.budget > 0 && sec >= e.budget) {
            ok = false;
            msg += " [over the " + std::to_string(int(e.budget)) + " s budget]";
        }
        std::cout << "criterion " << e.id << ": " << (ok ? "PASS" : "FAIL") << " - " << msg
                  << "  [" << std::fixed << std::setprecision(2) << sec << " s]\n";
        if (!ok) ++failures;
    }
    if (failures == 0) std::cout << "acceptance: 9/9 criteria pass\n";
    else std::cout << "acceptance: " << (9 - failures) << "/9 criteria pass\n";
    return failures;
}
