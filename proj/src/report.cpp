// SPDX-License-Identifier: Apache-2.0
#include "frontindex/report.hpp"

#include <json.hpp>

#include <fstream>

namespace frontindex {

namespace {

using nlohmann::json;

json config_json(const ScenarioConfig& c) {
    json j;
    j["scenario"] = c.scenario;
    j["family"] = c.family;
    j["grid"] = c.grid;
    j["seed"] = c.seed;
    j["oracle"] = c.oracle;
    j["plots"] = c.plots;
    j["pole_cap"] = c.pole_cap;
    switch (c.kind) {
        case ScenarioKind::FrontFormula:
        case ScenarioKind::Blaschke:
            if (c.family == "sphere") j["radius"] = c.radius;
            if (c.family == "torus") {
                j["torus_R"] = c.torus_R;
                j["torus_r"] = c.torus_r;
            }
            if (c.family == "bumpy") j["bump_amplitude"] = c.bump_amplitude;
            if (c.family == "rotational_gamma") j["epsilon"] = c.epsilon;
            break;
        case ScenarioKind::MorinMap:
            j["map"] = c.map;
            if (c.map == "torus_fold") j["fold_amplitude"] = c.fold_amplitude;
            if (c.map == "torus_cover") j["cover_k"] = c.cover_k;
            break;
        case ScenarioKind::ParallelSweep:
            j["t_values"] = c.t_values;
            if (c.family == "bumpy") j["bump_amplitude"] = c.bump_amplitude;
            if (c.family == "rotational_gamma") j["epsilon"] = c.epsilon;
            break;
        case ScenarioKind::PoincareHopf:
            j["field"] = c.field;
            j["trials"] = c.trials;
            break;
        case ScenarioKind::ClassifyPatch:
            break;
    }
    return j;
}

json degree_json(const DegreeResult& d) {
    json j;
    j["raw"] = d.raw;
    j["raw_midpoint"] = d.raw_midpoint;
    j["rounded"] = d.rounded;
    j["residual"] = d.residual;
    if (d.preimage_count) j["preimage_count"] = *d.preimage_count;
    return j;
}

json formula_json(const FormulaReport& f) {
    json j;
    j["theorem"] = f.theorem;
    j["lhs"] = f.lhs;
    j["rhs"] = f.rhs;
    j["residual"] = f.residual;
    j["chi_plus"] = f.chi_plus;
    j["chi_minus"] = f.chi_minus;
    j["a3_plus"] = f.a3_plus;
    j["a3_minus"] = f.a3_minus;
    j["curve_count"] = f.curve_count;
    j["degree"] = degree_json(f.degree);
    return j;
}

} // namespace

std::string report_to_json(const RunReport& r, bool with_timing) {
    json j;
    j["schema"] = r.schema;
    j["config"] = config_json(r.config);

    json formulas = json::array();
    for (const FormulaReport& f : r.formulas) formulas.push_back(formula_json(f));
    j["formulas"] = formulas;

    json degrees = json::array();
    for (const auto& [name, d] : r.degrees) {
        json e = degree_json(d);
        e["of"] = name;
        degrees.push_back(e);
    }
    j["degrees"] = degrees;

    if (r.has_strata) {
        json s;
        s["curve_count"] = r.curve_count;
        s["chi_plus"] = r.chi_plus;
        s["chi_minus"] = r.chi_minus;
        s["components_plus"] = r.region_components_plus;
        s["components_minus"] = r.region_components_minus;
        json curves = json::array();
        for (const auto& c : r.curves) {
            json e;
            e["id"] = c.id;
            e["closed"] = c.closed;
            e["points"] = c.points;
            e["winding"] = {c.winding_u, c.winding_v};
            e["a3_count"] = c.a3_count;
            curves.push_back(e);
        }
        s["curves"] = curves;
        json a3 = json::array();
        for (const SignedA3Point& p : r.a3_points) {
            json e;
            e["u"] = p.p.u;
            e["v"] = p.p.v;
            e["sign"] = p.sign;
            e["lambda_ddot"] = p.lambda_ddot;
            e["component"] = p.component_id;
            a3.push_back(e);
        }
        s["a3_points"] = a3;
        j["strata"] = s;
    }

    if (!r.classifications.empty()) {
        json cls = json::array();
        for (const auto& c : r.classifications) {
            json e;
            e["u"] = c.p.u;
            e["v"] = c.p.v;
            e["verdict"] = c.verdict;
            e["sign"] = c.sign;
            e["lambda"] = c.lambda;
            e["lambda_dot"] = c.lambda_dot;
            e["lambda_ddot"] = c.lambda_ddot;
            e["rank_det"] = c.rank_det;
            cls.push_back(e);
        }
        j["classifications"] = cls;
    }

    if (!r.ph_trials.empty()) {
        json trials = json::array();
        for (const auto& t : r.ph_trials) {
            json e;
            e["field"] = t.field;
            e["seed"] = t.seed;
            e["zero_count"] = t.zero_count;
            e["index_sum"] = t.index_sum;
            e["expected_sum"] = t.expected_sum;
            e["windings_match"] = t.windings_match;
            trials.push_back(e);
        }
        j["poincare_hopf"] = trials;
    }

    j["warnings"] = r.warnings;
    j["artifacts"] = r.artifacts;
    j["clean"] = r.clean();
    if (with_timing) j["timing"] = {{"elapsed_seconds", r.elapsed_seconds}};
    return j.dump(2) + "\n";
}

void write_report(const RunReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open report path: " + path);
    out << report_to_json(report);
}

} // namespace frontindex
