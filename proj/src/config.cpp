// SPDX-License-Identifier: Apache-2.0
#include "frontindex/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>

namespace frontindex {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, int col, const std::string& what) {
    throw ParseError("config:" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
}

double parse_double(const std::string& v, int line) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) fail(line, 1, "trailing characters in number '" + v + "'");
        return x;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(line, 1, "expected a number, got '" + v + "'");
    }
}

long parse_int(const std::string& v, int line) {
    try {
        size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) fail(line, 1, "trailing characters in integer '" + v + "'");
        return x;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(line, 1, "expected an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line) {
    if (v == "1" || v == "true" || v == "on") return true;
    if (v == "0" || v == "false" || v == "off") return false;
    fail(line, 1, "expected a boolean (0/1/true/false/on/off), got '" + v + "'");
}

std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(line, 1, "empty entry in list '" + v + "'");
        out.push_back(parse_double(item, line));
    }
    if (out.empty()) fail(line, 1, "empty list");
    return out;
}

const std::map<std::string, ScenarioKind> kScenarios = {
    {"front_formula", ScenarioKind::FrontFormula},
    {"morin_map", ScenarioKind::MorinMap},
    {"parallel_sweep", ScenarioKind::ParallelSweep},
    {"blaschke", ScenarioKind::Blaschke},
    {"poincare_hopf", ScenarioKind::PoincareHopf},
    {"classify_patch", ScenarioKind::ClassifyPatch},
};

void validate(const ScenarioConfig& c) {
    const std::vector<std::string> families = {"sphere", "torus", "bumpy", "rotational_gamma",
                                               "swallowtail_patch"};
    if (std::find(families.begin(), families.end(), c.family) == families.end())
        throw RangeError("unknown family '" + c.family + "'");
    if (c.family == "rotational_gamma" && (c.epsilon < 0.0 || c.epsilon >= 0.25))
        throw RangeError("epsilon must satisfy 0 <= epsilon < 1/4 for rotational_gamma");
    if (c.radius <= 0.0) throw RangeError("radius must be positive");
    if (c.torus_R <= c.torus_r || c.torus_r <= 0.0)
        throw RangeError("torus radii must satisfy R > r > 0");
    if (c.grid < 16 || c.grid > 4096) throw RangeError("grid must lie in [16, 4096]");
    if (c.jet_order != 0 && (c.jet_order < 3 || c.jet_order > 10))
        throw RangeError("jet_order must lie in [3, 10]");
    if (c.pole_cap < 0.05 || c.pole_cap > 0.5)
        throw RangeError("pole_cap must lie in [0.05, 0.5]");
    if (c.kind == ScenarioKind::MorinMap && c.map != "torus_fold" && c.map != "torus_cover" &&
        c.map != "sphere_identity")
        throw RangeError("unknown map '" + c.map + "'");
    if (c.kind == ScenarioKind::PoincareHopf && c.field != "constant_u" &&
        c.field != "sphere_height" && c.field != "random_trig")
        throw RangeError("unknown field '" + c.field + "'");
    if (c.kind == ScenarioKind::ParallelSweep && c.t_values.empty())
        throw RangeError("parallel_sweep needs a nonempty t_values list");
    if (c.trials < 1 || c.trials > 1000) throw RangeError("trials must lie in [1, 1000]");
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig c;
    bool saw_scenario = false;
    int line_no = 0;
    std::stringstream ss(text);
    std::string raw;
    while (std::getline(ss, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, 1, "expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, 1, "empty key");
        if (value.empty()) fail(line_no, static_cast<int>(eq + 2), "empty value for '" + key + "'");

        if (key == "scenario") {
            const auto it = kScenarios.find(value);
            if (it == kScenarios.end()) fail(line_no, static_cast<int>(eq + 2),
                                             "unknown scenario '" + value + "'");
            c.kind = it->second;
            c.scenario = value;
            saw_scenario = true;
        } else if (key == "family") {
            c.family = value;
        } else if (key == "radius") {
            c.radius = parse_double(value, line_no);
        } else if (key == "torus_R") {
            c.torus_R = parse_double(value, line_no);
        } else if (key == "torus_r") {
            c.torus_r = parse_double(value, line_no);
        } else if (key == "epsilon") {
            c.epsilon = parse_double(value, line_no);
        } else if (key == "bump_amplitude") {
            c.bump_amplitude = parse_double(value, line_no);
        } else if (key == "seed") {
            c.seed = static_cast<std::uint64_t>(parse_int(value, line_no));
        } else if (key == "pole_cap") {
            c.pole_cap = parse_double(value, line_no);
        } else if (key == "map") {
            c.map = value;
        } else if (key == "fold_amplitude") {
            c.fold_amplitude = parse_double(value, line_no);
        } else if (key == "cover_k") {
            c.cover_k = static_cast<int>(parse_int(value, line_no));
        } else if (key == "t_values") {
            c.t_values = parse_list(value, line_no);
        } else if (key == "field") {
            c.field = value;
        } else if (key == "trials") {
            c.trials = static_cast<int>(parse_int(value, line_no));
        } else if (key == "grid") {
            c.grid = static_cast<int>(parse_int(value, line_no));
        } else if (key == "jet_order") {
            c.jet_order = static_cast<int>(parse_int(value, line_no));
        } else if (key == "eps_sing_rel") {
            c.eps_sing_rel = parse_double(value, line_no);
        } else if (key == "eps_dot_rel") {
            c.eps_dot_rel = parse_double(value, line_no);
        } else if (key == "eps_ddot_rel") {
            c.eps_ddot_rel = parse_double(value, line_no);
        } else if (key == "eps_rank") {
            c.eps_rank = parse_double(value, line_no);
        } else if (key == "out") {
            c.out_dir = value;
        } else if (key == "plots") {
            c.plots = parse_bool(value, line_no);
        } else if (key == "oracle") {
            c.oracle = parse_bool(value, line_no);
        } else {
            fail(line_no, 1, "unknown key '" + key + "'");
        }
    }
    if (!saw_scenario) fail(std::max(1, line_no), 1, "missing 'scenario' key");
    validate(c);
    return c;
}

void apply_env_overrides(ScenarioConfig& config) {
    if (const char* g = std::getenv("FRONTINDEX_GRID")) config.grid = std::atoi(g);
    if (const char* s = std::getenv("FRONTINDEX_EPS_SING_REL")) config.eps_sing_rel = std::atof(s);
    if (const char* s = std::getenv("FRONTINDEX_EPS_DOT_REL")) config.eps_dot_rel = std::atof(s);
    if (const char* s = std::getenv("FRONTINDEX_EPS_DDOT_REL"))
        config.eps_ddot_rel = std::atof(s);
    if (const char* s = std::getenv("FRONTINDEX_EPS_RANK")) config.eps_rank = std::atof(s);
}

} // namespace frontindex
