// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontindex/errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace frontindex {

enum class ScenarioKind {
    FrontFormula,
    MorinMap,
    ParallelSweep,
    Blaschke,
    PoincareHopf,
    ClassifyPatch,
};

/// Parsed scenario configuration. The config grammar is flat `key=value`
/// lines with `#` comments; keys are documented in the README.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::FrontFormula;
    std::string scenario;

    // surface family
    std::string family = "sphere";
    double radius = 1.0;
    double torus_R = 2.0;
    double torus_r = 1.0;
    double epsilon = 17.0 / 80.0;
    double bump_amplitude = 0.04;
    std::uint64_t seed = 1;
    double pole_cap = 0.2;

    // morin_map scenario
    std::string map = "torus_fold";
    double fold_amplitude = 1.5;
    int cover_k = 2;

    // parallel_sweep scenario
    std::vector<double> t_values{-1.15, -1.3, -1.6};

    // poincare_hopf scenario
    std::string field = "random_trig";
    int trials = 20;

    // numerics
    int grid = 256;
    int jet_order = 0; // 0 = per-pipeline default (4 for fronts, 6 for Blaschke)
    double eps_sing_rel = 1e-9;
    double eps_dot_rel = 1e-6;
    double eps_ddot_rel = 1e-6;
    double eps_rank = 1e-8;

    // output
    std::string out_dir = ".";
    bool plots = false;
    bool oracle = false;
};

/// Parses the config text; throws ParseError (with line/column) or RangeError.
ScenarioConfig parse_config(const std::string& text);

/// Applies documented environment overrides (FRONTINDEX_GRID,
/// FRONTINDEX_EPS_SING_REL, FRONTINDEX_EPS_DOT_REL, FRONTINDEX_EPS_DDOT_REL,
/// FRONTINDEX_EPS_RANK).
void apply_env_overrides(ScenarioConfig& config);

} // namespace frontindex
