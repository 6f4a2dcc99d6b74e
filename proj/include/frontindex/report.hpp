// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontindex/config.hpp"
#include "frontindex/indexcheck.hpp"

#include <string>
#include <vector>

namespace frontindex {

/// Per-scenario machine-readable result. Topological quantities are integers;
/// the JSON serialization keeps them as integers.
struct RunReport {
    int schema = 1;
    ScenarioConfig config;
    std::vector<FormulaReport> formulas;
    std::vector<std::pair<std::string, DegreeResult>> degrees;

    // strata summary (when a stratification ran)
    bool has_strata = false;
    int curve_count = 0;
    int chi_plus = 0, chi_minus = 0;
    int region_components_plus = 0, region_components_minus = 0;
    std::vector<SignedA3Point> a3_points;
    struct CurveSummary {
        int id = 0;
        bool closed = true;
        int points = 0;
        int winding_u = 0, winding_v = 0;
        int a3_count = 0;
    };
    std::vector<CurveSummary> curves;

    // classification results (classify_patch scenario)
    struct PointClassification {
        Vec2 p;
        std::string verdict;
        int sign = 0;
        double lambda = 0.0, lambda_dot = 0.0, lambda_ddot = 0.0, rank_det = 0.0;
    };
    std::vector<PointClassification> classifications;

    // Poincare-Hopf results
    struct PhTrial {
        std::string field;
        std::uint64_t seed = 0;
        int zero_count = 0;
        int index_sum = 0;
        int expected_sum = 0;
        bool windings_match = true;
    };
    std::vector<PhTrial> ph_trials;

    std::vector<std::string> warnings;
    std::vector<std::string> artifacts; // files written next to the report
    double elapsed_seconds = 0.0;

    /// Exit-code contract: 0 iff every residual is 0 and no warnings.
    bool clean() const {
        if (!warnings.empty()) return false;
        for (const FormulaReport& f : formulas)
            if (f.residual != 0) return false;
        for (const PhTrial& t : ph_trials)
            if (t.index_sum != t.expected_sum || !t.windings_match) return false;
        return true;
    }
};

/// Serializes the report as a JSON document. Deterministic for a fixed
/// config and seed; the timing field is the only varying part and is
/// omitted when `with_timing` is false.
std::string report_to_json(const RunReport& report, bool with_timing = true);

void write_report(const RunReport& report, const std::string& path);

} // namespace frontindex
