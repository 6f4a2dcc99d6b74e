// SPDX-License-Identifier: Apache-2.0
#include "frontindex/scenario.hpp"
#include "frontindex/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw frontindex::Error("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_summary(const frontindex::RunReport& report) {
    for (const frontindex::FormulaReport& f : report.formulas) {
        std::printf("%-22s lhs=%ld rhs=%ld residual=%ld  (chi+=%d chi-=%d a3+=%d a3-=%d)\n",
                    f.theorem.c_str(), f.lhs, f.rhs, f.residual, f.chi_plus, f.chi_minus,
                    f.a3_plus, f.a3_minus);
    }
    for (const auto& t : report.ph_trials) {
        std::printf("poincare_hopf %-14s seed=%llu zeros=%d sum=%d expected=%d windings=%s\n",
                    t.field.c_str(), static_cast<unsigned long long>(t.seed), t.zero_count,
                    t.index_sum, t.expected_sum, t.windings_match ? "ok" : "MISMATCH");
    }
    for (const auto& c : report.classifications) {
        std::printf("classify (%.4f, %.4f): %s%s  lambda=%.3e lambda_dot=%.6g lambda_ddot=%.6g\n",
                    c.p.u, c.p.v, c.verdict.c_str(),
                    c.verdict == "A3" ? (c.sign > 0 ? "(+)" : "(-)") : "", c.lambda,
                    c.lambda_dot, c.lambda_ddot);
    }
    for (const std::string& w : report.warnings) std::printf("warning: %s\n", w.c_str());
    std::printf("%s (%.2fs)\n", report.clean() ? "OK" : "NOT CLEAN", report.elapsed_seconds);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"index-formula verifier for wave fronts, Morin maps and Blaschke normal maps"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "run a scenario from a config file");
    std::string config_path;
    std::string out_dir;
    bool plots = false;
    bool oracle = false;
    run->add_option("config", config_path, "path to a key=value config file")->required();
    run->add_option("--out", out_dir, "output directory for report.json and plots");
    run->add_flag("--plots", plots, "emit SVG plots");
    run->add_flag("--oracle", oracle, "enable the preimage-count degree oracle");

    CLI11_PARSE(app, argc, argv);

    try {
        frontindex::ScenarioConfig config = frontindex::parse_config(slurp(config_path));
        frontindex::apply_env_overrides(config);
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (plots) config.plots = true;
        if (oracle) config.oracle = true;

        const frontindex::RunReport report = frontindex::run_scenario(config);
        std::filesystem::create_directories(config.out_dir);
        const std::string report_path = config.out_dir + "/report.json";
        frontindex::write_report(report, report_path);
        print_summary(report);
        std::printf("report: %s\n", report_path.c_str());
        return report.clean() ? 0 : 1;
    } catch (const frontindex::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const frontindex::RangeError& e) {
        std::fprintf(stderr, "range error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
