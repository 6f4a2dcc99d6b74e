// SPDX-License-Identifier: Apache-2.0
#include "frontindex/report.hpp"
#include "frontindex/scenario.hpp"
#include "frontindex/svg.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>

using namespace frontindex;

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
    SUBCASE("paper example scenario") {
        const ScenarioConfig c = parse_config(
            "scenario=blaschke\nfamily=rotational_gamma\nepsilon=0.2125\ngrid=512\n");
        CHECK(c.kind == ScenarioKind::Blaschke);
        CHECK(c.family == "rotational_gamma");
        CHECK(c.epsilon == doctest::Approx(17.0 / 80.0));
        CHECK(c.grid == 512);
    }
    SUBCASE("comments and blank lines are ignored") {
        const ScenarioConfig c = parse_config(
            "# a comment\n\nscenario=front_formula  # trailing comment\nfamily=torus\n");
        CHECK(c.kind == ScenarioKind::FrontFormula);
        CHECK(c.family == "torus");
    }
    SUBCASE("epsilon out of range is rejected") {
        CHECK_THROWS_AS(
            parse_config("scenario=blaschke\nfamily=rotational_gamma\nepsilon=0.3\n"),
            RangeError);
    }
    SUBCASE("empty file carries a position") {
        try {
            parse_config("");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("config:1:1") != std::string::npos);
        }
    }
    SUBCASE("unknown keys carry the line number") {
        try {
            parse_config("scenario=front_formula\nbogus=1\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("config:2") != std::string::npos);
        }
    }
    SUBCASE("t_values list") {
        const ScenarioConfig c =
            parse_config("scenario=parallel_sweep\nfamily=bumpy\nt_values=-1.15,-1.3,-1.6\n");
        REQUIRE(c.t_values.size() == 3);
        CHECK(c.t_values[1] == doctest::Approx(-1.3));
    }
}

TEST_CASE("scenario runs and report shape") {
    ScenarioConfig c = parse_config("scenario=front_formula\nfamily=sphere\ngrid=64\n");
    c.out_dir = "/tmp/frontindex_test_out";
    const RunReport r = run_scenario(c);
    REQUIRE(r.formulas.size() == 1);
    CHECK(r.formulas[0].lhs == 2);
    CHECK(r.formulas[0].residual == 0);
    CHECK(r.clean());

    const std::string js = report_to_json(r);
    CHECK(js.find("\"schema\": 1") != std::string::npos);
    CHECK(js.find("\"lhs\": 2") != std::string::npos);
    // integer fields stay integers in the serialization
    CHECK(js.find("\"lhs\": 2.0") == std::string::npos);
    CHECK(js.find("\"residual\": 0") != std::string::npos);
}

TEST_CASE("determinism: identical config gives byte-identical reports") {
    ScenarioConfig c =
        parse_config("scenario=morin_map\nmap=torus_fold\nfold_amplitude=1.5\ngrid=64\n");
    const RunReport r1 = run_scenario(c);
    const RunReport r2 = run_scenario(c);
    CHECK(report_to_json(r1, false) == report_to_json(r2, false));
}

TEST_CASE("classify_patch scenario reports the origin A3") {
    ScenarioConfig c = parse_config("scenario=classify_patch\ngrid=64\n");
    const RunReport r = run_scenario(c);
    REQUIRE(r.classifications.size() == 2);
    CHECK(r.classifications[0].verdict == "A3");
    CHECK(r.classifications[0].sign == 1);
    CHECK(r.classifications[1].verdict == "A2");
    REQUIRE(r.a3_points.size() == 1);
    CHECK(r.a3_points[0].sign == 1);
}

TEST_CASE("poincare-hopf scenario on the torus") {
    ScenarioConfig c =
        parse_config("scenario=poincare_hopf\nfield=random_trig\ntrials=5\nseed=3\n");
    const RunReport r = run_scenario(c);
    REQUIRE(r.ph_trials.size() == 5);
    for (const auto& t : r.ph_trials) {
        CHECK(t.index_sum == 0);
        CHECK(t.windings_match);
    }
    CHECK(r.clean());
}

TEST_CASE("environment overrides") {
    ScenarioConfig c = parse_config("scenario=front_formula\nfamily=sphere\ngrid=256\n");
    setenv("FRONTINDEX_GRID", "96", 1);
    setenv("FRONTINDEX_EPS_RANK", "1e-7", 1);
    apply_env_overrides(c);
    unsetenv("FRONTINDEX_GRID");
    unsetenv("FRONTINDEX_EPS_RANK");
    CHECK(c.grid == 96);
    CHECK(c.eps_rank == doctest::Approx(1e-7));
}

TEST_CASE("svg emission") {
    ScenarioConfig c = parse_config(
        "scenario=blaschke\nfamily=rotational_gamma\nepsilon=0.2125\ngrid=64\nplots=1\n");
    c.out_dir = "/tmp/frontindex_test_svg";
    const RunReport r = run_scenario(c);
    CHECK(r.clean());
    REQUIRE(r.artifacts.size() == 3);
    for (const std::string& name : r.artifacts) {
        std::ifstream in(c.out_dir + "/" + name);
        REQUIRE(in.good());
        std::string first;
        std::getline(in, first);
        CHECK(first.find("<?xml") == 0);
    }
}

} // TEST_SUITE
