// SPDX-License-Identifier: Apache-2.0
#include "frontindex/scenario.hpp"

#include "frontindex/svg.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>

namespace frontindex {

namespace {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Regular: return "Regular";
        case Verdict::A2: return "A2";
        case Verdict::A3: return "A3";
        default: return "Degenerate";
    }
}

void fill_strata_summary(RunReport& report, const StrataReport& strata) {
    report.has_strata = true;
    report.curve_count = static_cast<int>(strata.curves.size());
    report.chi_plus = strata.regions.chi_plus;
    report.chi_minus = strata.regions.chi_minus;
    for (const RegionComponent& c : strata.regions.components)
        (c.sign > 0 ? report.region_components_plus : report.region_components_minus) += 1;
    report.a3_points = strata.a3;
    for (const SingularCurve& c : strata.curves) {
        RunReport::CurveSummary s;
        s.id = c.component_id;
        s.closed = c.closed;
        s.points = static_cast<int>(c.points.size());
        s.winding_u = c.winding_u;
        s.winding_v = c.winding_v;
        for (const SignedA3Point& p : strata.a3)
            if (p.component_id == c.component_id) ++s.a3_count;
        report.curves.push_back(s);
    }
}

ToleranceModel tolerance_model(const ScenarioConfig& c) {
    ToleranceModel m;
    m.sing_rel = c.eps_sing_rel;
    m.dot_rel = c.eps_dot_rel;
    m.ddot_rel = c.eps_ddot_rel;
    m.rank_abs = c.eps_rank;
    return m;
}

std::string out_path(const ScenarioConfig& c, const std::string& name) {
    std::filesystem::create_directories(c.out_dir);
    return (std::filesystem::path(c.out_dir) / name).string();
}

// profile of a rotational front along the meridian u = 0: (axis, radial)
std::vector<Vec2> meridian_profile(const FrontField& front, int samples) {
    std::vector<Vec2> out;
    const SurfaceDomain& d = front.domain();
    for (int k = 0; k <= samples; ++k) {
        const double v = d.v_min + 1e-4 + (d.v_range() - 2e-4) * k / samples;
        const FrontJet fj = front.eval({0.0, v}, 0);
        out.push_back({fj.f.x.value(), std::hypot(fj.f.y.value(), fj.f.z.value())});
    }
    return out;
}

void emit_strata_svg(RunReport& report, const ScenarioConfig& config,
                     const SurfaceDomain& domain, const StrataReport& strata,
                     const std::string& name, const std::string& title) {
    const std::string path = out_path(config, name);
    write_text_file(path, svg_strata_plot(domain, strata.curves, strata.a3, title));
    report.artifacts.push_back(name);
}

ChartVectorField constant_u_field() {
    ChartVectorField f;
    f.domain = SurfaceDomain::torus();
    f.name = "constant_u";
    f.eval = [](Vec2, int order) {
        return std::make_pair(Jet2::constant(1.0, order), Jet2::constant(0.0, order));
    };
    return f;
}

ChartVectorField random_trig_field(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    struct Term {
        double a1, b1, a2, b2;
        int mu, mv;
    };
    std::vector<Term> terms;
    for (int mu = 0; mu <= 1; ++mu)
        for (int mv = 0; mv <= 1; ++mv)
            terms.push_back({dist(rng), dist(rng), dist(rng), dist(rng), mu + 1, mv});
    ChartVectorField f;
    f.domain = SurfaceDomain::torus();
    f.name = "random_trig";
    f.eval = [terms](Vec2 p, int order) {
        const Jet2 u = Jet2::variable_u(p.u, order);
        const Jet2 v = Jet2::variable_v(p.v, order);
        Jet2 y1 = Jet2::constant(0.0, order);
        Jet2 y2 = Jet2::constant(0.0, order);
        for (const auto& t : terms) {
            const Jet2 phase = static_cast<double>(t.mu) * u + static_cast<double>(t.mv) * v;
            y1 += t.a1 * sin(phase) + t.b1 * cos(phase + 0.31);
            y2 += t.a2 * sin(phase + 0.17) + t.b2 * cos(phase);
        }
        return std::make_pair(y1, y2);
    };
    return f;
}

AmbientSphereField height_gradient_field() {
    AmbientSphereField f;
    f.name = "sphere_height";
    f.eval = [](const JetVec3& p) {
        const int n = p.x.order();
        const Jet2 zero = Jet2::constant(0.0, n);
        const Jet2 one = Jet2::constant(1.0, n);
        return JetVec3{zero - p.z * p.x, zero - p.z * p.y, one - p.z * p.z};
    };
    return f;
}

MapPair configured_map(const ScenarioConfig& c) {
    if (c.map == "torus_fold") return torus_fold_map(c.fold_amplitude);
    if (c.map == "torus_cover") return torus_cover_map(c.cover_k);
    return sphere_identity_map();
}

FormulaReport formula_from_strata(const char* theorem, const StrataReport& strata) {
    FormulaReport f;
    f.theorem = theorem;
    f.chi_plus = strata.regions.chi_plus;
    f.chi_minus = strata.regions.chi_minus;
    f.a3_plus = strata.a3_plus;
    f.a3_minus = strata.a3_minus;
    f.curve_count = static_cast<int>(strata.curves.size());
    return f;
}

void check_degree_agreement(RunReport& report, const DegreeResult& d) {
    if (d.preimage_count && *d.preimage_count != d.rounded)
        report.warnings.push_back("quadrature and preimage degree disagree");
}

void run_front_formula(RunReport& report, const ScenarioConfig& config) {
    const auto front = make_family(config);
    const auto hom = make_front_homomorphism(front);
    hom->tolerance_model = tolerance_model(config);
    const StrataReport strata = run_strata(*hom, config.grid);
    fill_strata_summary(report, strata);

    FormulaReport f = formula_from_strata("FrontIndex", strata);
    f.degree = gauss_degree(*front, config.grid, config.oracle, config.seed);
    f.lhs = 2 * f.degree.rounded;
    f.rhs = f.chi_plus - f.chi_minus + f.a3_plus - f.a3_minus;
    f.residual = f.lhs - f.rhs;
    check_degree_agreement(report, f.degree);
    report.formulas.push_back(f);
    report.degrees.emplace_back("gauss_map", f.degree);
    if (config.plots)
        emit_strata_svg(report, config, front->domain(), strata, "strata.svg",
                        "singular strata: " + config.family);
}

void run_morin_map(RunReport& report, const ScenarioConfig& config) {
    const MapPair map = configured_map(config);
    const auto hom = make_map_homomorphism(map);
    hom->tolerance_model = tolerance_model(config);
    const StrataReport strata = run_strata(*hom, config.grid);
    fill_strata_summary(report, strata);

    FormulaReport f = formula_from_strata("QuineMorin", strata);
    f.degree = map_degree(map, config.grid, config.oracle, config.seed);
    f.lhs = f.degree.rounded * map.target.euler_char;
    f.rhs = f.chi_plus - f.chi_minus + f.a3_plus - f.a3_minus;
    f.residual = f.lhs - f.rhs;
    check_degree_agreement(report, f.degree);
    report.formulas.push_back(f);
    report.degrees.emplace_back("map", f.degree);
    if (config.plots)
        emit_strata_svg(report, config, map.source, strata, "strata.svg",
                        "singular strata: " + map.name);
}

void run_parallel_sweep(RunReport& report, const ScenarioConfig& config) {
    const auto base = make_family(config);
    for (const double t : config.t_values) {
        try {
            FormulaReport f = verify_parallel_formula(base, t, config.grid, config.oracle);
            f.theorem = "Parallel(t=" + std::to_string(t) + ")";
            report.formulas.push_back(f);
        } catch (const NotMorin& e) {
            report.warnings.push_back("t=" + std::to_string(t) + ": NotMorin: " + e.what());
            continue;
        }
        if (config.plots) {
            const auto hom = make_front_homomorphism(make_parallel(base, t));
            hom->tolerance_model = tolerance_model(config);
            const StrataReport strata = run_strata(*hom, config.grid);
            char name[64];
            std::snprintf(name, sizeof(name), "strata_t%+.4f.svg", t);
            emit_strata_svg(report, config, base->domain(), strata, name,
                            "parallel front strata, t=" + std::to_string(t));
        }
    }
    if (!report.formulas.empty())
        report.degrees.emplace_back("gauss_map", report.formulas.front().degree);
}

void run_blaschke(RunReport& report, const ScenarioConfig& config) {
    const auto base = make_family(config);
    const auto xi_front = make_blaschke_front(base);
    const auto hom = make_front_homomorphism(xi_front);
    hom->tolerance_model = tolerance_model(config);
    const StrataReport strata = run_strata(*hom, config.grid);
    fill_strata_summary(report, strata);

    FormulaReport f = formula_from_strata("BlaschkeB", strata);
    f.lhs = 2 * f.chi_minus;
    f.rhs = f.a3_plus - f.a3_minus;
    f.residual = f.lhs - f.rhs;
    f.degree = gauss_degree(*base, std::min(config.grid, 256), config.oracle, config.seed);
    check_degree_agreement(report, f.degree);
    report.formulas.push_back(f);
    report.degrees.emplace_back("base_gauss_map", f.degree);

    if (config.plots) {
        emit_strata_svg(report, config, base->domain(), strata, "strata.svg",
                        "Blaschke normal map strata: " + config.family);
        if (config.family == "rotational_gamma" || config.family == "sphere" ||
            config.family == "bumpy") {
            const std::string gamma_path = out_path(config, "profile_gamma.svg");
            write_text_file(gamma_path,
                            svg_profile_plot({{"surface profile", "#1565c0",
                                               meridian_profile(*base, 400)}},
                                             "generating profile curve"));
            report.artifacts.push_back("profile_gamma.svg");

            const std::string xi_path = out_path(config, "profile_xi.svg");
            write_text_file(xi_path,
                            svg_profile_plot({{"Blaschke normal profile", "#c62828",
                                               meridian_profile(*xi_front, 400)}},
                                             "profile curve of the Blaschke normal map"));
            report.artifacts.push_back("profile_xi.svg");
        }
    }
}

void run_poincare_hopf(RunReport& report, const ScenarioConfig& config) {
    const int expected_torus = 0;
    if (config.field == "constant_u") {
        const VectorFieldZeroReport r = poincare_hopf(constant_u_field(), config.oracle);
        report.ph_trials.push_back({"constant_u", 0, static_cast<int>(r.zeros.size()),
                                    r.index_sum, expected_torus, true});
    } else if (config.field == "sphere_height") {
        const VectorFieldZeroReport r = poincare_hopf_sphere(height_gradient_field(), true);
        bool match = true;
        for (const VectorFieldZero& z : r.zeros) match = match && z.winding == z.index;
        report.ph_trials.push_back(
            {"sphere_height", 0, static_cast<int>(r.zeros.size()), r.index_sum, 2, match});
    } else {
        int done = 0;
        std::uint64_t seed = config.seed;
        int rerolls = 0;
        while (done < config.trials && rerolls < 4 * config.trials) {
            VectorFieldZeroReport r;
            try {
                r = poincare_hopf(random_trig_field(seed), true);
            } catch (const NonGenericZero&) {
                ++seed;
                ++rerolls;
                continue;
            }
            bool match = true;
            for (const VectorFieldZero& z : r.zeros) match = match && z.winding == z.index;
            report.ph_trials.push_back({"random_trig", seed, static_cast<int>(r.zeros.size()),
                                        r.index_sum, expected_torus, match});
            ++seed;
            ++done;
        }
        if (done < config.trials)
            report.warnings.push_back("random_trig: too many non-generic draws");
    }
}

void run_classify_patch(RunReport& report, const ScenarioConfig& config) {
    const auto patch = make_swallowtail_patch();
    const auto hom = make_front_homomorphism(patch);
    hom->tolerance_model = tolerance_model(config);

    for (const Vec2 p : {Vec2{0.0, 0.0}, Vec2{0.1, -0.06}}) {
        const ClassificationResult r = classify_point(*hom, p);
        report.classifications.push_back({p, verdict_name(r.verdict), r.sign, r.lambda,
                                          r.lambda_dot, r.lambda_ddot, r.rank_det});
        if (r.verdict == Verdict::Degenerate)
            report.warnings.push_back("Degenerate verdict at u=" + std::to_string(p.u) +
                                      " v=" + std::to_string(p.v));
    }

    StrataReport strata;
    strata.curves = trace_singular_set(*hom, config.grid);
    for (const SingularCurve& c : strata.curves) {
        const auto pts = locate_a3(c, *hom);
        strata.a3.insert(strata.a3.end(), pts.begin(), pts.end());
    }
    for (const SignedA3Point& p : strata.a3)
        (p.sign > 0 ? strata.a3_plus : strata.a3_minus) += 1;

    report.has_strata = true;
    report.curve_count = static_cast<int>(strata.curves.size());
    report.a3_points = strata.a3;
    for (const SingularCurve& c : strata.curves) {
        RunReport::CurveSummary s;
        s.id = c.component_id;
        s.closed = c.closed;
        s.points = static_cast<int>(c.points.size());
        for (const SignedA3Point& p : strata.a3)
            if (p.component_id == c.component_id) ++s.a3_count;
        report.curves.push_back(s);
    }
    if (config.plots)
        emit_strata_svg(report, config, patch->domain(), strata, "strata.svg",
                        "swallowtail patch strata");
}

} // namespace

std::shared_ptr<const FrontField> make_family(const ScenarioConfig& c) {
    if (c.family == "sphere") return make_sphere(c.radius);
    if (c.family == "torus") return make_torus(c.torus_R, c.torus_r);
    if (c.family == "bumpy") return make_bumpy(c.seed, c.bump_amplitude, c.pole_cap);
    if (c.family == "rotational_gamma") return make_rotational_gamma(c.epsilon, c.pole_cap);
    if (c.family == "swallowtail_patch") return make_swallowtail_patch();
    throw RangeError("unknown family: " + c.family);
}

RunReport run_scenario(const ScenarioConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.config = config;
    try {
        switch (config.kind) {
            case ScenarioKind::FrontFormula: run_front_formula(report, config); break;
            case ScenarioKind::MorinMap: run_morin_map(report, config); break;
            case ScenarioKind::ParallelSweep: run_parallel_sweep(report, config); break;
            case ScenarioKind::Blaschke: run_blaschke(report, config); break;
            case ScenarioKind::PoincareHopf: run_poincare_hopf(report, config); break;
            case ScenarioKind::ClassifyPatch: run_classify_patch(report, config); break;
        }
    } catch (const ParseError&) {
        throw;
    } catch (const RangeError&) {
        throw;
    } catch (const Error& e) {
        report.warnings.push_back(std::string("error: ") + e.what());
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace frontindex
