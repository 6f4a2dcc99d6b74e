// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every integer identity the tool is built to verify
// at its stated tolerance and prints one pass/fail line per criterion.

#include "frontindex/scenario.hpp"
#include "frontindex/svg.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace frontindex;

namespace {

int g_failures = 0;

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)) {}

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            notes_.push_back(what);
        }
    }

    template <typename T>
    void equals(const T& got, const T& expected, const std::string& what) {
        if (!(got == expected)) {
            std::ostringstream ss;
            ss << what << ": got " << got << ", expected " << expected;
            pass_ = false;
            notes_.push_back(ss.str());
        }
    }

    void finish(double seconds) {
        std::printf("[%s] %s (%.1fs)\n", pass_ ? "PASS" : "FAIL", name_.c_str(), seconds);
        for (const std::string& n : notes_) std::printf("       - %s\n", n.c_str());
        if (!pass_) ++g_failures;
    }

    bool passing() const { return pass_; }

private:
    std::string name_;
    bool pass_ = true;
    std::vector<std::string> notes_;
};

void run_criterion(const std::string& name, const std::function<void(Criterion&)>& body) {
    Criterion c(name);
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.require(false, std::string("exception: ") + e.what());
    }
    c.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

double st_lambda_dot_oracle(double u) {
    return 24.0 * u * std::sqrt(1.0 + u * u + u * u * u * u);
}

// randomized synthetic torus homomorphism with wavy singular circles
std::shared_ptr<HomomorphismField> wavy_field(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.15, 0.45);
    std::uniform_real_distribution<double> ph(0.0, 6.28);
    const double a = amp(rng), b = amp(rng), p1 = ph(rng), p2 = ph(rng);
    return make_synthetic_homomorphism(
        SurfaceDomain::torus(), "wavy_" + std::to_string(seed), [=](Vec2 p, int order) {
            const Jet2 u = Jet2::variable_u(p.u, order);
            const Jet2 v = Jet2::variable_v(p.v, order);
            const Jet2 one = Jet2::constant(1.0, order);
            const Jet2 zero = Jet2::constant(0.0, order);
            return std::array<Jet2, 4>{one, a * cos(u + p1), zero,
                                       sin(v) + b * sin(u + p2) * cos(v)};
        });
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

} // namespace

int main() {
    std::filesystem::create_directories("acceptance_out");

    // 1. sphere sanity: 2 deg(nu) = chi(M+) with residual 0, raw degree
    //    within 1e-6 of 1 at a 256 grid, under 5 seconds
    run_criterion("1 sphere sanity (front formula)", [](Criterion& c) {
        const auto start = std::chrono::steady_clock::now();
        const FormulaReport r = verify_front_formula(make_sphere(1.0), 256);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.equals(r.lhs, 2L, "lhs");
        c.equals(r.chi_plus, 2, "chi(M+)");
        c.equals(r.chi_minus, 0, "chi(M-)");
        c.equals(r.residual, 0L, "residual");
        c.require(std::abs(r.degree.raw - 1.0) < 1e-6,
                  "raw degree within 1e-6 of 1, got " + std::to_string(r.degree.raw));
        c.require(secs < 5.0, "runtime under 5 s, got " + std::to_string(secs));
    });

    // 2. swallowtail normal form: A3(+) with cascade (0, 0, 24) at the
    //    origin, A2 with the symbolic lambda_dot at (0.1, -0.06)
    run_criterion("2 swallowtail normal form", [](Criterion& c) {
        const auto hom = make_front_homomorphism(make_swallowtail_patch());
        const ClassificationResult origin = classify_point(*hom, {0.0, 0.0});
        c.require(origin.verdict == Verdict::A3, "origin verdict is A3");
        c.equals(origin.sign, 1, "origin sign");
        c.require(std::abs(origin.lambda - 0.0) < 1e-8, "cascade lambda = 0 to 1e-8");
        c.require(std::abs(origin.lambda_dot - 0.0) < 1e-8, "cascade lambda_dot = 0 to 1e-8");
        c.require(std::abs(origin.lambda_ddot - 24.0) < 1e-8,
                  "cascade lambda_ddot = 24 to 1e-8, got " +
                      std::to_string(origin.lambda_ddot));

        const ClassificationResult fold = classify_point(*hom, {0.1, -0.06});
        c.require(fold.verdict == Verdict::A2, "(0.1,-0.06) verdict is A2");
        const double oracle = st_lambda_dot_oracle(0.1); // 24 u sqrt(1+u^2+u^4) = 2.41209...
        c.require(std::abs(std::abs(fold.lambda_dot) - oracle) < 1e-6,
                  "lambda_dot matches the symbolic oracle to 1e-6, got " +
                      std::to_string(fold.lambda_dot) + " vs " + std::to_string(oracle));
    });

    // 3. the eps = 17/80 Blaschke normal map: no swallowtails, M- a single
    //    annulus, residual 0, profile SVG emitted, under 60 s at a 512 grid
    run_criterion("3 Blaschke normal map at eps = 17/80", [](Criterion& c) {
        const auto start = std::chrono::steady_clock::now();
        ScenarioConfig config = parse_config(
            "scenario=blaschke\nfamily=rotational_gamma\nepsilon=0.2125\ngrid=512\nplots=1\n");
        config.out_dir = "acceptance_out/blaschke";
        const RunReport r = run_scenario(config);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        c.require(r.warnings.empty(), "no warnings");
        c.equals(r.formulas.size(), size_t{1}, "one formula report");
        if (!r.formulas.empty()) {
            c.equals(r.formulas[0].a3_plus, 0, "a3_plus");
            c.equals(r.formulas[0].a3_minus, 0, "a3_minus");
            c.equals(r.formulas[0].chi_minus, 0, "chi(M-)");
            c.equals(r.formulas[0].residual, 0L, "residual");
        }
        c.equals(r.region_components_minus, 1, "M- is a single component");
        bool has_profile = false;
        for (const std::string& a : r.artifacts) has_profile |= a == "profile_xi.svg";
        c.require(has_profile, "profile_xi.svg emitted");
        c.require(std::filesystem::exists("acceptance_out/blaschke/profile_xi.svg"),
                  "profile SVG exists on disk");
        c.require(secs < 60.0, "runtime under 60 s, got " + std::to_string(secs));
    });

    // 4. parallel-surface theorem on the bumpy convex body at three
    //    singular-regime offsets: residual 0, lambda_t K_t = 1 to 1e-8 on the
    //    regular mask, degree 1 by quadrature and preimage count, < 90 s each
    run_criterion("4 parallel fronts of the bumpy body", [](Criterion& c) {
        const auto bumpy = make_bumpy(1, 0.04);
        for (const double t : {-1.15, -1.3, -1.6}) {
            const auto start = std::chrono::steady_clock::now();
            const FormulaReport r = verify_parallel_formula(bumpy, t, 256, true);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
            const std::string tag = "t=" + std::to_string(t) + ": ";
            c.equals(r.residual, 0L, tag + "residual");
            c.require(r.curve_count > 0, tag + "nonempty singular set");
            c.equals(r.degree.rounded, 1L, tag + "degree by quadrature");
            c.require(r.degree.preimage_count.has_value(), tag + "preimage oracle ran");
            if (r.degree.preimage_count)
                c.equals(*r.degree.preimage_count, 1L, tag + "degree by preimage count");
            const double err = parallel_identity_error(*bumpy, t, 96);
            c.require(err < 1e-8,
                      tag + "lambda_t*K_t = 1 within 1e-8, err " + std::to_string(err));
            c.require(secs < 90.0, tag + "runtime under 90 s");
        }
    });

    // 5. generalized Quine formula on torus self-maps
    run_criterion("5 Quine formula for torus maps", [](Criterion& c) {
        const FormulaReport fold = verify_morin_map_formula(torus_fold_map(1.5), 256);
        c.equals(fold.residual, 0L, "fold residual");
        c.equals(fold.curve_count, 2, "two fold circles");
        c.equals(fold.a3_plus + fold.a3_minus, 0, "zero cusps");

        const FormulaReport cover = verify_morin_map_formula(torus_cover_map(2), 256);
        c.equals(cover.residual, 0L, "covering residual");
        c.equals(cover.curve_count, 0, "covering has empty strata");
        c.equals(cover.degree.rounded, 2L, "covering degree");
    });

    // 6a. eta sign-flip invariance of verdicts and A3 signs
    run_criterion("6a eta flip invariance (20 trials)", [](Criterion& c) {
        const auto hom = make_front_homomorphism(make_swallowtail_patch());
        std::mt19937_64 rng(101);
        std::uniform_real_distribution<double> dist(-0.35, 0.35);
        for (int k = 0; k < 20; ++k) {
            const double u = k == 0 ? 0.0 : dist(rng);
            const Vec2 p{u, -6.0 * u * u};
            const auto plus = classify_point(*hom, p, hom->tolerances(), std::nullopt,
                                             Vec2{1.0, 0.0});
            const auto minus = classify_point(*hom, p, hom->tolerances(), std::nullopt,
                                              Vec2{-1.0, 0.0});
            c.require(plus.verdict == minus.verdict, "verdict invariant under eta flip");
            c.equals(plus.sign, minus.sign, "A3 sign invariant under eta flip");
        }
    });

    // 6b. phi-function scaling invariance of all verdicts
    run_criterion("6b phi-function scaling invariance (20 trials)", [](Criterion& c) {
        const auto base = make_front_homomorphism(make_swallowtail_patch());
        std::mt19937_64 rng(102);
        std::uniform_real_distribution<double> amp(-0.9, 0.9);
        std::uniform_real_distribution<double> pos(-0.3, 0.3);
        for (int k = 0; k < 20; ++k) {
            const double a = amp(rng), b = amp(rng);
            const auto scaled = make_scaled_homomorphism(base, [a, b](Vec2 p, int order) {
                return a * sin(Jet2::variable_u(p.u, order) + 0.4) +
                       b * cos(Jet2::variable_v(p.v, order));
            });
            const auto origin = classify_point(*scaled, {0.0, 0.0});
            c.require(origin.verdict == Verdict::A3 && origin.sign == 1,
                      "A3(+) at the origin under scaling");
            const double u = pos(rng);
            const auto on_curve = classify_point(*scaled, {u, -6.0 * u * u});
            const auto expect = std::abs(u) > 1e-3 ? Verdict::A2 : Verdict::A3;
            c.require(on_curve.verdict == expect, "on-curve verdict under scaling");
            c.require(classify_point(*scaled, {0.4, 0.6}).verdict == Verdict::Regular,
                      "regular point stays regular under scaling");
        }
    });

    // 6c+6d. chi(M+) + chi(M-) = chi(M) and even A3 counts per closed
    //        component on randomized wavy fields
    run_criterion("6c/6d chi additivity and even A3 counts (20 trials)", [](Criterion& c) {
        int done = 0;
        for (std::uint64_t seed = 1; seed <= 60 && done < 20; ++seed) {
            StrataReport strata;
            const auto field = wavy_field(seed);
            try {
                strata = run_strata(*field, 96);
            } catch (const Error&) {
                continue; // non-generic draw; redraw
            }
            c.equals(strata.regions.chi_plus + strata.regions.chi_minus, 0,
                     "chi(M+) + chi(M-) = chi(T^2) for seed " + std::to_string(seed));
            for (const SingularCurve& curve : strata.curves) {
                if (!curve.closed) continue;
                int count = 0;
                for (const SignedA3Point& p : strata.a3)
                    if (p.component_id == curve.component_id) ++count;
                c.require(count % 2 == 0, "even A3 count on a closed component, seed " +
                                              std::to_string(seed));
            }
            ++done;
        }
        c.equals(done, 20, "20 generic draws completed");
    });

    // 6e. Poincare-Hopf: index sum = chi with winding-number agreement
    run_criterion("6e Poincare-Hopf with winding oracle (20 trials)", [](Criterion& c) {
        int done = 0;
        for (std::uint64_t seed = 1; seed <= 60 && done < 20; ++seed) {
            VectorFieldZeroReport r;
            try {
                r = poincare_hopf(random_trig_field(seed), true);
            } catch (const NonGenericZero&) {
                continue;
            }
            c.equals(r.index_sum, 0, "index sum = chi(T^2) for seed " + std::to_string(seed));
            for (const VectorFieldZero& z : r.zeros)
                c.equals(z.winding, z.index, "winding matches sgn(J)");
            ++done;
        }
        c.equals(done, 20, "20 generic fields completed");

        // plus the sphere: gradient of the height function
        AmbientSphereField grad;
        grad.name = "height";
        grad.eval = [](const JetVec3& p) {
            const int n = p.x.order();
            return JetVec3{Jet2::constant(0.0, n) - p.z * p.x,
                           Jet2::constant(0.0, n) - p.z * p.y,
                           Jet2::constant(1.0, n) - p.z * p.z};
        };
        const VectorFieldZeroReport r = poincare_hopf_sphere(grad, true);
        c.equals(r.index_sum, 2, "sphere height gradient sums to chi(S^2)");
        c.equals(r.zeros.size(), size_t{2}, "two zeros");
    });

    // 6f. Blaschke equivariance under unimodular maps
    run_criterion("6f Blaschke unimodular equivariance (20 trials)", [](Criterion& c) {
        const auto body = make_bumpy(7, 0.03);
        std::mt19937_64 rng(106);
        std::uniform_real_distribution<double> shear(-0.4, 0.4);
        std::uniform_real_distribution<double> du(0.0, 6.28);
        std::uniform_real_distribution<double> dv(-1.1, 1.1);
        for (int k = 0; k < 20; ++k) {
            const double U[3][3] = {{1, shear(rng), shear(rng)},
                                    {0, 1, shear(rng)},
                                    {0, 0, 1}};
            const double L[3][3] = {{1, 0, 0},
                                    {shear(rng), 1, 0},
                                    {shear(rng), shear(rng), 1}};
            double A[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    A[i][j] = 0.0;
                    for (int m = 0; m < 3; ++m) A[i][j] += L[i][m] * U[m][j];
                }
            const auto image = make_linear_image(body, A);
            const Vec2 p{du(rng), dv(rng)};
            const AffineData a0 = blaschke_normal(*body, p);
            const AffineData a1 = blaschke_normal(*image, p);
            const Vec3 xi{a0.xi.x.value(), a0.xi.y.value(), a0.xi.z.value()};
            const Vec3 expect{A[0][0] * xi.x + A[0][1] * xi.y + A[0][2] * xi.z,
                              A[1][0] * xi.x + A[1][1] * xi.y + A[1][2] * xi.z,
                              A[2][0] * xi.x + A[2][1] * xi.y + A[2][2] * xi.z};
            const Vec3 got{a1.xi.x.value(), a1.xi.y.value(), a1.xi.z.value()};
            c.require(norm(got - expect) < 1e-8 * (1.0 + norm(expect)),
                      "A xi = xi of the image to 1e-8");
        }
    });

    // 6g. 2 deg(nu) = chi(M) for immersed catalog surfaces
    run_criterion("6g immersion degree identity (20+ surfaces)", [](Criterion& c) {
        c.equals(verify_bleecker_wilson(make_sphere(1.0), 128).residual, 0L, "sphere");
        c.equals(verify_bleecker_wilson(make_sphere(2.5), 128).residual, 0L, "big sphere");
        c.equals(verify_bleecker_wilson(make_torus(2.0, 1.0), 128).residual, 0L, "torus");
        c.equals(verify_bleecker_wilson(make_torus(3.0, 0.5), 128).residual, 0L, "thin torus");
        c.equals(verify_bleecker_wilson(make_rotational_gamma(17.0 / 80.0), 128).residual, 0L,
                 "rotational body");
        for (std::uint64_t seed = 1; seed <= 20; ++seed)
            c.equals(verify_bleecker_wilson(make_bumpy(seed, 0.04), 128).residual, 0L,
                     "bumpy seed " + std::to_string(seed));
    });

    // 6h. grid doubling changes no integer output
    run_criterion("6h grid-doubling stability (20 trials)", [](Criterion& c) {
        int done = 0;
        for (std::uint64_t seed = 1; seed <= 60 && done < 20; ++seed) {
            const auto field = wavy_field(seed);
            StrataReport lo, hi;
            try {
                lo = run_strata(*field, 64);
                hi = run_strata(*field, 128);
            } catch (const Error&) {
                continue;
            }
            c.equals(lo.curves.size(), hi.curves.size(), "curve count stable");
            c.equals(lo.regions.chi_plus, hi.regions.chi_plus, "chi+ stable");
            c.equals(lo.regions.chi_minus, hi.regions.chi_minus, "chi- stable");
            c.equals(lo.a3_plus, hi.a3_plus, "a3+ stable");
            c.equals(lo.a3_minus, hi.a3_minus, "a3- stable");
            c.equals(lo.regions.components.size(), hi.regions.components.size(),
                     "component count stable");
            ++done;
        }
        c.equals(done, 20, "20 generic draws completed");

        // the flagship scenarios double cleanly as well
        const FormulaReport b1 =
            verify_blaschke_formula(make_rotational_gamma(17.0 / 80.0), 128);
        const FormulaReport b2 =
            verify_blaschke_formula(make_rotational_gamma(17.0 / 80.0), 256);
        c.equals(b1.curve_count, b2.curve_count, "blaschke curves stable");
        c.equals(b1.chi_minus, b2.chi_minus, "blaschke chi- stable");

        const FormulaReport p1 = verify_parallel_formula(make_bumpy(1, 0.04), -1.3, 128);
        const FormulaReport p2 = verify_parallel_formula(make_bumpy(1, 0.04), -1.3, 256);
        c.equals(p1.curve_count, p2.curve_count, "parallel curves stable");
        c.equals(p1.a3_plus, p2.a3_plus, "parallel a3+ stable");
        c.equals(p1.a3_minus, p2.a3_minus, "parallel a3- stable");
        c.equals(p1.chi_plus, p2.chi_plus, "parallel chi+ stable");
    });

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ACCEPTANCE OK" : "ACCEPTANCE FAILED",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
