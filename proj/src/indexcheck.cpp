// SPDX-License-Identifier: Apache-2.0
#include "frontindex/indexcheck.hpp"

#include "frontindex/parallel_for.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace frontindex {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_area_form(const SurfaceDomain& d, double v) {
    return d.kind == DomainKind::SphereChart ? std::cos(v) : 1.0;
}

double domain_volume(const SurfaceDomain& d) {
    return d.kind == DomainKind::SphereChart ? 4.0 * kPi : d.u_range() * d.v_range();
}

// midpoint sum of fn over the full chart rectangle at resolution n
double midpoint_sum(const SurfaceDomain& dom, int n,
                    const std::function<double(Vec2)>& fn) {
    const double du = dom.u_range() / n;
    const double dv = dom.v_range() / n;
    std::vector<double> rows(n, 0.0);
    parallel_for(n, [&](long j) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const Vec2 p{dom.u_min + (i + 0.5) * du, dom.v_min + (j + 0.5) * dv};
            acc += fn(p);
        }
        rows[j] = acc;
    });
    double total = 0.0;
    for (double r : rows) total += r;
    return total * du * dv;
}

DegreeResult degree_from_quadrature(const SurfaceDomain& dom, int grid,
                                    const std::function<double(Vec2)>& form) {
    const double volume = domain_volume(dom);
    const int coarse = std::max(8, grid / 2);
    const double m_fine = midpoint_sum(dom, grid, form) / volume;
    const double m_coarse = midpoint_sum(dom, coarse, form) / volume;

    DegreeResult r;
    r.raw_midpoint = m_fine;
    r.raw = (4.0 * m_fine - m_coarse) / 3.0; // one Richardson refinement
    r.rounded = std::lround(r.raw);
    r.residual = std::abs(r.raw - static_cast<double>(r.rounded));
    if (r.residual >= 1e-3)
        throw NonIntegerDegree("degree quadrature residual " + std::to_string(r.residual) +
                               " after Richardson refinement");
    return r;
}

struct NewtonZero {
    Vec2 p;
    double jac_det;
};

// Newton iteration on a 2-vector chart function with jet Jacobians,
// deduplicated over seeds; fn must return jets of order >= 1.
std::vector<NewtonZero> newton_zeros(const SurfaceDomain& dom,
                                     const std::function<std::pair<Jet2, Jet2>(Vec2)>& fn,
                                     double value_scale, double v_margin = 0.0) {
    const int seeds = 64;
    const double dedup = 1e-6 * dom.diameter();
    const double tol = 1e-12 * std::max(1.0, value_scale);
    std::vector<NewtonZero> zeros;

    const double v_lo = dom.v_min + v_margin;
    const double v_hi = dom.v_max - v_margin;
    std::vector<std::optional<NewtonZero>> found(
        static_cast<size_t>(seeds) * seeds);
    parallel_for(static_cast<long>(seeds) * seeds, [&](long idx) {
        const int i = static_cast<int>(idx % seeds);
        const int j = static_cast<int>(idx / seeds);
        Vec2 p{dom.u_min + dom.u_range() * (i + 0.5) / seeds,
               v_lo + (v_hi - v_lo) * (j + 0.5) / seeds};
        for (int it = 0; it < 40; ++it) {
            const auto [g1, g2] = fn(p);
            const double f1 = g1.value(), f2 = g2.value();
            const double a = g1.coeff(1, 0), b = g1.coeff(0, 1);
            const double c = g2.coeff(1, 0), d = g2.coeff(0, 1);
            const double det = a * d - b * c;
            if (std::abs(det) < 1e-14 * std::max(1.0, value_scale * value_scale)) return;
            const double su = (d * f1 - b * f2) / det;
            const double sv = (a * f2 - c * f1) / det;
            p = dom.canonical({p.u - su, p.v - sv});
            if (p.v < v_lo || p.v > v_hi) return;
            if (std::hypot(f1, f2) < tol && std::hypot(su, sv) < 1e-12 * dom.diameter()) {
                found[idx] = NewtonZero{p, det};
                return;
            }
        }
    });

    for (const auto& z : found) {
        if (!z) continue;
        bool dup = false;
        for (const NewtonZero& seen : zeros) {
            Vec2 d = z->p - seen.p;
            if (dom.u_periodic) d.u = wrapped_diff(z->p.u, seen.p.u, dom.u_range());
            if (dom.v_periodic) d.v = wrapped_diff(z->p.v, seen.p.v, dom.v_range());
            if (norm(d) < dedup) {
                dup = true;
                break;
            }
        }
        if (!dup) zeros.push_back(*z);
    }
    return zeros;
}

} // namespace

DegreeResult gauss_degree(const FrontField& front, int grid, bool preimage_oracle,
                          std::uint64_t seed) {
    auto form = [&front](Vec2 p) {
        const FrontJet fj = front.eval(p, 1);
        const JetVec3& nu = fj.nu;
        const Vec3 nu0{nu.x.value(), nu.y.value(), nu.z.value()};
        const Vec3 nuu{nu.x.coeff(1, 0), nu.y.coeff(1, 0), nu.z.coeff(1, 0)};
        const Vec3 nuv{nu.x.coeff(0, 1), nu.y.coeff(0, 1), nu.z.coeff(0, 1)};
        return det3(nuu, nuv, nu0);
    };
    DegreeResult r = degree_from_quadrature(front.domain(), grid, form);

    if (preimage_oracle) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (int attempt = 0; attempt < 8; ++attempt) {
            Vec3 q{unit(rng), unit(rng), unit(rng)};
            const double n = norm(q);
            if (n < 1e-3) continue;
            q = q * (1.0 / n);
            // orthonormal frame (e1, e2, q)
            Vec3 h = std::abs(q.x) < 0.7 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
            const Vec3 e1 = normalized(cross(h, q));
            const Vec3 e2 = cross(q, e1);

            auto fn = [&](Vec2 p) {
                const FrontJet fj = front.eval(p, 1);
                const Jet2 g1 = fj.nu.x * e1.x + fj.nu.y * e1.y + fj.nu.z * e1.z;
                const Jet2 g2 = fj.nu.x * e2.x + fj.nu.y * e2.y + fj.nu.z * e2.z;
                return std::make_pair(g1, g2);
            };
            const std::vector<NewtonZero> zeros = newton_zeros(front.domain(), fn, 1.0);

            long count = 0;
            bool degenerate = false;
            for (const NewtonZero& z : zeros) {
                const FrontJet fj = front.eval(z.p, 1);
                const Vec3 nu0{fj.nu.x.value(), fj.nu.y.value(), fj.nu.z.value()};
                if (dot(nu0, q) < 0.0) continue; // antipodal solution of the frame system
                if (std::abs(z.jac_det) < 1e-8) {
                    degenerate = true;
                    break;
                }
                count += z.jac_det > 0.0 ? 1 : -1;
            }
            if (degenerate) continue; // q too close to a fold image; redraw
            r.preimage_count = count;
            break;
        }
        if (!r.preimage_count)
            throw NonGenericZero("gauss_degree: no regular value found for the preimage oracle");
    }
    return r;
}

DegreeResult map_degree(const MapPair& map, int grid, bool preimage_oracle,
                        std::uint64_t seed) {
    auto form = [&map](Vec2 p) {
        const auto [U, V] = map.eval(p, 1);
        const double det_j = U.coeff(1, 0) * V.coeff(0, 1) - U.coeff(0, 1) * V.coeff(1, 0);
        return det_j * sphere_area_form(map.target, V.value());
    };
    DegreeResult r = degree_from_quadrature(map.source, grid, form);

    if (preimage_oracle) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> pick(0.15, 0.85);
        const double margin = 0.05 * map.target.v_range();
        for (int attempt = 0; attempt < 8; ++attempt) {
            const Vec2 q{map.target.u_min + map.target.u_range() * pick(rng),
                         map.target.v_min + margin +
                             (map.target.v_range() - 2 * margin) * pick(rng)};
            auto fn = [&](Vec2 p) {
                auto [U, V] = map.eval(p, 1);
                Jet2 g1 = U - q.u;
                Jet2 g2 = V - q.v;
                if (map.target.u_periodic)
                    g1.set_coeff(0, 0, wrapped_diff(U.value(), q.u, map.target.u_range()));
                if (map.target.v_periodic)
                    g2.set_coeff(0, 0, wrapped_diff(V.value(), q.v, map.target.v_range()));
                return std::make_pair(g1, g2);
            };
            const std::vector<NewtonZero> zeros = newton_zeros(map.source, fn, 1.0);
            long count = 0;
            bool degenerate = false;
            for (const NewtonZero& z : zeros) {
                if (std::abs(z.jac_det) < 1e-8) {
                    degenerate = true;
                    break;
                }
                count += z.jac_det > 0.0 ? 1 : -1;
            }
            if (degenerate) continue;
            r.preimage_count = count;
            break;
        }
        if (!r.preimage_count)
            throw NonGenericZero("map_degree: no regular value found for the preimage oracle");
    }
    return r;
}

namespace {

int circulation_winding(const std::function<std::pair<double, double>(Vec2)>& values,
                        Vec2 center, double radius) {
    const int samples = 512;
    double total = 0.0;
    double prev_angle = 0.0;
    for (int k = 0; k <= samples; ++k) {
        const double th = 2.0 * kPi * k / samples;
        const Vec2 p{center.u + radius * std::cos(th), center.v + radius * std::sin(th)};
        const auto [y1, y2] = values(p);
        const double ang = std::atan2(y2, y1);
        if (k > 0) {
            double d = ang - prev_angle;
            while (d > kPi) d -= 2.0 * kPi;
            while (d < -kPi) d += 2.0 * kPi;
            total += d;
        }
        prev_angle = ang;
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

double field_scale_estimate(const ChartVectorField& field) {
    double m = 0.0;
    const SurfaceDomain& dom = field.domain;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            const Vec2 p{dom.u_min + dom.u_range() * (i + 0.5) / 16,
                         dom.v_min + dom.v_range() * (j + 0.5) / 16};
            const auto [y1, y2] = field.eval(p, 0);
            m = std::max(m, std::hypot(y1.value(), y2.value()));
        }
    return m;
}

} // namespace

VectorFieldZeroReport poincare_hopf(const ChartVectorField& field, bool winding_oracle) {
    const SurfaceDomain& dom = field.domain;
    const double scale = field_scale_estimate(field);
    auto fn = [&field](Vec2 p) { return field.eval(p, 1); };
    const std::vector<NewtonZero> zeros = newton_zeros(dom, fn, scale);

    VectorFieldZeroReport report;
    for (const NewtonZero& z : zeros) {
        if (std::abs(z.jac_det) < 1e-10 * std::max(1.0, scale * scale))
            throw NonGenericZero("poincare_hopf: singular Jacobian at a located zero");
        VectorFieldZero out;
        out.chart_point = z.p;
        out.index = z.jac_det > 0.0 ? 1 : -1;
        report.zeros.push_back(out);
    }
    if (winding_oracle) {
        for (VectorFieldZero& z : report.zeros) {
            double nearest = 0.05 * dom.diameter();
            for (const VectorFieldZero& other : report.zeros) {
                if (&other == &z) continue;
                Vec2 d = other.chart_point - z.chart_point;
                if (dom.u_periodic)
                    d.u = wrapped_diff(other.chart_point.u, z.chart_point.u, dom.u_range());
                if (dom.v_periodic)
                    d.v = wrapped_diff(other.chart_point.v, z.chart_point.v, dom.v_range());
                nearest = std::min(nearest, norm(d));
            }
            const double radius = 0.3 * nearest;
            auto values = [&](Vec2 p) {
                const auto [y1, y2] = field.eval(dom.canonical(p), 0);
                return std::make_pair(y1.value(), y2.value());
            };
            z.winding = circulation_winding(values, z.chart_point, radius);
        }
    }
    for (const VectorFieldZero& z : report.zeros) report.index_sum += z.index;
    return report;
}

namespace {

// inverse stereographic parametrizations covering the sphere minus one pole
JetVec3 stereo_point(const Jet2& x, const Jet2& y, bool from_south) {
    const Jet2 rho2 = x * x + y * y;
    const Jet2 denom = 1.0 + rho2;
    const Jet2 zc = (1.0 - rho2) / denom;
    JetVec3 p{2.0 * x / denom, 2.0 * y / denom, from_south ? zc : -zc};
    return p;
}

} // namespace

VectorFieldZeroReport poincare_hopf_sphere(const AmbientSphereField& field,
                                           bool winding_oracle) {
    VectorFieldZeroReport report;
    SurfaceDomain chart = SurfaceDomain::patch(-1.8, 1.8, -1.8, 1.8);

    struct ChartZero {
        VectorFieldZero z;
        bool from_south;
    };
    std::vector<ChartZero> all;

    for (bool from_south : {true, false}) {
        // pair the ambient field with the chart tangents; zeros and index
        // signs agree with the pushed-forward field because the Gram matrix
        // of the parametrization is positive definite
        auto fn = [&field, from_south](Vec2 q) {
            const Jet2 x = Jet2::variable_u(q.u, 2);
            const Jet2 y = Jet2::variable_v(q.v, 2);
            const JetVec3 p = stereo_point(x, y, from_south);
            const JetVec3 v = field.eval(p).truncated(1);
            const JetVec3 pu = p.du();
            const JetVec3 pv = p.dv();
            return std::make_pair(dot(v, pu), dot(v, pv));
        };
        const std::vector<NewtonZero> zeros = newton_zeros(chart, fn, 1.0);
        for (const NewtonZero& z : zeros) {
            // keep only zeros well inside this chart's hemisphere-plus band
            const Jet2 x = Jet2::variable_u(z.p.u, 0);
            const Jet2 y = Jet2::variable_v(z.p.v, 0);
            const JetVec3 pj = stereo_point(x, y, from_south);
            const Vec3 p{pj.x.value(), pj.y.value(), pj.z.value()};
            const double zc = from_south ? p.z : -p.z;
            if (zc < -0.5) continue;
            if (std::abs(z.jac_det) < 1e-10)
                throw NonGenericZero("poincare_hopf_sphere: singular Jacobian at a zero");
            VectorFieldZero out;
            out.chart_point = z.p;
            out.ambient_point = p;
            out.index = z.jac_det > 0.0 ? 1 : -1;
            if (winding_oracle) {
                auto values = [&](Vec2 q) {
                    const Jet2 qx = Jet2::variable_u(q.u, 1);
                    const Jet2 qy = Jet2::variable_v(q.v, 1);
                    const JetVec3 pp = stereo_point(qx, qy, from_south);
                    const JetVec3 vv = field.eval(pp).truncated(0);
                    return std::make_pair(dot(vv, pp.du()).value(), dot(vv, pp.dv()).value());
                };
                out.winding = circulation_winding(values, z.p, 0.02);
            }
            all.push_back({out, from_south});
        }
    }

    // dedup across the two charts by ambient position
    for (const ChartZero& cz : all) {
        bool dup = false;
        for (const VectorFieldZero& seen : report.zeros)
            if (norm(cz.z.ambient_point - seen.ambient_point) < 1e-6) dup = true;
        if (!dup) report.zeros.push_back(cz.z);
    }
    for (const VectorFieldZero& z : report.zeros) report.index_sum += z.index;
    return report;
}

namespace {

FormulaReport strata_formula(const char* theorem, const StrataReport& strata) {
    FormulaReport r;
    r.theorem = theorem;
    r.chi_plus = strata.regions.chi_plus;
    r.chi_minus = strata.regions.chi_minus;
    r.a3_plus = strata.a3_plus;
    r.a3_minus = strata.a3_minus;
    r.curve_count = static_cast<int>(strata.curves.size());
    return r;
}

StrataReport run_strata_as_morin(const HomomorphismField& field, int grid) {
    try {
        return run_strata(field, grid);
    } catch (const DegenerateA3& e) {
        throw NotMorin(std::string("degenerate singular point: ") + e.what());
    } catch (const ZeroAdjugate& e) {
        throw NotMorin(std::string("corank-2 singular point: ") + e.what());
    }
}

} // namespace

FormulaReport verify_front_formula(std::shared_ptr<const FrontField> front, int grid,
                                   bool oracle) {
    const auto hom = make_front_homomorphism(front);
    const StrataReport strata = run_strata_as_morin(*hom, grid);
    FormulaReport r = strata_formula("FrontIndex", strata);
    r.degree = gauss_degree(*front, grid, oracle);
    r.lhs = 2 * r.degree.rounded;
    r.rhs = r.chi_plus - r.chi_minus + r.a3_plus - r.a3_minus;
    r.residual = r.lhs - r.rhs;
    if (oracle && r.degree.preimage_count && *r.degree.preimage_count != r.degree.rounded)
        throw NonIntegerDegree("quadrature and preimage degree disagree");
    return r;
}

FormulaReport verify_morin_map_formula(const MapPair& map, int grid, bool oracle) {
    const auto hom = make_map_homomorphism(map);
    const StrataReport strata = run_strata_as_morin(*hom, grid);
    FormulaReport r = strata_formula("QuineMorin", strata);
    r.degree = map_degree(map, grid, oracle);
    r.lhs = r.degree.rounded * map.target.euler_char;
    r.rhs = r.chi_plus - r.chi_minus + r.a3_plus - r.a3_minus;
    r.residual = r.lhs - r.rhs;
    if (oracle && r.degree.preimage_count && *r.degree.preimage_count != r.degree.rounded)
        throw NonIntegerDegree("quadrature and preimage degree disagree");
    return r;
}

double parallel_identity_error(const FrontField& base, double t, int samples,
                               double mask_floor) {
    const SurfaceDomain& dom = base.domain();
    const double v_lo = dom.strata_v_min();
    const double v_hi = dom.strata_v_max();
    std::vector<double> errs(static_cast<size_t>(samples) * samples, 0.0);
    parallel_for(static_cast<long>(samples) * samples, [&](long idx) {
        const int i = static_cast<int>(idx % samples);
        const int j = static_cast<int>(idx / samples);
        const Vec2 p{dom.u_min + dom.u_range() * (i + 0.5) / samples,
                     v_lo + (v_hi - v_lo) * (j + 0.5) / samples};
        const FrontJet fj = base.eval(p, 1);
        const Vec3 fu{fj.f.x.coeff(1, 0), fj.f.y.coeff(1, 0), fj.f.z.coeff(1, 0)};
        const Vec3 fv{fj.f.x.coeff(0, 1), fj.f.y.coeff(0, 1), fj.f.z.coeff(0, 1)};
        const Vec3 nu{fj.nu.x.value(), fj.nu.y.value(), fj.nu.z.value()};
        const Vec3 nuu{fj.nu.x.coeff(1, 0), fj.nu.y.coeff(1, 0), fj.nu.z.coeff(1, 0)};
        const Vec3 nuv{fj.nu.x.coeff(0, 1), fj.nu.y.coeff(0, 1), fj.nu.z.coeff(0, 1)};

        const Vec3 ftu = fu + t * nuu;
        const Vec3 ftv = fv + t * nuv;
        const double E = dot(ftu, ftu), F = dot(ftu, ftv), G = dot(ftv, ftv);
        const double tr = E + G;
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * (E * G - F * F)));
        const double sigma_min = std::sqrt(std::max(0.0, 0.5 * (tr - disc)));
        if (sigma_min <= mask_floor) return; // singular-set neighborhood masked out

        const CurvatureData curv = gauss_kronecker(base, p);
        const double k_t_inv = (1.0 / curv.mu1 - t) * (1.0 / curv.mu2 - t);
        const double gauss_form = det3(nuu, nuv, nu);
        if (std::abs(gauss_form) < 1e-12) return;
        const double lambda_t = det3(ftu, ftv, nu) / gauss_form;
        errs[idx] = std::abs(lambda_t / k_t_inv - 1.0);
    });
    double m = 0.0;
    for (double e : errs) m = std::max(m, e);
    return m;
}

FormulaReport verify_parallel_formula(std::shared_ptr<const FrontField> base, double t,
                                      int grid, bool oracle) {
    // convexity precondition on the base
    {
        const SurfaceDomain& dom = base->domain();
        const double rb = base->bounding_radius();
        const double floor = 1e-6 / (rb * rb);
        for (int i = 0; i < 24; ++i)
            for (int j = 0; j < 24; ++j) {
                const Vec2 p{dom.u_min + dom.u_range() * (i + 0.5) / 24,
                             dom.strata_v_min() +
                                 (dom.strata_v_max() - dom.strata_v_min()) * (j + 0.5) / 24};
                if (gauss_kronecker(*base, p).gauss_kronecker <= floor)
                    throw NotConvex("verify_parallel_formula: base is not strictly convex");
            }
    }

    const auto front_t = make_parallel(base, t);
    const auto hom = make_front_homomorphism(front_t);
    const StrataReport strata = run_strata_as_morin(*hom, grid);
    FormulaReport r = strata_formula("Parallel", strata);
    r.lhs = 2 * r.chi_minus;
    r.rhs = r.a3_plus - r.a3_minus;
    r.residual = r.lhs - r.rhs;
    r.degree = gauss_degree(*front_t, grid, oracle);
    if (oracle && r.degree.preimage_count && *r.degree.preimage_count != r.degree.rounded)
        throw NonIntegerDegree("quadrature and preimage degree disagree");

    const double identity_err = parallel_identity_error(*base, t, 96);
    if (identity_err > 1e-8)
        throw Error("parallel identity lambda_t*K_t=1 violated: max error " +
                    std::to_string(identity_err));
    return r;
}

FormulaReport verify_blaschke_formula(std::shared_ptr<const FrontField> base, int grid,
                                      bool oracle) {
    const auto xi_front = make_blaschke_front(base);
    const auto hom = make_front_homomorphism(xi_front);
    const StrataReport strata = run_strata_as_morin(*hom, grid);
    FormulaReport r = strata_formula("BlaschkeB", strata);
    r.lhs = 2 * r.chi_minus;
    r.rhs = r.a3_plus - r.a3_minus;
    r.residual = r.lhs - r.rhs;
    r.degree = gauss_degree(*base, std::min(grid, 256), oracle);
    return r;
}

FormulaReport verify_bleecker_wilson(std::shared_ptr<const FrontField> immersion, int grid) {
    FormulaReport r;
    r.theorem = "BleeckerWilson";
    r.degree = gauss_degree(*immersion, grid);
    r.lhs = 2 * r.degree.rounded;
    r.rhs = immersion->domain().euler_char;
    r.residual = r.lhs - r.rhs;
    return r;
}

} // namespace frontindex
