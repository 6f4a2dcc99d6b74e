// SPDX-License-Identifier: Apache-2.0
#include "frontindex/strata.hpp"

#include "frontindex/parallel_for.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace frontindex {

namespace {

// --- grid -----------------------------------------------------------------

struct GridSpec {
    SurfaceDomain dom;
    int nu = 0, nv = 0; // cell counts
    double u0 = 0, v0 = 0, du = 0, dv = 0;
    bool u_periodic = false, v_periodic = false;

    int corners_u() const { return u_periodic ? nu : nu + 1; }
    int corners_v() const { return v_periodic ? nv : nv + 1; }
    long corner_count() const { return static_cast<long>(corners_u()) * corners_v(); }
    long cidx(int i, int j) const {
        if (u_periodic) i = (i % nu + nu) % nu;
        if (v_periodic) j = (j % nv + nv) % nv;
        return static_cast<long>(j) * corners_u() + i;
    }
    Vec2 corner(int i, int j) const { return {u0 + i * du, v0 + j * dv}; }
};

// edge ids: u-edges (corner (i,j) to (i+1,j)) come first, then v-edges
struct EdgeRef {
    bool vertical = false;
    int i = 0, j = 0;
};

struct TracedGrid {
    GridSpec spec;
    std::vector<double> lambda; // per corner
    double corner_floor = 0.0;

    long u_edge_count() const {
        return static_cast<long>(spec.nu) * spec.corners_v();
    }
    long v_edge_count() const {
        return static_cast<long>(spec.corners_u()) * spec.nv;
    }
    long u_edge_id(int i, int j) const {
        if (spec.u_periodic) i = (i % spec.nu + spec.nu) % spec.nu;
        if (spec.v_periodic) j = (j % spec.nv + spec.nv) % spec.nv;
        return static_cast<long>(j) * spec.nu + i;
    }
    long v_edge_id(int i, int j) const {
        if (spec.u_periodic) i = (i % spec.corners_u() + spec.corners_u()) % spec.corners_u();
        if (spec.v_periodic) j = (j % spec.nv + spec.nv) % spec.nv;
        return u_edge_count() + static_cast<long>(j) * spec.corners_u() + i;
    }
    EdgeRef edge_ref(long id) const {
        if (id < u_edge_count())
            return {false, static_cast<int>(id % spec.nu), static_cast<int>(id / spec.nu)};
        id -= u_edge_count();
        return {true, static_cast<int>(id % spec.corners_u()),
                static_cast<int>(id / spec.corners_u())};
    }

    double lam(int i, int j) const { return lambda[spec.cidx(i, j)]; }
    bool sign_pos(int i, int j) const { return lam(i, j) > 0.0; }
};

double eval_lambda(const HomomorphismField& field, Vec2 p) {
    return field.density(p, 0).value();
}

TracedGrid build_grid(const HomomorphismField& field, int grid) {
    const SurfaceDomain& dom = field.domain();
    const ClassifyTolerances tol = field.tolerances();

    // degenerate density guard: compare the density scale with the frame scale
    {
        const Vec2 center{dom.u_min + 0.5 * dom.u_range(),
                          0.5 * (dom.strata_v_min() + dom.strata_v_max())};
        const std::array<Jet2, 4> m = field.phi_matrix(center, 0);
        const double phi_scale =
            std::max({std::abs(m[0].value()), std::abs(m[1].value()),
                      std::abs(m[2].value()), std::abs(m[3].value())});
        if (field.scale().lambda_scale < 1e-12 * std::max(1e-30, phi_scale * phi_scale))
            throw NotMorin("density vanishes identically (totally degenerate field)");
    }

    TracedGrid tg;
    tg.corner_floor = std::max(10.0 * tol.eps_sing, 1e-13 * field.scale().lambda_scale);

    const double v_lo = dom.strata_v_min();
    const double v_hi = dom.strata_v_max();
    for (int attempt = 0; attempt < 4; ++attempt) {
        GridSpec s;
        s.dom = dom;
        s.nu = grid;
        s.nv = grid;
        s.u_periodic = dom.u_periodic;
        s.v_periodic = dom.v_periodic && dom.kind == DomainKind::Torus;
        // one-sided offsets so that symmetric zero sets cannot keep hitting
        // mid-grid corners on retries
        const double shift = 0.137 * attempt;
        s.du = dom.u_range() / s.nu;
        if (s.u_periodic) {
            s.u0 = dom.u_min + shift * s.du;
        } else {
            s.u0 = dom.u_min + shift * s.du;
            s.du = (dom.u_max - s.u0) / s.nu;
        }
        if (s.v_periodic) {
            s.dv = (v_hi - v_lo) / s.nv;
            s.v0 = v_lo + shift * s.dv;
        } else {
            s.v0 = v_lo + shift * (v_hi - v_lo) / s.nv;
            s.dv = (v_hi - s.v0) / s.nv;
        }

        std::vector<double> lam(static_cast<size_t>(s.corner_count()));
        const int cu = s.corners_u();
        parallel_for(s.corner_count(), [&](long idx) {
            const int i = static_cast<int>(idx % cu);
            const int j = static_cast<int>(idx / cu);
            lam[idx] = eval_lambda(field, s.corner(i, j));
        });

        double min_abs = std::numeric_limits<double>::infinity();
        for (double x : lam) min_abs = std::min(min_abs, std::abs(x));
        if (min_abs > tg.corner_floor) {
            tg.spec = s;
            tg.lambda = std::move(lam);
            return tg;
        }
    }
    throw ResolutionTooCoarse("grid corners keep landing on the singular set");
}

// --- crossings and cells -----------------------------------------------------

Vec2 refine_crossing(const HomomorphismField& field, Vec2 a, Vec2 b, double la, double lb,
                     double eps_sing) {
    // bisection along the straight chart segment a..b
    for (int it = 0; it < 80; ++it) {
        const Vec2 m = (a + b) * 0.5;
        const double lm = eval_lambda(field, m);
        if (std::abs(lm) <= eps_sing) return m;
        if ((lm > 0.0) == (la > 0.0)) {
            a = m;
            la = lm;
        } else {
            b = m;
            lb = lm;
        }
        if (norm(b - a) < 1e-16) break;
    }
    (void)lb;
    return (a + b) * 0.5;
}

struct Segment {
    long e1 = -1, e2 = -1;
    int cell_i = 0, cell_j = 0;
};

// pairing of the four boundary edges {bottom=0, right=1, top=2, left=3} of a
// saddle cell, decided by local subdivision
struct SaddleLink {
    int a0, a1; // first pair
    int b0, b1; // second pair
};

class SaddleResolver {
public:
    SaddleResolver(const HomomorphismField& field, double floor)
        : field_(field), floor_(floor) {}

    // corners in order bl, br, tr, tl; values likewise
    SaddleLink resolve(Vec2 bl, Vec2 tr, const double corner_vals[4], int depth) const {
        if (depth > 3)
            throw ResolutionTooCoarse(
                "ambiguous saddle cell persists after 3 local subdivisions");
        const double u0 = bl.u, v0 = bl.v, u1 = tr.u, v1 = tr.v;
        const double um = 0.5 * (u0 + u1), vm = 0.5 * (v0 + v1);
        const double c_b = val({um, v0});
        const double c_r = val({u1, vm});
        const double c_t = val({um, v1});
        const double c_l = val({u0, vm});
        const double c_c = val({um, vm});

        // 12 micro edges: 8 boundary halves + 4 spokes towards the center
        // ids: 0 b-left,1 b-right,2 r-low,3 r-high,4 t-right,5 t-left,
        //      6 l-high,7 l-low, 8 spoke-b,9 spoke-r,10 spoke-t,11 spoke-l
        const double bl_v = corner_vals[0], br_v = corner_vals[1];
        const double tr_v = corner_vals[2], tl_v = corner_vals[3];
        auto crossed = [](double x, double y) { return (x > 0.0) != (y > 0.0); };
        const bool xing[12] = {
            crossed(bl_v, c_b), crossed(c_b, br_v), crossed(br_v, c_r),
            crossed(c_r, tr_v), crossed(tr_v, c_t), crossed(c_t, tl_v),
            crossed(tl_v, c_l), crossed(c_l, bl_v), crossed(c_b, c_c),
            crossed(c_r, c_c),  crossed(c_t, c_c),  crossed(c_l, c_c)};

        // each parent edge must still carry exactly one crossing
        for (int e = 0; e < 4; ++e)
            if (xing[2 * e] == xing[2 * e + 1])
                throw ResolutionTooCoarse("saddle subdivision reveals multiple crossings");

        // union-find over micro edges driven by the four subcells
        int parent[12];
        std::iota(parent, parent + 12, 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

        struct Sub {
            int edges[4];   // micro-edge ids of this subcell (b, r, t, l)
            Vec2 bl, tr;
            double vals[4]; // corner values bl, br, tr, tl
        };
        const Sub subs[4] = {
            {{0, 8, 11, 7}, {u0, v0}, {um, vm}, {bl_v, c_b, c_c, c_l}},
            {{1, 2, 9, 8}, {um, v0}, {u1, vm}, {c_b, br_v, c_r, c_c}},
            {{9, 3, 4, 10}, {um, vm}, {u1, v1}, {c_c, c_r, tr_v, c_t}},
            {{11, 10, 5, 6}, {u0, vm}, {um, v1}, {c_l, c_c, c_t, tl_v}},
        };
        for (const Sub& sc : subs) {
            int local[4];
            int count = 0;
            for (int e = 0; e < 4; ++e) {
                const double x = sc.vals[e];
                const double y = sc.vals[(e + 1) % 4];
                if ((x > 0.0) != (y > 0.0)) local[count++] = sc.edges[e];
            }
            if (count == 2) {
                unite(local[0], local[1]);
            } else if (count == 4) {
                const SaddleLink inner = resolve(sc.bl, sc.tr, sc.vals, depth + 1);
                unite(sc.edges[inner.a0], sc.edges[inner.a1]);
                unite(sc.edges[inner.b0], sc.edges[inner.b1]);
            } else if (count != 0) {
                throw ResolutionTooCoarse("inconsistent micro-cell crossing count");
            }
        }

        // map each parent edge to its crossed half and read off connectivity
        int half_of[4];
        for (int e = 0; e < 4; ++e) half_of[e] = xing[2 * e] ? 2 * e : 2 * e + 1;
        SaddleLink out{-1, -1, -1, -1};
        const int r0 = find(half_of[0]);
        int partner = -1;
        for (int e = 1; e < 4; ++e)
            if (find(half_of[e]) == r0) partner = e;
        if (partner < 0)
            throw ResolutionTooCoarse("saddle resolution failed to pair crossings");
        out.a0 = 0;
        out.a1 = partner;
        int rest[2], nrest = 0;
        for (int e = 1; e < 4; ++e)
            if (e != partner) rest[nrest++] = e;
        out.b0 = rest[0];
        out.b1 = rest[1];
        return out;
    }

private:
    double val(Vec2 p) const {
        const double x = eval_lambda(field_, p);
        // a micro corner exactly on the curve defeats the sign logic
        if (std::abs(x) <= floor_)
            throw ResolutionTooCoarse("saddle micro-sample lies on the singular set");
        return x;
    }

    const HomomorphismField& field_;
    double floor_;
};

struct TraceOutput {
    std::vector<SingularCurve> curves;
    std::map<long, Vec2> crossing_point;       // edge id -> refined point
    std::vector<Segment> segments;
};

TraceOutput trace_on_grid(const HomomorphismField& field, const TracedGrid& tg) {
    const GridSpec& s = tg.spec;
    const ClassifyTolerances tol = field.tolerances();
    TraceOutput out;

    // sphere band boundary must not be crossed by strata
    if (s.dom.kind == DomainKind::SphereChart) {
        for (int i = 0; i < s.nu; ++i) {
            for (int j : {0, s.corners_v() - 1}) {
                if (tg.sign_pos(i, j) != tg.sign_pos(i + 1 == s.nu && s.u_periodic ? 0 : i + 1, j))
                    throw PoleProximity("singular set reaches the pole-cap band boundary");
            }
        }
    }

    // collect crossed edges
    std::vector<long> crossed;
    auto consider_u_edge = [&](int i, int j) {
        const int i2 = s.u_periodic ? (i + 1) % s.nu : i + 1;
        if (tg.sign_pos(i, j) != tg.sign_pos(i2, j)) crossed.push_back(tg.u_edge_id(i, j));
    };
    auto consider_v_edge = [&](int i, int j) {
        const int j2 = s.v_periodic ? (j + 1) % s.nv : j + 1;
        if (tg.sign_pos(i, j) != tg.sign_pos(i, j2)) crossed.push_back(tg.v_edge_id(i, j));
    };
    for (int j = 0; j < s.corners_v(); ++j)
        for (int i = 0; i < s.nu; ++i) consider_u_edge(i, j);
    for (int j = 0; j < s.nv; ++j)
        for (int i = 0; i < s.corners_u(); ++i) consider_v_edge(i, j);

    // refine crossings by bisection
    std::vector<Vec2> refined(crossed.size());
    parallel_for(static_cast<long>(crossed.size()), [&](long k) {
        const EdgeRef e = tg.edge_ref(crossed[k]);
        const Vec2 a = s.corner(e.i, e.j);
        const Vec2 b = e.vertical ? s.corner(e.i, e.j + 1) : s.corner(e.i + 1, e.j);
        const double la = tg.lam(e.i, e.j);
        const double lb = e.vertical ? tg.lam(e.i, e.j + 1) : tg.lam(e.i + 1, e.j);
        refined[k] = refine_crossing(field, a, b, la, lb, tol.eps_sing);
    });
    for (size_t k = 0; k < crossed.size(); ++k) out.crossing_point[crossed[k]] = refined[k];

    // per-cell segments
    const SaddleResolver saddles(field, tg.corner_floor);
    const int cell_rows = s.v_periodic ? s.nv : s.nv;
    for (int j = 0; j < cell_rows; ++j) {
        for (int i = 0; i < s.nu; ++i) {
            const long eb = tg.u_edge_id(i, j);
            const long et = tg.u_edge_id(i, j + 1 == s.nv && s.v_periodic ? 0 : j + 1);
            const long el = tg.v_edge_id(i, j);
            const long er = tg.v_edge_id(i + 1 == s.nu && s.u_periodic ? 0 : i + 1, j);
            const long ids[4] = {eb, er, et, el};
            int local[4];
            int count = 0;
            for (int e = 0; e < 4; ++e)
                if (out.crossing_point.count(ids[e])) local[count++] = e;
            if (count == 0) continue;
            if (count == 2) {
                out.segments.push_back({ids[local[0]], ids[local[1]], i, j});
            } else if (count == 4) {
                const double vals[4] = {tg.lam(i, j), tg.lam(i + 1, j), tg.lam(i + 1, j + 1),
                                        tg.lam(i, j + 1)};
                const SaddleLink link =
                    saddles.resolve(s.corner(i, j), s.corner(i + 1, j + 1), vals, 1);
                out.segments.push_back({ids[link.a0], ids[link.a1], i, j});
                out.segments.push_back({ids[link.b0], ids[link.b1], i, j});
            } else {
                throw ResolutionTooCoarse("cell with an odd number of crossings");
            }
        }
    }

    // walk segments into curves
    std::map<long, std::vector<int>> incident; // edge id -> segment indices
    for (int k = 0; k < static_cast<int>(out.segments.size()); ++k) {
        incident[out.segments[k].e1].push_back(k);
        incident[out.segments[k].e2].push_back(k);
    }
    for (const auto& [eid, segs] : incident) {
        if (segs.size() > 2)
            throw ResolutionTooCoarse("crossing shared by more than two segments");
        if (segs.size() == 1 && s.dom.kind != DomainKind::Patch)
            throw ResolutionTooCoarse("open curve endpoint on a closed domain");
        (void)eid;
    }

    std::vector<bool> used(out.segments.size(), false);
    auto walk = [&](long start_edge, int start_seg) {
        SingularCurve curve;
        long edge = start_edge;
        int seg = start_seg;
        curve.points.push_back(out.crossing_point.at(edge));
        while (true) {
            used[seg] = true;
            const Segment& sg = out.segments[seg];
            const long next_edge = sg.e1 == edge ? sg.e2 : sg.e1;
            curve.points.push_back(out.crossing_point.at(next_edge));
            const auto& inc = incident.at(next_edge);
            int next_seg = -1;
            for (int cand : inc)
                if (!used[cand]) next_seg = cand;
            if (next_seg < 0) {
                // either closed (back at start) or an open arc end
                curve.closed = (next_edge == start_edge);
                if (curve.closed) curve.points.pop_back(); // avoid duplicate first point
                return curve;
            }
            edge = next_edge;
            seg = next_seg;
        }
    };

    // open arcs first so their walks start at endpoints
    for (const auto& [eid, segs] : incident) {
        if (segs.size() == 1 && !used[segs[0]]) out.curves.push_back(walk(eid, segs[0]));
    }
    for (int k = 0; k < static_cast<int>(out.segments.size()); ++k) {
        if (!used[k]) out.curves.push_back(walk(out.segments[k].e1, k));
    }

    // homology class from wrapped displacements
    for (auto& c : out.curves) {
        if (!c.closed) continue;
        double su = 0.0, sv = 0.0;
        for (size_t k = 0; k < c.points.size(); ++k) {
            const Vec2 a = c.points[k];
            const Vec2 b = c.points[(k + 1) % c.points.size()];
            su += s.dom.u_periodic ? wrapped_diff(b.u, a.u, s.dom.u_range()) : b.u - a.u;
            sv += s.v_periodic ? wrapped_diff(b.v, a.v, s.dom.v_range()) : b.v - a.v;
        }
        c.winding_u = static_cast<int>(std::lround(su / s.dom.u_range()));
        c.winding_v = s.v_periodic ? static_cast<int>(std::lround(sv / s.dom.v_range())) : 0;
    }
    return out;
}

// per-vertex lambda_dot along the unit extended null field, sign-continuous
void attach_cascade(const HomomorphismField& field, SingularCurve& curve) {
    const FieldScale& fs = field.scale();
    const double eps_grad = 1e-7 * fs.lambda_scale / fs.length;

    curve.lambda_dot.resize(curve.points.size());
    std::optional<Vec2> ref;
    Vec2 first_eta{0, 0};
    for (size_t k = 0; k < curve.points.size(); ++k) {
        const Vec2 p = curve.points[k];
        const Jet2 lam = field.density(p, 1);
        if (std::hypot(lam.coeff(1, 0), lam.coeff(0, 1)) < eps_grad)
            throw NotMorin("vanishing d(lambda) on the singular set");
        const NullDirection nd = null_direction(field, p, 1, std::nullopt, ref);
        if (k == 0) {
            curve.eta_column = nd.column;
            curve.eta_seed_sign = nd.sign;
            first_eta = nd.eta;
        }
        curve.lambda_dot[k] =
            lam.coeff(1, 0) * nd.eta.u + lam.coeff(0, 1) * nd.eta.v;
        ref = nd.eta;
    }
    if (curve.closed && curve.points.size() >= 2) {
        const NullDirection back = null_direction(field, curve.points[0], 0, std::nullopt, ref);
        if (dot(back.eta, first_eta) < 0.0)
            throw NotMorin("null direction not orientable along a closed component");
    }
}

Vec2 project_to_sigma(const HomomorphismField& field, Vec2 p, double eps_sing,
                      double eps_grad) {
    for (int it = 0; it < 50; ++it) {
        const Jet2 lam = field.density(p, 1);
        const double l = lam.value();
        if (std::abs(l) <= 0.5 * eps_sing) return p;
        const double gu = lam.coeff(1, 0), gv = lam.coeff(0, 1);
        const double g2 = gu * gu + gv * gv;
        if (g2 < eps_grad * eps_grad) throw NotMorin("projection hit a critical point");
        p = field.domain().canonical({p.u - l * gu / g2, p.v - l * gv / g2});
    }
    return p;
}

} // namespace

std::vector<SingularCurve> trace_singular_set(const HomomorphismField& field, int grid) {
    const TracedGrid tg = build_grid(field, grid);
    TraceOutput out = trace_on_grid(field, tg);
    for (size_t k = 0; k < out.curves.size(); ++k) {
        out.curves[k].component_id = static_cast<int>(k);
        attach_cascade(field, out.curves[k]);
    }
    return std::move(out.curves);
}

std::vector<SignedA3Point> locate_a3(const SingularCurve& curve,
                                     const HomomorphismField& field) {
    std::vector<SignedA3Point> out;
    const size_t n = curve.points.size();
    if (n < 2) return out;
    const ClassifyTolerances tol = field.tolerances();
    const FieldScale& fs = field.scale();
    const double eps_grad = 1e-7 * fs.lambda_scale / fs.length;
    const SurfaceDomain& dom = field.domain();

    const size_t pairs = curve.closed ? n : n - 1;
    for (size_t k = 0; k < pairs; ++k) {
        const size_t k2 = (k + 1) % n;
        double fa = curve.lambda_dot[k];
        double fb = curve.lambda_dot[k2];
        if (fa == 0.0 || fb == 0.0 || (fa > 0.0) == (fb > 0.0)) continue;

        Vec2 a = curve.points[k];
        Vec2 b = curve.points[k2];
        // reference direction for sign continuity across the bisection
        const NullDirection nda = null_direction(field, a, 0);
        Vec2 ref = nda.eta;
        if (curve.lambda_dot[k] != 0.0) {
            // align the reference with the curve's stored orientation
            const Jet2 lam = field.density(a, 1);
            const double val = lam.coeff(1, 0) * ref.u + lam.coeff(0, 1) * ref.v;
            if ((val > 0.0) != (curve.lambda_dot[k] > 0.0)) ref = ref * -1.0;
        }

        for (int it = 0; it < 80; ++it) {
            Vec2 delta{b.u - a.u, b.v - a.v};
            if (dom.u_periodic) delta.u = wrapped_diff(b.u, a.u, dom.u_range());
            if (dom.v_periodic && dom.kind == DomainKind::Torus)
                delta.v = wrapped_diff(b.v, a.v, dom.v_range());
            if (norm(delta) < 1e-10 * fs.length) break;
            Vec2 m = dom.canonical(a + delta * 0.5);
            m = project_to_sigma(field, m, tol.eps_sing, eps_grad);
            const Jet2 lam = field.density(m, 1);
            const NullDirection nd = null_direction(field, m, 0, std::nullopt, ref);
            const double fm = lam.coeff(1, 0) * nd.eta.u + lam.coeff(0, 1) * nd.eta.v;
            ref = nd.eta;
            if ((fm > 0.0) == (fa > 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }

        Vec2 q = dom.canonical(a);
        q = project_to_sigma(field, q, tol.eps_sing, eps_grad);
        const ClassificationResult cls = classify_point(field, q, tol, std::nullopt, ref);
        if (cls.verdict == Verdict::A3) {
            out.push_back({q, cls.sign, cls.lambda_ddot, cls.rank_det, curve.component_id});
        } else if (cls.verdict == Verdict::Degenerate) {
            throw DegenerateA3("lambda_dot sign change with lambda_ddot below threshold");
        } else {
            throw DegenerateA3("lambda_dot sign change sharper than tolerances");
        }
    }
    return out;
}

namespace {

struct UnionFind {
    std::vector<long> parent;
    explicit UnionFind(long n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    long find(long x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(long a, long b) { parent[find(a)] = find(b); }
};

} // namespace

RegionComplex region_complex(const HomomorphismField& field, int grid,
                             const std::vector<SingularCurve>& curves) {
    const TracedGrid tg = build_grid(field, grid);
    const GridSpec& s = tg.spec;
    const SurfaceDomain& dom = field.domain();
    const bool is_patch = dom.kind == DomainKind::Patch;

    RegionComplex out;
    out.grid_u = s.nu;
    out.grid_v = s.nv;

    UnionFind uf(s.corner_count());
    long mixed_edges = 0;
    auto visit_u_edge = [&](int i, int j) {
        const int i2 = s.u_periodic ? (i + 1) % s.nu : i + 1;
        if (tg.sign_pos(i, j) == tg.sign_pos(i2, j))
            uf.unite(s.cidx(i, j), s.cidx(i2, j));
        else
            ++mixed_edges;
    };
    auto visit_v_edge = [&](int i, int j) {
        const int j2 = s.v_periodic ? (j + 1) % s.nv : j + 1;
        if (tg.sign_pos(i, j) == tg.sign_pos(i, j2))
            uf.unite(s.cidx(i, j), s.cidx(i, j2));
        else
            ++mixed_edges;
    };
    for (int j = 0; j < s.corners_v(); ++j)
        for (int i = 0; i < s.nu; ++i) visit_u_edge(i, j);
    for (int j = 0; j < s.nv; ++j)
        for (int i = 0; i < s.corners_u(); ++i) visit_v_edge(i, j);

    // V - E + F per component
    std::map<long, RegionComponent> comps;
    std::map<long, int> comp_index;
    for (int j = 0; j < s.corners_v(); ++j)
        for (int i = 0; i < s.corners_u(); ++i) {
            const long r = uf.find(s.cidx(i, j));
            RegionComponent& c = comps[r];
            c.sign = tg.sign_pos(i, j) ? 1 : -1;
            c.vertices += 1;
        }
    for (int j = 0; j < s.corners_v(); ++j)
        for (int i = 0; i < s.nu; ++i) {
            const int i2 = s.u_periodic ? (i + 1) % s.nu : i + 1;
            if (tg.sign_pos(i, j) == tg.sign_pos(i2, j))
                comps[uf.find(s.cidx(i, j))].edges += 1;
        }
    for (int j = 0; j < s.nv; ++j)
        for (int i = 0; i < s.corners_u(); ++i) {
            const int j2 = s.v_periodic ? (j + 1) % s.nv : j + 1;
            if (tg.sign_pos(i, j) == tg.sign_pos(i, j2))
                comps[uf.find(s.cidx(i, j))].edges += 1;
        }
    long mixed_faces = 0;
    for (int j = 0; j < s.nv; ++j)
        for (int i = 0; i < s.nu; ++i) {
            const int i2 = s.u_periodic ? (i + 1) % s.nu : i + 1;
            const int j2 = s.v_periodic ? (j + 1) % s.nv : j + 1;
            const bool p0 = tg.sign_pos(i, j), p1 = tg.sign_pos(i2, j);
            const bool p2 = tg.sign_pos(i2, j2), p3 = tg.sign_pos(i, j2);
            if (p0 == p1 && p1 == p2 && p2 == p3)
                comps[uf.find(s.cidx(i, j))].faces += 1;
            else
                ++mixed_faces;
        }
    (void)mixed_faces;

    // every mixed cell must be crossed by traced segments consistently
    {
        std::map<std::pair<int, int>, int> seg_per_cell;
        for (const SingularCurve& c : curves) {
            const size_t n = c.points.size();
            const size_t pairs = c.closed ? n : (n > 0 ? n - 1 : 0);
            for (size_t k = 0; k < pairs; ++k) {
                const Vec2 a = c.points[k];
                const Vec2 b = c.points[(k + 1) % n];
                Vec2 delta = b - a;
                if (dom.u_periodic) delta.u = wrapped_diff(b.u, a.u, dom.u_range());
                if (s.v_periodic) delta.v = wrapped_diff(b.v, a.v, dom.v_range());
                const Vec2 m = dom.canonical(a + delta * 0.5);
                int ci = static_cast<int>(std::floor((m.u - s.u0) / s.du));
                int cj = static_cast<int>(std::floor((m.v - s.v0) / s.dv));
                if (s.u_periodic) ci = (ci % s.nu + s.nu) % s.nu;
                if (s.v_periodic) cj = (cj % s.nv + s.nv) % s.nv;
                ci = std::clamp(ci, 0, s.nu - 1);
                cj = std::clamp(cj, 0, s.nv - 1);
                seg_per_cell[{ci, cj}] += 1;
            }
        }
        long counted = 0;
        for (const auto& [cell, cnt] : seg_per_cell) {
            (void)cell;
            counted += cnt;
        }
        // each mixed cell carries one segment (two for saddles); compare totals
        long expected = 0;
        for (int j = 0; j < s.nv; ++j)
            for (int i = 0; i < s.nu; ++i) {
                const int i2 = s.u_periodic ? (i + 1) % s.nu : i + 1;
                const int j2 = s.v_periodic ? (j + 1) % s.nv : j + 1;
                int crossings = 0;
                crossings += tg.sign_pos(i, j) != tg.sign_pos(i2, j);
                crossings += tg.sign_pos(i2, j) != tg.sign_pos(i2, j2);
                crossings += tg.sign_pos(i2, j2) != tg.sign_pos(i, j2);
                crossings += tg.sign_pos(i, j2) != tg.sign_pos(i, j);
                expected += crossings / 2;
            }
        if (!curves.empty() && counted != expected)
            throw ResolutionTooCoarse("traced segments do not match mixed cells");
    }

    // pole caps merge into the adjacent band components as disks
    if (dom.kind == DomainKind::SphereChart) {
        for (int side = 0; side < 2; ++side) {
            const int j = side == 0 ? 0 : s.corners_v() - 1;
            const bool row_sign = tg.sign_pos(0, j);
            for (int i = 0; i < s.corners_u(); ++i)
                if (tg.sign_pos(i, j) != row_sign)
                    throw PoleProximity("mixed signs on the pole-cap band boundary");
            // sample inside the cap: all samples must match the boundary sign
            const double v_edge = side == 0 ? s.v0 : s.v0 + s.nv * s.dv;
            const double v_pole = side == 0 ? dom.v_min : dom.v_max;
            for (int r = 1; r <= 4; ++r)
                for (int q = 0; q < 16; ++q) {
                    const double v = v_edge + (v_pole - v_edge) * r / 5.0;
                    const double u = dom.u_min + dom.u_range() * (q + 0.5) / 16.0;
                    const double lam = field.density_unchecked({u, v}, 0).value();
                    if ((lam > 0.0) != row_sign)
                        throw PoleProximity("singular stratum inside a pole cap");
                }
            RegionComponent& c = comps[uf.find(s.cidx(0, j))];
            c.euler_char += 1; // disk glued along a circle
            c.caps += 1;
        }
    }

    // boundary-loop incidence from the traced curves
    {
        std::vector<long> comp_roots;
        for (const auto& [root, c] : comps) {
            (void)c;
            comp_roots.push_back(root);
        }
        auto locate_component = [&](Vec2 q, bool expect_pos) -> long {
            int ci = static_cast<int>(std::floor((q.u - s.u0) / s.du));
            int cj = static_cast<int>(std::floor((q.v - s.v0) / s.dv));
            if (s.u_periodic) ci = (ci % s.nu + s.nu) % s.nu;
            if (s.v_periodic) cj = (cj % s.nv + s.nv) % s.nv;
            ci = std::clamp(ci, 0, s.nu - 1);
            cj = std::clamp(cj, 0, s.nv - 1);
            long best = -1;
            double best_d = std::numeric_limits<double>::infinity();
            for (int dj = 0; dj <= 1; ++dj)
                for (int di = 0; di <= 1; ++di) {
                    const int i = ci + di, j = cj + dj;
                    if (tg.sign_pos(i, j) != expect_pos) continue;
                    const Vec2 cp = s.corner(i, j);
                    Vec2 dd = cp - q;
                    if (s.u_periodic) dd.u = wrapped_diff(cp.u, q.u, dom.u_range());
                    const double d = norm(dd);
                    if (d < best_d) {
                        best_d = d;
                        best = uf.find(s.cidx(i, j));
                    }
                }
            return best;
        };

        for (const SingularCurve& c : curves) {
            if (c.points.empty()) continue;
            const Vec2 p = c.points[c.points.size() / 2];
            const Jet2 lam = field.density(p, 1);
            const double gu = lam.coeff(1, 0), gv = lam.coeff(0, 1);
            const double g = std::hypot(gu, gv);
            if (g == 0.0) continue;
            const double step0 = 0.25 * std::min(s.du, s.dv);
            for (int side = 0; side < 2; ++side) {
                const double dir = side == 0 ? 1.0 : -1.0;
                long root = -1;
                for (double mult : {1.0, 0.5, 0.25, 2.0}) {
                    const Vec2 q = dom.canonical(
                        {p.u + dir * mult * step0 * gu / g, p.v + dir * mult * step0 * gv / g});
                    const double lv = field.density(q, 0).value();
                    if ((lv > 0.0) != (side == 0)) continue; // stepped across another curve
                    root = locate_component(q, side == 0);
                    if (root >= 0) break;
                }
                if (root < 0)
                    throw ResolutionTooCoarse("cannot attribute a curve side to a region");
                comps[root].boundary_loops += 1;
            }
        }
    }

    // assemble, with the Euler characteristic cross-check per component
    for (auto& [root, c] : comps) {
        (void)root;
        c.euler_char += static_cast<int>(c.vertices - c.edges + c.faces);
        if (!is_patch && !curves.empty()) {
            const int b = c.boundary_loops;
            const bool planar_ok = c.euler_char == 2 - b;
            const bool torus_full_ok =
                dom.kind == DomainKind::Torus && c.euler_char == -b;
            if (!planar_ok && !torus_full_ok)
                throw ResolutionTooCoarse("component fails the genus/boundary cross-check");
        }
        if (c.sign > 0)
            out.chi_plus += c.euler_char;
        else
            out.chi_minus += c.euler_char;
        out.components.push_back(c);
    }

    if (!is_patch && out.chi_plus + out.chi_minus != dom.euler_char)
        throw ResolutionTooCoarse("chi(M+) + chi(M-) differs from chi(M)");
    return out;
}

StrataReport run_strata(const HomomorphismField& field, int grid) {
    StrataReport report;
    report.curves = trace_singular_set(field, grid);
    for (const SingularCurve& c : report.curves) {
        const std::vector<SignedA3Point> pts = locate_a3(c, field);
        report.a3.insert(report.a3.end(), pts.begin(), pts.end());
    }
    for (const SignedA3Point& p : report.a3)
        (p.sign > 0 ? report.a3_plus : report.a3_minus) += 1;
    report.regions = region_complex(field, grid, report.curves);
    return report;
}

} // namespace frontindex
