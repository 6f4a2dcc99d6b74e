// SPDX-License-Identifier: Apache-2.0
#include "frontindex/homomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace frontindex {

namespace {

double value_hypot(const Jet2& a, const Jet2& b) {
    return std::hypot(a.value(), b.value());
}

} // namespace

const FieldScale& HomomorphismField::scale() const {
    std::call_once(scale_once_, [this] {
        const SurfaceDomain& d = domain();
        const int n = 64;
        double m = 0.0;
        const double v_lo = d.strata_v_min();
        const double v_hi = d.strata_v_max();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Vec2 p{d.u_min + d.u_range() * (i + 0.5) / n,
                             v_lo + (v_hi - v_lo) * (j + 0.5) / n};
                m = std::max(m, std::abs(density_impl(p, 0).value()));
            }
        scale_.lambda_scale = m;
        scale_.length = d.diameter();
    });
    return scale_;
}

HomomorphismSample sample_homomorphism(const HomomorphismField& field, Vec2 p) {
    HomomorphismSample s;
    s.p = p;
    const std::array<Jet2, 4> m = field.phi_matrix(p, 0);
    s.phi[0][0] = m[0].value();
    s.phi[0][1] = m[1].value();
    s.phi[1][0] = m[2].value();
    s.phi[1][1] = m[3].value();
    s.lambda = field.density(p, 0).value();

    // singular values of the 2x2 via eigenvalues of phi^T phi
    const double a = s.phi[0][0], b = s.phi[0][1], c = s.phi[1][0], d = s.phi[1][1];
    const double t = a * a + b * b + c * c + d * d;
    const double det = a * d - b * c;
    const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det * det));
    s.sigma_min = std::sqrt(std::max(0.0, 0.5 * (t - disc)));

    s.singular = std::abs(s.lambda) <= field.tolerances().eps_sing;
    if (s.singular) {
        const NullDirection nd = null_direction(field, p, 0);
        s.eta = nd.eta;
        s.eta_column = nd.column;
    }
    return s;
}

NullDirection null_direction(const HomomorphismField& field, Vec2 p, int order,
                             std::optional<int> forced_column,
                             std::optional<Vec2> reference) {
    const ClassifyTolerances tol = field.tolerances();
    const double lam = field.density(p, 0).value();
    if (std::abs(lam) > tol.eps_sing)
        throw NotSingular("null_direction: density nonzero at the requested point");

    const std::array<Jet2, 4> m = field.phi_matrix(p, order);
    // adjugate of [m00 m01; m10 m11] is [m11 -m01; -m10 m00]; its columns
    // span the kernel on the singular set
    const Jet2 col0_u = m[3], col0_v = -m[2];
    const Jet2 col1_u = -m[1], col1_v = m[0];
    const double n0 = value_hypot(col0_u, col0_v);
    const double n1 = value_hypot(col1_u, col1_v);

    int column;
    if (forced_column) {
        column = *forced_column;
    } else {
        column = n0 >= n1 ? 0 : 1;
    }
    const double nrm = column == 0 ? n0 : n1;
    const double matrix_scale =
        std::max({std::abs(m[0].value()), std::abs(m[1].value()), std::abs(m[2].value()),
                  std::abs(m[3].value()), 1e-30});
    if (nrm <= 1e-10 * matrix_scale)
        throw ZeroAdjugate("null_direction: adjugate column vanishes (corank 2?)");

    NullDirection nd;
    nd.column = column;
    nd.eta_u = (column == 0 ? col0_u : col1_u) * (1.0 / nrm);
    nd.eta_v = (column == 0 ? col0_v : col1_v) * (1.0 / nrm);
    nd.eta = Vec2{nd.eta_u.value(), nd.eta_v.value()};
    nd.sign = 1.0;
    if (reference && dot(nd.eta, *reference) < 0.0) {
        nd.eta_u *= -1.0;
        nd.eta_v *= -1.0;
        nd.eta = Vec2{nd.eta_u.value(), nd.eta_v.value()};
        nd.sign = -1.0;
    }
    return nd;
}

CascadeValues lambda_cascade(const HomomorphismField& field, Vec2 p, int depth,
                             std::optional<int> forced_column,
                             std::optional<Vec2> reference) {
    if (depth > field.max_density_order())
        throw OrderExhausted("lambda_cascade: depth exceeds available jet order");
    const ClassifyTolerances tol = field.tolerances();
    Jet2 lam = field.density(p, depth);
    if (std::abs(lam.value()) > tol.eps_sing)
        throw NotSingular("lambda_cascade: point is not singular");

    CascadeValues out;
    out.values.reserve(depth + 1);
    out.values.push_back(lam.value());
    if (depth == 0) return out;

    const NullDirection nd = null_direction(field, p, depth, forced_column, reference);
    out.eta_column = nd.column;
    out.eta_sign = nd.sign;
    Jet2 cur = lam;
    for (int j = 1; j <= depth; ++j) {
        cur = directional_jet_derivative(cur, nd.eta_u, nd.eta_v);
        out.values.push_back(cur.value());
    }
    return out;
}

ClassificationResult classify_point(const HomomorphismField& field, Vec2 p,
                                    const ClassifyTolerances& tol,
                                    std::optional<int> forced_column,
                                    std::optional<Vec2> reference) {
    ClassificationResult r;
    const Jet2 lam = field.density(p, 2);
    r.lambda = lam.value();
    if (std::abs(r.lambda) > tol.eps_sing) {
        r.verdict = Verdict::Regular;
        return r;
    }

    NullDirection nd;
    try {
        nd = null_direction(field, p, 2, forced_column, reference);
    } catch (const ZeroAdjugate&) {
        r.verdict = Verdict::Degenerate;
        r.note = "corank 2 (adjugate vanishes)";
        return r;
    }

    const Jet2 lam_dot = directional_jet_derivative(lam, nd.eta_u, nd.eta_v);
    r.lambda_dot = lam_dot.value();
    if (std::abs(r.lambda_dot) > tol.eps_dot) {
        r.verdict = Verdict::A2;
        return r;
    }

    const Jet2 lam_ddot =
        directional_jet_derivative(lam_dot, nd.eta_u.truncated(1), nd.eta_v.truncated(1));
    r.lambda_ddot = lam_ddot.value();
    r.rank_det = lam.coeff(1, 0) * lam_dot.coeff(0, 1) - lam.coeff(0, 1) * lam_dot.coeff(1, 0);

    if (std::abs(r.lambda_ddot) > tol.eps_ddot && std::abs(r.rank_det) > tol.eps_rank) {
        r.verdict = Verdict::A3;
        r.sign = r.lambda_ddot > 0.0 ? 1 : -1;
        return r;
    }
    r.verdict = Verdict::Degenerate;
    r.note = "cascade below thresholds (lambda_ddot or rank test)";
    return r;
}

// --- front source --------------------------------------------------------------

namespace {

class FrontHomomorphism final : public HomomorphismField {
public:
    explicit FrontHomomorphism(std::shared_ptr<const FrontField> front)
        : front_(std::move(front)) {}

    std::array<Jet2, 4> phi_matrix(Vec2 p, int order) const override {
        const FrontJet fj = front_->eval(p, order + 1);
        const JetVec3 fu = fj.f.du().truncated(order);
        const JetVec3 fv = fj.f.dv().truncated(order);
        const JetVec3 nu = fj.nu.truncated(order);

        // orthonormal basis of nu-perp from the coordinate axes least
        // aligned with nu at p (stable because |nu| = 1)
        const double an[3] = {std::abs(nu.x.value()), std::abs(nu.y.value()),
                              std::abs(nu.z.value())};
        int drop = 0;
        if (an[1] > an[drop]) drop = 1;
        if (an[2] > an[drop]) drop = 2;
        const int a = drop == 0 ? 1 : 0;
        const int b = drop == 2 ? 1 : 2;

        const JetVec3 ea = axis(a, order);
        const JetVec3 eb = axis(b, order);
        const JetVec3 w1 = normalized(ea - dot(ea, nu) * nu);
        const JetVec3 w2raw = eb - dot(eb, nu) * nu - dot(eb, w1) * w1;
        const JetVec3 w2 = normalized(w2raw);
        return {dot(w1, fu), dot(w1, fv), dot(w2, fu), dot(w2, fv)};
    }

    const SurfaceDomain& domain() const override { return front_->domain(); }
    int max_density_order() const override { return front_->max_order() - 1; }
    std::string name() const override { return front_->family(); }

    const FrontField& front() const { return *front_; }

protected:
    Jet2 density_impl(Vec2 p, int order) const override {
        const FrontJet fj = front_->eval(p, order + 1);
        return det3(fj.f.du().truncated(order), fj.f.dv().truncated(order),
                    fj.nu.truncated(order));
    }

private:
    static JetVec3 axis(int i, int order) {
        const Jet2 one = Jet2::constant(1.0, order);
        const Jet2 zero = Jet2::constant(0.0, order);
        switch (i) {
            case 0: return {one, zero, zero};
            case 1: return {zero, one, zero};
            default: return {zero, zero, one};
        }
    }

    std::shared_ptr<const FrontField> front_;
};

Jet2 area_factor_jet(const SurfaceDomain& d, const Jet2& v) {
    if (d.kind == DomainKind::SphereChart) return cos(v);
    return Jet2::constant(1.0, v.order());
}

class MapHomomorphism final : public HomomorphismField {
public:
    explicit MapHomomorphism(MapPair map) : map_(std::move(map)) {}

    std::array<Jet2, 4> phi_matrix(Vec2 p, int order) const override {
        const auto [U, V] = map_.eval(p, order + 1);
        return {U.du().truncated(order), U.dv().truncated(order),
                V.du().truncated(order), V.dv().truncated(order)};
    }

    const SurfaceDomain& domain() const override { return map_.source; }
    std::string name() const override { return map_.name; }

    const MapPair& map() const { return map_; }

protected:
    Jet2 density_impl(Vec2 p, int order) const override {
        const auto [U, V] = map_.eval(p, order + 1);
        const Jet2 det_j = U.du().truncated(order) * V.dv().truncated(order) -
                           U.dv().truncated(order) * V.du().truncated(order);
        if (map_.source.kind != DomainKind::SphereChart &&
            map_.target.kind != DomainKind::SphereChart)
            return det_j;
        const Jet2 vj = Jet2::variable_v(p.v, order);
        return det_j * area_factor_jet(map_.target, V.truncated(order)) /
               area_factor_jet(map_.source, vj);
    }

private:
    MapPair map_;
};

class SyntheticHomomorphism final : public HomomorphismField {
public:
    SyntheticHomomorphism(SurfaceDomain domain, std::string name,
                          std::function<std::array<Jet2, 4>(Vec2, int)> matrix)
        : domain_(domain), name_(std::move(name)), matrix_(std::move(matrix)) {}

    std::array<Jet2, 4> phi_matrix(Vec2 p, int order) const override {
        return matrix_(p, order);
    }
    const SurfaceDomain& domain() const override { return domain_; }
    std::string name() const override { return name_; }

protected:
    Jet2 density_impl(Vec2 p, int order) const override {
        const std::array<Jet2, 4> m = matrix_(p, order);
        return m[0] * m[3] - m[1] * m[2];
    }

private:
    SurfaceDomain domain_;
    std::string name_;
    std::function<std::array<Jet2, 4>(Vec2, int)> matrix_;
};

class ScaledHomomorphism final : public HomomorphismField {
public:
    ScaledHomomorphism(std::shared_ptr<const HomomorphismField> base,
                       std::function<Jet2(Vec2, int)> sigma)
        : base_(std::move(base)), sigma_(std::move(sigma)) {}

    std::array<Jet2, 4> phi_matrix(Vec2 p, int order) const override {
        return base_->phi_matrix(p, order);
    }
    const SurfaceDomain& domain() const override { return base_->domain(); }
    int max_density_order() const override { return base_->max_density_order(); }
    std::string name() const override { return base_->name() + "_scaled"; }

protected:
    Jet2 density_impl(Vec2 p, int order) const override {
        return exp(sigma_(p, order)) * base_->density(p, order);
    }

private:
    std::shared_ptr<const HomomorphismField> base_;
    std::function<Jet2(Vec2, int)> sigma_;
};

class FrameRotatedHomomorphism final : public HomomorphismField {
public:
    FrameRotatedHomomorphism(std::shared_ptr<const HomomorphismField> base,
                             std::function<Jet2(Vec2, int)> angle)
        : base_(std::move(base)), angle_(std::move(angle)) {}

    std::array<Jet2, 4> phi_matrix(Vec2 p, int order) const override {
        const std::array<Jet2, 4> m = base_->phi_matrix(p, order);
        const Jet2 th = angle_(p, order);
        const Jet2 c = cos(th), s = sin(th);
        return {c * m[0] - s * m[2], c * m[1] - s * m[3],
                s * m[0] + c * m[2], s * m[1] + c * m[3]};
    }
    const SurfaceDomain& domain() const override { return base_->domain(); }
    int max_density_order() const override { return base_->max_density_order(); }
    std::string name() const override { return base_->name() + "_rotated"; }

protected:
    Jet2 density_impl(Vec2 p, int order) const override {
        return base_->density(p, order);
    }

private:
    std::shared_ptr<const HomomorphismField> base_;
    std::function<Jet2(Vec2, int)> angle_;
};

} // namespace

std::shared_ptr<HomomorphismField>
make_front_homomorphism(std::shared_ptr<const FrontField> front) {
    return std::make_shared<FrontHomomorphism>(std::move(front));
}

MapPair torus_self_map(std::string name,
                       std::function<std::pair<Jet2, Jet2>(Vec2, int)> eval) {
    MapPair m;
    m.source = SurfaceDomain::torus();
    m.target = SurfaceDomain::torus();
    m.name = std::move(name);
    m.eval = std::move(eval);
    return m;
}

MapPair torus_fold_map(double amplitude) {
    return torus_self_map("torus_fold", [amplitude](Vec2 p, int order) {
        const Jet2 u = Jet2::variable_u(p.u, order);
        const Jet2 v = Jet2::variable_v(p.v, order);
        return std::make_pair(u, v + amplitude * sin(v));
    });
}

MapPair torus_cover_map(int k) {
    return torus_self_map("torus_cover", [k](Vec2 p, int order) {
        const Jet2 u = Jet2::variable_u(p.u, order);
        const Jet2 v = Jet2::variable_v(p.v, order);
        return std::make_pair(u * static_cast<double>(k), v);
    });
}

MapPair sphere_identity_map() {
    MapPair m;
    m.source = SurfaceDomain::sphere_chart();
    m.target = SurfaceDomain::sphere_chart();
    m.name = "sphere_identity";
    m.eval = [](Vec2 p, int order) {
        return std::make_pair(Jet2::variable_u(p.u, order), Jet2::variable_v(p.v, order));
    };
    return m;
}

std::shared_ptr<HomomorphismField> make_map_homomorphism(MapPair map) {
    return std::make_shared<MapHomomorphism>(std::move(map));
}

std::shared_ptr<HomomorphismField>
make_synthetic_homomorphism(SurfaceDomain domain, std::string name,
                            std::function<std::array<Jet2, 4>(Vec2, int)> matrix) {
    return std::make_shared<SyntheticHomomorphism>(domain, std::move(name), std::move(matrix));
}

std::shared_ptr<HomomorphismField>
make_scaled_homomorphism(std::shared_ptr<const HomomorphismField> base,
                         std::function<Jet2(Vec2, int)> sigma) {
    return std::make_shared<ScaledHomomorphism>(std::move(base), std::move(sigma));
}

std::shared_ptr<HomomorphismField>
make_frame_rotated_homomorphism(std::shared_ptr<const HomomorphismField> base,
                                std::function<Jet2(Vec2, int)> angle) {
    return std::make_shared<FrameRotatedHomomorphism>(std::move(base), std::move(angle));
}

} // namespace frontindex
