// SPDX-License-Identifier: Apache-2.0
#include "frontindex/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace frontindex {

namespace {

constexpr double kPi = std::numbers::pi;

JetVec3 chart_direction(const Jet2& u, const Jet2& v) {
    const Jet2 cv = cos(v);
    return {cv * cos(u), cv * sin(u), sin(v)};
}

} // namespace

double FrontField::bounding_radius() const {
    std::call_once(radius_once_, [this] {
        double m = 0.0;
        const int n = 24;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= n; ++j) {
                const Vec2 p{domain_.u_min + domain_.u_range() * (i + 0.5) / n,
                             domain_.v_min + domain_.v_range() * (j + 0.25) / (n + 1)};
                const FrontJet fj = eval(p, 0);
                m = std::max(m, std::sqrt(fj.f.x.value() * fj.f.x.value() +
                                          fj.f.y.value() * fj.f.y.value() +
                                          fj.f.z.value() * fj.f.z.value()));
            }
        bounding_radius_ = m;
    });
    return bounding_radius_;
}

// --- sphere ------------------------------------------------------------------

namespace {

class SphereFront final : public FrontField {
public:
    explicit SphereFront(double radius)
        : FrontField(SurfaceDomain::sphere_chart()), radius_(radius) {}

    FrontJet eval(Vec2 p, int order) const override {
        const Jet2 u = Jet2::variable_u(p.u, order);
        const Jet2 v = Jet2::variable_v(p.v, order);
        const JetVec3 dir = chart_direction(u, v);
        return {dir * radius_, dir};
    }

    std::string family() const override { return "sphere"; }

private:
    double radius_;
};

class TorusFront final : public FrontField {
public:
    TorusFront(double big_r, double small_r)
        : FrontField(SurfaceDomain::torus()), R_(big_r), r_(small_r) {}

    FrontJet eval(Vec2 p, int order) const override {
        const Jet2 u = Jet2::variable_u(p.u, order);
        const Jet2 v = Jet2::variable_v(p.v, order);
        const Jet2 w = R_ + r_ * cos(v);
        const JetVec3 f{w * cos(u), w * sin(u), r_ * sin(v)};
        return {f, chart_direction(u, v)};
    }

    std::string family() const override { return "torus"; }

private:
    double R_, r_;
};

// Convex body with low-order trigonometric-polynomial bumps on the radial
// function; an immersion for small amplitudes, normal computed from f_u x f_v.
class BumpyFront final : public FrontField {
public:
    BumpyFront(std::uint64_t seed, double amplitude, double pole_cap)
        : FrontField(SurfaceDomain::sphere_chart(pole_cap)) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (double& a : coeff_) a = amplitude * dist(rng);
    }

    FrontJet eval(Vec2 p, int order) const override {
        const JetVec3 f = position(p, order + 1);
        const JetVec3 n = cross(f.du(), f.dv());
        return {position(p, order), normalized(n)};
    }

    std::string family() const override { return "bumpy"; }

private:
    JetVec3 position(Vec2 p, int order) const {
        const Jet2 u = Jet2::variable_u(p.u, order);
        const Jet2 v = Jet2::variable_v(p.v, order);
        const JetVec3 d = chart_direction(u, v);
        const Jet2& x = d.x;
        const Jet2& y = d.y;
        const Jet2& z = d.z;
        Jet2 rho = Jet2::constant(1.0, order);
        rho += coeff_[0] * (3.0 * z * z - 1.0);
        rho += coeff_[1] * (x * x - y * y);
        rho += coeff_[2] * (x * y);
        rho += coeff_[3] * (y * z);
        rho += coeff_[4] * (z * x);
        rho += coeff_[5] * ((5.0 * z * z - 3.0) * z);
        rho += coeff_[6] * ((x * x - y * y) * z);
        rho += coeff_[7] * (x * y * z);
        return d * rho;
    }

    std::array<double, 8> coeff_{};
};

// Surface of revolution of the profile (1 - 2 eps sin t)(sin t, cos t)
// about the horizontal axis; strictly convex for 0 <= eps < 1/4.
class RotationalGammaFront final : public FrontField {
public:
    RotationalGammaFront(double epsilon, double pole_cap)
        : FrontField(SurfaceDomain::sphere_chart(pole_cap)), eps_(epsilon) {}

    FrontJet eval(Vec2 p, int order) const override {
        const Jet2 u = Jet2::variable_u(p.u, order);
        // profile jets one order up so the tangent keeps full order
        const Jet2 v1 = Jet2::variable_v(p.v, order + 1);
        const Jet2 r1 = 1.0 - (2.0 * eps_) * sin(v1);
        const Jet2 axis1 = r1 * sin(v1);   // coordinate along the rotation axis
        const Jet2 rad1 = r1 * cos(v1);    // distance from the axis
        const Jet2 axis = axis1.truncated(order);
        const Jet2 rad = rad1.truncated(order);
        const Jet2 daxis = axis1.dv();
        const Jet2 drad = rad1.dv();

        const Jet2 cu = cos(u);
        const Jet2 su = sin(u);
        const JetVec3 f{axis, rad * cu, rad * su};
        const Jet2 speed = sqrt(daxis * daxis + drad * drad);
        const JetVec3 n{(-1.0) * drad / speed, (daxis / speed) * cu, (daxis / speed) * su};
        return {f, n};
    }

    std::string family() const override { return "rotational_gamma"; }

private:
    double eps_;
};

// Standard swallowtail normal form; open patch for unit tests only.
class SwallowtailPatch final : public FrontField {
public:
    SwallowtailPatch() : FrontField(SurfaceDomain::patch(-1.0, 1.0, -1.0, 1.0)) {}

    FrontJet eval(Vec2 p, int order) const override {
        const Jet2 u = Jet2::variable_u(p.u, order);
        const Jet2 v = Jet2::variable_v(p.v, order);
        const Jet2 u2 = u * u;
        const JetVec3 f{3.0 * u2 * u2 + u2 * v, 4.0 * u2 * u + 2.0 * u * v, v};
        const Jet2 w = sqrt(1.0 + u2 + u2 * u2);
        const JetVec3 n{1.0 / w, (-1.0) * u / w, u2 / w};
        return {f, n};
    }

    std::string family() const override { return "swallowtail_patch"; }
};

class ParallelFront final : public FrontField {
public:
    ParallelFront(std::shared_ptr<const FrontField> base, double t)
        : FrontField(base->domain()), base_(std::move(base)), t_(t) {}

    FrontJet eval(Vec2 p, int order) const override {
        FrontJet b = base_->eval(p, order);
        return {b.f + t_ * b.nu, b.nu};
    }

    int max_order() const override { return base_->max_order(); }
    std::string family() const override { return base_->family() + "_parallel"; }

private:
    std::shared_ptr<const FrontField> base_;
    double t_;
};

class LinearImageFront final : public FrontField {
public:
    LinearImageFront(std::shared_ptr<const FrontField> base, const double A[3][3])
        : FrontField(base->domain()), base_(std::move(base)) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a_[i][j] = A[i][j];
        invert_transpose();
    }

    FrontJet eval(Vec2 p, int order) const override {
        FrontJet b = base_->eval(p, order);
        const JetVec3 f = apply(a_, b.f);
        const JetVec3 n = apply(ait_, b.nu);
        return {f, normalized(n)};
    }

    int max_order() const override { return base_->max_order(); }
    std::string family() const override { return base_->family() + "_linear"; }

private:
    static JetVec3 apply(const double m[3][3], const JetVec3& v) {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    void invert_transpose() {
        const double det = a_[0][0] * (a_[1][1] * a_[2][2] - a_[1][2] * a_[2][1]) -
                           a_[0][1] * (a_[1][0] * a_[2][2] - a_[1][2] * a_[2][0]) +
                           a_[0][2] * (a_[1][0] * a_[2][1] - a_[1][1] * a_[2][0]);
        const double inv = 1.0 / det;
        // inverse transpose = cofactor matrix / det
        ait_[0][0] = inv * (a_[1][1] * a_[2][2] - a_[1][2] * a_[2][1]);
        ait_[0][1] = inv * (a_[1][2] * a_[2][0] - a_[1][0] * a_[2][2]);
        ait_[0][2] = inv * (a_[1][0] * a_[2][1] - a_[1][1] * a_[2][0]);
        ait_[1][0] = inv * (a_[0][2] * a_[2][1] - a_[0][1] * a_[2][2]);
        ait_[1][1] = inv * (a_[0][0] * a_[2][2] - a_[0][2] * a_[2][0]);
        ait_[1][2] = inv * (a_[0][1] * a_[2][0] - a_[0][0] * a_[2][1]);
        ait_[2][0] = inv * (a_[0][1] * a_[1][2] - a_[0][2] * a_[1][1]);
        ait_[2][1] = inv * (a_[0][2] * a_[1][0] - a_[0][0] * a_[1][2]);
        ait_[2][2] = inv * (a_[0][0] * a_[1][1] - a_[0][1] * a_[1][0]);
    }

    std::shared_ptr<const FrontField> base_;
    double a_[3][3];
    double ait_[3][3];
};

// Affine normal xi = (1/2) Laplace_h f where h = K^{-1/4} II is the Blaschke
// metric, computed with II taken against the normal direction that makes it
// positive definite. Input jets must be three orders above the output.
JetVec3 affine_normal_jet(const FrontJet& base, int out_order, double orient_sign,
                          double convexity_floor) {
    const int L = out_order + 1;
    const JetVec3 fu = base.f.du().truncated(L);
    const JetVec3 fv = base.f.dv().truncated(L);
    const JetVec3 fuu = base.f.du().du().truncated(L);
    const JetVec3 fuv = base.f.du().dv().truncated(L);
    const JetVec3 fvv = base.f.dv().dv().truncated(L);
    const JetVec3 nrm = base.nu.truncated(L) * orient_sign;

    const Jet2 E = dot(fu, fu), F = dot(fu, fv), G = dot(fv, fv);
    const Jet2 detg = E * G - F * F;
    if (detg.value() <= 0.0)
        throw SingularBasePoint("affine normal: base parametrization degenerate");

    const Jet2 a = dot(fuu, nrm), b = dot(fuv, nrm), c = dot(fvv, nrm);
    const Jet2 K = (a * c - b * b) / detg;
    if (K.value() <= convexity_floor)
        throw NotConvex("affine normal: Gauss-Kronecker curvature below convexity floor");
    if (a.value() <= 0.0)
        throw NotConvex("affine normal: second fundamental form not positive definite");

    const Jet2 kq = pow(K, -0.25);
    const Jet2 h11 = kq * a, h12 = kq * b, h22 = kq * c;
    const Jet2 deth = h11 * h22 - h12 * h12;
    const Jet2 sq = sqrt(deth);
    const Jet2 i11 = h22 / deth, i12 = (-1.0) * h12 / deth, i22 = h11 / deth;

    const JetVec3 pu = (i11 * fu + i12 * fv) * sq;
    const JetVec3 pv = (i12 * fu + i22 * fv) * sq;
    const JetVec3 div = pu.du() + pv.dv();
    return (div / sq.truncated(out_order)) * 0.5;
}

class BlaschkeFront final : public FrontField {
public:
    explicit BlaschkeFront(std::shared_ptr<const FrontField> base)
        : FrontField(base->domain()), base_(std::move(base)) {
        const double rb = base_->bounding_radius();
        convexity_floor_ = 1e-6 / (rb * rb);
        // fix the sign that makes II positive definite, probed off symmetry axes
        const Vec2 ref{domain_.u_min + 0.37 * domain_.u_range(),
                       domain_.v_min + 0.52 * domain_.v_range()};
        const FrontJet fj = base_->eval(ref, 2);
        const double iiuu = dot(fj.f.du().du().truncated(0), fj.nu.truncated(0)).value();
        const double iivv = dot(fj.f.dv().dv().truncated(0), fj.nu.truncated(0)).value();
        const double iiuv = dot(fj.f.du().dv().truncated(0), fj.nu.truncated(0)).value();
        if (iiuu * iivv - iiuv * iiuv <= 0.0)
            throw NotConvex("Blaschke front: base not strictly convex at reference point");
        orient_sign_ = iiuu > 0.0 ? 1.0 : -1.0;
    }

    FrontJet eval(Vec2 p, int order) const override {
        const FrontJet b = base_->eval(p, order + 3);
        JetVec3 xi = affine_normal_jet(b, order, orient_sign_, convexity_floor_);
        return {std::move(xi), b.nu.truncated(order)};
    }

    int max_order() const override { return base_->max_order() - 3; }
    std::string family() const override { return base_->family() + "_blaschke"; }

    const FrontField& base() const { return *base_; }
    double orient_sign() const { return orient_sign_; }
    double convexity_floor() const { return convexity_floor_; }

private:
    std::shared_ptr<const FrontField> base_;
    double orient_sign_ = 1.0;
    double convexity_floor_ = 0.0;
};

} // namespace

std::shared_ptr<const FrontField> make_sphere(double radius) {
    return std::make_shared<SphereFront>(radius);
}
std::shared_ptr<const FrontField> make_torus(double R, double r) {
    return std::make_shared<TorusFront>(R, r);
}
std::shared_ptr<const FrontField> make_bumpy(std::uint64_t seed, double amplitude,
                                             double pole_cap) {
    return std::make_shared<BumpyFront>(seed, amplitude, pole_cap);
}
std::shared_ptr<const FrontField> make_rotational_gamma(double epsilon, double pole_cap) {
    if (epsilon < 0.0 || epsilon >= 0.25)
        throw RangeError("rotational_gamma: epsilon must satisfy 0 <= epsilon < 1/4");
    return std::make_shared<RotationalGammaFront>(epsilon, pole_cap);
}
std::shared_ptr<const FrontField> make_swallowtail_patch() {
    return std::make_shared<SwallowtailPatch>();
}
std::shared_ptr<const FrontField> make_parallel(std::shared_ptr<const FrontField> base,
                                                double t) {
    return std::make_shared<ParallelFront>(std::move(base), t);
}
std::shared_ptr<const FrontField> make_blaschke_front(std::shared_ptr<const FrontField> base) {
    return std::make_shared<BlaschkeFront>(std::move(base));
}
std::shared_ptr<const FrontField> make_linear_image(std::shared_ptr<const FrontField> base,
                                                    const double A[3][3]) {
    return std::make_shared<LinearImageFront>(std::move(base), A);
}

CurvatureData gauss_kronecker(const FrontField& field, Vec2 p) {
    const FrontJet fj = field.eval(p, 1);
    const Vec3 fu{fj.f.x.coeff(1, 0), fj.f.y.coeff(1, 0), fj.f.z.coeff(1, 0)};
    const Vec3 fv{fj.f.x.coeff(0, 1), fj.f.y.coeff(0, 1), fj.f.z.coeff(0, 1)};
    const Vec3 nu{fj.nu.x.coeff(1, 0), fj.nu.y.coeff(1, 0), fj.nu.z.coeff(1, 0)};
    const Vec3 nv{fj.nu.x.coeff(0, 1), fj.nu.y.coeff(0, 1), fj.nu.z.coeff(0, 1)};

    const double E = dot(fu, fu), F = dot(fu, fv), G = dot(fv, fv);
    const double detg = E * G - F * F;
    const double tr = E + G;
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * detg));
    const double gmin = 0.5 * (tr - disc);
    if (gmin <= 1e-12 * std::max(1.0, tr))
        throw SingularBasePoint("gauss_kronecker: df has rank < 2");

    // B[r][c] = <nu_{x_c}, f_{x_r}>, W = -g^{-1} B
    const double b00 = dot(nu, fu), b01 = dot(nv, fu);
    const double b10 = dot(nu, fv), b11 = dot(nv, fv);
    const double inv = 1.0 / detg;
    CurvatureData out;
    out.shape[0][0] = -inv * (G * b00 - F * b10);
    out.shape[0][1] = -inv * (G * b01 - F * b11);
    out.shape[1][0] = -inv * (E * b10 - F * b00);
    out.shape[1][1] = -inv * (E * b11 - F * b01);
    out.gauss_kronecker =
        out.shape[0][0] * out.shape[1][1] - out.shape[0][1] * out.shape[1][0];
    const double trw = out.shape[0][0] + out.shape[1][1];
    const double dw = std::sqrt(std::max(0.0, trw * trw - 4.0 * out.gauss_kronecker));
    out.mu1 = 0.5 * (trw - dw);
    out.mu2 = 0.5 * (trw + dw);
    return out;
}

AffineData blaschke_normal(const FrontField& field, Vec2 p) {
    const double rb = field.bounding_radius();
    const double floor = 1e-6 / (rb * rb);

    const FrontJet base = field.eval(p, 4);
    const JetVec3 fu0 = base.f.du().truncated(0);
    const JetVec3 fv0 = base.f.dv().truncated(0);
    const JetVec3 nu0 = base.nu.truncated(0);
    const double iiuu = dot(base.f.du().du().truncated(0), nu0).value();
    const double iiuv = dot(base.f.du().dv().truncated(0), nu0).value();
    const double iivv = dot(base.f.dv().dv().truncated(0), nu0).value();
    if (iiuu * iivv - iiuv * iiuv <= 0.0)
        throw NotConvex("blaschke_normal: second fundamental form indefinite");
    const double sign = iiuu > 0.0 ? 1.0 : -1.0;

    const CurvatureData curv = gauss_kronecker(field, p);
    if (curv.gauss_kronecker <= floor)
        throw NotConvex("blaschke_normal: curvature below convexity floor");

    AffineData out;
    out.p = p;
    const double kq = std::pow(curv.gauss_kronecker, -0.25);
    out.h[0][0] = kq * sign * iiuu;
    out.h[0][1] = kq * sign * iiuv;
    out.h[1][0] = kq * sign * iiuv;
    out.h[1][1] = kq * sign * iivv;

    out.xi = affine_normal_jet(base, 1, sign, floor);
    out.f = base.f.truncated(2);
    out.nu = base.nu.truncated(2);

    // affine shape operator: xi_{x_i} = df(S e_i) + (residual along nu)
    const Vec3 fu{fu0.x.value(), fu0.y.value(), fu0.z.value()};
    const Vec3 fv{fv0.x.value(), fv0.y.value(), fv0.z.value()};
    const JetVec3 xiu = out.xi.du();
    const JetVec3 xiv = out.xi.dv();
    const Vec3 xu{xiu.x.value(), xiu.y.value(), xiu.z.value()};
    const Vec3 xv{xiv.x.value(), xiv.y.value(), xiv.z.value()};
    const double E = dot(fu, fu), F = dot(fu, fv), G = dot(fv, fv);
    const double inv = 1.0 / (E * G - F * F);
    out.shape[0][0] = inv * (G * dot(xu, fu) - F * dot(xu, fv));
    out.shape[1][0] = inv * (E * dot(xu, fv) - F * dot(xu, fu));
    out.shape[0][1] = inv * (G * dot(xv, fu) - F * dot(xv, fv));
    out.shape[1][1] = inv * (E * dot(xv, fv) - F * dot(xv, fu));

    out.conormal_vec = conormal(out);
    return out;
}

Vec3 conormal(const AffineData& affine) {
    const JetVec3 fuj = affine.f.du();
    const JetVec3 fvj = affine.f.dv();
    const Vec3 fu{fuj.x.value(), fuj.y.value(), fuj.z.value()};
    const Vec3 fv{fvj.x.value(), fvj.y.value(), fvj.z.value()};
    const Vec3 xi{affine.xi.x.value(), affine.xi.y.value(), affine.xi.z.value()};
    const Vec3 w = cross(fu, fv);
    const double det = dot(w, xi);
    const double scale = norm(w) * norm(xi);
    if (std::abs(det) <= 1e-12 * std::max(1.0, scale))
        throw TangentialAffineNormal("conormal: affine normal tangent to the surface");
    return w * (1.0 / det);
}

} // namespace frontindex
