// SPDX-License-Identifier: Apache-2.0
#include "frontindex/surface.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace frontindex;

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 value_of(const JetVec3& j) { return {j.x.value(), j.y.value(), j.z.value()}; }

Vec3 eval_position(const FrontField& f, Vec2 p) { return value_of(f.eval(p, 0).f); }

// independent finite-difference Gauss-Kronecker oracle: K from central
// differences of f and nu, no jets involved
double fd_gauss_kronecker(const FrontField& field, Vec2 p) {
    const double h = 1e-5;
    auto pos = [&](double du, double dv) {
        return eval_position(field, {p.u + du, p.v + dv});
    };
    auto nrm = [&](double du, double dv) {
        return value_of(field.eval({p.u + du, p.v + dv}, 0).nu);
    };
    const Vec3 fu = (pos(h, 0) - pos(-h, 0)) * (0.5 / h);
    const Vec3 fv = (pos(0, h) - pos(0, -h)) * (0.5 / h);
    const Vec3 nu = (nrm(h, 0) - nrm(-h, 0)) * (0.5 / h);
    const Vec3 nv = (nrm(0, h) - nrm(0, -h)) * (0.5 / h);
    const double E = dot(fu, fu), F = dot(fu, fv), G = dot(fv, fv);
    const double b00 = dot(nu, fu), b01 = dot(nv, fu);
    const double b10 = dot(nu, fv), b11 = dot(nv, fv);
    return (b00 * b11 - b01 * b10) / (E * G - F * F);
}

} // namespace

TEST_SUITE("surfaces") {

TEST_CASE("round sphere is self-normal") {
    const auto sphere = make_sphere(1.0);
    for (Vec2 p : {Vec2{0.3, 0.2}, Vec2{2.0, -1.2}, Vec2{5.5, 1.4}}) {
        const FrontJet fj = sphere->eval(p, 0);
        const Vec3 f = value_of(fj.f);
        const Vec3 n = value_of(fj.nu);
        CHECK(norm(f - n) < 1e-14);
    }
}

TEST_CASE("front condition holds on 10^4 random samples per family") {
    const auto families = {make_sphere(1.0), make_torus(2.0, 1.0),
                           make_bumpy(1, 0.04), make_rotational_gamma(17.0 / 80.0),
                           make_swallowtail_patch()};
    std::mt19937_64 rng(5);
    for (const auto& field : families) {
        const SurfaceDomain& d = field->domain();
        std::uniform_real_distribution<double> du(d.u_min, d.u_max);
        std::uniform_real_distribution<double> dv(d.strata_v_min(), d.strata_v_max());
        int bad = 0;
        for (int k = 0; k < 10000; ++k) {
            const Vec2 p{du(rng), dv(rng)};
            const FrontJet fj = field->eval(p, 1);
            const Vec3 n = value_of(fj.nu);
            const Vec3 fu{fj.f.x.coeff(1, 0), fj.f.y.coeff(1, 0), fj.f.z.coeff(1, 0)};
            const Vec3 fv{fj.f.x.coeff(0, 1), fj.f.y.coeff(0, 1), fj.f.z.coeff(0, 1)};
            if (std::abs(norm(n) - 1.0) >= 1e-10 ||
                std::abs(dot(n, fu)) >= 1e-10 * (1.0 + norm(fu)) ||
                std::abs(dot(n, fv)) >= 1e-10 * (1.0 + norm(fv)))
                ++bad;
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("swallowtail patch at the origin") {
    const auto patch = make_swallowtail_patch();
    const FrontJet fj = patch->eval({0.0, 0.0}, 1);
    CHECK(fj.f.x.coeff(1, 0) == 0.0);
    CHECK(fj.f.y.coeff(1, 0) == 0.0);
    CHECK(fj.f.z.coeff(1, 0) == 0.0);
    const Vec3 n = value_of(fj.nu);
    CHECK(n.x == doctest::Approx(1.0));
    CHECK(n.y == doctest::Approx(0.0));
    CHECK(n.z == doctest::Approx(0.0));
}

TEST_CASE("torus top circle is orthogonal to the normal") {
    const auto torus = make_torus(2.0, 1.0);
    const FrontJet fj = torus->eval({1.1, kPi / 2.0}, 1);
    const Vec3 n = value_of(fj.nu);
    const Vec3 fu{fj.f.x.coeff(1, 0), fj.f.y.coeff(1, 0), fj.f.z.coeff(1, 0)};
    CHECK(std::abs(dot(n, fu)) < 1e-12);
}

TEST_CASE("gauss_kronecker on spheres") {
    const auto unit = make_sphere(1.0);
    const auto big = make_sphere(3.0);
    for (Vec2 p : {Vec2{0.5, 0.4}, Vec2{3.0, -0.9}}) {
        CHECK(gauss_kronecker(*unit, p).gauss_kronecker == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(gauss_kronecker(*big, p).gauss_kronecker ==
              doctest::Approx(1.0 / 9.0).epsilon(1e-10));
    }
}

TEST_CASE("gauss_kronecker on the torus matches the closed form and the FD oracle") {
    const double R = 2.0, r = 1.0;
    const auto torus = make_torus(R, r);
    for (double v : {0.3, 1.1, 2.5, 4.0}) {
        const Vec2 p{1.3, v};
        const CurvatureData c = gauss_kronecker(*torus, p);
        const double expected = std::cos(v) / (r * (R + r * std::cos(v)));
        CHECK(c.gauss_kronecker == doctest::Approx(expected).epsilon(1e-9));
        CHECK(c.gauss_kronecker == doctest::Approx(fd_gauss_kronecker(*torus, p)).epsilon(1e-6));
        CHECK(c.mu1 * c.mu2 == doctest::Approx(c.gauss_kronecker).epsilon(1e-9));
    }
}

TEST_CASE("swallowtail origin rejects curvature (rank < 2)") {
    const auto patch = make_swallowtail_patch();
    CHECK_THROWS_AS(gauss_kronecker(*patch, {0.0, 0.0}), SingularBasePoint);
}

TEST_CASE("parallel fronts") {
    const auto sphere = make_sphere(1.0);

    SUBCASE("t=-0.5 is the sphere of radius 0.5 with lambda_t = 0.25") {
        const auto par = make_parallel(sphere, -0.5);
        const Vec2 p{1.0, 0.4};
        const Vec3 f = eval_position(*par, p);
        CHECK(norm(f) == doctest::Approx(0.5).epsilon(1e-12));
        // normalized density det(ft_u, ft_v, nu)/det(nu_u, nu_v, nu)
        const FrontJet fj = par->eval(p, 1);
        const Vec3 ftu{fj.f.x.coeff(1, 0), fj.f.y.coeff(1, 0), fj.f.z.coeff(1, 0)};
        const Vec3 ftv{fj.f.x.coeff(0, 1), fj.f.y.coeff(0, 1), fj.f.z.coeff(0, 1)};
        const Vec3 n = value_of(fj.nu);
        const Vec3 nuu{fj.nu.x.coeff(1, 0), fj.nu.y.coeff(1, 0), fj.nu.z.coeff(1, 0)};
        const Vec3 nuv{fj.nu.x.coeff(0, 1), fj.nu.y.coeff(0, 1), fj.nu.z.coeff(0, 1)};
        CHECK(det3(ftu, ftv, n) / det3(nuu, nuv, n) == doctest::Approx(0.25).epsilon(1e-12));
    }

    SUBCASE("t=-1 collapses the unit sphere to the focal point") {
        const auto par = make_parallel(sphere, -1.0);
        const FrontJet fj = par->eval({2.2, 0.7}, 1);
        CHECK(fj.f.x.max_abs_coeff() < 1e-14);
        CHECK(fj.f.y.max_abs_coeff() < 1e-14);
        CHECK(fj.f.z.max_abs_coeff() < 1e-14);
    }

    SUBCASE("parallel identity holds exactly in jet coefficients") {
        const auto torus = make_torus(2.0, 1.0);
        const double t = 0.37;
        const auto par = make_parallel(torus, t);
        const Vec2 p{0.8, 2.2};
        const FrontJet base = torus->eval(p, 3);
        const FrontJet pj = par->eval(p, 3);
        // the stored jets satisfy f_t = f + t nu coefficientwise without error
        const JetVec3 sum = base.f + t * base.nu;
        for (int d = 0; d <= 3; ++d)
            for (int q = 0; q <= d; ++q) {
                CHECK(pj.f.x.coeff(d - q, q) == sum.x.coeff(d - q, q));
                CHECK(pj.f.z.coeff(d - q, q) == sum.z.coeff(d - q, q));
            }
        // hence (f_t)_u = f_u + t nu_u up to one rounding in the derivative
        const JetVec3 expect_u = base.f.du() + t * base.nu.du();
        const JetVec3 got_u = pj.f.du();
        for (int d = 0; d <= 2; ++d)
            for (int q = 0; q <= d; ++q) {
                CHECK(got_u.x.coeff(d - q, q) ==
                      doctest::Approx(expect_u.x.coeff(d - q, q)).epsilon(1e-15));
                CHECK(got_u.z.coeff(d - q, q) ==
                      doctest::Approx(expect_u.z.coeff(d - q, q)).epsilon(1e-15));
            }
    }
}

TEST_CASE("Blaschke data on the unit sphere") {
    const auto sphere = make_sphere(1.0);
    const Vec2 p{1.2, 0.5};
    const AffineData a = blaschke_normal(*sphere, p);

    SUBCASE("affine normal is the reversed position vector") {
        const Vec3 xi = value_of(a.xi);
        const Vec3 f = eval_position(*sphere, p);
        CHECK(norm(xi + f) < 1e-9);
    }
    SUBCASE("Blaschke metric equals the first fundamental form") {
        const FrontJet fj = sphere->eval(p, 1);
        const Vec3 fu{fj.f.x.coeff(1, 0), fj.f.y.coeff(1, 0), fj.f.z.coeff(1, 0)};
        const Vec3 fv{fj.f.x.coeff(0, 1), fj.f.y.coeff(0, 1), fj.f.z.coeff(0, 1)};
        CHECK(a.h[0][0] == doctest::Approx(dot(fu, fu)).epsilon(1e-9));
        CHECK(a.h[0][1] == doctest::Approx(dot(fu, fv)).epsilon(1e-9));
        CHECK(a.h[1][1] == doctest::Approx(dot(fv, fv)).epsilon(1e-9));
    }
    SUBCASE("conormal is the reversed position covector") {
        const Vec3 f = eval_position(*sphere, p);
        CHECK(norm(a.conormal_vec + f) < 1e-9);
    }
    SUBCASE("d(xi) is tangential") {
        const FrontJet fj = sphere->eval(p, 1);
        const Vec3 n = value_of(fj.nu);
        const JetVec3 xiu = a.xi.du();
        const Vec3 xu{xiu.x.value(), xiu.y.value(), xiu.z.value()};
        CHECK(std::abs(dot(xu, n)) < 1e-8 * (1.0 + norm(xu)));
    }
}

TEST_CASE("volume normalization |det(f_u, f_v, xi)| = sqrt(det h)") {
    const auto body = make_rotational_gamma(0.15);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> du(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> dv(-1.2, 1.2);
    for (int k = 0; k < 20; ++k) {
        const Vec2 p{du(rng), dv(rng)};
        const AffineData a = blaschke_normal(*body, p);
        const JetVec3 fuj = a.f.du();
        const JetVec3 fvj = a.f.dv();
        const Vec3 fu{fuj.x.value(), fuj.y.value(), fuj.z.value()};
        const Vec3 fv{fvj.x.value(), fvj.y.value(), fvj.z.value()};
        const Vec3 xi = value_of(a.xi);
        const double omega = det3(fu, fv, xi);
        const double vol_h = std::sqrt(a.h[0][0] * a.h[1][1] - a.h[0][1] * a.h[0][1]);
        CHECK(std::abs(omega) == doctest::Approx(vol_h).epsilon(1e-8));
    }
}

TEST_CASE("conormal pairs with the tangent derivatives as -h") {
    // d(nu*)(f_xj) = -h_ij for the conormal of a convex immersion
    const auto body = make_bumpy(3, 0.03);
    for (Vec2 p : {Vec2{0.7, 0.3}, Vec2{3.9, -0.8}}) {
        const AffineData a = blaschke_normal(*body, p);
        const JetVec3 fuj = a.f.du().truncated(1);
        const JetVec3 fvj = a.f.dv().truncated(1);
        // conormal as jets via nu* = (f_u x f_v) / det(f_u, f_v, xi)
        const JetVec3 w = cross(a.f.du().truncated(1), a.f.dv().truncated(1));
        const Jet2 den = dot(w, a.xi.truncated(1));
        const JetVec3 nuj = w / den;
        const Vec3 fu{fuj.x.value(), fuj.y.value(), fuj.z.value()};
        const Vec3 fv{fvj.x.value(), fvj.y.value(), fvj.z.value()};
        const Vec3 nu_u{nuj.x.coeff(1, 0), nuj.y.coeff(1, 0), nuj.z.coeff(1, 0)};
        const Vec3 nu_v{nuj.x.coeff(0, 1), nuj.y.coeff(0, 1), nuj.z.coeff(0, 1)};
        const double scale = std::abs(a.h[0][0]) + std::abs(a.h[1][1]);
        CHECK(dot(nu_u, fu) == doctest::Approx(-a.h[0][0]).epsilon(1e-8 * scale));
        CHECK(dot(nu_u, fv) == doctest::Approx(-a.h[0][1]).epsilon(1e-8 * scale));
        CHECK(dot(nu_v, fu) == doctest::Approx(-a.h[0][1]).epsilon(1e-8 * scale));
        CHECK(dot(nu_v, fv) == doctest::Approx(-a.h[1][1]).epsilon(1e-8 * scale));
    }
}

TEST_CASE("Blaschke equivariance under unimodular linear maps") {
    const auto body = make_bumpy(7, 0.03);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> shear(-0.4, 0.4);
    std::uniform_real_distribution<double> du(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> dv(-1.1, 1.1);
    for (int trial = 0; trial < 20; ++trial) {
        // product of shears has determinant one
        double A[3][3] = {{1, shear(rng), shear(rng)},
                          {0, 1, shear(rng)},
                          {0, 0, 1}};
        const double l10 = shear(rng), l20 = shear(rng), l21 = shear(rng);
        double B[3][3];
        const double L[3][3] = {{1, 0, 0}, {l10, 1, 0}, {l20, l21, 1}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                B[i][j] = 0.0;
                for (int k = 0; k < 3; ++k) B[i][j] += L[i][k] * A[k][j];
            }
        const auto image = make_linear_image(body, B);
        const Vec2 p{du(rng), dv(rng)};
        const AffineData base = blaschke_normal(*body, p);
        const AffineData mapped = blaschke_normal(*image, p);
        const Vec3 xi = value_of(base.xi);
        const Vec3 expected{B[0][0] * xi.x + B[0][1] * xi.y + B[0][2] * xi.z,
                            B[1][0] * xi.x + B[1][1] * xi.y + B[1][2] * xi.z,
                            B[2][0] * xi.x + B[2][1] * xi.y + B[2][2] * xi.z};
        const Vec3 got = value_of(mapped.xi);
        CHECK(norm(got - expected) < 1e-8 * (1.0 + norm(expected)));
    }
}

TEST_CASE("rotational gamma family") {
    SUBCASE("epsilon >= 1/4 is rejected") {
        CHECK_THROWS_AS(make_rotational_gamma(0.3), RangeError);
        CHECK_THROWS_AS(make_rotational_gamma(0.25), RangeError);
    }
    SUBCASE("epsilon = 0 reduces to the unit sphere") {
        const auto gamma0 = make_rotational_gamma(0.0);
        const auto sphere = make_sphere(1.0);
        for (Vec2 p : {Vec2{0.2, 0.1}, Vec2{2.7, -0.9}, Vec2{4.4, 1.2}}) {
            const Vec3 a = eval_position(*gamma0, p);
            const Vec3 b = eval_position(*sphere, p);
            // same surface up to the axis naming (x <-> z rotation)
            CHECK(norm(a) == doctest::Approx(norm(b)).epsilon(1e-12));
            CHECK(gauss_kronecker(*gamma0, p).gauss_kronecker == doctest::Approx(1.0));
        }
    }
    SUBCASE("paper example body is strictly convex") {
        const auto body = make_rotational_gamma(17.0 / 80.0);
        for (double v = -1.3; v <= 1.3; v += 0.13)
            CHECK(gauss_kronecker(*body, {0.4, v}).gauss_kronecker > 0.0);
    }
    SUBCASE("NotConvex surfaces on a nonconvex region") {
        const auto torus = make_torus(2.0, 1.0);
        CHECK_THROWS_AS(blaschke_normal(*torus, {0.3, kPi}), NotConvex);
    }
}

} // TEST_SUITE
