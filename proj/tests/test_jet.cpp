// SPDX-License-Identifier: Apache-2.0
#include "frontindex/jet.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace frontindex;

namespace {

Jet2 random_jet(std::mt19937_64& rng, int order) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    Jet2 j(order);
    for (int d = 0; d <= order; ++d)
        for (int q = 0; q <= d; ++q) j.set_coeff(d - q, q, dist(rng));
    return j;
}

// Swallowtail patch density, closed form. Independent oracle for the
// directional-derivative examples.
double swallowtail_lambda(double u, double v) {
    const double w = 1.0 + u * u + u * u * u * u;
    return 2.0 * (6.0 * u * u + v) * std::sqrt(w);
}

} // namespace

TEST_SUITE("jets") {

TEST_CASE("monomial algebra: square of u") {
    const Jet2 u = Jet2::variable_u(0.0, 2);
    const Jet2 sq = u * u;
    CHECK(sq.coeff(2, 0) == 1.0);
    CHECK(sq.coeff(0, 0) == 0.0);
    CHECK(sq.coeff(1, 0) == 0.0);
    CHECK(sq.coeff(0, 1) == 0.0);
    CHECK(sq.coeff(1, 1) == 0.0);
    CHECK(sq.coeff(0, 2) == 0.0);
}

TEST_CASE("Taylor of sin(u)*cos(v) at origin, order 2") {
    const Jet2 s = sin(Jet2::variable_u(0.0, 2));
    const Jet2 c = cos(Jet2::variable_v(0.0, 2));
    const Jet2 p = s * c;
    CHECK(p.coeff(1, 0) == doctest::Approx(1.0));
    CHECK(p.coeff(1, 1) == doctest::Approx(0.0));
    CHECK(p.coeff(0, 2) == doctest::Approx(0.0));
    CHECK(p.coeff(2, 0) == doctest::Approx(0.0));
}

TEST_CASE("geometric series: 1/(1+u) at origin, order 3") {
    const Jet2 inv = 1.0 / (Jet2::variable_u(0.0, 3) + 1.0);
    CHECK(inv.coeff(0, 0) == doctest::Approx(1.0));
    CHECK(inv.coeff(1, 0) == doctest::Approx(-1.0));
    CHECK(inv.coeff(2, 0) == doctest::Approx(1.0));
    CHECK(inv.coeff(3, 0) == doctest::Approx(-1.0));
}

TEST_CASE("division by a jet with vanishing constant term throws") {
    const Jet2 u = Jet2::variable_u(0.0, 3);
    CHECK_THROWS_AS(1.0 / u, DivisionByZeroJet);
}

TEST_CASE("sqrt of a jet with nonpositive constant term throws") {
    const Jet2 a = Jet2::variable_u(-1.0, 2);
    CHECK_THROWS_AS(sqrt(a), NegativeSqrtJet);
}

TEST_CASE("directional derivative examples") {
    SUBCASE("field u along (1,0) is the constant 1") {
        const Jet2 f = Jet2::variable_u(0.0, 2);
        const Jet2 one = Jet2::constant(1.0, 2);
        const Jet2 zero = Jet2::constant(0.0, 2);
        const Jet2 d = directional_jet_derivative(f, one, zero);
        CHECK(d.value() == doctest::Approx(1.0));
        CHECK(d.max_abs_coeff() == doctest::Approx(1.0));
    }
    SUBCASE("field u^2+v along (0,1) has constant term 1") {
        const Jet2 u = Jet2::variable_u(0.0, 3);
        const Jet2 v = Jet2::variable_v(0.0, 3);
        const Jet2 f = u * u + v;
        const Jet2 d = directional_jet_derivative(f, Jet2::constant(0.0, 3), Jet2::constant(1.0, 3));
        CHECK(d.value() == doctest::Approx(1.0));
    }
    SUBCASE("order-0 field throws OrderExhausted") {
        const Jet2 f = Jet2::constant(1.0, 0);
        CHECK_THROWS_AS(
            directional_jet_derivative(f, Jet2::constant(1.0, 0), Jet2::constant(0.0, 0)),
            OrderExhausted);
    }
}

TEST_CASE("swallowtail density: derivative along du vanishes at origin") {
    // lambda(u,v) = 2(6u^2+v) sqrt(1+u^2+u^4), assembled in jet arithmetic
    const int n = 4;
    const Jet2 u = Jet2::variable_u(0.0, n);
    const Jet2 v = Jet2::variable_v(0.0, n);
    const Jet2 w = 1.0 + u * u + u * u * u * u;
    const Jet2 lambda = 2.0 * (6.0 * u * u + v) * sqrt(w);

    const Jet2 d = directional_jet_derivative(lambda, Jet2::constant(1.0, n), Jet2::constant(0.0, n));
    CHECK(d.value() == doctest::Approx(0.0).epsilon(1e-14));

    // cross-check the jet against the closed form by finite differences
    const double h = 1e-5;
    const double fd = (swallowtail_lambda(h, 0.0) - swallowtail_lambda(-h, 0.0)) / (2.0 * h);
    CHECK(d.value() == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("product rule holds exactly in truncated arithmetic") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int order = 1 + static_cast<int>(rng() % 6);
        const Jet2 a = random_jet(rng, order);
        const Jet2 b = random_jet(rng, order);
        const Jet2 lhs = (a * b).du();
        const Jet2 rhs = a.truncated(order - 1) * b.du() + b.truncated(order - 1) * a.du();
        const double scale = std::max(1.0, std::max(lhs.max_abs_coeff(), rhs.max_abs_coeff()));
        for (int d = 0; d <= order - 1; ++d)
            for (int q = 0; q <= d; ++q)
                CHECK(std::abs(lhs.coeff(d - q, q) - rhs.coeff(d - q, q)) <= 1e-12 * scale);
    }
}

TEST_CASE("composition consistency: first coefficient of sin(a)") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Jet2 a = random_jet(rng, 4);
        const Jet2 s = sin(a);
        const double expected = std::cos(a.value()) * a.coeff(1, 0);
        CHECK(s.coeff(1, 0) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("truncation stability across orders") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Jet2 a_hi = random_jet(rng, 6);
        Jet2 b_hi = random_jet(rng, 6);
        // keep constants usable for div/sqrt
        a_hi.set_coeff(0, 0, 2.0 + std::abs(a_hi.value()));
        b_hi.set_coeff(0, 0, 1.5 + std::abs(b_hi.value()));
        const Jet2 a_lo = a_hi.truncated(3);
        const Jet2 b_lo = b_hi.truncated(3);

        const Jet2 hi = (sqrt(a_hi) * sin(b_hi) + a_hi / b_hi).truncated(3);
        const Jet2 lo = sqrt(a_lo) * sin(b_lo) + a_lo / b_lo;
        for (int d = 0; d <= 3; ++d)
            for (int q = 0; q <= d; ++q)
                CHECK(hi.coeff(d - q, q) == doctest::Approx(lo.coeff(d - q, q)).epsilon(1e-13));
    }
}

TEST_CASE("pow agrees with repeated multiplication and sqrt") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        Jet2 a = random_jet(rng, 5);
        a.set_coeff(0, 0, 1.0 + std::abs(a.value()));
        const Jet2 p3 = pow(a, 3);
        const Jet2 m3 = a * a * a;
        const Jet2 ph = pow(a, 0.5);
        const Jet2 sh = sqrt(a);
        for (int d = 0; d <= 5; ++d)
            for (int q = 0; q <= d; ++q) {
                CHECK(p3.coeff(d - q, q) == doctest::Approx(m3.coeff(d - q, q)).epsilon(1e-12));
                CHECK(ph.coeff(d - q, q) == doctest::Approx(sh.coeff(d - q, q)).epsilon(1e-12));
            }
    }
}

TEST_CASE("exp and division round trip") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const Jet2 a = random_jet(rng, 5);
        const Jet2 e = exp(a);
        const Jet2 back = e / exp(a * 0.5) / exp(a * 0.5);
        CHECK(back.value() == doctest::Approx(1.0).epsilon(1e-12));
        for (int d = 1; d <= 5; ++d)
            for (int q = 0; q <= d; ++q)
                CHECK(back.coeff(d - q, q) == doctest::Approx(0.0).epsilon(1e-10));
    }
}

TEST_CASE("polynomial evaluation matches coefficients") {
    const Jet2 u = Jet2::variable_u(0.5, 4);
    const Jet2 v = Jet2::variable_v(-0.25, 4);
    const Jet2 f = sin(u) * cos(v) + u * v;
    // evaluating at zero offset returns the value at the base point
    CHECK(f.eval(0.0, 0.0) == doctest::Approx(std::sin(0.5) * std::cos(-0.25) - 0.125));
    // small offsets approximate the function to the truncation error
    const double du = 1e-2, dv = -2e-2;
    const double exact = std::sin(0.5 + du) * std::cos(-0.25 + dv) + (0.5 + du) * (-0.25 + dv);
    CHECK(f.eval(du, dv) == doctest::Approx(exact).epsilon(1e-9));
}

} // TEST_SUITE
