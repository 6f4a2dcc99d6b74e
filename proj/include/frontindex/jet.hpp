// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontindex/errors.hpp"

#include <array>
#include <cassert>
#include <cmath>
#include <ostream>

namespace frontindex {

/// Truncated bivariate Taylor expansion in two chart variables (u, v).
///
/// Coefficient (i, j) stores (d^{i+j} f / du^i dv^j) / (i! j!) at the base
/// point, so the jet is the polynomial sum c_{ij} u^i v^j with all products
/// truncated at the stored order. Storage is dense in graded-lexicographic
/// order: (0,0); (1,0),(0,1); (2,0),(1,1),(0,2); ...
class Jet2 {
public:
    static constexpr int kMaxOrder = 10;
    static constexpr int kMaxCoeffs = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;

    Jet2() : order_(0) { c_.fill(0.0); }

    explicit Jet2(int order) : order_(order) {
        assert(order >= 0 && order <= kMaxOrder);
        c_.fill(0.0);
    }

    static Jet2 constant(double value, int order) {
        Jet2 j(order);
        j.c_[0] = value;
        return j;
    }

    /// value + u (the chart coordinate u as a jet).
    static Jet2 variable_u(double value, int order) {
        Jet2 j(order);
        j.c_[0] = value;
        if (order >= 1) j.c_[index(1, 0)] = 1.0;
        return j;
    }

    /// value + v.
    static Jet2 variable_v(double value, int order) {
        Jet2 j(order);
        j.c_[0] = value;
        if (order >= 1) j.c_[index(0, 1)] = 1.0;
        return j;
    }

    int order() const { return order_; }
    int size() const { return coeff_count(order_); }

    double value() const { return c_[0]; }

    double coeff(int i, int j) const {
        if (i < 0 || j < 0 || i + j > order_) return 0.0;
        return c_[index(i, j)];
    }

    /// Raw partial derivative d^{i+j}/du^i dv^j (coefficient times i! j!).
    double deriv(int i, int j) const {
        return coeff(i, j) * factorial(i) * factorial(j);
    }

    void set_coeff(int i, int j, double value) {
        assert(i >= 0 && j >= 0 && i + j <= order_);
        c_[index(i, j)] = value;
    }

    /// Discards coefficients above `order`.
    Jet2 truncated(int order) const {
        assert(order >= 0);
        if (order >= order_) {
            Jet2 r = *this;
            r.order_ = std::min(order, order_);
            return r;
        }
        Jet2 r(order);
        for (int k = 0; k < r.size(); ++k) r.c_[k] = c_[k];
        return r;
    }

    /// Partial derivative in u as a jet of one order less.
    Jet2 du() const {
        if (order_ == 0) throw OrderExhausted("jet du: order 0");
        Jet2 r(order_ - 1);
        for (int d = 0; d <= r.order_; ++d)
            for (int j = 0; j <= d; ++j) {
                const int i = d - j;
                r.c_[index(i, j)] = (i + 1) * c_[index(i + 1, j)];
            }
        return r;
    }

    /// Partial derivative in v as a jet of one order less.
    Jet2 dv() const {
        if (order_ == 0) throw OrderExhausted("jet dv: order 0");
        Jet2 r(order_ - 1);
        for (int d = 0; d <= r.order_; ++d)
            for (int j = 0; j <= d; ++j) {
                const int i = d - j;
                r.c_[index(i, j)] = (j + 1) * c_[index(i, j + 1)];
            }
        return r;
    }

    /// Evaluates the truncated polynomial at an offset from the base point.
    double eval(double du_off, double dv_off) const {
        double sum = 0.0;
        for (int d = order_; d >= 0; --d)
            for (int j = 0; j <= d; ++j) {
                const int i = d - j;
                sum += c_[index(i, j)] * ipow(du_off, i) * ipow(dv_off, j);
            }
        return sum;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (int k = 0; k < size(); ++k) m = std::max(m, std::abs(c_[k]));
        return m;
    }

    Jet2 operator-() const {
        Jet2 r = *this;
        for (int k = 0; k < r.size(); ++k) r.c_[k] = -r.c_[k];
        return r;
    }

    Jet2& operator+=(const Jet2& rhs) {
        assert(order_ == rhs.order_);
        for (int k = 0; k < size(); ++k) c_[k] += rhs.c_[k];
        return *this;
    }
    Jet2& operator-=(const Jet2& rhs) {
        assert(order_ == rhs.order_);
        for (int k = 0; k < size(); ++k) c_[k] -= rhs.c_[k];
        return *this;
    }
    Jet2& operator*=(double s) {
        for (int k = 0; k < size(); ++k) c_[k] *= s;
        return *this;
    }
    Jet2& operator+=(double s) { c_[0] += s; return *this; }
    Jet2& operator-=(double s) { c_[0] -= s; return *this; }

    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator+(Jet2 a, double s) { return a += s; }
    friend Jet2 operator+(double s, Jet2 a) { return a += s; }
    friend Jet2 operator-(Jet2 a, double s) { return a -= s; }
    friend Jet2 operator-(double s, const Jet2& a) { return (-a) += s; }
    friend Jet2 operator*(Jet2 a, double s) { return a *= s; }
    friend Jet2 operator*(double s, Jet2 a) { return a *= s; }
    friend Jet2 operator/(Jet2 a, double s) { return a *= (1.0 / s); }

    /// Cauchy product truncated at the common order.
    friend Jet2 operator*(const Jet2& a, const Jet2& b) {
        assert(a.order_ == b.order_);
        const int n = a.order_;
        Jet2 r(n);
        for (int da = 0; da <= n; ++da)
            for (int ja = 0; ja <= da; ++ja) {
                const int ia = da - ja;
                const double ca = a.c_[index(ia, ja)];
                if (ca == 0.0) continue;
                for (int db = 0; db + da <= n; ++db)
                    for (int jb = 0; jb <= db; ++jb) {
                        const int ib = db - jb;
                        r.c_[index(ia + ib, ja + jb)] += ca * b.c_[index(ib, jb)];
                    }
            }
        return r;
    }

    /// Division by recursive coefficient solve in graded order.
    friend Jet2 operator/(const Jet2& a, const Jet2& b) {
        assert(a.order_ == b.order_);
        const int n = a.order_;
        const double b0 = b.c_[0];
        if (std::abs(b0) < kDivRelFloor * (1.0 + b.max_abs_coeff()))
            throw DivisionByZeroJet("jet division: constant term vanishes");
        Jet2 r(n);
        r.c_[0] = a.c_[0] / b0;
        for (int d = 1; d <= n; ++d)
            for (int j = 0; j <= d; ++j) {
                const int i = d - j;
                double sum = 0.0;
                // all (p,q) <= (i,j) componentwise, excluding (i,j) itself
                for (int p = 0; p <= i; ++p)
                    for (int q = 0; q <= j; ++q) {
                        if (p == i && q == j) continue;
                        sum += r.c_[index(p, q)] * b.c_[index(i - p, j - q)];
                    }
                r.c_[index(i, j)] = (a.c_[index(i, j)] - sum) / b0;
            }
        return r;
    }

    friend Jet2 operator/(double s, const Jet2& b) {
        return Jet2::constant(s, b.order_) / b;
    }

    friend Jet2 sqrt(const Jet2& a) {
        const int n = a.order_;
        const double a0 = a.c_[0];
        if (a0 <= kDivRelFloor * (1.0 + a.max_abs_coeff()))
            throw NegativeSqrtJet("jet sqrt: constant term not positive");
        Jet2 r(n);
        r.c_[0] = std::sqrt(a0);
        const double inv2r0 = 0.5 / r.c_[0];
        for (int d = 1; d <= n; ++d)
            for (int j = 0; j <= d; ++j) {
                const int i = d - j;
                double sum = 0.0;
                for (int p = 0; p <= i; ++p)
                    for (int q = 0; q <= j; ++q) {
                        if ((p == 0 && q == 0) || (p == i && q == j)) continue;
                        sum += r.c_[index(p, q)] * r.c_[index(i - p, j - q)];
                    }
                r.c_[index(i, j)] = (a.c_[index(i, j)] - sum) * inv2r0;
            }
        return r;
    }

    friend Jet2 sin(const Jet2& a) { return a.compose_trig(true); }
    friend Jet2 cos(const Jet2& a) { return a.compose_trig(false); }

    friend Jet2 exp(const Jet2& a) {
        const int n = a.order_;
        const double e0 = std::exp(a.c_[0]);
        std::array<double, kMaxOrder + 1> g{};
        double fk = 1.0;
        for (int k = 0; k <= n; ++k) {
            g[k] = e0 / fk;
            fk *= (k + 1);
        }
        return a.compose_series(g);
    }

    /// Integer power by repeated squaring; valid for any constant term.
    friend Jet2 pow(const Jet2& a, int e) {
        if (e < 0) return Jet2::constant(1.0, a.order_) / pow(a, -e);
        Jet2 r = Jet2::constant(1.0, a.order_);
        Jet2 base = a;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    /// Real power via the binomial series; requires a positive constant term.
    friend Jet2 pow(const Jet2& a, double e) {
        const int n = a.order_;
        const double a0 = a.c_[0];
        if (a0 <= 0.0) throw NegativeSqrtJet("jet pow: base constant term not positive");
        std::array<double, kMaxOrder + 1> g{};
        double binom = 1.0;
        for (int k = 0; k <= n; ++k) {
            g[k] = binom * std::pow(a0, e - k);
            binom *= (e - k) / (k + 1);
        }
        return a.compose_series(g);
    }

    friend std::ostream& operator<<(std::ostream& os, const Jet2& j) {
        os << "Jet2(order=" << j.order_ << ")[";
        for (int k = 0; k < j.size(); ++k) os << (k ? ", " : "") << j.c_[k];
        return os << "]";
    }

private:
    static constexpr double kDivRelFloor = 1e-14;

    static constexpr int index(int i, int j) {
        const int d = i + j;
        return d * (d + 1) / 2 + j;
    }
    static constexpr int coeff_count(int order) {
        return (order + 1) * (order + 2) / 2;
    }
    static double factorial(int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    }
    static double ipow(double x, int k) {
        double r = 1.0;
        for (int i = 0; i < k; ++i) r *= x;
        return r;
    }

    /// Composes an analytic series g(t) = sum g[k] (t - a0)^k with this jet
    /// by Horner evaluation in jet arithmetic; g[k] = g^(k)(a0)/k!.
    Jet2 compose_series(const std::array<double, kMaxOrder + 1>& g) const {
        const int n = order_;
        Jet2 t = *this;
        t.c_[0] = 0.0; // t = a - a0 has no constant term
        Jet2 r = Jet2::constant(g[n], n);
        for (int k = n - 1; k >= 0; --k) r = r * t + g[k];
        return r;
    }

    Jet2 compose_trig(bool is_sin) const {
        const int n = order_;
        const double s0 = std::sin(c_[0]);
        const double c0 = std::cos(c_[0]);
        std::array<double, kMaxOrder + 1> g{};
        double fk = 1.0;
        for (int k = 0; k <= n; ++k) {
            // k-th derivative of sin cycles (sin, cos, -sin, -cos)
            double dk;
            switch (k % 4) {
                case 0: dk = is_sin ? s0 : c0; break;
                case 1: dk = is_sin ? c0 : -s0; break;
                case 2: dk = is_sin ? -s0 : -c0; break;
                default: dk = is_sin ? -c0 : s0; break;
            }
            g[k] = dk / fk;
            fk *= (k + 1);
        }
        return compose_series(g);
    }

    int order_;
    std::array<double, kMaxCoeffs> c_;
};

/// Derivative of a jet-valued field along a vector field given by chart
/// components: d(field)(dir) = field_u dir_u + field_v dir_v, one order down.
inline Jet2 directional_jet_derivative(const Jet2& field, const Jet2& dir_u, const Jet2& dir_v) {
    if (field.order() == 0)
        throw OrderExhausted("directional_jet_derivative: field has order 0");
    const int n = field.order() - 1;
    return field.du() * dir_u.truncated(n) + field.dv() * dir_v.truncated(n);
}

/// A 3-vector of jets sharing base point and order.
struct JetVec3 {
    Jet2 x, y, z;

    JetVec3() = default;
    JetVec3(Jet2 x_, Jet2 y_, Jet2 z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    int order() const { return x.order(); }

    JetVec3 du() const { return {x.du(), y.du(), z.du()}; }
    JetVec3 dv() const { return {x.dv(), y.dv(), z.dv()}; }
    JetVec3 truncated(int order) const {
        return {x.truncated(order), y.truncated(order), z.truncated(order)};
    }

    friend JetVec3 operator+(const JetVec3& a, const JetVec3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend JetVec3 operator-(const JetVec3& a, const JetVec3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend JetVec3 operator*(const JetVec3& a, const Jet2& s) {
        return {a.x * s, a.y * s, a.z * s};
    }
    friend JetVec3 operator*(const Jet2& s, const JetVec3& a) { return a * s; }
    friend JetVec3 operator*(const JetVec3& a, double s) {
        return {a.x * s, a.y * s, a.z * s};
    }
    friend JetVec3 operator*(double s, const JetVec3& a) { return a * s; }
    friend JetVec3 operator/(const JetVec3& a, const Jet2& s) {
        return {a.x / s, a.y / s, a.z / s};
    }

    friend Jet2 dot(const JetVec3& a, const JetVec3& b) {
        return a.x * b.x + a.y * b.y + a.z * b.z;
    }
    friend JetVec3 cross(const JetVec3& a, const JetVec3& b) {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    friend Jet2 norm(const JetVec3& a) { return sqrt(dot(a, a)); }
    friend JetVec3 normalized(const JetVec3& a) { return a / norm(a); }
};

/// det(a, b, c) for jet 3-vectors (scalar triple product).
inline Jet2 det3(const JetVec3& a, const JetVec3& b, const JetVec3& c) {
    return dot(cross(a, b), c);
}

} // namespace frontindex
