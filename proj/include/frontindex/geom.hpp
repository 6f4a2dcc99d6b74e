// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace frontindex {

/// A chart point (u, v).
struct Vec2 {
    double u = 0.0;
    double v = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.u + b.u, a.v + b.v}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.u - b.u, a.v - b.v}; }
    friend Vec2 operator*(Vec2 a, double s) { return {a.u * s, a.v * s}; }
    friend Vec2 operator*(double s, Vec2 a) { return a * s; }
    friend double dot(Vec2 a, Vec2 b) { return a.u * b.u + a.v * b.v; }
    friend double norm(Vec2 a) { return std::hypot(a.u, a.v); }
};

/// An ambient point or vector in R^3.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
    friend Vec3 operator*(double s, Vec3 a) { return a * s; }
    friend double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    friend Vec3 cross(Vec3 a, Vec3 b) {
        return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    }
    friend double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
    friend Vec3 normalized(Vec3 a) { return a * (1.0 / norm(a)); }
};

inline double det3(Vec3 a, Vec3 b, Vec3 c) { return dot(cross(a, b), c); }

/// Wraps x into [0, period).
inline double wrap_periodic(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    return r;
}

/// Signed difference a - b wrapped into (-period/2, period/2].
inline double wrapped_diff(double a, double b, double period) {
    double d = std::fmod(a - b, period);
    if (d > 0.5 * period) d -= period;
    if (d <= -0.5 * period) d += period;
    return d;
}

} // namespace frontindex
