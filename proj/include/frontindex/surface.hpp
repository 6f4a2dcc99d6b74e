// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontindex/errors.hpp"
#include "frontindex/geom.hpp"
#include "frontindex/jet.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace frontindex {

enum class DomainKind { Torus, SphereChart, Patch };

/// Chart rectangle of a closed surface (or an open test patch) together
/// with its topology. Strata computations on the sphere chart stay inside
/// the band |v| <= pi/2 - pole_cap; the two pole caps are accounted for as
/// disks of known sign.
struct SurfaceDomain {
    DomainKind kind = DomainKind::Torus;
    double u_min = 0.0, u_max = 2.0 * std::numbers::pi;
    double v_min = 0.0, v_max = 2.0 * std::numbers::pi;
    bool u_periodic = true;
    bool v_periodic = true;
    double pole_cap = 0.0;
    int euler_char = 0;

    static SurfaceDomain torus() {
        return SurfaceDomain{};
    }
    static SurfaceDomain sphere_chart(double pole_cap = 0.2) {
        SurfaceDomain d;
        d.kind = DomainKind::SphereChart;
        d.u_min = 0.0;
        d.u_max = 2.0 * std::numbers::pi;
        d.v_min = -0.5 * std::numbers::pi;
        d.v_max = 0.5 * std::numbers::pi;
        d.u_periodic = true;
        d.v_periodic = false;
        d.pole_cap = pole_cap;
        d.euler_char = 2;
        return d;
    }
    static SurfaceDomain patch(double u0, double u1, double v0, double v1) {
        SurfaceDomain d;
        d.kind = DomainKind::Patch;
        d.u_min = u0;
        d.u_max = u1;
        d.v_min = v0;
        d.v_max = v1;
        d.u_periodic = false;
        d.v_periodic = false;
        d.euler_char = 1;
        return d;
    }

    double u_range() const { return u_max - u_min; }
    double v_range() const { return v_max - v_min; }
    double diameter() const { return std::hypot(u_range(), v_range()); }

    /// v-extent available to strata tracing (pole caps excluded on spheres).
    double strata_v_min() const {
        return kind == DomainKind::SphereChart ? v_min + pole_cap : v_min;
    }
    double strata_v_max() const {
        return kind == DomainKind::SphereChart ? v_max - pole_cap : v_max;
    }

    bool in_strata_band(Vec2 p) const {
        if (kind != DomainKind::SphereChart) return true;
        return p.v >= strata_v_min() && p.v <= strata_v_max();
    }

    void require_strata_ok(Vec2 p) const {
        if (!in_strata_band(p))
            throw PoleProximity("point at v=" + std::to_string(p.v) +
                                " lies within the pole cap band");
    }

    /// Wraps periodic coordinates back into the chart rectangle.
    Vec2 canonical(Vec2 p) const {
        Vec2 q = p;
        if (u_periodic) q.u = u_min + wrap_periodic(q.u - u_min, u_range());
        if (v_periodic) q.v = v_min + wrap_periodic(q.v - v_min, v_range());
        return q;
    }
};

/// Jets of the parametrization and of its unit normal at one chart point.
struct FrontJet {
    JetVec3 f;
    JetVec3 nu;
};

/// A parametrized wave front: evaluator of (f, nu) jets plus domain topology.
/// The unit normal is carried analytically per family and stays smooth across
/// singular points of f.
class FrontField {
public:
    virtual ~FrontField() = default;

    virtual FrontJet eval(Vec2 p, int order) const = 0;
    virtual int max_order() const { return Jet2::kMaxOrder; }
    virtual std::string family() const = 0;

    const SurfaceDomain& domain() const { return domain_; }

    /// max |f| over a coarse sample; used for scale-aware thresholds.
    double bounding_radius() const;

protected:
    explicit FrontField(SurfaceDomain d) : domain_(d) {}
    SurfaceDomain domain_;

private:
    mutable std::once_flag radius_once_;
    mutable double bounding_radius_ = 0.0;
};

/// Principal curvatures and the chart-frame Weingarten matrix W defined by
/// d(nu)(e_i) = -sum_k W[k][i] df(e_k).
struct CurvatureData {
    double mu1 = 0.0, mu2 = 0.0; // principal curvatures, mu1 <= mu2
    double gauss_kronecker = 0.0;
    double shape[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

/// Blaschke (equiaffine) data of a strictly convex immersion at a point.
struct AffineData {
    Vec2 p;
    double h[2][2] = {{0.0, 0.0}, {0.0, 0.0}}; // Blaschke metric, chart frame
    JetVec3 xi;        // affine normal jets at p
    JetVec3 f;         // base immersion jets (one order above xi)
    JetVec3 nu;        // Euclidean unit normal jets
    double shape[2][2] = {{0.0, 0.0}, {0.0, 0.0}}; // xi_{x_i} = df(S e_i)
    Vec3 conormal_vec; // nu* with nu*(xi)=1, nu*(df)=0 (dot-product pairing)
};

// --- catalog ---------------------------------------------------------------

std::shared_ptr<const FrontField> make_sphere(double radius);
std::shared_ptr<const FrontField> make_torus(double R, double r);
std::shared_ptr<const FrontField> make_bumpy(std::uint64_t seed, double amplitude,
                                             double pole_cap = 0.2);
std::shared_ptr<const FrontField> make_rotational_gamma(double epsilon,
                                                        double pole_cap = 0.2);
std::shared_ptr<const FrontField> make_swallowtail_patch();

/// Parallel front f_t = f + t nu; shares the unit normal with the base.
std::shared_ptr<const FrontField> make_parallel(std::shared_ptr<const FrontField> base,
                                                double t);

/// The Blaschke normal map of a strictly convex base as a wave front: the
/// position is the affine normal, the unit normal is the base's Euclidean
/// normal (which annihilates the image of d(xi)).
std::shared_ptr<const FrontField> make_blaschke_front(std::shared_ptr<const FrontField> base);

/// Image of a front under a constant linear map A (columns row-major);
/// normals transform by the inverse transpose, renormalized.
std::shared_ptr<const FrontField> make_linear_image(std::shared_ptr<const FrontField> base,
                                                    const double A[3][3]);

// --- operations ------------------------------------------------------------

/// Evaluates a front; identical to field.eval but kept as the public entry.
inline FrontJet eval_front(const FrontField& field, Vec2 p, int order) {
    return field.eval(p, order);
}

CurvatureData gauss_kronecker(const FrontField& field, Vec2 p);

AffineData blaschke_normal(const FrontField& field, Vec2 p);

/// Solves nu*(xi) = 1, nu*(f_u) = nu*(f_v) = 0 as a 3x3 linear system.
Vec3 conormal(const AffineData& affine);

} // namespace frontindex
