// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontindex/surface.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace frontindex {

/// Scale data for tolerance computation: max |lambda| over a coarse grid and
/// the chart diameter.
struct FieldScale {
    double lambda_scale = 0.0;
    double length = 1.0;
};

/// Relative tolerance knobs; absolute thresholds come from the field scale.
struct ToleranceModel {
    double sing_rel = 1e-9;
    double dot_rel = 1e-6;
    double ddot_rel = 1e-6;
    double rank_abs = 1e-8;
};

/// Scale-aware classification thresholds.
struct ClassifyTolerances {
    double eps_sing = 0.0;
    double eps_dot = 0.0;
    double eps_ddot = 0.0;
    double eps_rank = 1e-8;

    static ClassifyTolerances from_scale(const FieldScale& s,
                                         const ToleranceModel& m = ToleranceModel{}) {
        ClassifyTolerances t;
        t.eps_sing = m.sing_rel * s.lambda_scale;
        t.eps_dot = m.dot_rel * s.lambda_scale / s.length;
        t.eps_ddot = m.ddot_rel * s.lambda_scale / (s.length * s.length);
        t.eps_rank = m.rank_abs;
        return t;
    }
};

/// A rank-2 bundle homomorphism over a chart, presented through its density
/// lambda (a phi-function whose zero set is the singular set) and a 2x2 frame
/// matrix whose kernel gives null directions.
class HomomorphismField {
public:
    virtual ~HomomorphismField() = default;

    /// Jet of the density at p. Enforces the pole-cap band on sphere charts.
    Jet2 density(Vec2 p, int order) const {
        domain().require_strata_ok(p);
        return density_impl(p, order);
    }

    /// Density without the pole-band guard; used for quadrature over the full
    /// chart and for verifying that pole caps carry no strata.
    Jet2 density_unchecked(Vec2 p, int order) const { return density_impl(p, order); }

    /// Frame matrix of the homomorphism as jets, row-major [m00 m01; m10 m11]
    /// acting on chart vectors (columns indexed by du, dv).
    virtual std::array<Jet2, 4> phi_matrix(Vec2 p, int order) const = 0;

    virtual const SurfaceDomain& domain() const = 0;
    virtual int max_density_order() const { return Jet2::kMaxOrder - 1; }
    virtual std::string name() const = 0;

    const FieldScale& scale() const;
    ClassifyTolerances tolerances() const {
        return ClassifyTolerances::from_scale(scale(), tolerance_model);
    }

    /// Adjustable before first use; scenario configs may override the knobs.
    ToleranceModel tolerance_model;

protected:
    virtual Jet2 density_impl(Vec2 p, int order) const = 0;

private:
    mutable std::once_flag scale_once_;
    mutable FieldScale scale_;
};

/// Point sample of the homomorphism: frame matrix, density, singular-value
/// diagnostics and (when singular) the unit null direction.
struct HomomorphismSample {
    Vec2 p;
    double phi[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double lambda = 0.0;
    double sigma_min = 0.0;
    bool singular = false;
    Vec2 eta{0.0, 0.0}; // unit null direction, valid iff singular
    int eta_column = -1;
};

HomomorphismSample sample_homomorphism(const HomomorphismField& field, Vec2 p);

/// Analytic extension of the null direction: the adjugate column of the frame
/// matrix, normalized at the base point.
struct NullDirection {
    Vec2 eta;       // unit direction at p
    Jet2 eta_u;     // jets of the extension's chart components
    Jet2 eta_v;
    int column = 0; // adjugate column used
    double sign = 1.0;
};

/// Computes the extended null field at a singular point. `forced_column` and
/// `reference` pin the adjugate-column choice and sign for continuity along a
/// traced component (sign is flipped so that dot(eta, reference) >= 0).
NullDirection null_direction(const HomomorphismField& field, Vec2 p, int order,
                             std::optional<int> forced_column = std::nullopt,
                             std::optional<Vec2> reference = std::nullopt);

/// Iterated derivatives of the density along the extended null field.
struct CascadeValues {
    std::vector<double> values; // lambda, lambda', ..., lambda^(k)
    int eta_column = 0;
    double eta_sign = 1.0;
};

CascadeValues lambda_cascade(const HomomorphismField& field, Vec2 p, int depth,
                             std::optional<int> forced_column = std::nullopt,
                             std::optional<Vec2> reference = std::nullopt);

enum class Verdict { Regular, A2, A3, Degenerate };

struct ClassificationResult {
    Verdict verdict = Verdict::Degenerate;
    int sign = 0;            // +1/-1 for A3, else 0
    double lambda = 0.0;
    double lambda_dot = 0.0;  // valid for singular verdicts
    double lambda_ddot = 0.0; // valid when the cascade reached depth 2
    double rank_det = 0.0;    // det d(lambda, lambda_dot)
    std::string note;
};

ClassificationResult classify_point(const HomomorphismField& field, Vec2 p,
                                    const ClassifyTolerances& tol,
                                    std::optional<int> forced_column = std::nullopt,
                                    std::optional<Vec2> reference = std::nullopt);

inline ClassificationResult classify_point(const HomomorphismField& field, Vec2 p) {
    return classify_point(field, p, field.tolerances());
}

// --- sources -----------------------------------------------------------------

/// Homomorphism of a front: lambda = det(f_u, f_v, nu); the frame matrix is
/// df projected onto an orthonormal basis of the normal's complement built
/// from the coordinate axes least aligned with nu.
std::shared_ptr<HomomorphismField>
make_front_homomorphism(std::shared_ptr<const FrontField> front);

/// A chart map between two surface domains, with jets of the two target
/// components; lambda is the Jacobian densitized by the area factors.
struct MapPair {
    SurfaceDomain source;
    SurfaceDomain target;
    std::string name;
    std::function<std::pair<Jet2, Jet2>(Vec2, int)> eval;
};

MapPair torus_self_map(std::string name,
                       std::function<std::pair<Jet2, Jet2>(Vec2, int)> eval);
MapPair torus_fold_map(double amplitude);   // (u, v + a sin v)
MapPair torus_cover_map(int k);             // (k u, v)
MapPair sphere_identity_map();

std::shared_ptr<HomomorphismField> make_map_homomorphism(MapPair map);

/// Synthetic field with prescribed frame-matrix jets; lambda = det(phi).
/// The evaluator receives the chart point and order and fills row-major m.
std::shared_ptr<HomomorphismField>
make_synthetic_homomorphism(SurfaceDomain domain, std::string name,
                            std::function<std::array<Jet2, 4>(Vec2, int)> matrix);

/// Rescales the density by exp(sigma) without touching the frame matrix;
/// verdicts and signs must be invariant under this.
std::shared_ptr<HomomorphismField>
make_scaled_homomorphism(std::shared_ptr<const HomomorphismField> base,
                         std::function<Jet2(Vec2, int)> sigma);

/// Rotates the target frame by a smooth angle field; the zero set, null
/// directions and all verdicts must be unchanged.
std::shared_ptr<HomomorphismField>
make_frame_rotated_homomorphism(std::shared_ptr<const HomomorphismField> base,
                                std::function<Jet2(Vec2, int)> angle);

} // namespace frontindex
