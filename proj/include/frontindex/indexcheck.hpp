// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontindex/strata.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace frontindex {

/// Mapping degree: midpoint quadrature of the pulled-back area form with one
/// Richardson refinement, plus an optional signed preimage count.
struct DegreeResult {
    double raw = 0.0;        // Richardson-extrapolated value
    double raw_midpoint = 0.0; // plain midpoint value at the requested grid
    long rounded = 0;
    double residual = 0.0;   // |raw - rounded|
    std::optional<long> preimage_count;
};

DegreeResult gauss_degree(const FrontField& front, int grid, bool preimage_oracle = false,
                          std::uint64_t seed = 20240915u);

DegreeResult map_degree(const MapPair& map, int grid, bool preimage_oracle = false,
                        std::uint64_t seed = 20240915u);

/// A tangent vector field on the torus chart, as jets of its components.
struct ChartVectorField {
    SurfaceDomain domain;
    std::string name;
    std::function<std::pair<Jet2, Jet2>(Vec2, int)> eval;
};

/// A tangent vector field on the round sphere given in ambient form:
/// V(P) with <V(P), P> = 0 for |P| = 1, evaluable in jet arithmetic.
struct AmbientSphereField {
    std::string name;
    std::function<JetVec3(const JetVec3&)> eval;
};

struct VectorFieldZero {
    Vec2 chart_point;   // chart of the zero (torus chart or stereographic)
    Vec3 ambient_point; // sphere fields only
    int index = 0;      // sgn det of the Jacobian at the zero
    int winding = 0;    // boundary-circulation winding oracle (when computed)
};

struct VectorFieldZeroReport {
    std::vector<VectorFieldZero> zeros;
    int index_sum = 0;
};

VectorFieldZeroReport poincare_hopf(const ChartVectorField& field,
                                    bool winding_oracle = false);
VectorFieldZeroReport poincare_hopf_sphere(const AmbientSphereField& field,
                                           bool winding_oracle = false);

/// One verified identity: integer left side, stratification right side.
struct FormulaReport {
    std::string theorem; // FrontIndex, QuineMorin, BleeckerWilson, Parallel, BlaschkeB
    long lhs = 0;
    long rhs = 0;
    long residual = 0;
    int chi_plus = 0, chi_minus = 0;
    int a3_plus = 0, a3_minus = 0;
    DegreeResult degree;
    int curve_count = 0;
};

/// 2 deg(nu) = chi(M+) - chi(M-) + #A3+ - #A3-.
FormulaReport verify_front_formula(std::shared_ptr<const FrontField> front, int grid,
                                   bool oracle = false);

/// deg(f) chi(N) = chi(M+) - chi(M-) + #A3+ - #A3-.
FormulaReport verify_morin_map_formula(const MapPair& map, int grid, bool oracle = false);

/// Parallel front of a convex immersion: 2 chi(M-) = #A3+ - #A3-, plus the
/// pointwise identity lambda_t K_t = 1 on the regular mask.
FormulaReport verify_parallel_formula(std::shared_ptr<const FrontField> base, double t,
                                      int grid, bool oracle = false);

/// Blaschke normal map of a convex immersion: 2 chi(M-) = #A3+ - #A3-.
FormulaReport verify_blaschke_formula(std::shared_ptr<const FrontField> base, int grid,
                                      bool oracle = false);

/// Degree identity 2 deg(nu) = chi(M) for immersed closed surfaces.
FormulaReport verify_bleecker_wilson(std::shared_ptr<const FrontField> immersion, int grid);

/// Max |lambda_t K_t - 1| over regular samples of a parallel front
/// (K_t from the base principal curvatures, lambda_t in the normal-pullback
/// frame). Samples where the smallest singular value of df_t is below
/// `mask_floor` are skipped.
double parallel_identity_error(const FrontField& base, double t, int samples,
                               double mask_floor = 1e-4);

} // namespace frontindex
