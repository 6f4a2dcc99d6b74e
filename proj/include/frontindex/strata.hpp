// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontindex/homomorphism.hpp"

#include <vector>

namespace frontindex {

/// One connected component of the singular set {lambda = 0}, traced as an
/// ordered polyline. Closed on torus/sphere domains; open arcs only appear
/// in patch test mode.
struct SingularCurve {
    std::vector<Vec2> points;
    std::vector<double> lambda_dot; // along the unit extended null field
    bool closed = true;
    int component_id = 0;
    int eta_column = 0;      // adjugate column chosen at the seed
    double eta_seed_sign = 1.0;
    int winding_u = 0;       // chart homology class (torus wrap counts)
    int winding_v = 0;
};

struct SignedA3Point {
    Vec2 p;
    int sign = 0;
    double lambda_ddot = 0.0;
    double rank_det = 0.0;
    int component_id = 0;
};

struct RegionComponent {
    int sign = 0;
    long vertices = 0, edges = 0, faces = 0;
    int boundary_loops = 0;
    int caps = 0; // sphere pole caps merged into this component
    int euler_char = 0;
};

struct RegionComplex {
    int grid_u = 0, grid_v = 0;
    std::vector<RegionComponent> components;
    int chi_plus = 0;
    int chi_minus = 0;
};

std::vector<SingularCurve> trace_singular_set(const HomomorphismField& field, int grid);

std::vector<SignedA3Point> locate_a3(const SingularCurve& curve,
                                     const HomomorphismField& field);

RegionComplex region_complex(const HomomorphismField& field, int grid,
                             const std::vector<SingularCurve>& curves);

/// Full stratification pipeline sharing one grid evaluation: traced curves,
/// signed A3 points, and the signed region complex.
struct StrataReport {
    std::vector<SingularCurve> curves;
    std::vector<SignedA3Point> a3;
    RegionComplex regions;
    int a3_plus = 0;
    int a3_minus = 0;
};

StrataReport run_strata(const HomomorphismField& field, int grid);

} // namespace frontindex
