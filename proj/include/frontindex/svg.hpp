// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontindex/strata.hpp"

#include <string>
#include <vector>

namespace frontindex {

/// Strata picture on the chart rectangle: singular curves colored by the
/// sign of lambda_dot, A3 points marked by sign, with a legend.
std::string svg_strata_plot(const SurfaceDomain& domain,
                            const std::vector<SingularCurve>& curves,
                            const std::vector<SignedA3Point>& a3,
                            const std::string& title);

/// A plane-curve figure (profile curves of rotational bodies and of their
/// Blaschke normal maps). Each entry is a labelled polyline.
struct ProfileCurve {
    std::string label;
    std::string color;
    std::vector<Vec2> points; // (axis coordinate, radial coordinate)
};

std::string svg_profile_plot(const std::vector<ProfileCurve>& profiles,
                             const std::string& title);

void write_text_file(const std::string& path, const std::string& content);

} // namespace frontindex
