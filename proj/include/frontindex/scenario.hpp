// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "frontindex/report.hpp"

namespace frontindex {

/// Executes a scenario end to end: builds the configured objects, runs the
/// verifiers, collects strata summaries and (optionally) writes SVG plots
/// into config.out_dir. Module errors during the run become structured
/// warnings; configuration errors still throw.
RunReport run_scenario(const ScenarioConfig& config);

/// Builds the configured surface family (front-based scenarios).
std::shared_ptr<const FrontField> make_family(const ScenarioConfig& config);

} // namespace frontindex
