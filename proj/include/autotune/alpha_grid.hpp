#pragma once

#include "autotune/objective.hpp"
#include "autotune/optimize.hpp"

namespace autotune {

// Elastic net baseline: for each mixing weight alpha in {0, 0.1, ..., 1.0}
// fit the full lambda path on every fold with warm starts, pick that alpha's
// lambda by the given rule (lowest mean cv loss at the largest qualifying
// lambda, or the one-standard-error variant), and return the best pair
// overall. The trace holds exactly the eleven per-alpha candidates.
// Requires an elastic net objective with a cross validation strategy.
TuneResult grid_alpha_lambda(const Objective& objective, LambdaRule rule);

}  // namespace autotune
