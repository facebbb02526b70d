#pragma once

#include <string>

#include "autotune/bench.hpp"

namespace autotune {

// Accuracy-vs-time (or RMSE-vs-time) scatter, one panel per dataset.
// Returns a standalone SVG 1.1 document.
std::string render_benchmark_svg(const BenchReport& report);

}  // namespace autotune
