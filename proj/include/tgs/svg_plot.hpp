#pragma once

#include <string>

#include "tgs/convergence.hpp"
#include "tgs/diagnostics.hpp"

namespace tgs {

// Small-multiples line plots of every diagnostics column against time.
void write_diagnostics_svg(const DiagnosticsSeries& series, const std::string& path);

// Log-log error plot of a convergence table with a first-order slope guide.
void write_convergence_svg(const ConvergenceTable& table, const std::string& path);

}  // namespace tgs
