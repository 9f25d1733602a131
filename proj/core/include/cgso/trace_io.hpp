#pragma once

#include <string>

#include "cgso/solver.hpp"

namespace cgso {

/// Shortest round-trip decimal rendering ("%.17g"), shared by every CSV and
/// JSON writer so reruns stay byte-identical.
std::string format_double(double v);

/// Per-iteration trace: solver, iteration, value, gradient norm, subspace
/// dimension (empty outside CGSO), inner method, inner iterations, inner
/// tolerance.
void write_trace_csv(const std::string& path, const SolveReport& report);

/// Per-block boundary rows: exponent, block range, corrected/checked flags,
/// certificate outcomes, and the observed alignment ratio (empty when the
/// block had no weighted gradient mass).
void write_blocks_csv(const std::string& path, const SolveReport& report);

} // namespace cgso
