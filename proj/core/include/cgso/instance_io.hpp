#pragma once

#include <string>

#include "cgso/instance.hpp"

namespace cgso {

/// Writes an instance as JSON: a header {family, m, n, d, m_f, ds, seed,
/// epsilon}, 0-indexed sparse triplets [row, col, value] for A (f1/f3,
/// quadratic) or C (f2), and dense arrays for b or c plus the start point x0.
void save_instance(const std::string& path, const GeneratedInstance& inst);

GeneratedInstance load_instance(const std::string& path);

} // namespace cgso
