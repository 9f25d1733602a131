#pragma once

#include <optional>

#include "cgso/types.hpp"

namespace cgso {

/// Outer-loop iterate: position, gradient, value, and the last update step
/// (absent on the very first iteration).
struct SolverState {
  long iteration = 0;
  Vector x;
  Vector gradient;
  double value = 0.0;
  std::optional<Vector> prev_step;
};

} // namespace cgso
