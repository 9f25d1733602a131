#pragma once

#include <optional>

#include "cgso/objective.hpp"

namespace cgso {

/// Per-iteration weight sqrt((f(x_j) - f(x_{j+1})) / ||g_j||^2). The drop is
/// clamped at zero: round-off can make it slightly negative, and a zero
/// weight contributes nothing to any ledger. Throws when the gradient
/// vanishes (the outer loop must already have stopped).
double step_weight(double value_drop, const Vector& gradient);

/// f(x_old) - f(x_new), switching between direct subtraction and the
/// second-order Taylor expansion -(g'step + step'H step / 2) at x_old. Direct
/// subtraction is kept while it still carries significant digits
/// (|f_old - f_new| > 1e3 * eps * |f_old|); past that the Taylor form wins.
double stable_value_drop(const Objective& obj, const Vector& x_old,
                         double f_old, const Vector& x_new, double f_new);

/// Running sums for one restart block of a given exponent p: the block spans
/// iterates [start, start + 2^p), anchored at the snapshot x^{start}.
struct BlockLedger {
  int exponent = 0;   // p
  long start = 0;     // r_p
  Vector anchor;      // x^{r_p}
  double anchor_value = 0.0;

  double weight_sum = 0.0;          // sum of weights
  double weighted_gap_sum = 0.0;    // sum of weight * <g, x - anchor>
  Vector weighted_grad_sum;         // sum of weight * g
  double weighted_sq_sum = 0.0;     // sum of weight^2 * ||g||^2

  BlockLedger() = default;
  BlockLedger(int exponent_, long start_, Vector anchor_, double anchor_value_);

  /// Folds one iterate (its weight, gradient, and position) into the sums.
  void accumulate(double weight, const Vector& gradient, const Vector& x);
};

enum class BlockCheck { pass, fail_gap, fail_alignment, fail_both };

inline bool passed(BlockCheck c) { return c == BlockCheck::pass; }

/// Evaluates the two certificate inequalities at a block boundary.
/// value_drop is f(anchor) - f(end) computed by the caller (through
/// stable_value_drop on the driver path). The gap inequality requires
///   (-value_drop / 4) * weight_sum + weighted_gap_sum < 0,
/// the alignment inequality requires
///   ||weighted_grad_sum|| <= rho * sqrt(weighted_sq_sum).
BlockCheck check_block_drop(const BlockLedger& ledger, double value_drop,
                            double rho);

/// Same check from the raw end value, using direct subtraction.
BlockCheck check_block(const BlockLedger& ledger, double end_value, double rho);

/// ||weighted_grad_sum|| / sqrt(weighted_sq_sum), the observed value of the
/// alignment constant for the block; absent when the denominator is zero.
std::optional<double> observed_alignment(const BlockLedger& ledger);

} // namespace cgso
