#pragma once

#include <optional>
#include <vector>

#include "cgso/objective.hpp"
#include "cgso/solver.hpp"

namespace cgso {

struct LinearCgResult {
  std::vector<Vector> iterates;        // includes the start point
  std::vector<double> residual_norms;  // ||Ax - b|| alongside each iterate
  bool converged = false;
};

/// Conjugate gradient on the quadratic x'Ax/2 - b'x: the residual recurrence
/// with exact step lengths. Stops at ||r|| <= tol or after n steps. Throws
/// when a search direction certifies that A is not positive definite.
LinearCgResult linear_cg(const Matrix& A, const Vector& b, const Vector& x0,
                         double tol, long max_iterations = 0);

enum class CgVariant { fletcher_reeves, polak_ribiere, hager_zhang, steepest_descent };

std::string cg_variant_name(CgVariant v);

struct LineSearchResult {
  double step = 0.0;
  int function_evaluations = 0;
  int gradient_evaluations = 0;
};

struct LineSearchOptions {
  double c1 = 1e-4; // sufficient-decrease constant
  double c2 = 0.1;  // curvature constant
  int max_probes = 60;
  double initial_step = 1.0;
};

/// Weak-Wolfe line search by bracketing and bisection. Infeasible probes
/// shrink the bracket from above, so every accepted point sits on the
/// feasible segment. Returns nullopt when the probe budget runs out; throws
/// when the direction is not a descent direction.
std::optional<LineSearchResult> wolfe_line_search(
    const Objective& objective, const Vector& x, const Vector& direction,
    const Vector& gradient, double value, const LineSearchOptions& options = {});

struct NonlinearCgOptions {
  double epsilon = 1e-8;
  long max_iterations = 0; // 0 -> 50 * n
  LineSearchOptions line_search;
  // Closed-form step -<g,d>/<d,Hd> instead of the Wolfe search; exact on
  // quadratics, where it makes the FR variant reproduce linear CG.
  bool exact_line_search = false;
  int stall_window = 40;
};

/// Nonlinear CG with the selected update rule (steepest descent = zero
/// momentum). Line-search failures restart along the negative gradient; a
/// second failure terminates the run as stalled.
SolveReport nonlinear_cg(const Objective& objective, const Vector& start,
                         CgVariant variant, const NonlinearCgOptions& options = {});

} // namespace cgso
