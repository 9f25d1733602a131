#pragma once

#include <vector>

#include "cgso/subspace.hpp"

namespace cgso {

struct EllipsoidOptions {
  double radius = 1.0;             // initial ball radius around y = 0
  long max_iterations = 0;         // 0 -> 200 * K
  double volume_tol_scale = 1e-12; // cut-width tolerance, scaled by 1 + |f(base)|
  bool record_contraction = false; // keep det(P+)/det(P) per update
};

/// Center and shape matrix of the current ellipsoid plus the incumbent.
struct EllipsoidState {
  Vector center;
  Matrix shape; // symmetric positive definite
  Vector best_point;
  double best_value = 0.0;
  long iterations = 0;
};

enum class EllipsoidStop {
  gradient_tol,
  volume_tol,
  iteration_limit,
  breakdown,
};

struct EllipsoidOutcome {
  Vector y;
  double value = 0.0;
  long iterations = 0;
  EllipsoidStop stop = EllipsoidStop::iteration_limit;
  std::vector<double> contraction; // measured det ratios when recorded
};

/// One central-cut update (K >= 2): shifts the center against the cut and
/// shrinks the shape matrix, re-symmetrizing it. Returns false on numerical
/// breakdown (nonpositive cut norm in the shape metric).
bool ellipsoid_step(EllipsoidState& state, const Vector& cut);

/// Central-cut ellipsoid method on the reduced problem, starting from the
/// ball of the configured radius around y = 0 (feasible by construction).
/// Feasible centers contribute objective cuts and update the incumbent;
/// infeasible centers contribute feasibility cuts. K = 1 degenerates to
/// bisection. The incumbent is returned whatever the stopping reason.
EllipsoidOutcome ellipsoid_minimize(const SubspaceProblem& problem,
                                    const EllipsoidOptions& options = {});

/// Reduced-space separating direction at an infeasible y: every feasible y'
/// satisfies <h, y' - y> < 0. Throws std::logic_error on feasible points.
Vector feasibility_cut(const SubspaceProblem& problem, const Vector& y);

} // namespace cgso
