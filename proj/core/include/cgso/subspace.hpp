#pragma once

#include <optional>
#include <vector>

#include "cgso/certificates.hpp"
#include "cgso/objective.hpp"
#include "cgso/solver_state.hpp"

namespace cgso {

/// Active correction blocks, ascending in exponent. Each ledger supplies the
/// weighted gradient accumulator and the block anchor for two extra basis
/// columns.
using CorrectionSet = std::vector<const BlockLedger*>;

/// The reduced problem min_y f(base + basis * y). Columns of basis have unit
/// norm and passed the independence filter; inner_tol is the gradient-norm
/// target for the inner solver.
struct SubspaceProblem {
  const Objective* objective = nullptr;
  Vector base;
  double base_value = 0.0;
  Matrix basis; // n x K
  double inner_tol = 0.0;

  Index reduced_dim() const { return basis.cols(); }
  Vector lift(const Vector& y) const { return base + basis * y; }
};

/// Assembles the search basis for the current iterate: the gradient, the
/// previous step, and for every active correction block its weighted gradient
/// sum and the displacement from the block anchor. Candidates are normalized;
/// a candidate is dropped when its residual after projection onto the columns
/// already retained has norm <= 1e-10. The gradient accumulator columns can
/// be switched off (keeping only the displacements).
SubspaceProblem build_basis(const SolverState& state,
                            const CorrectionSet& corrections,
                            const Objective& objective,
                            bool include_grad_accumulator = true);

struct ReducedPoint {
  double value = 0.0;
  Vector gradient; // basis' * grad f
  Matrix hessian;  // basis' * hess f * basis, symmetrized
};

struct ReducedSlope {
  double value = 0.0;
  Vector gradient;
};

/// Full reduced evaluation (value, gradient, Hessian via one Hessian-vector
/// product per basis column); nullopt when base + basis*y is infeasible.
std::optional<ReducedPoint> reduced_eval(const SubspaceProblem& problem,
                                         const Vector& y);

std::optional<ReducedSlope> reduced_slope(const SubspaceProblem& problem,
                                          const Vector& y);

std::optional<double> reduced_value(const SubspaceProblem& problem,
                                    const Vector& y);

enum class NewtonFailure {
  none,
  infeasible_iterate,
  not_positive_definite,
  iteration_limit,
  value_increase,
  non_finite,
};

struct NewtonResult {
  bool success = false;
  NewtonFailure failure = NewtonFailure::none;
  Vector y;
  double value = 0.0;
  int iterations = 0;
};

/// Undamped Newton from y = 0. Succeeds when the reduced gradient norm
/// reaches inner_tol within the iteration budget with every iterate feasible
/// and the final value not above the base value; any other outcome reports
/// the failure reason so the caller can fall back to the ellipsoid method.
NewtonResult newton_solve(const SubspaceProblem& problem,
                          int max_iterations = 15);

enum class InnerMethod { newton, ellipsoid };

struct SubspaceResult {
  Vector y;
  Vector x;
  double value = 0.0;
  InnerMethod method = InnerMethod::newton;
  int newton_iterations = 0;
  long ellipsoid_iterations = 0;
};

struct EllipsoidOptions; // see cgso/ellipsoid.hpp

/// Newton with ellipsoid fallback; returns the best of {Newton result (when
/// successful), ellipsoid incumbent, y = 0}, so the value never exceeds the
/// base value. Ties prefer Newton.
SubspaceResult solve_subproblem(const SubspaceProblem& problem,
                                const EllipsoidOptions& fallback);
SubspaceResult solve_subproblem(const SubspaceProblem& problem);

} // namespace cgso
