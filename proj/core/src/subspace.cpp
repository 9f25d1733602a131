#include "cgso/subspace.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

#include "cgso/ellipsoid.hpp"

namespace cgso {

namespace {

constexpr double kIndependenceTol = 1e-10;

// Modified Gram-Schmidt residual test against the orthonormal shadow of the
// retained columns. Candidates arrive with unit norm.
bool independent(const std::vector<Vector>& ortho, const Vector& unit,
                 Vector& residual) {
  residual = unit;
  for (const Vector& u : ortho) residual -= u.dot(residual) * u;
  for (const Vector& u : ortho) residual -= u.dot(residual) * u;
  return residual.norm() > kIndependenceTol;
}

} // namespace

SubspaceProblem build_basis(const SolverState& state,
                            const CorrectionSet& corrections,
                            const Objective& objective,
                            bool include_grad_accumulator) {
  std::vector<Vector> columns;
  std::vector<Vector> ortho;
  Vector residual;

  auto try_add = [&](const Vector& candidate) {
    const double norm = candidate.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) return;
    const Vector unit = candidate / norm;
    if (!independent(ortho, unit, residual)) return;
    columns.push_back(unit);
    ortho.push_back(residual / residual.norm());
  };

  try_add(state.gradient);
  if (state.prev_step) try_add(*state.prev_step);
  for (const BlockLedger* ledger : corrections) {
    if (include_grad_accumulator) try_add(ledger->weighted_grad_sum);
    try_add(state.x - ledger->anchor);
  }

  SubspaceProblem problem;
  problem.objective = &objective;
  problem.base = state.x;
  problem.base_value = state.value;
  problem.basis.resize(state.x.size(), static_cast<Index>(columns.size()));
  for (Index k = 0; k < problem.basis.cols(); ++k) {
    problem.basis.col(k) = columns[static_cast<std::size_t>(k)];
  }
  problem.inner_tol = (problem.basis.transpose() * state.gradient).norm() / 100.0;
  return problem;
}

std::optional<double> reduced_value(const SubspaceProblem& problem,
                                    const Vector& y) {
  return problem.objective->value(problem.lift(y));
}

std::optional<ReducedSlope> reduced_slope(const SubspaceProblem& problem,
                                          const Vector& y) {
  const Vector x = problem.lift(y);
  const auto value = problem.objective->value(x);
  if (!value) return std::nullopt;
  ReducedSlope out;
  out.value = *value;
  out.gradient = problem.basis.transpose() * *problem.objective->gradient(x);
  return out;
}

std::optional<ReducedPoint> reduced_eval(const SubspaceProblem& problem,
                                         const Vector& y) {
  const Vector x = problem.lift(y);
  const auto value = problem.objective->value(x);
  if (!value) return std::nullopt;

  ReducedPoint out;
  out.value = *value;
  out.gradient = problem.basis.transpose() * *problem.objective->gradient(x);

  const Index k = problem.reduced_dim();
  Matrix h(k, k);
  for (Index col = 0; col < k; ++col) {
    const Vector hv = *problem.objective->hessian_vec(x, problem.basis.col(col));
    h.col(col) = problem.basis.transpose() * hv;
  }
  out.hessian = 0.5 * (h + h.transpose());
  return out;
}

NewtonResult newton_solve(const SubspaceProblem& problem, int max_iterations) {
  NewtonResult result;
  result.y = Vector::Zero(problem.reduced_dim());
  result.value = problem.base_value;

  auto fail = [&](NewtonFailure reason) {
    result.success = false;
    result.failure = reason;
    return result;
  };

  for (;;) {
    const auto point = reduced_eval(problem, result.y);
    if (!point) return fail(NewtonFailure::infeasible_iterate);
    if (!point->gradient.allFinite() || !point->hessian.allFinite()) {
      return fail(NewtonFailure::non_finite);
    }
    if (point->gradient.norm() <= problem.inner_tol) {
      if (result.value > problem.base_value) {
        return fail(NewtonFailure::value_increase);
      }
      result.success = true;
      return result;
    }
    if (result.iterations >= max_iterations) {
      return fail(NewtonFailure::iteration_limit);
    }

    Eigen::LLT<Matrix> llt(point->hessian);
    if (llt.info() != Eigen::Success) {
      return fail(NewtonFailure::not_positive_definite);
    }
    const Vector next = result.y - llt.solve(point->gradient);
    const auto next_value = reduced_value(problem, next);
    if (!next_value) return fail(NewtonFailure::infeasible_iterate);
    if (!std::isfinite(*next_value)) return fail(NewtonFailure::non_finite);
    result.y = next;
    result.value = *next_value;
    ++result.iterations;
  }
}

SubspaceResult solve_subproblem(const SubspaceProblem& problem,
                                const EllipsoidOptions& fallback) {
  SubspaceResult out;
  const NewtonResult newton = newton_solve(problem);
  out.newton_iterations = newton.iterations;

  if (newton.success) {
    out.y = newton.y;
    out.value = newton.value;
    out.method = InnerMethod::newton;
  } else {
    const EllipsoidOutcome ellipsoid = ellipsoid_minimize(problem, fallback);
    out.ellipsoid_iterations = ellipsoid.iterations;
    out.y = ellipsoid.y;
    out.value = ellipsoid.value;
    out.method = InnerMethod::ellipsoid;
  }

  // y = 0 is always a candidate; never return anything above the base value.
  if (out.value > problem.base_value) {
    out.y = Vector::Zero(problem.reduced_dim());
    out.value = problem.base_value;
  }
  out.x = problem.lift(out.y);
  return out;
}

SubspaceResult solve_subproblem(const SubspaceProblem& problem) {
  return solve_subproblem(problem, EllipsoidOptions{});
}

} // namespace cgso
