#include "cgso/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cgso {

std::string cg_variant_name(CgVariant v) {
  switch (v) {
    case CgVariant::fletcher_reeves: return "cg_fr";
    case CgVariant::polak_ribiere: return "cg_pr";
    case CgVariant::hager_zhang: return "cg_hz";
    case CgVariant::steepest_descent: return "sd";
  }
  return "unknown";
}

LinearCgResult linear_cg(const Matrix& A, const Vector& b, const Vector& x0,
                         double tol, long max_iterations) {
  const long cap = max_iterations > 0 ? max_iterations : b.size();

  LinearCgResult out;
  Vector x = x0;
  Vector r = A * x - b;
  Vector d = -r;
  out.iterates.push_back(x);
  out.residual_norms.push_back(r.norm());

  for (long it = 0; it < cap; ++it) {
    if (r.norm() <= tol) {
      out.converged = true;
      return out;
    }
    const Vector ad = A * d;
    const double curvature = d.dot(ad);
    if (curvature <= 0.0) {
      throw std::invalid_argument("linear_cg: matrix is not positive definite");
    }
    const double alpha = -r.dot(d) / curvature;
    x += alpha * d;
    r += alpha * ad;
    d = -r + (r.dot(ad) / curvature) * d;
    out.iterates.push_back(x);
    out.residual_norms.push_back(r.norm());
  }
  out.converged = r.norm() <= tol;
  return out;
}

std::optional<LineSearchResult> wolfe_line_search(
    const Objective& objective, const Vector& x, const Vector& direction,
    const Vector& gradient, double value, const LineSearchOptions& options) {
  const double slope0 = gradient.dot(direction);
  if (slope0 >= 0.0) {
    throw std::invalid_argument("wolfe_line_search: not a descent direction");
  }

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double alpha = options.initial_step > 0.0 ? options.initial_step : 1.0;
  int fev = 0;
  int gev = 0;

  for (int probe = 0; probe < options.max_probes; ++probe) {
    const Vector trial = x + alpha * direction;
    ++fev;
    const auto trial_value = objective.value(trial);
    if (!trial_value || !std::isfinite(*trial_value)) {
      hi = alpha; // infeasible or overflowed: back off to the feasible segment
    } else if (*trial_value > value + options.c1 * alpha * slope0) {
      hi = alpha;
    } else {
      ++gev;
      const double slope = objective.gradient(trial)->dot(direction);
      if (slope < options.c2 * slope0) {
        lo = alpha;
      } else {
        return LineSearchResult{alpha, fev, gev};
      }
    }
    alpha = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * alpha;
  }
  return std::nullopt;
}

namespace {

double momentum_coefficient(CgVariant variant, const Vector& g_new,
                            const Vector& g_old, const Vector& d) {
  switch (variant) {
    case CgVariant::steepest_descent:
      return 0.0;
    case CgVariant::fletcher_reeves:
      return g_new.squaredNorm() / g_old.squaredNorm();
    case CgVariant::polak_ribiere:
      return g_new.dot(g_new - g_old) / g_old.squaredNorm();
    case CgVariant::hager_zhang: {
      // CG_DESCENT update with the eta-truncation from the published method.
      const Vector y = g_new - g_old;
      const double dy = d.dot(y);
      const double eta = 0.01;
      const double floor_term =
          -1.0 / (d.norm() * std::min(eta, g_old.norm()));
      if (dy == 0.0) return floor_term;
      const double beta =
          (y - (2.0 * y.squaredNorm() / dy) * d).dot(g_new) / dy;
      return std::max(beta, floor_term);
    }
  }
  return 0.0;
}

} // namespace

SolveReport nonlinear_cg(const Objective& objective, const Vector& start,
                         CgVariant variant, const NonlinearCgOptions& options) {
  if (!objective.is_feasible(start)) {
    throw std::invalid_argument("nonlinear_cg: start point is infeasible");
  }
  const auto f0 = objective.value(start);
  if (!f0 || !std::isfinite(*f0)) {
    throw std::invalid_argument(
        "nonlinear_cg: objective not finite at the start point");
  }

  const long max_iterations = options.max_iterations > 0
                                  ? options.max_iterations
                                  : 50 * std::max<long>(objective.dim(), 1);

  SolveReport report;
  report.solver_name = cg_variant_name(variant);

  Vector x = start;
  double value = *f0;
  Vector grad = *objective.gradient(x);
  Vector d = -grad;
  double prev_alpha = 0.0;
  int no_progress = 0;

  auto exact_step = [&](const Vector& at, const Vector& g,
                        const Vector& dir) -> std::optional<LineSearchResult> {
    const Vector hd = *objective.hessian_vec(at, dir);
    const double curvature = dir.dot(hd);
    if (!(curvature > 0.0)) return std::nullopt;
    return LineSearchResult{-g.dot(dir) / curvature, 1, 0};
  };

  long j = 0;
  report.termination = Termination::iteration_limit;
  for (;;) {
    const double grad_norm = grad.norm();
    if (grad_norm <= options.epsilon) {
      report.termination = Termination::converged;
      break;
    }
    if (j >= max_iterations) {
      report.termination = Termination::iteration_limit;
      break;
    }

    if (grad.dot(d) >= 0.0) d = -grad; // keep a descent direction

    LineSearchOptions ls = options.line_search;
    ls.initial_step = prev_alpha > 0.0
                          ? prev_alpha
                          : std::min(1.0, 1.0 / std::max(1.0, grad_norm));
    std::optional<LineSearchResult> found =
        options.exact_line_search ? exact_step(x, grad, d)
                                  : wolfe_line_search(objective, x, d, grad,
                                                      value, ls);
    if (!found && (d + grad).norm() > 0.0) {
      d = -grad; // retry along steepest descent
      found = options.exact_line_search
                  ? exact_step(x, grad, d)
                  : wolfe_line_search(objective, x, d, grad, value, ls);
    }
    if (!found) {
      report.termination = Termination::stalled;
      break;
    }
    report.line_search_total += found->function_evaluations;

    IterationRecord row;
    row.iteration = j;
    row.value = value;
    row.grad_norm = grad_norm;
    row.method = options.exact_line_search ? TraceMethod::exact
                                           : TraceMethod::wolfe;
    row.inner_iterations = found->function_evaluations;
    report.trace.push_back(row);

    const Vector x_new = x + found->step * d;
    const double value_new = *objective.value(x_new);
    const Vector grad_new = *objective.gradient(x_new);

    const double beta = momentum_coefficient(variant, grad_new, grad, d);
    d = -grad_new + beta * d;

    const bool progressed =
        (value - value_new) > 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(value), std::abs(value_new));
    no_progress = progressed ? 0 : no_progress + 1;

    prev_alpha = found->step;
    x = x_new;
    value = value_new;
    grad = grad_new;
    ++j;

    if (options.stall_window > 0 && no_progress >= options.stall_window) {
      report.termination = Termination::stalled;
      break;
    }
  }

  report.iterations = j;
  report.final_value = value;
  report.final_grad_norm = grad.norm();
  report.minimizer = x;
  return report;
}

} // namespace cgso
