#include "cgso/ellipsoid.hpp"

#include <cmath>

#include <Eigen/LU>

namespace cgso {

namespace {

// Bisection on the cut sign: the 1-D degenerate case of the central-cut
// update. The bracket starts at [-R, R], so the first probe is y = 0.
EllipsoidOutcome bisect_line(const SubspaceProblem& problem,
                             const EllipsoidOptions& options, long max_iters,
                             double width_tol) {
  double lo = -options.radius;
  double hi = options.radius;

  EllipsoidOutcome out;
  out.y = Vector::Zero(1);
  out.value = problem.base_value;
  out.stop = EllipsoidStop::iteration_limit;

  for (long it = 0; it < max_iters; ++it) {
    if (hi - lo <= width_tol) {
      out.stop = EllipsoidStop::volume_tol;
      break;
    }
    Vector probe(1);
    probe(0) = 0.5 * (lo + hi);
    double cut;
    const auto slope = reduced_slope(problem, probe);
    if (slope && std::isfinite(slope->value) && slope->gradient.allFinite()) {
      if (slope->value < out.value) {
        out.value = slope->value;
        out.y = probe;
      }
      if (slope->gradient.norm() <= problem.inner_tol) {
        out.iterations = it;
        out.stop = EllipsoidStop::gradient_tol;
        return out;
      }
      cut = slope->gradient(0);
    } else if (!slope) {
      cut = feasibility_cut(problem, probe)(0);
    } else {
      out.stop = EllipsoidStop::breakdown;
      break;
    }
    out.iterations = it + 1;
    if (cut > 0.0) {
      hi = probe(0);
    } else {
      lo = probe(0);
    }
  }
  return out;
}

} // namespace

bool ellipsoid_step(EllipsoidState& state, const Vector& cut) {
  const Index k = state.center.size();
  const Vector pg = state.shape * cut;
  const double metric_sq = cut.dot(pg);
  if (!(metric_sq > 0.0) || !std::isfinite(metric_sq)) return false;
  const double metric = std::sqrt(metric_sq);

  const double dim = static_cast<double>(k);
  state.center -= pg / ((dim + 1.0) * metric);
  state.shape = (dim * dim / (dim * dim - 1.0)) *
                (state.shape - (2.0 / (dim + 1.0)) *
                                   (pg * pg.transpose()) / metric_sq);
  state.shape = 0.5 * (state.shape + state.shape.transpose()).eval();
  ++state.iterations;
  return state.shape.allFinite();
}

EllipsoidOutcome ellipsoid_minimize(const SubspaceProblem& problem,
                                    const EllipsoidOptions& options) {
  const Index k = problem.reduced_dim();
  const long max_iters =
      options.max_iterations > 0 ? options.max_iterations : 200 * k;
  const double width_tol =
      options.volume_tol_scale * (1.0 + std::abs(problem.base_value));

  if (k == 1) return bisect_line(problem, options, max_iters, width_tol);

  EllipsoidState state;
  state.center = Vector::Zero(k);
  state.shape = Matrix::Identity(k, k) * (options.radius * options.radius);
  state.best_point = Vector::Zero(k);
  state.best_value = problem.base_value;

  EllipsoidOutcome out;
  out.stop = EllipsoidStop::iteration_limit;

  for (long it = 0; it < max_iters; ++it) {
    Vector cut;
    const auto slope = reduced_slope(problem, state.center);
    if (slope && std::isfinite(slope->value) && slope->gradient.allFinite()) {
      if (slope->value < state.best_value) {
        state.best_value = slope->value;
        state.best_point = state.center;
      }
      if (slope->gradient.norm() <= problem.inner_tol) {
        out.stop = EllipsoidStop::gradient_tol;
        break;
      }
      cut = slope->gradient;
    } else if (!slope) {
      cut = feasibility_cut(problem, state.center);
    } else {
      out.stop = EllipsoidStop::breakdown;
      break;
    }

    const double width_sq = cut.dot(state.shape * cut);
    if (!(width_sq > 0.0) || !std::isfinite(width_sq)) {
      out.stop = EllipsoidStop::breakdown;
      break;
    }
    if (std::sqrt(width_sq) <= width_tol) {
      out.stop = EllipsoidStop::volume_tol;
      break;
    }

    double det_before = 0.0;
    if (options.record_contraction) det_before = state.shape.determinant();
    if (!ellipsoid_step(state, cut)) {
      out.stop = EllipsoidStop::breakdown;
      break;
    }
    if (options.record_contraction) {
      out.contraction.push_back(state.shape.determinant() / det_before);
    }
  }

  out.y = state.best_point;
  out.value = state.best_value;
  out.iterations = state.iterations;
  return out;
}

Vector feasibility_cut(const SubspaceProblem& problem, const Vector& y) {
  const Vector direction =
      problem.objective->separating_direction(problem.lift(y));
  return problem.basis.transpose() * direction;
}

} // namespace cgso
