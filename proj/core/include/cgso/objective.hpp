#pragma once

#include <optional>

#include "cgso/types.hpp"

namespace cgso {

/// Known strong-convexity parameters: lower curvature l and gradient
/// Lipschitz constant L, with l <= L.
struct ConvexityBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// A smooth strongly convex function, possibly with hidden constraints
/// (an open domain outside of which the function is undefined).
///
/// Evaluation outside the domain is signalled by an empty optional; numeric
/// garbage (NaN, -inf) never leaks through this interface. Implementations
/// are immutable after construction and safe to evaluate concurrently.
class Objective {
public:
  virtual ~Objective() = default;

  virtual Index dim() const = 0;

  virtual bool is_feasible(const Vector& x) const = 0;

  /// f(x), or nullopt when a hidden constraint is violated or active.
  virtual std::optional<double> value(const Vector& x) const = 0;

  /// grad f(x); nullopt when x is infeasible.
  virtual std::optional<Vector> gradient(const Vector& x) const = 0;

  /// Hessian-vector product (grad^2 f(x)) * v; nullopt when x is infeasible.
  virtual std::optional<Vector> hessian_vec(const Vector& x, const Vector& v) const = 0;

  /// (l, L) when known exactly (synthetic quadratics); nullopt otherwise.
  virtual std::optional<ConvexityBounds> convexity() const { return std::nullopt; }

  /// Separation oracle for infeasible points: a direction w such that every
  /// feasible x' satisfies <w, x' - x> < 0. Throws std::logic_error when x
  /// is feasible. Unconstrained objectives never take this path.
  virtual Vector separating_direction(const Vector& x) const = 0;
};

namespace detail {
void require_dim(const Objective& obj, const Vector& x);
} // namespace detail

} // namespace cgso
