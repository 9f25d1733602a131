#pragma once

// Test-side oracles, independent of the library's evaluation paths: finite
// differences, dense grid search, extended-precision evaluation, and random
// problem builders.

#include <functional>
#include <optional>
#include <random>

#include "cgso/objective.hpp"

namespace cgso::testing {

/// Central finite differences of the objective value, step 1e-6 * (1+||x||).
Vector fd_gradient(const Objective& obj, const Vector& x);

/// Central finite differences of the gradient along v.
Vector fd_hvp(const Objective& obj, const Vector& x, const Vector& v);

double rel_error(const Vector& got, const Vector& want);

/// Dense 2-D grid over [center-r, center+r]^2 with local refinement around
/// the incumbent. Infeasible cells (nullopt) are skipped.
struct GridMin {
  Vector point;
  double value = 0.0;
};
GridMin grid_minimize_2d(
    const std::function<std::optional<double>(const Vector&)>& f,
    double radius, int points_per_axis = 41, int levels = 14);

/// f1 evaluated in 80-bit extended precision; the oracle for value-drop
/// accuracy near convergence.
long double log_barrier_value_ld(const SparseMatrix& A, const Vector& b,
                                 const Vector& x);

/// Random symmetric positive definite matrix with condition number ~cond
/// (extreme eigenvalues pinned at 1 and cond).
Matrix random_spd(Index n, double cond, std::mt19937_64& rng);

Vector random_vector(Index n, std::mt19937_64& rng);

} // namespace cgso::testing
