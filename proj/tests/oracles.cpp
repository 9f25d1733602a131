#include "oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace cgso::testing {

Vector fd_gradient(const Objective& obj, const Vector& x) {
  const double h = 1e-6 * (1.0 + x.norm());
  Vector g(x.size());
  Vector probe = x;
  for (Index i = 0; i < x.size(); ++i) {
    probe(i) = x(i) + h;
    const auto up = obj.value(probe);
    probe(i) = x(i) - h;
    const auto down = obj.value(probe);
    probe(i) = x(i);
    if (!up || !down) {
      throw std::runtime_error("fd_gradient: probe left the feasible region");
    }
    g(i) = (*up - *down) / (2.0 * h);
  }
  return g;
}

Vector fd_hvp(const Objective& obj, const Vector& x, const Vector& v) {
  const double h = 1e-6 * (1.0 + x.norm()) / (1.0 + v.norm());
  const auto up = obj.gradient(x + h * v);
  const auto down = obj.gradient(x - h * v);
  if (!up || !down) {
    throw std::runtime_error("fd_hvp: probe left the feasible region");
  }
  return (*up - *down) / (2.0 * h);
}

double rel_error(const Vector& got, const Vector& want) {
  return (got - want).norm() / std::max(1e-30, want.norm());
}

GridMin grid_minimize_2d(
    const std::function<std::optional<double>(const Vector&)>& f,
    double radius, int points_per_axis, int levels) {
  Vector center = Vector::Zero(2);
  double r = radius;
  GridMin best;
  best.point = Vector::Zero(2);
  const auto at_origin = f(best.point);
  if (!at_origin) throw std::runtime_error("grid_minimize_2d: origin infeasible");
  best.value = *at_origin;

  Vector probe(2);
  for (int level = 0; level < levels; ++level) {
    Vector level_best = best.point;
    double level_value = best.value;
    for (int i = 0; i < points_per_axis; ++i) {
      for (int j = 0; j < points_per_axis; ++j) {
        probe(0) = center(0) - r + 2.0 * r * i / (points_per_axis - 1);
        probe(1) = center(1) - r + 2.0 * r * j / (points_per_axis - 1);
        const auto value = f(probe);
        if (value && *value < level_value) {
          level_value = *value;
          level_best = probe;
        }
      }
    }
    best.point = level_best;
    best.value = level_value;
    center = level_best;
    r *= 4.0 / (points_per_axis - 1); // keep a couple of cells of slack
  }
  return best;
}

long double log_barrier_value_ld(const SparseMatrix& A, const Vector& b,
                                 const Vector& x) {
  std::vector<long double> slacks(static_cast<std::size_t>(A.rows()));
  for (Index i = 0; i < A.rows(); ++i) {
    slacks[static_cast<std::size_t>(i)] = -static_cast<long double>(b(i));
  }
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
      slacks[static_cast<std::size_t>(it.row())] +=
          static_cast<long double>(it.value()) *
          static_cast<long double>(x(it.col()));
    }
  }
  long double value = 0.0L;
  for (long double s : slacks) {
    if (s <= 0.0L) throw std::runtime_error("log_barrier_value_ld: infeasible");
    value -= std::log(s);
  }
  return value;
}

Matrix random_spd(Index n, double cond, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> interior(1.0, cond);
  Vector eigs(n);
  eigs(0) = 1.0;
  if (n > 1) eigs(n - 1) = cond;
  for (Index i = 1; i + 1 < n; ++i) eigs(i) = interior(rng);

  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = normal(rng);
  Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  Matrix a = q * eigs.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

Vector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

} // namespace cgso::testing
