#include "cgso/objectives.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cgso {

namespace detail {

void require_dim(const Objective& obj, const Vector& x) {
  if (x.size() != obj.dim()) {
    throw std::invalid_argument("objective: point has length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(obj.dim()));
  }
}

} // namespace detail

// ---------------------------------------------------------------------------
// LogBarrierObjective

LogBarrierObjective::LogBarrierObjective(SparseMatrix A, Vector b)
    : A_(std::move(A)), b_(std::move(b)) {
  if (A_.rows() != b_.size()) {
    throw std::invalid_argument("log barrier: A rows and b length differ");
  }
  A_.makeCompressed();
}

bool LogBarrierObjective::is_feasible(const Vector& x) const {
  detail::require_dim(*this, x);
  return (slacks(x).array() > 0.0).all();
}

std::optional<double> LogBarrierObjective::value(const Vector& x) const {
  detail::require_dim(*this, x);
  const Vector r = slacks(x);
  if (!(r.array() > 0.0).all()) return std::nullopt;
  return -r.array().log().sum();
}

std::optional<Vector> LogBarrierObjective::gradient(const Vector& x) const {
  detail::require_dim(*this, x);
  const Vector r = slacks(x);
  if (!(r.array() > 0.0).all()) return std::nullopt;
  return Vector(-(A_.transpose() * r.cwiseInverse()));
}

std::optional<Vector> LogBarrierObjective::hessian_vec(const Vector& x,
                                                       const Vector& v) const {
  detail::require_dim(*this, x);
  detail::require_dim(*this, v);
  const Vector r = slacks(x);
  if (!(r.array() > 0.0).all()) return std::nullopt;
  const Vector w = (A_ * v).cwiseQuotient(r.cwiseProduct(r));
  return Vector(A_.transpose() * w);
}

Vector LogBarrierObjective::separating_direction(const Vector& x) const {
  detail::require_dim(*this, x);
  const Vector r = slacks(x);
  Index worst = 0;
  r.minCoeff(&worst);
  if (r(worst) > 0.0) {
    throw std::logic_error("separating_direction called on a feasible point");
  }
  Vector unit = Vector::Zero(A_.rows());
  unit(worst) = 1.0;
  return Vector(-(A_.transpose() * unit));
}

// ---------------------------------------------------------------------------
// LogDetObjective

LogDetObjective::LogDetObjective(Matrix C, Vector c)
    : C_(std::move(C)), c_(std::move(c)) {
  if (C_.rows() != C_.cols() || C_.rows() != c_.size()) {
    throw std::invalid_argument("log det: C must be square with c matching");
  }
  C_ = ((C_ + C_.transpose()) / 2.0).eval();
}

const LogDetObjective::Factorization&
LogDetObjective::factor(const Vector& x) const {
  // caller holds mutex_
  if (cache_.x.size() == x.size() && cache_.x == x) return cache_;
  cache_.x = x;
  Matrix S = C_;
  S.diagonal() -= x;
  cache_.llt.compute(S);
  cache_.feasible = cache_.llt.info() == Eigen::Success;
  cache_.has_inverse = false;
  return cache_;
}

const LogDetObjective::Factorization&
LogDetObjective::factor_with_inverse(const Vector& x) const {
  const Factorization& f = factor(x);
  if (f.feasible && !f.has_inverse) {
    cache_.inverse = cache_.llt.solve(Matrix::Identity(dim(), dim()));
    cache_.has_inverse = true;
  }
  return f;
}

bool LogDetObjective::is_feasible(const Vector& x) const {
  detail::require_dim(*this, x);
  std::lock_guard<std::mutex> lock(mutex_);
  return factor(x).feasible;
}

std::optional<double> LogDetObjective::value(const Vector& x) const {
  detail::require_dim(*this, x);
  std::lock_guard<std::mutex> lock(mutex_);
  const Factorization& f = factor(x);
  if (!f.feasible) return std::nullopt;
  const double logdet =
      2.0 * f.llt.matrixLLT().diagonal().array().log().sum();
  return -c_.dot(x) - logdet;
}

std::optional<Vector> LogDetObjective::gradient(const Vector& x) const {
  detail::require_dim(*this, x);
  std::lock_guard<std::mutex> lock(mutex_);
  const Factorization& f = factor_with_inverse(x);
  if (!f.feasible) return std::nullopt;
  return Vector(-c_ + f.inverse.diagonal());
}

std::optional<Vector> LogDetObjective::hessian_vec(const Vector& x,
                                                   const Vector& v) const {
  detail::require_dim(*this, x);
  detail::require_dim(*this, v);
  std::lock_guard<std::mutex> lock(mutex_);
  const Factorization& f = factor_with_inverse(x);
  if (!f.feasible) return std::nullopt;
  // (Hv)_i = sum_j (S^{-1})_{ij}^2 v_j
  return Vector(f.inverse.cwiseProduct(f.inverse) * v);
}

Vector LogDetObjective::separating_direction(const Vector& x) const {
  detail::require_dim(*this, x);
  const Index n = dim();
  Matrix S = C_;
  S.diagonal() -= x;

  // Unblocked lower Cholesky, stopping at the first nonpositive pivot. The
  // partial factor yields a direction v with v'Sv <= 0 via one triangular
  // solve against the leading block.
  Matrix L = Matrix::Zero(n, n);
  Index bad = -1;
  double weakest = std::numeric_limits<double>::infinity();
  Index weakest_at = 0;
  for (Index k = 0; k < n; ++k) {
    const double pivot = S(k, k) - L.row(k).head(k).squaredNorm();
    if (pivot < weakest) {
      weakest = pivot;
      weakest_at = k;
    }
    if (pivot <= 0.0) {
      bad = k;
      break;
    }
    L(k, k) = std::sqrt(pivot);
    const Index rest = n - k - 1;
    if (rest > 0) {
      L.col(k).tail(rest) =
          (S.col(k).tail(rest) -
           L.bottomLeftCorner(rest, k) * L.row(k).head(k).transpose()) /
          L(k, k);
    }
  }

  Index k = bad;
  if (bad < 0) {
    if (is_feasible(x)) {
      throw std::logic_error("separating_direction called on a feasible point");
    }
    // The blocked LLT rejected x but the unblocked sweep squeaked through;
    // certify with the weakest pivot instead.
    k = weakest_at;
  }

  Vector v = Vector::Zero(n);
  v(k) = 1.0;
  if (k > 0) {
    const Vector head = L.row(k).head(k).transpose();
    v.head(k) = -L.topLeftCorner(k, k)
                     .transpose()
                     .triangularView<Eigen::Upper>()
                     .solve(head);
  }
  return v.cwiseProduct(v);
}

// ---------------------------------------------------------------------------
// EvenPowerObjective

EvenPowerObjective::EvenPowerObjective(SparseMatrix A, Vector b, int degree)
    : A_(std::move(A)), b_(std::move(b)), degree_(degree) {
  if (A_.rows() != b_.size()) {
    throw std::invalid_argument("even power: A rows and b length differ");
  }
  if (degree_ < 2 || degree_ % 2 != 0) {
    throw std::invalid_argument("even power: degree must be even and >= 2");
  }
  A_.makeCompressed();
}

std::optional<double> EvenPowerObjective::value(const Vector& x) const {
  detail::require_dim(*this, x);
  const Vector r = A_ * x - b_;
  return r.array().pow(degree_).sum();
}

std::optional<Vector> EvenPowerObjective::gradient(const Vector& x) const {
  detail::require_dim(*this, x);
  const Vector r = A_ * x - b_;
  const Vector w = degree_ * r.array().pow(degree_ - 1);
  return Vector(A_.transpose() * w);
}

std::optional<Vector> EvenPowerObjective::hessian_vec(const Vector& x,
                                                      const Vector& v) const {
  detail::require_dim(*this, x);
  detail::require_dim(*this, v);
  const Vector r = A_ * x - b_;
  const Vector w = (degree_ * (degree_ - 1)) *
                   r.array().pow(degree_ - 2) * (A_ * v).array();
  return Vector(A_.transpose() * w);
}

Vector EvenPowerObjective::separating_direction(const Vector&) const {
  throw std::logic_error("separating_direction called on a feasible point");
}

// ---------------------------------------------------------------------------
// QuadraticObjective

QuadraticObjective::QuadraticObjective(Matrix A, Vector b,
                                       std::optional<ConvexityBounds> bounds)
    : A_(std::move(A)), b_(std::move(b)), bounds_(bounds) {
  if (A_.rows() != A_.cols() || A_.rows() != b_.size()) {
    throw std::invalid_argument("quadratic: A must be square with b matching");
  }
  A_ = ((A_ + A_.transpose()) / 2.0).eval();
}

std::optional<double> QuadraticObjective::value(const Vector& x) const {
  detail::require_dim(*this, x);
  return 0.5 * x.dot(A_ * x) - b_.dot(x);
}

std::optional<Vector> QuadraticObjective::gradient(const Vector& x) const {
  detail::require_dim(*this, x);
  return Vector(A_ * x - b_);
}

std::optional<Vector> QuadraticObjective::hessian_vec(const Vector& x,
                                                      const Vector& v) const {
  detail::require_dim(*this, x);
  detail::require_dim(*this, v);
  return Vector(A_ * v);
}

Vector QuadraticObjective::separating_direction(const Vector&) const {
  throw std::logic_error("separating_direction called on a feasible point");
}

Vector QuadraticObjective::minimizer() const {
  return A_.llt().solve(b_);
}

} // namespace cgso
