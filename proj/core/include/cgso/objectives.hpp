#pragma once

#include <mutex>
#include <optional>

#include <Eigen/Cholesky>

#include "cgso/objective.hpp"

namespace cgso {

/// f(x) = -sum_i log(a_i'x - b_i), the log barrier of the affine system
/// Ax > b. Hidden constraint: every slack a_i'x - b_i must be positive.
class LogBarrierObjective final : public Objective {
public:
  LogBarrierObjective(SparseMatrix A, Vector b);

  Index dim() const override { return A_.cols(); }
  bool is_feasible(const Vector& x) const override;
  std::optional<double> value(const Vector& x) const override;
  std::optional<Vector> gradient(const Vector& x) const override;
  std::optional<Vector> hessian_vec(const Vector& x, const Vector& v) const override;
  Vector separating_direction(const Vector& x) const override;

  const SparseMatrix& matrix() const { return A_; }
  const Vector& offsets() const { return b_; }
  Vector slacks(const Vector& x) const { return A_ * x - b_; }

private:
  SparseMatrix A_;
  Vector b_;
};

/// f(x) = -c'x - log det(C - Diag(x)). Hidden constraint: C - Diag(x)
/// positive definite, detected by Cholesky failure.
class LogDetObjective final : public Objective {
public:
  LogDetObjective(Matrix C, Vector c);

  Index dim() const override { return c_.size(); }
  bool is_feasible(const Vector& x) const override;
  std::optional<double> value(const Vector& x) const override;
  std::optional<Vector> gradient(const Vector& x) const override;
  std::optional<Vector> hessian_vec(const Vector& x, const Vector& v) const override;
  Vector separating_direction(const Vector& x) const override;

  const Matrix& shift_matrix() const { return C_; }
  const Vector& linear_coeff() const { return c_; }

private:
  // Factorization of C - Diag(x), cached for the most recent point so that
  // a gradient plus several Hessian-vector products at the same x share one
  // Cholesky and one explicit inverse.
  struct Factorization {
    Vector x;
    Eigen::LLT<Matrix> llt;
    bool feasible = false;
    bool has_inverse = false;
    Matrix inverse;
  };
  const Factorization& factor(const Vector& x) const;
  const Factorization& factor_with_inverse(const Vector& x) const;

  Matrix C_;
  Vector c_;
  mutable std::mutex mutex_;
  mutable Factorization cache_;
};

/// f(x) = sum_i (a_i'x - b_i)^d for even d >= 2; a smooth approximation of
/// the infinity norm of Ax - b. No hidden constraints.
class EvenPowerObjective final : public Objective {
public:
  EvenPowerObjective(SparseMatrix A, Vector b, int degree);

  Index dim() const override { return A_.cols(); }
  bool is_feasible(const Vector&) const override { return true; }
  std::optional<double> value(const Vector& x) const override;
  std::optional<Vector> gradient(const Vector& x) const override;
  std::optional<Vector> hessian_vec(const Vector& x, const Vector& v) const override;
  Vector separating_direction(const Vector& x) const override;

  int degree() const { return degree_; }
  const SparseMatrix& matrix() const { return A_; }
  const Vector& offsets() const { return b_; }

private:
  SparseMatrix A_;
  Vector b_;
  int degree_;
};

/// f(x) = x'Ax/2 - b'x with dense symmetric positive definite A.
class QuadraticObjective final : public Objective {
public:
  QuadraticObjective(Matrix A, Vector b,
                     std::optional<ConvexityBounds> bounds = std::nullopt);

  Index dim() const override { return b_.size(); }
  bool is_feasible(const Vector&) const override { return true; }
  std::optional<double> value(const Vector& x) const override;
  std::optional<Vector> gradient(const Vector& x) const override;
  std::optional<Vector> hessian_vec(const Vector& x, const Vector& v) const override;
  std::optional<ConvexityBounds> convexity() const override { return bounds_; }
  Vector separating_direction(const Vector& x) const override;

  const Matrix& matrix() const { return A_; }
  const Vector& rhs() const { return b_; }

  /// Closed-form minimizer A^{-1} b.
  Vector minimizer() const;

private:
  Matrix A_;
  Vector b_;
  std::optional<ConvexityBounds> bounds_;
};

} // namespace cgso
