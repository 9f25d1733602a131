#include "cgso/instance.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cgso/objectives.hpp"

namespace cgso {

std::string family_name(Family family) {
  switch (family) {
    case Family::f1: return "f1";
    case Family::f2: return "f2";
    case Family::f3: return "f3";
    case Family::quadratic: return "quadratic";
  }
  throw std::logic_error("unknown family");
}

Family family_from_name(const std::string& name) {
  if (name == "f1") return Family::f1;
  if (name == "f2") return Family::f2;
  if (name == "f3") return Family::f3;
  if (name == "quadratic") return Family::quadratic;
  throw std::invalid_argument("unknown objective family: " + name);
}

void validate(const InstanceSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("instance: n must be >= 1");
  if (spec.density <= 0.0 || spec.density > 1.0) {
    throw std::invalid_argument("instance: density must lie in (0, 1]");
  }
  if (spec.family == Family::f1 || spec.family == Family::f3) {
    if (spec.m < 1) throw std::invalid_argument("instance: m must be >= 1");
  }
  if (spec.family == Family::f3) {
    if (spec.degree < 2 || spec.degree % 2 != 0) {
      throw std::invalid_argument("instance: f3 degree must be even and >= 2");
    }
  }
  if (spec.family == Family::quadratic) {
    if (spec.spectrum_lo <= 0.0 || spec.spectrum_hi < spec.spectrum_lo) {
      throw std::invalid_argument(
          "instance: quadratic spectrum requires 0 < lo <= hi");
    }
  }
}

namespace {

// Row-major Bernoulli/normal fill; every row gets at least one entry.
SparseMatrix random_sparse(Index rows, Index cols, double density,
                           std::mt19937_64& rng) {
  std::bernoulli_distribution keep(density);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<Index> any_col(0, cols - 1);

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(static_cast<double>(rows) * cols *
                                           density * 1.1) + static_cast<std::size_t>(rows));
  for (Index i = 0; i < rows; ++i) {
    bool hit = false;
    for (Index j = 0; j < cols; ++j) {
      if (density >= 1.0 || keep(rng)) {
        entries.emplace_back(i, j, normal(rng));
        hit = true;
      }
    }
    if (!hit) entries.emplace_back(i, any_col(rng), normal(rng));
  }
  SparseMatrix A(rows, cols);
  A.setFromTriplets(entries.begin(), entries.end());
  A.makeCompressed();
  return A;
}

GeneratedInstance make_affine_family(const InstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  SparseMatrix A = random_sparse(spec.m, spec.n, spec.density, rng);

  // b_i = -u_i with u_i > 0, so the slacks at x0 = 0 are exactly u.
  std::uniform_real_distribution<double> slack(0.1, 1.1);
  Vector b(spec.m);
  for (Index i = 0; i < spec.m; ++i) b(i) = -slack(rng);

  GeneratedInstance out;
  out.spec = spec;
  out.start = Vector::Zero(spec.n);
  if (spec.family == Family::f1) {
    out.objective = std::make_shared<LogBarrierObjective>(std::move(A), std::move(b));
  } else {
    out.objective = std::make_shared<EvenPowerObjective>(std::move(A), std::move(b),
                                                         spec.degree);
  }
  return out;
}

GeneratedInstance make_log_det(const InstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const Index n = spec.n;
  // C = M'M/n + I for a (possibly sparsified) standard-normal M; with
  // x0 = -ones, C - Diag(x0) = C + I stays positive definite.
  Matrix M = Matrix::Zero(n, n);
  std::bernoulli_distribution keep(spec.density);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (spec.density >= 1.0 || keep(rng)) M(i, j) = normal(rng);
    }
  }
  Matrix C = (M.transpose() * M) / static_cast<double>(n);
  C += Matrix::Identity(n, n);
  Vector c = Vector::Constant(n, spec.c_scale);

  GeneratedInstance out;
  out.spec = spec;
  out.start = Vector::Constant(n, -1.0);
  out.objective = std::make_shared<LogDetObjective>(std::move(C), std::move(c));
  return out;
}

GeneratedInstance make_quadratic(const InstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const Index n = spec.n;
  std::normal_distribution<double> normal(0.0, 1.0);

  // Prescribed spectrum: extremes pinned to [lo, hi], interior uniform.
  Vector eigs(n);
  eigs(0) = spec.spectrum_lo;
  if (n > 1) eigs(n - 1) = spec.spectrum_hi;
  std::uniform_real_distribution<double> interior(spec.spectrum_lo,
                                                  spec.spectrum_hi);
  for (Index i = 1; i + 1 < n; ++i) eigs(i) = interior(rng);

  Matrix G(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) G(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  Matrix A = Q * eigs.asDiagonal() * Q.transpose();

  Vector b(n);
  for (Index i = 0; i < n; ++i) b(i) = normal(rng);

  GeneratedInstance out;
  out.spec = spec;
  out.start = Vector::Zero(n);
  out.objective = std::make_shared<QuadraticObjective>(
      std::move(A), std::move(b),
      ConvexityBounds{spec.spectrum_lo, spec.spectrum_hi});
  return out;
}

} // namespace

GeneratedInstance generate_instance(const InstanceSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case Family::f1:
    case Family::f3:
      return make_affine_family(spec);
    case Family::f2:
      return make_log_det(spec);
    case Family::quadratic:
      return make_quadratic(spec);
  }
  throw std::logic_error("unknown family");
}

} // namespace cgso
