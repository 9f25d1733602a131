#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cgso/instance.hpp"
#include "cgso/objectives.hpp"
#include "oracles.hpp"

using namespace cgso;
namespace to = cgso::testing;

namespace {

SparseMatrix sparse_identity(Index n) {
  SparseMatrix a(n, n);
  a.setIdentity();
  return a;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Random well-interior feasible point for any family: a small perturbation
// of the generated start.
Vector interior_point(const GeneratedInstance& inst, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    const Vector x =
        inst.start + 0.05 * to::random_vector(inst.start.size(), rng);
    if (inst.objective->is_feasible(x)) return x;
  }
  return inst.start;
}

InstanceSpec small_spec(Family family, std::uint64_t seed) {
  InstanceSpec spec;
  spec.family = family;
  spec.seed = seed;
  switch (family) {
    case Family::f1:
      spec.m = 20;
      spec.n = 5;
      break;
    case Family::f2:
      spec.n = 6;
      spec.c_scale = 2.0;
      break;
    case Family::f3:
      spec.m = 12;
      spec.n = 7;
      spec.degree = 4;
      break;
    case Family::quadratic:
      spec.n = 8;
      spec.spectrum_lo = 1.0;
      spec.spectrum_hi = 50.0;
      break;
  }
  return spec;
}

} // namespace

TEST_CASE("log barrier closed forms on the identity system") {
  LogBarrierObjective f(sparse_identity(2), Vector::Zero(2));

  CHECK(*f.value(vec2(1, 1)) == doctest::Approx(0.0));
  CHECK(!f.value(vec2(1, -1)).has_value());
  CHECK(!f.value(vec2(1, 0)).has_value()); // active constraint counts as out

  const Vector g = *f.gradient(vec2(1, 1));
  CHECK(g(0) == doctest::Approx(-1.0));
  CHECK(g(1) == doctest::Approx(-1.0));

  CHECK(f.is_feasible(vec2(1, 1)));
  CHECK(!f.is_feasible(vec2(1, -1)));
}

TEST_CASE("log det closed forms") {
  LogDetObjective f(2.0 * Matrix::Identity(2, 2), Vector::Zero(2));
  // C - Diag(x) = I at x = (1,1)
  CHECK(*f.value(vec2(1, 1)) == doctest::Approx(0.0));
  const Vector g = *f.gradient(vec2(1, 1));
  CHECK(g(0) == doctest::Approx(1.0));
  CHECK(g(1) == doctest::Approx(1.0));

  LogDetObjective unit(Matrix::Identity(2, 2), Vector::Zero(2));
  CHECK(!unit.is_feasible(vec2(2, 0)));
  CHECK(!unit.value(vec2(2, 0)).has_value());
}

TEST_CASE("even power closed forms") {
  EvenPowerObjective f(sparse_identity(2), Vector::Zero(2), 2);
  CHECK(*f.value(vec2(3, 4)) == doctest::Approx(25.0));
  const Vector g = *f.gradient(vec2(3, 4));
  CHECK(g(0) == doctest::Approx(6.0));
  CHECK(g(1) == doctest::Approx(8.0));
  const Vector hv = *f.hessian_vec(vec2(9, -2), vec2(1, 0));
  CHECK(hv(0) == doctest::Approx(2.0));
  CHECK(hv(1) == doctest::Approx(0.0));
  CHECK(f.is_feasible(vec2(1e9, -1e9)));

  CHECK_THROWS_AS(EvenPowerObjective(sparse_identity(2), Vector::Zero(2), 3),
                  std::invalid_argument);
}

TEST_CASE("quadratic closed forms") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 10.0;
  QuadraticObjective f(a, Vector::Zero(2), ConvexityBounds{1.0, 10.0});
  const Vector hv = *f.hessian_vec(vec2(0, 0), vec2(1, 1));
  CHECK(hv(0) == doctest::Approx(1.0));
  CHECK(hv(1) == doctest::Approx(10.0));
  CHECK(f.convexity()->lower == 1.0);
  CHECK(f.convexity()->upper == 10.0);
}

TEST_CASE("dimension mismatch is a contract violation") {
  LogBarrierObjective f(sparse_identity(2), Vector::Zero(2));
  Vector x(3);
  x.setOnes();
  CHECK_THROWS_AS(f.value(x), std::invalid_argument);
  CHECK_THROWS_AS(f.gradient(x), std::invalid_argument);
  CHECK_THROWS_AS(f.is_feasible(x), std::invalid_argument);
}

TEST_CASE("f1 gradient matches finite differences on a random instance") {
  auto inst = generate_instance(small_spec(Family::f1, 42));
  std::mt19937_64 rng(7);
  const Vector x = interior_point(inst, rng);
  const Vector g = *inst.objective->gradient(x);
  CHECK(to::rel_error(g, to::fd_gradient(*inst.objective, x)) < 1e-6);
}

TEST_CASE("f2 Hessian-vector product matches gradient differences") {
  auto inst = generate_instance(small_spec(Family::f2, 43));
  std::mt19937_64 rng(8);
  const Vector x = interior_point(inst, rng);
  const Vector v = to::random_vector(inst.start.size(), rng);
  const Vector hv = *inst.objective->hessian_vec(x, v);
  CHECK(to::rel_error(hv, to::fd_hvp(*inst.objective, x, v)) < 1e-5);
}

TEST_CASE("derivatives match finite differences across all families") {
  std::mt19937_64 rng(1234);
  for (Family family :
       {Family::f1, Family::f2, Family::f3, Family::quadratic}) {
    CAPTURE(family_name(family));
    auto inst = generate_instance(small_spec(family, 91));
    for (int trial = 0; trial < 10; ++trial) {
      const Vector x = interior_point(inst, rng);
      const Vector g = *inst.objective->gradient(x);
      CHECK(to::rel_error(g, to::fd_gradient(*inst.objective, x)) < 1e-5);
      const Vector v = to::random_vector(x.size(), rng);
      const Vector hv = *inst.objective->hessian_vec(x, v);
      CHECK(to::rel_error(hv, to::fd_hvp(*inst.objective, x, v)) < 1e-5);
    }
  }
}

TEST_CASE("convexity holds on sampled feasible pairs") {
  std::mt19937_64 rng(555);
  for (Family family :
       {Family::f1, Family::f2, Family::f3, Family::quadratic}) {
    CAPTURE(family_name(family));
    auto inst = generate_instance(small_spec(family, 17));
    for (int trial = 0; trial < 10; ++trial) {
      const Vector x = interior_point(inst, rng);
      const Vector y = interior_point(inst, rng);
      const double fx = *inst.objective->value(x);
      const double fy = *inst.objective->value(y);
      const Vector g = *inst.objective->gradient(x);
      const double scale = std::max({1.0, std::abs(fx), std::abs(fy)});
      CHECK(fy >= fx + g.dot(y - x) - 1e-10 * scale);
    }
  }
}

TEST_CASE("quadratic instances respect the declared (l, L) pair") {
  auto inst = generate_instance(small_spec(Family::quadratic, 3));
  const auto bounds = inst.objective->convexity();
  REQUIRE(bounds.has_value());
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector x = to::random_vector(inst.start.size(), rng);
    const Vector y = to::random_vector(inst.start.size(), rng);
    const Vector gx = *inst.objective->gradient(x);
    const Vector gy = *inst.objective->gradient(y);
    CHECK((gx - gy).norm() <= bounds->upper * (x - y).norm() * (1 + 1e-12));
    const double fx = *inst.objective->value(x);
    const double fy = *inst.objective->value(y);
    CHECK(fy - fx >= gx.dot(y - x) +
                         0.5 * bounds->lower * (y - x).squaredNorm() - 1e-9);
  }
}

TEST_CASE("separating directions cut off the feasible region") {
  SUBCASE("f1 picks the most violated row") {
    LogBarrierObjective f(sparse_identity(2), Vector::Zero(2));
    const Vector w = f.separating_direction(vec2(-1, 1));
    CHECK(w(0) == doctest::Approx(-1.0));
    CHECK(w(1) == doctest::Approx(0.0));
    CHECK_THROWS_AS(f.separating_direction(vec2(1, 1)), std::logic_error);
  }

  SUBCASE("f2 one-by-one failure certifies with the unit vector") {
    LogDetObjective f(Matrix::Identity(2, 2), Vector::Zero(2));
    const Vector w = f.separating_direction(vec2(2, 0)); // S_11 = -1
    CHECK(w(0) == doctest::Approx(1.0));
    CHECK(w(1) == doctest::Approx(0.0));
  }

  SUBCASE("random violated f1 point is separated from sampled feasible ones") {
    auto inst = generate_instance(small_spec(Family::f1, 77));
    std::mt19937_64 rng(9);
    Vector bad;
    for (;;) {
      bad = inst.start + 2.0 * to::random_vector(inst.start.size(), rng);
      if (!inst.objective->is_feasible(bad)) break;
    }
    const Vector w = inst.objective->separating_direction(bad);
    for (int trial = 0; trial < 25; ++trial) {
      const Vector good = interior_point(inst, rng);
      CHECK(w.dot(good - bad) < 0.0);
    }
  }

  SUBCASE("random violated f2 point is separated from sampled feasible ones") {
    auto inst = generate_instance(small_spec(Family::f2, 78));
    std::mt19937_64 rng(10);
    // walk along +e until the shifted matrix loses positive definiteness
    Vector bad = inst.start;
    while (inst.objective->is_feasible(bad)) {
      bad.array() += 0.5;
    }
    const Vector w = inst.objective->separating_direction(bad);
    for (int trial = 0; trial < 25; ++trial) {
      const Vector good = interior_point(inst, rng);
      CHECK(w.dot(good - bad) < 0.0);
    }
  }
}
