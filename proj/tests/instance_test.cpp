#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <random>

#include "cgso/instance.hpp"
#include "cgso/instance_io.hpp"
#include "cgso/objectives.hpp"
#include "oracles.hpp"

using namespace cgso;
namespace to = cgso::testing;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name)
      : path(std::string("/tmp/cgso_test_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("table-sized specs are accepted with strictly feasible starts") {
  InstanceSpec spec;
  spec.family = Family::f1;
  spec.m = 6000;
  spec.n = 2000;
  spec.density = 1.0;
  spec.epsilon = 1e-8;
  spec.seed = 1;
  auto inst = generate_instance(spec);
  CHECK(inst.objective->is_feasible(inst.start));
  const auto& barrier = dynamic_cast<const LogBarrierObjective&>(*inst.objective);
  CHECK(barrier.slacks(inst.start).minCoeff() > 0.0);

  InstanceSpec square;
  square.family = Family::f3;
  square.m = 50;
  square.n = 50;
  square.degree = 4;
  square.density = 1.0;
  square.epsilon = 1e-8;
  square.seed = 2;
  CHECK_NOTHROW(generate_instance(square));
}

TEST_CASE("invalid specs are rejected") {
  InstanceSpec spec;
  spec.family = Family::f3;
  spec.m = 10;
  spec.n = 10;
  spec.degree = 3; // odd degree breaks convexity
  CHECK_THROWS_AS(generate_instance(spec), std::invalid_argument);

  spec.degree = 4;
  spec.density = 0.0;
  CHECK_THROWS_AS(generate_instance(spec), std::invalid_argument);

  spec.density = 0.5;
  spec.m = 0;
  CHECK_THROWS_AS(generate_instance(spec), std::invalid_argument);
}

TEST_CASE("generation is a pure function of the spec") {
  InstanceSpec spec;
  spec.family = Family::f1;
  spec.m = 30;
  spec.n = 10;
  spec.density = 0.4;
  spec.seed = 99;
  auto a = generate_instance(spec);
  auto b = generate_instance(spec);

  const auto& oa = dynamic_cast<const LogBarrierObjective&>(*a.objective);
  const auto& ob = dynamic_cast<const LogBarrierObjective&>(*b.objective);
  CHECK(oa.offsets() == ob.offsets());
  CHECK(Matrix(oa.matrix()) == Matrix(ob.matrix()));
  CHECK(a.start == b.start);

  spec.seed = 100;
  auto c = generate_instance(spec);
  const auto& oc = dynamic_cast<const LogBarrierObjective&>(*c.objective);
  CHECK(Matrix(oa.matrix()) != Matrix(oc.matrix()));
}

TEST_CASE("every row of a sparse instance has at least one entry") {
  InstanceSpec spec;
  spec.family = Family::f1;
  spec.m = 200;
  spec.n = 40;
  spec.density = 0.02; // sparse enough that empty rows would occur naturally
  spec.seed = 5;
  auto inst = generate_instance(spec);
  const auto& obj = dynamic_cast<const LogBarrierObjective&>(*inst.objective);
  Vector row_counts = Vector::Zero(spec.m);
  const SparseMatrix& A = obj.matrix();
  for (int k = 0; k < A.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(A, k); it; ++it) {
      row_counts(it.row()) += 1.0;
    }
  }
  CHECK(row_counts.minCoeff() >= 1.0);
}

TEST_CASE("f2 start keeps the shifted matrix positive definite") {
  InstanceSpec spec;
  spec.family = Family::f2;
  spec.n = 40;
  spec.c_scale = 10.0;
  spec.density = 0.5;
  spec.seed = 6;
  auto inst = generate_instance(spec);
  CHECK(inst.objective->is_feasible(inst.start));
}

TEST_CASE("instance files round-trip")
{
  std::mt19937_64 rng(21);
  for (Family family :
       {Family::f1, Family::f2, Family::f3, Family::quadratic}) {
    CAPTURE(family_name(family));
    InstanceSpec spec;
    spec.family = family;
    spec.m = 14;
    spec.n = 6;
    spec.degree = 4;
    spec.c_scale = 3.0;
    spec.density = 0.7;
    spec.seed = 1000 + static_cast<int>(family);
    spec.label = "roundtrip";
    auto inst = generate_instance(spec);

    TempFile file("instance_" + family_name(family) + ".json");
    save_instance(file.path, inst);
    auto loaded = load_instance(file.path);

    CHECK(loaded.spec.family == spec.family);
    CHECK(loaded.start == inst.start);
    CHECK(loaded.spec.label == "roundtrip");
    for (int trial = 0; trial < 5; ++trial) {
      const Vector x = inst.start + 0.01 * to::random_vector(spec.n, rng);
      const auto original = inst.objective->value(x);
      const auto copy = loaded.objective->value(x);
      REQUIRE(original.has_value() == copy.has_value());
      if (original) CHECK(*original == *copy);
      if (original) {
        CHECK(*inst.objective->gradient(x) == *loaded.objective->gradient(x));
      }
    }
  }
}
