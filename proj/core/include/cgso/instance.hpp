#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "cgso/objective.hpp"

namespace cgso {

/// Test-problem family.
enum class Family { f1, f2, f3, quadratic };

std::string family_name(Family family);
Family family_from_name(const std::string& name);

/// Parameters of one random instance. Fields not used by a family are
/// ignored (m and degree for f2, c_scale outside f2, spectrum outside
/// quadratic).
struct InstanceSpec {
  Family family = Family::quadratic;
  Index m = 0;              // row count (f1, f3)
  Index n = 0;              // variable count
  double c_scale = 0.0;     // f2: c = c_scale * ones  (m_f in the table layout)
  int degree = 0;           // f3: even integer >= 2
  double density = 1.0;     // fraction of nonzeros in A (f1, f3) or C (f2)
  std::uint64_t seed = 0;
  double epsilon = 1e-8;    // outer gradient tolerance for solver runs
  double spectrum_lo = 1.0; // quadratic: smallest eigenvalue (= l)
  double spectrum_hi = 10.0;// quadratic: largest eigenvalue (= L)
  std::string label;        // display name; defaults to a family/size string
};

/// Throws std::invalid_argument when the spec violates its invariants.
void validate(const InstanceSpec& spec);

struct GeneratedInstance {
  InstanceSpec spec;
  std::shared_ptr<const Objective> objective;
  Vector start; // strictly feasible by construction
};

/// Deterministic in spec.seed: the same spec yields bit-identical data.
GeneratedInstance generate_instance(const InstanceSpec& spec);

} // namespace cgso
