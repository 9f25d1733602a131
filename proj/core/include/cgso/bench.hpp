#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgso/baselines.hpp"
#include "cgso/instance.hpp"
#include "cgso/solver.hpp"

namespace cgso {

struct SolverConfig {
  enum class Kind { cgso, cg_fr, cg_pr, cg_hz, steepest_descent };
  Kind kind = Kind::cgso;
  std::string name; // defaults to the kind name
  SolverOptions cgso_options;
  NonlinearCgOptions cg_options;

  std::string display_name() const;
};

std::string solver_kind_name(SolverConfig::Kind kind);
SolverConfig::Kind solver_kind_from_name(const std::string& name);

struct BenchConfig {
  std::vector<InstanceSpec> instances;
  std::vector<SolverConfig> solvers;
  int repetitions = 1;
  std::uint64_t seed = 0; // mixed into every instance seed
  std::string output_dir = "bench-out";
  int threads = 1;
};

struct CellResult {
  std::size_t instance_index = 0;
  std::size_t solver_index = 0;
  int repetition = 0;
  InstanceSpec spec; // with the mixed seed that was actually used
  std::string solver_name;
  bool completed = false;
  std::string error;
  SolveReport report;

  std::string tag() const; // <instance>__<solver>__rep<k>
};

struct BenchSummary {
  std::vector<CellResult> cells;
  bool all_completed = false;
};

/// splitmix64 mix of the global seed, the per-instance seed, and the
/// repetition index.
std::uint64_t mix_seed(std::uint64_t global, std::uint64_t instance_seed,
                       int repetition);

/// Runs every (instance, solver, repetition) cell; independent cells run on
/// config.threads workers. A throwing cell is recorded as failed and the
/// remaining cells continue.
BenchSummary run_bench(const BenchConfig& config);

/// Writes summary.csv, per-cell trace and block CSVs under traces/, and
/// manifest.json (specs, seeds, option hashes) into config.output_dir.
void emit_report(const BenchConfig& config, const BenchSummary& summary);

/// Rebuilds summary.csv from the manifest of a previous run.
void render_summary(const std::string& output_dir);

/// Writes each configured instance (with its mixed first-repetition seed) to
/// dir as <label>.json.
void write_instances(const BenchConfig& config, const std::string& dir);

/// Table-style default configurations: the seven reference instances with
/// the CGSO and Hager-Zhang solvers. Desk scale divides the big instances'
/// m and n by 10; the 50x50 square instance is already desk-sized and stays
/// unchanged.
BenchConfig desk_scale_config(std::uint64_t seed);
BenchConfig paper_scale_config(std::uint64_t seed);

BenchConfig load_config(const std::string& path);

} // namespace cgso
