#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgso/certificates.hpp"
#include "cgso/objective.hpp"
#include "cgso/solver_state.hpp"
#include "cgso/subspace.hpp"

namespace cgso {

enum class Termination { converged, iteration_limit, stalled };

std::string termination_name(Termination t);

/// Which basis the correction step uses: the full set (gradient accumulator
/// plus anchor displacement per active block) or the displacement only.
enum class CorrectionBasisMode { full, displacement_only };

struct SolverOptions {
  double epsilon = 1e-8;   // outer tolerance on the gradient norm
  double rho = 2.0;        // alignment-certificate constant, >= 1
  int min_block_exponent = 4; // smallest tracked restart exponent (P_l)
  long max_iterations = 0;    // 0 -> 50 * n
  CorrectionBasisMode correction_basis = CorrectionBasisMode::full;
  bool adaptive_rho = false; // scale rho up/down from repeated block outcomes
  int stall_window = 40;     // consecutive no-progress iterations; 0 disables
  bool record_iterates = false; // keep every accepted iterate in the report
  // Test hook: force this exponent into correction mode at its first
  // boundary, whatever the certificate says. Negative = off.
  int force_correction_exponent = -1;
};

enum class TraceMethod { newton, ellipsoid, wolfe, exact, none };

std::string trace_method_name(TraceMethod m);

struct IterationRecord {
  long iteration = 0;
  double value = 0.0;      // f at the start of the iteration
  double grad_norm = 0.0;  // ||grad|| at the start of the iteration
  int subspace_dim = 0;    // K; 0 for solvers without a subspace
  TraceMethod method = TraceMethod::none;
  long inner_iterations = 0;
  double inner_tol = 0.0;
};

struct BlockRecord {
  int exponent = 0; // p
  long start = 0;   // r_p
  long end = 0;     // boundary index (start + 2^p)
  bool corrected = false; // block ran in correction mode (check skipped)
  bool checked = false;   // certificate decided the next mode
  BlockCheck status = BlockCheck::pass;
  std::optional<double> alignment_ratio; // observed rho
  double gap_lhs = 0.0;        // left side of the gap inequality
  double grad_sum_norm = 0.0;  // ||sum of weighted gradients||
  double weighted_rss = 0.0;   // sqrt(sum of weight^2 ||g||^2)
  double max_inner_tol = 0.0;  // largest inner tolerance seen in the block
  double max_displacement = 0.0; // largest ||x^i - anchor|| in the block
};

/// Inner-product residuals recorded while a block runs in correction mode;
/// at a subspace optimum the gradient is orthogonal to the correction
/// columns, up to the inner tolerance of the solve that produced x.
struct CorrectionDiagnostic {
  long iteration = 0;
  int exponent = 0;
  double step_align = 0.0;  // |<g, x - anchor>|
  double step_norm = 0.0;   // ||x - anchor||
  double accum_align = 0.0; // |<g, weighted gradient sum>|
  double accum_norm = 0.0;  // ||weighted gradient sum||
  double inner_tol = 0.0;   // tolerance of the producing solve
};

struct SolveReport {
  std::string solver_name;
  Termination termination = Termination::converged;
  long iterations = 0;
  long newton_total = 0;
  long ellipsoid_total = 0;
  long line_search_total = 0;
  long correction_blocks = 0;
  double final_value = 0.0;
  double final_grad_norm = 0.0;
  Vector minimizer;
  std::vector<IterationRecord> trace;
  std::vector<BlockRecord> blocks;
  std::vector<CorrectionDiagnostic> corrections;

  std::optional<double> max_alignment_ratio() const;
};

/// Runs the subspace-optimization CG driver from a strictly feasible start.
SolveReport run(const Objective& objective, const Vector& start,
                const SolverOptions& options = {});

} // namespace cgso
