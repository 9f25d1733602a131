#include "cgso/solver.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "cgso/ellipsoid.hpp"

namespace cgso {

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::iteration_limit: return "iteration_limit";
    case Termination::stalled: return "stalled";
  }
  return "unknown";
}

std::string trace_method_name(TraceMethod m) {
  switch (m) {
    case TraceMethod::newton: return "newton";
    case TraceMethod::ellipsoid: return "ellipsoid";
    case TraceMethod::wolfe: return "wolfe";
    case TraceMethod::exact: return "exact";
    case TraceMethod::none: return "none";
  }
  return "unknown";
}

std::optional<double> SolveReport::max_alignment_ratio() const {
  std::optional<double> best;
  for (const BlockRecord& b : blocks) {
    if (b.alignment_ratio && (!best || *b.alignment_ratio > *best)) {
      best = *b.alignment_ratio;
    }
  }
  return best;
}

namespace {

// smallest p with 2^p >= j  (== ceil(log2 j) for j >= 1)
int ceil_log2(long j) {
  int p = 0;
  while ((1L << p) < j) ++p;
  return p;
}

struct LedgerSlot {
  BlockLedger ledger;
  double max_inner_tol = 0.0;
  double max_displacement = 0.0;
};

} // namespace

SolveReport run(const Objective& objective, const Vector& start,
                const SolverOptions& options) {
  if (!objective.is_feasible(start)) {
    throw std::invalid_argument("run: start point is infeasible");
  }
  const auto f0 = objective.value(start);
  if (!f0 || !std::isfinite(*f0)) {
    throw std::invalid_argument("run: objective not finite at the start point");
  }
  if (options.rho < 1.0) {
    throw std::invalid_argument("run: rho must be >= 1");
  }
  if (options.min_block_exponent < 0) {
    throw std::invalid_argument("run: min_block_exponent must be >= 0");
  }

  const long max_iterations = options.max_iterations > 0
                                  ? options.max_iterations
                                  : 50 * std::max<long>(objective.dim(), 1);

  SolveReport report;
  report.solver_name = "cgso";

  Vector x = start;
  double value = *f0;
  Vector grad = *objective.gradient(x);
  std::optional<Vector> prev_step;

  // The shared from-zero ledger backs the first block of every exponent (all
  // first blocks are anchored at the start point); per-exponent ledgers take
  // over after their first boundary.
  LedgerSlot from_zero{BlockLedger(-1, 0, x, value), 0.0, 0.0};
  std::map<int, LedgerSlot> ledgers;
  std::set<int> correcting;
  bool force_used = false;

  double rho = options.rho;
  std::map<int, int> align_fail_streak;
  std::map<int, int> calm_streak;

  double prev_reduced_norm = 0.0; // |y| of the last accepted subspace solution
  double prev_inner_tol = 0.0;
  int no_progress = 0;

  long j = 0;
  report.termination = Termination::iteration_limit;
  for (;;) {
    const double grad_norm = grad.norm();
    if (grad_norm <= options.epsilon) {
      report.termination = Termination::converged;
      break;
    }
    if (j >= max_iterations) {
      report.termination = Termination::iteration_limit;
      break;
    }

    // Orthogonality diagnostics for blocks currently in correction mode.
    for (int p : correcting) {
      const LedgerSlot& slot = ledgers.at(p);
      if (j <= slot.ledger.start) continue;
      CorrectionDiagnostic diag;
      diag.iteration = j;
      diag.exponent = p;
      const Vector displacement = x - slot.ledger.anchor;
      diag.step_align = std::abs(grad.dot(displacement));
      diag.step_norm = displacement.norm();
      diag.accum_align = std::abs(grad.dot(slot.ledger.weighted_grad_sum));
      diag.accum_norm = slot.ledger.weighted_grad_sum.norm();
      diag.inner_tol = prev_inner_tol;
      report.corrections.push_back(diag);
    }

    CorrectionSet corrections;
    for (int p : correcting) corrections.push_back(&ledgers.at(p).ledger);

    SolverState state;
    state.iteration = j;
    state.x = x;
    state.gradient = grad;
    state.value = value;
    state.prev_step = prev_step;

    const SubspaceProblem problem = build_basis(
        state, corrections, objective,
        options.correction_basis == CorrectionBasisMode::full);

    EllipsoidOptions fallback;
    fallback.radius = std::max(1.0, 10.0 * prev_reduced_norm);
    const SubspaceResult step = solve_subproblem(problem, fallback);

    report.newton_total += step.newton_iterations;
    report.ellipsoid_total += step.ellipsoid_iterations;

    IterationRecord row;
    row.iteration = j;
    row.value = value;
    row.grad_norm = grad_norm;
    row.subspace_dim = static_cast<int>(problem.reduced_dim());
    row.method = step.method == InnerMethod::newton ? TraceMethod::newton
                                                    : TraceMethod::ellipsoid;
    row.inner_iterations = step.method == InnerMethod::newton
                               ? step.newton_iterations
                               : step.ellipsoid_iterations;
    row.inner_tol = problem.inner_tol;
    report.trace.push_back(row);

    // Fold this iterate into every live ledger with its weight.
    const double drop = stable_value_drop(objective, x, value, step.x, step.value);
    const double weight = step_weight(drop, grad);
    from_zero.ledger.accumulate(weight, grad, x);
    from_zero.max_inner_tol = std::max(from_zero.max_inner_tol, problem.inner_tol);
    from_zero.max_displacement = std::max(
        from_zero.max_displacement, (x - from_zero.ledger.anchor).norm());
    for (auto& [p, slot] : ledgers) {
      slot.ledger.accumulate(weight, grad, x);
      slot.max_inner_tol = std::max(slot.max_inner_tol, problem.inner_tol);
      slot.max_displacement =
          std::max(slot.max_displacement, (x - slot.ledger.anchor).norm());
    }

    const bool progressed =
        (value - step.value) > 4.0 * std::numeric_limits<double>::epsilon() *
                                   std::max(std::abs(value), std::abs(step.value));
    no_progress = progressed ? 0 : no_progress + 1;

    prev_step = step.x - x;
    prev_reduced_norm = step.y.norm();
    prev_inner_tol = problem.inner_tol;
    x = step.x;
    value = step.value;
    grad = *objective.gradient(x);
    const long boundary = j + 1;

    // Restart boundaries: for every tracked exponent whose block just
    // completed, leave correction mode or check the certificates, then
    // re-anchor that exponent at the new iterate.
    if (j >= 1) {
      const int p_hi = ceil_log2(j);
      for (int p = options.min_block_exponent; p <= p_hi; ++p) {
        const long span = 1L << p;
        if (boundary % span != 0) continue;
        const long block_start = boundary - span;

        const bool first_block = ledgers.find(p) == ledgers.end();
        LedgerSlot& slot = first_block ? from_zero : ledgers.at(p);

        BlockRecord record;
        record.exponent = p;
        record.start = block_start;
        record.end = boundary;
        record.alignment_ratio = observed_alignment(slot.ledger);
        const double block_drop = stable_value_drop(
            objective, slot.ledger.anchor, slot.ledger.anchor_value, x, value);
        record.gap_lhs = (-block_drop / 4.0) * slot.ledger.weight_sum +
                         slot.ledger.weighted_gap_sum;
        record.grad_sum_norm = slot.ledger.weighted_grad_sum.norm();
        record.weighted_rss = std::sqrt(slot.ledger.weighted_sq_sum);
        record.max_inner_tol = slot.max_inner_tol;
        record.max_displacement = slot.max_displacement;
        record.status = check_block_drop(slot.ledger, block_drop, rho);

        if (correcting.count(p)) {
          correcting.erase(p);
          record.corrected = true;
        } else {
          record.checked = true;
          bool enter = !passed(record.status);
          if (!force_used && p == options.force_correction_exponent) {
            enter = true;
            force_used = true;
          }
          if (enter) {
            correcting.insert(p);
            ++report.correction_blocks;
          }

          if (options.adaptive_rho) {
            const bool align_failed = record.status == BlockCheck::fail_alignment ||
                                      record.status == BlockCheck::fail_both;
            int& fails = align_fail_streak[p];
            fails = align_failed ? fails + 1 : 0;
            if (fails >= 2) {
              rho *= 1.5;
              fails = 0;
            }
            int& calm = calm_streak[p];
            calm = (record.alignment_ratio && *record.alignment_ratio < rho / 2.0)
                       ? calm + 1
                       : 0;
            if (calm >= 2) {
              rho = std::max(options.rho, rho / 1.5);
              calm = 0;
            }
          }
        }
        report.blocks.push_back(record);

        ledgers.insert_or_assign(p, LedgerSlot{BlockLedger(p, boundary, x, value),
                                               0.0, 0.0});
      }
    }

    ++j;
    if (options.stall_window > 0 && no_progress >= options.stall_window) {
      report.termination = Termination::stalled;
      break;
    }
  }

  report.iterations = j;
  report.final_value = value;
  report.final_grad_norm = grad.norm();
  report.minimizer = x;
  return report;
}

} // namespace cgso
