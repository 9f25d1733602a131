#include "cgso/certificates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cgso {

double step_weight(double value_drop, const Vector& gradient) {
  const double sq = gradient.squaredNorm();
  if (sq <= 0.0) {
    throw std::invalid_argument("step_weight: zero gradient");
  }
  return std::sqrt(std::max(value_drop, 0.0) / sq);
}

double stable_value_drop(const Objective& obj, const Vector& x_old,
                         double f_old, const Vector& x_new, double f_new) {
  const double direct = f_old - f_new;
  const double floor =
      1e3 * std::numeric_limits<double>::epsilon() * std::abs(f_old);
  if (std::abs(direct) > floor) return direct;

  const Vector step = x_new - x_old;
  const auto grad = obj.gradient(x_old);
  const auto curve = obj.hessian_vec(x_old, step);
  if (!grad || !curve) return direct;
  return -(grad->dot(step) + 0.5 * step.dot(*curve));
}

BlockLedger::BlockLedger(int exponent_, long start_, Vector anchor_,
                         double anchor_value_)
    : exponent(exponent_), start(start_), anchor(std::move(anchor_)),
      anchor_value(anchor_value_),
      weighted_grad_sum(Vector::Zero(anchor.size())) {}

void BlockLedger::accumulate(double weight, const Vector& gradient,
                             const Vector& x) {
  weight_sum += weight;
  weighted_gap_sum += weight * gradient.dot(x - anchor);
  weighted_grad_sum += weight * gradient;
  weighted_sq_sum += weight * weight * gradient.squaredNorm();
}

BlockCheck check_block_drop(const BlockLedger& ledger, double value_drop,
                            double rho) {
  const bool gap_ok =
      (-value_drop / 4.0) * ledger.weight_sum + ledger.weighted_gap_sum < 0.0;
  const bool align_ok = ledger.weighted_grad_sum.norm() <=
                        rho * std::sqrt(ledger.weighted_sq_sum);
  if (gap_ok && align_ok) return BlockCheck::pass;
  if (!gap_ok && !align_ok) return BlockCheck::fail_both;
  return gap_ok ? BlockCheck::fail_alignment : BlockCheck::fail_gap;
}

BlockCheck check_block(const BlockLedger& ledger, double end_value,
                       double rho) {
  return check_block_drop(ledger, ledger.anchor_value - end_value, rho);
}

std::optional<double> observed_alignment(const BlockLedger& ledger) {
  if (ledger.weighted_sq_sum <= 0.0) return std::nullopt;
  return ledger.weighted_grad_sum.norm() / std::sqrt(ledger.weighted_sq_sum);
}

} // namespace cgso
