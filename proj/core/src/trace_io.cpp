#include "cgso/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cgso {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  return out;
}

const char* check_name(BlockCheck c) {
  switch (c) {
    case BlockCheck::pass: return "pass";
    case BlockCheck::fail_gap: return "fail_gap";
    case BlockCheck::fail_alignment: return "fail_alignment";
    case BlockCheck::fail_both: return "fail_both";
  }
  return "unknown";
}

} // namespace

void write_trace_csv(const std::string& path, const SolveReport& report) {
  std::ofstream out = open_out(path);
  out << "solver,iteration,value,grad_norm,subspace_dim,inner_method,"
         "inner_iterations,inner_tol\n";
  for (const IterationRecord& row : report.trace) {
    out << report.solver_name << ',' << row.iteration << ','
        << format_double(row.value) << ',' << format_double(row.grad_norm)
        << ',';
    if (row.subspace_dim > 0) out << row.subspace_dim;
    out << ',' << trace_method_name(row.method) << ',' << row.inner_iterations
        << ',' << format_double(row.inner_tol) << '\n';
  }
}

void write_blocks_csv(const std::string& path, const SolveReport& report) {
  std::ofstream out = open_out(path);
  out << "exponent,start,end,corrected,checked,status,alignment_ratio,"
         "gap_lhs,grad_sum_norm,weighted_rss,max_inner_tol,max_displacement\n";
  for (const BlockRecord& b : report.blocks) {
    out << b.exponent << ',' << b.start << ',' << b.end << ','
        << (b.corrected ? 1 : 0) << ',' << (b.checked ? 1 : 0) << ','
        << check_name(b.status) << ',';
    if (b.alignment_ratio) out << format_double(*b.alignment_ratio);
    out << ',' << format_double(b.gap_lhs) << ','
        << format_double(b.grad_sum_norm) << ','
        << format_double(b.weighted_rss) << ','
        << format_double(b.max_inner_tol) << ','
        << format_double(b.max_displacement) << '\n';
  }
}

} // namespace cgso
