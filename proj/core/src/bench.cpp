#include "cgso/bench.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "cgso/instance_io.hpp"
#include "cgso/trace_io.hpp"

namespace cgso {

namespace fs = std::filesystem;
using nlohmann::json;

std::string solver_kind_name(SolverConfig::Kind kind) {
  switch (kind) {
    case SolverConfig::Kind::cgso: return "cgso";
    case SolverConfig::Kind::cg_fr: return "cg_fr";
    case SolverConfig::Kind::cg_pr: return "cg_pr";
    case SolverConfig::Kind::cg_hz: return "cg_hz";
    case SolverConfig::Kind::steepest_descent: return "sd";
  }
  return "unknown";
}

SolverConfig::Kind solver_kind_from_name(const std::string& name) {
  if (name == "cgso") return SolverConfig::Kind::cgso;
  if (name == "cg_fr") return SolverConfig::Kind::cg_fr;
  if (name == "cg_pr") return SolverConfig::Kind::cg_pr;
  if (name == "cg_hz") return SolverConfig::Kind::cg_hz;
  if (name == "sd") return SolverConfig::Kind::steepest_descent;
  throw std::invalid_argument("unknown solver kind: " + name);
}

std::string SolverConfig::display_name() const {
  return name.empty() ? solver_kind_name(kind) : name;
}

std::uint64_t mix_seed(std::uint64_t global, std::uint64_t instance_seed,
                       int repetition) {
  std::uint64_t z = global + 0x9e3779b97f4a7c15ULL * (instance_seed + 1) +
                    0xbf58476d1ce4e5b9ULL * (static_cast<std::uint64_t>(repetition) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::string default_label(const InstanceSpec& spec) {
  std::string label = family_name(spec.family);
  if (spec.family == Family::f1 || spec.family == Family::f3) {
    label += "-m" + std::to_string(spec.m);
  }
  label += "-n" + std::to_string(spec.n);
  return label;
}

std::string instance_label(const InstanceSpec& spec) {
  return spec.label.empty() ? default_label(spec) : spec.label;
}

CgVariant variant_of(SolverConfig::Kind kind) {
  switch (kind) {
    case SolverConfig::Kind::cg_fr: return CgVariant::fletcher_reeves;
    case SolverConfig::Kind::cg_pr: return CgVariant::polak_ribiere;
    case SolverConfig::Kind::cg_hz: return CgVariant::hager_zhang;
    case SolverConfig::Kind::steepest_descent: return CgVariant::steepest_descent;
    case SolverConfig::Kind::cgso: break;
  }
  throw std::logic_error("variant_of: not a nonlinear-CG kind");
}

json spec_to_json(const InstanceSpec& spec) {
  json j;
  j["family"] = family_name(spec.family);
  j["m"] = spec.m;
  j["n"] = spec.n;
  j["m_f"] = spec.c_scale;
  j["d"] = spec.degree;
  j["ds"] = spec.density;
  j["seed"] = spec.seed;
  j["epsilon"] = spec.epsilon;
  j["label"] = instance_label(spec);
  if (spec.family == Family::quadratic) {
    j["l"] = spec.spectrum_lo;
    j["L"] = spec.spectrum_hi;
  }
  return j;
}

InstanceSpec spec_from_json(const json& j) {
  InstanceSpec spec;
  spec.family = family_from_name(j.at("family").get<std::string>());
  spec.m = j.value("m", Index{0});
  spec.n = j.at("n").get<Index>();
  spec.c_scale = j.value("m_f", 0.0);
  spec.degree = j.value("d", 0);
  spec.density = j.value("ds", 1.0);
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.epsilon = j.value("epsilon", 1e-8);
  spec.label = j.value("label", std::string{});
  spec.spectrum_lo = j.value("l", 1.0);
  spec.spectrum_hi = j.value("L", 10.0);
  validate(spec);
  return spec;
}

json solver_to_json(const SolverConfig& sc) {
  json j;
  j["kind"] = solver_kind_name(sc.kind);
  j["name"] = sc.display_name();
  if (sc.kind == SolverConfig::Kind::cgso) {
    const SolverOptions& o = sc.cgso_options;
    j["rho"] = o.rho;
    j["min_block_exponent"] = o.min_block_exponent;
    j["max_iterations"] = o.max_iterations;
    j["correction_basis"] = o.correction_basis == CorrectionBasisMode::full
                                ? "full"
                                : "displacement_only";
    j["adaptive_rho"] = o.adaptive_rho;
    j["stall_window"] = o.stall_window;
    j["force_correction_exponent"] = o.force_correction_exponent;
  } else {
    const NonlinearCgOptions& o = sc.cg_options;
    j["max_iterations"] = o.max_iterations;
    j["c1"] = o.line_search.c1;
    j["c2"] = o.line_search.c2;
    j["max_probes"] = o.line_search.max_probes;
    j["exact_line_search"] = o.exact_line_search;
    j["stall_window"] = o.stall_window;
  }
  return j;
}

SolverConfig solver_from_json(const json& j) {
  SolverConfig sc;
  sc.kind = solver_kind_from_name(j.at("kind").get<std::string>());
  sc.name = j.value("name", std::string{});
  if (sc.kind == SolverConfig::Kind::cgso) {
    SolverOptions& o = sc.cgso_options;
    o.rho = j.value("rho", o.rho);
    o.min_block_exponent = j.value("min_block_exponent", o.min_block_exponent);
    o.max_iterations = j.value("max_iterations", o.max_iterations);
    if (j.value("correction_basis", std::string{"full"}) == "displacement_only") {
      o.correction_basis = CorrectionBasisMode::displacement_only;
    }
    o.adaptive_rho = j.value("adaptive_rho", o.adaptive_rho);
    o.stall_window = j.value("stall_window", o.stall_window);
    o.force_correction_exponent =
        j.value("force_correction_exponent", o.force_correction_exponent);
  } else {
    NonlinearCgOptions& o = sc.cg_options;
    o.max_iterations = j.value("max_iterations", o.max_iterations);
    o.line_search.c1 = j.value("c1", o.line_search.c1);
    o.line_search.c2 = j.value("c2", o.line_search.c2);
    o.line_search.max_probes = j.value("max_probes", o.line_search.max_probes);
    o.exact_line_search = j.value("exact_line_search", o.exact_line_search);
    o.stall_window = j.value("stall_window", o.stall_window);
  }
  return sc;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string options_hash(const SolverConfig& sc) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(solver_to_json(sc).dump())));
  return buf;
}

void execute_cell(const SolverConfig& sc, CellResult& cell) {
  try {
    GeneratedInstance inst = generate_instance(cell.spec);
    if (sc.kind == SolverConfig::Kind::cgso) {
      SolverOptions opts = sc.cgso_options;
      opts.epsilon = cell.spec.epsilon; // the instance owns the tolerance
      cell.report = run(*inst.objective, inst.start, opts);
    } else {
      NonlinearCgOptions opts = sc.cg_options;
      opts.epsilon = cell.spec.epsilon;
      cell.report = nonlinear_cg(*inst.objective, inst.start, variant_of(sc.kind),
                                 opts);
    }
    cell.report.solver_name = cell.solver_name;
    cell.completed = true;
  } catch (const std::exception& e) {
    cell.completed = false;
    cell.error = e.what();
  }
}

struct SummaryRow {
  InstanceSpec spec;
  std::string instance;
  std::string solver;
  int repetition = 0;
  std::string status;
  long iterations = 0;
  long newton = 0;
  long ellipsoid = 0;
  long corrections = 0;
  long line_search = 0;
  std::optional<double> rho_max;
  double final_value = 0.0;
  double final_grad_norm = 0.0;
};

SummaryRow row_of_cell(const CellResult& cell) {
  SummaryRow row;
  row.spec = cell.spec;
  row.instance = instance_label(cell.spec);
  row.solver = cell.solver_name;
  row.repetition = cell.repetition;
  if (!cell.completed) {
    row.status = "error";
    return row;
  }
  const SolveReport& r = cell.report;
  row.status = termination_name(r.termination);
  row.iterations = r.iterations;
  row.newton = r.newton_total;
  row.ellipsoid = r.ellipsoid_total;
  row.corrections = r.correction_blocks;
  row.line_search = r.line_search_total;
  row.rho_max = r.max_alignment_ratio();
  row.final_value = r.final_value;
  row.final_grad_norm = r.final_grad_norm;
  return row;
}

void write_summary_csv(const std::string& path,
                       const std::vector<SummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << "instance,family,m,n,d,m_f,ds,seed,epsilon,solver,repetition,status,"
         "iterations,newton,ellipsoid,corrections,line_search,rho_max,"
         "final_value,final_grad_norm\n";
  for (const SummaryRow& row : rows) {
    out << row.instance << ',' << family_name(row.spec.family) << ','
        << row.spec.m << ',' << row.spec.n << ',' << row.spec.degree << ','
        << format_double(row.spec.c_scale) << ','
        << format_double(row.spec.density) << ',' << row.spec.seed << ','
        << format_double(row.spec.epsilon) << ',' << row.solver << ','
        << row.repetition << ',' << row.status << ',' << row.iterations << ','
        << row.newton << ',' << row.ellipsoid << ',' << row.corrections << ','
        << row.line_search << ',';
    if (row.rho_max) out << format_double(*row.rho_max);
    out << ',' << format_double(row.final_value) << ','
        << format_double(row.final_grad_norm) << '\n';
  }
}

json row_to_json(const SummaryRow& row, const std::string& tag,
                 const std::string& hash) {
  json j;
  j["tag"] = tag;
  j["spec"] = spec_to_json(row.spec);
  j["solver"] = row.solver;
  j["repetition"] = row.repetition;
  j["options_hash"] = hash;
  j["status"] = row.status;
  j["iterations"] = row.iterations;
  j["newton"] = row.newton;
  j["ellipsoid"] = row.ellipsoid;
  j["corrections"] = row.corrections;
  j["line_search"] = row.line_search;
  if (row.rho_max) {
    j["rho_max"] = *row.rho_max;
  } else {
    j["rho_max"] = nullptr;
  }
  j["final_value"] = row.final_value;
  j["final_grad_norm"] = row.final_grad_norm;
  j["trace"] = "traces/" + tag + ".csv";
  j["blocks"] = "traces/" + tag + "_blocks.csv";
  return j;
}

SummaryRow row_from_json(const json& j) {
  SummaryRow row;
  row.spec = spec_from_json(j.at("spec"));
  row.instance = instance_label(row.spec);
  row.solver = j.at("solver").get<std::string>();
  row.repetition = j.at("repetition").get<int>();
  row.status = j.at("status").get<std::string>();
  row.iterations = j.at("iterations").get<long>();
  row.newton = j.at("newton").get<long>();
  row.ellipsoid = j.at("ellipsoid").get<long>();
  row.corrections = j.at("corrections").get<long>();
  row.line_search = j.at("line_search").get<long>();
  if (!j.at("rho_max").is_null()) row.rho_max = j["rho_max"].get<double>();
  row.final_value = j.at("final_value").get<double>();
  row.final_grad_norm = j.at("final_grad_norm").get<double>();
  return row;
}

} // namespace

std::string CellResult::tag() const {
  return instance_label(spec) + "__" + solver_name + "__rep" +
         std::to_string(repetition);
}

BenchSummary run_bench(const BenchConfig& config) {
  if (config.instances.empty() || config.solvers.empty()) {
    throw std::invalid_argument("run_bench: instances and solvers must be nonempty");
  }
  if (config.repetitions < 1) {
    throw std::invalid_argument("run_bench: repetitions must be >= 1");
  }

  BenchSummary summary;
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    for (std::size_t s = 0; s < config.solvers.size(); ++s) {
      for (int rep = 0; rep < config.repetitions; ++rep) {
        CellResult cell;
        cell.instance_index = i;
        cell.solver_index = s;
        cell.repetition = rep;
        cell.spec = config.instances[i];
        cell.spec.seed = mix_seed(config.seed, config.instances[i].seed, rep);
        cell.spec.label = instance_label(config.instances[i]);
        cell.solver_name = config.solvers[s].display_name();
        summary.cells.push_back(std::move(cell));
      }
    }
  }

  const int workers =
      std::max(1, std::min<int>(config.threads,
                                static_cast<int>(summary.cells.size())));
  if (workers == 1) {
    for (CellResult& cell : summary.cells) {
      execute_cell(config.solvers[cell.solver_index], cell);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= summary.cells.size()) return;
        execute_cell(config.solvers[summary.cells[i].solver_index],
                     summary.cells[i]);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  summary.all_completed = true;
  for (const CellResult& cell : summary.cells) {
    if (!cell.completed) summary.all_completed = false;
  }
  return summary;
}

void emit_report(const BenchConfig& config, const BenchSummary& summary) {
  const fs::path out_dir(config.output_dir);
  fs::create_directories(out_dir / "traces");

  json manifest;
  manifest["config"]["repetitions"] = config.repetitions;
  manifest["config"]["seed"] = config.seed;
  manifest["config"]["threads"] = config.threads;
  manifest["config"]["instances"] = json::array();
  for (const InstanceSpec& spec : config.instances) {
    manifest["config"]["instances"].push_back(spec_to_json(spec));
  }
  manifest["config"]["solvers"] = json::array();
  for (const SolverConfig& sc : config.solvers) {
    manifest["config"]["solvers"].push_back(solver_to_json(sc));
  }

  std::vector<SummaryRow> rows;
  manifest["cells"] = json::array();
  for (const CellResult& cell : summary.cells) {
    const SummaryRow row = row_of_cell(cell);
    rows.push_back(row);
    json cj = row_to_json(row, cell.tag(),
                          options_hash(config.solvers[cell.solver_index]));
    if (!cell.completed) cj["error"] = cell.error;
    manifest["cells"].push_back(cj);
    if (cell.completed) {
      write_trace_csv((out_dir / "traces" / (cell.tag() + ".csv")).string(),
                      cell.report);
      write_blocks_csv(
          (out_dir / "traces" / (cell.tag() + "_blocks.csv")).string(),
          cell.report);
    }
  }

  write_summary_csv((out_dir / "summary.csv").string(), rows);

  std::ofstream mf(out_dir / "manifest.json");
  if (!mf) throw std::runtime_error("cannot write manifest.json");
  mf << manifest.dump(2) << "\n";
}

void render_summary(const std::string& output_dir) {
  const fs::path dir(output_dir);
  std::ifstream in(dir / "manifest.json");
  if (!in) {
    throw std::runtime_error("no manifest.json in " + output_dir);
  }
  json manifest = json::parse(in);
  std::vector<SummaryRow> rows;
  for (const json& cj : manifest.at("cells")) {
    rows.push_back(row_from_json(cj));
  }
  write_summary_csv((dir / "summary.csv").string(), rows);
}

void write_instances(const BenchConfig& config, const std::string& dir) {
  fs::create_directories(dir);
  for (const InstanceSpec& base : config.instances) {
    InstanceSpec spec = base;
    spec.seed = mix_seed(config.seed, base.seed, 0);
    spec.label = instance_label(base);
    GeneratedInstance inst = generate_instance(spec);
    save_instance((fs::path(dir) / (spec.label + ".json")).string(), inst);
  }
}

namespace {

BenchConfig table_config(std::uint64_t seed, int divisor) {
  auto scaled = [divisor](Index v) {
    return std::max<Index>(1, v / divisor);
  };

  BenchConfig config;
  config.seed = seed;

  InstanceSpec ins1;
  ins1.family = Family::f1;
  ins1.m = scaled(6000);
  ins1.n = scaled(2000);
  ins1.density = 1.0;
  ins1.epsilon = 1e-8;
  ins1.seed = 101;
  ins1.label = "ins1";
  config.instances.push_back(ins1);

  InstanceSpec ins2 = ins1;
  ins2.density = 0.5;
  ins2.seed = 102;
  ins2.label = "ins2";
  config.instances.push_back(ins2);

  InstanceSpec ins3;
  ins3.family = Family::f2;
  ins3.n = scaled(500);
  ins3.c_scale = 100.0;
  ins3.density = 0.012;
  ins3.epsilon = 1e-3;
  ins3.seed = 103;
  ins3.label = "ins3";
  config.instances.push_back(ins3);

  InstanceSpec ins4;
  ins4.family = Family::f2;
  ins4.n = scaled(1000);
  ins4.c_scale = 10.0;
  ins4.density = 0.006;
  ins4.epsilon = 1e-8;
  ins4.seed = 104;
  ins4.label = "ins4";
  config.instances.push_back(ins4);

  InstanceSpec ins5;
  ins5.family = Family::f3;
  ins5.m = scaled(1500);
  ins5.n = scaled(3000);
  ins5.degree = 6;
  ins5.density = 0.5;
  ins5.epsilon = 1e-18;
  ins5.seed = 105;
  ins5.label = "ins5";
  config.instances.push_back(ins5);

  InstanceSpec ins6;
  ins6.family = Family::f3;
  ins6.m = scaled(2500);
  ins6.n = scaled(5000);
  ins6.degree = 4;
  ins6.density = 0.5;
  ins6.epsilon = 1e-18;
  ins6.seed = 106;
  ins6.label = "ins6";
  config.instances.push_back(ins6);

  // The square ill-conditioned instance is small already; both scales run it
  // at 50x50.
  InstanceSpec ins7;
  ins7.family = Family::f3;
  ins7.m = 50;
  ins7.n = 50;
  ins7.degree = 4;
  ins7.density = 1.0;
  ins7.epsilon = 1e-8;
  ins7.seed = 107;
  ins7.label = "ins7";
  config.instances.push_back(ins7);

  SolverConfig cgso;
  cgso.kind = SolverConfig::Kind::cgso;
  config.solvers.push_back(cgso);

  SolverConfig hz;
  hz.kind = SolverConfig::Kind::cg_hz;
  config.solvers.push_back(hz);

  return config;
}

} // namespace

BenchConfig desk_scale_config(std::uint64_t seed) {
  return table_config(seed, 10);
}

BenchConfig paper_scale_config(std::uint64_t seed) {
  return table_config(seed, 1);
}

BenchConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config: " + path);
  json doc = json::parse(in);

  BenchConfig config;
  config.repetitions = doc.value("repetitions", 1);
  config.seed = doc.value("seed", std::uint64_t{0});
  config.output_dir = doc.value("output_dir", std::string{"bench-out"});
  config.threads = doc.value("threads", 1);
  for (const json& j : doc.at("instances")) {
    config.instances.push_back(spec_from_json(j));
  }
  for (const json& j : doc.at("solvers")) {
    config.solvers.push_back(solver_from_json(j));
  }
  return config;
}

} // namespace cgso
