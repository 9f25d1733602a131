// Benchmark harness CLI: generate instances, run solver matrices, re-render
// reports from a previous run's manifest.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cgso/bench.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string scale = "desk";
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
  int threads = 0;
};

cgso::BenchConfig resolve_config(const CommonArgs& args) {
  cgso::BenchConfig config;
  if (!args.config_path.empty()) {
    config = cgso::load_config(args.config_path);
  } else if (args.scale == "desk") {
    config = cgso::desk_scale_config(args.seed);
  } else if (args.scale == "paper") {
    config = cgso::paper_scale_config(args.seed);
  } else {
    throw std::invalid_argument("unknown scale: " + args.scale);
  }
  if (args.seed_set) config.seed = args.seed;
  if (!args.out_dir.empty()) config.output_dir = args.out_dir;
  if (args.threads > 0) config.threads = args.threads;
  return config;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON benchmark config");
  cmd->add_option("--scale", args.scale,
                  "Built-in config scale when no --config is given")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--seed", args.seed, "Global seed mixed into instance seeds")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--out", args.out_dir, "Output directory");
  cmd->add_option("--threads", args.threads, "Concurrent benchmark cells");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"CGSO benchmark harness"};
  app.require_subcommand(1);

  CommonArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Write instance files");
  add_common(gen, gen_args);

  CommonArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run the configured solver matrix");
  add_common(run, run_args);

  std::string report_dir = "bench-out";
  CLI::App* report =
      app.add_subcommand("report", "Re-render summary.csv from a manifest");
  report->add_option("--out", report_dir, "Directory of a previous run");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      cgso::BenchConfig config = resolve_config(gen_args);
      const std::string dir =
          gen_args.out_dir.empty() ? config.output_dir : gen_args.out_dir;
      cgso::write_instances(config, dir);
      std::cout << "wrote " << config.instances.size() << " instance files to "
                << dir << "\n";
      return 0;
    }
    if (run->parsed()) {
      cgso::BenchConfig config = resolve_config(run_args);
      cgso::BenchSummary summary = cgso::run_bench(config);
      cgso::emit_report(config, summary);
      int failures = 0;
      for (const cgso::CellResult& cell : summary.cells) {
        std::cout << cell.tag() << ": "
                  << (cell.completed
                          ? cgso::termination_name(cell.report.termination)
                          : "error: " + cell.error);
        if (cell.completed) {
          std::cout << " (iterations " << cell.report.iterations << ")";
        }
        std::cout << "\n";
        if (!cell.completed) ++failures;
      }
      std::cout << "summary: " << config.output_dir << "/summary.csv\n";
      return failures == 0 ? 0 : 1;
    }
    if (report->parsed()) {
      cgso::render_summary(report_dir);
      std::cout << "re-rendered " << report_dir << "/summary.csv\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
