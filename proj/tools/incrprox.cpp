// incrprox: run, benchmark and validate incremental proximal experiments.
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "incrprox/bench.hpp"
#include "incrprox/config.hpp"
#include "incrprox/trace_io.hpp"

namespace fs = std::filesystem;
using namespace incrprox;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kSolverFailure = 3;

struct Options {
  std::string config;
  std::string out = ".";
  std::string seeds = "20";
  std::string suite;
  bool quiet = false;
};

void print_warnings(const RunSpec &spec) {
  for (const auto &w : spec.warnings)
    std::cerr << "warning: " << w << "\n";
}

int cmd_run(const Options &o, bool feasibility_only) {
  RunSpec spec;
  try {
    spec = load_config(o.config);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  print_warnings(spec);
  if (feasibility_only && spec.kind != "feasibility") {
    std::cerr << "config error: problem.kind: the feasibility command needs "
                 "kind 'feasibility', got '"
              << spec.kind << "'\n";
    return kConfigError;
  }

  RunOutcome outcome;
  try {
    outcome = execute(spec);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error &e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }

  try {
    write_outputs(spec, outcome, o.out);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }

  const Trace &t = outcome.trace;
  if (t.status == RunStatus::SolverFailure) {
    std::cerr << "solver failure: " << t.message << "\n";
    return kSolverFailure;
  }
  if (!o.quiet) {
    std::cout << "kind=" << spec.kind << " variant=" << t.meta.variant
              << " ordering=" << t.meta.ordering << " iterations=" << t.iterations
              << " stop=" << t.stop_reason
              << " best_value=" << format_double(t.best_value) << "\n";
    if (outcome.bounds) {
      const auto &b = *outcome.bounds;
      std::cout << "c=" << format_double(b.inputs.c)
                << " cyclic_bound=" << format_double(b.cyclic_bound)
                << " randomized_bound=" << format_double(b.randomized_bound);
      if (b.observed_gap)
        std::cout << " gap=" << format_double(*b.observed_gap);
      std::cout << "\n";
    }
    std::cout << "wrote " << fs::path(o.out).string() << "\n";
  }
  return kOk;
}

int cmd_validate(const Options &o) {
  try {
    RunSpec spec = load_config(o.config);
    print_warnings(spec);
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  if (!o.quiet)
    std::cout << "ok\n";
  return kOk;
}

int cmd_bench(const Options &o) {
  json result;
  try {
    const auto seeds = parse_seeds(o.seeds);
    result = run_bench(o.suite, seeds, bench_threads());
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Error &e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }
  try {
    fs::create_directories(o.out);
    write_text(fs::path(o.out) / ("bench_" + o.suite + ".json"),
               result.dump(2) + "\n");
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  if (!o.quiet) {
    for (const auto &c : result["criteria"])
      std::cout << (c["passed"].get<bool>() ? "PASS " : "FAIL ")
                << c["name"].get<std::string>() << " ("
                << c["detail"].get<std::string>() << ")\n";
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Incremental subgradient-proximal solver and experiment harness"};
  app.require_subcommand(1);
  Options o;

  auto *run = app.add_subcommand("run", "Run one configured experiment");
  run->add_option("--config", o.config, "Config JSON (or a trace.json)")->required();
  run->add_option("--out", o.out, "Output directory");
  run->add_flag("--quiet", o.quiet, "Suppress the summary");

  auto *feas = app.add_subcommand("feasibility", "Run a feasibility config");
  feas->add_option("--config", o.config, "Config JSON with problem.kind = feasibility")
      ->required();
  feas->add_option("--out", o.out, "Output directory");
  feas->add_flag("--quiet", o.quiet, "Suppress the summary");

  auto *bench = app.add_subcommand("bench", "Run a benchmark suite over seeds");
  bench->add_option("--suite", o.suite, "bounds | feasibility | convergence")
      ->required();
  bench->add_option("--seeds", o.seeds, "Seed count N (0..N-1) or list a,b,c");
  bench->add_option("--out", o.out, "Output directory");
  bench->add_flag("--quiet", o.quiet, "Suppress the summary");

  auto *validate = app.add_subcommand("validate", "Check a config without running");
  validate->add_option("--config", o.config, "Config JSON")->required();
  validate->add_flag("--quiet", o.quiet, "Print nothing on success");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kConfigError;
  }

  if (*run)
    return cmd_run(o, false);
  if (*feas)
    return cmd_run(o, true);
  if (*bench)
    return cmd_bench(o);
  return cmd_validate(o);
}
