#pragma once

// hil-check front end. Exit codes: 0 Safe, 1 Unsafe, 2 usage or model error.

#include "hil/io/config.hpp"
#include "hil/io/trace.hpp"
#include "hil/scenarios/scenario.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hil::cli {

enum ExitCode : int { kExitSafe = 0, kExitUnsafe = 1, kExitError = 2 };

struct RunOptions {
  std::string scenario;
  std::string config_path;
  std::optional<std::size_t> bound;
  std::string trace_out;
  bool trace_always = false;
  std::uint64_t path_ceiling = 100'000'000;
  std::string operators;
};

struct RunReport {
  std::string scenario;
  Verdict verdict;
  std::uint64_t paths_explored = 0;
  double elapsed_seconds = 0;
  std::optional<std::string> trace;  // serialized Trace + ChoiceLog
};

/// Resolves the scenario configuration the options describe. Throws on error.
inline scenarios::ScenarioConfig resolve_config(const RunOptions& opt) {
  std::optional<scenarios::ScenarioConfig> base;
  if (!opt.scenario.empty()) {
    base = scenarios::scenario_by_name(opt.scenario);
    if (!base) {
      std::string known;
      for (const auto& n : scenarios::scenario_names()) known += (known.empty() ? "" : ", ") + n;
      throw std::invalid_argument("unknown scenario '" + opt.scenario + "' (known: " + known + ")");
    }
  }
  scenarios::ScenarioConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = io::load_config(opt.config_path, base);
  } else if (base) {
    cfg = *base;
  } else {
    throw std::invalid_argument("run needs a scenario name or --config");
  }
  if (opt.bound) {
    if (*opt.bound < 1) throw std::invalid_argument("--bound must be at least 1");
    cfg.bound = *opt.bound;
  }
  if (!opt.operators.empty()) {
    std::vector<behaviour::IntegratorOp> ops;
    for (const auto& f : io::detail::split_list(opt.operators)) {
      const auto op = io::detail::parse_label<behaviour::IntegratorOp>(f, behaviour::integrator_labels());
      if (!op) throw std::invalid_argument("--operators: unknown operator '" + f + "'");
      ops.push_back(*op);
    }
    cfg.params.operators = ops;
  }
  cfg.validate();
  return cfg;
}

/// Explores `cfg` and serializes a trace when the verdict is Unsafe or `always` is set.
inline RunReport run_config(const scenarios::ScenarioConfig& cfg, std::uint64_t path_ceiling, bool always) {
  RunReport r;
  r.scenario = cfg.name;
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<scenarios::CaseStudy> cs;
  try {
    cs = scenarios::build_case_study(cfg, path_ceiling);
    r.verdict = explore(*cs->model, ExploreOptions{cfg.bound, path_ceiling});
  } catch (const std::exception& e) {
    r.verdict = Verdict{ModelFailure{e.what()}, {}};
  }
  r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.paths_explored = r.verdict.stats.paths;

  if (r.verdict.unsafe()) {
    const auto& u = r.verdict.counterexample();
    r.trace = io::trace_to_string(*cs->model, {cfg.name, cfg.bound, "Unsafe", u.assertion}, u.trace, u.choices);
  } else if (r.verdict.safe() && always) {
    FirstChoiceResolver first;
    const auto sim = simulate(*cs->model, cfg.bound, first);
    r.trace = io::trace_to_string(*cs->model, {cfg.name, cfg.bound, "Safe", "-"}, sim.trace, sim.choices);
  }
  return r;
}

inline void print_report(std::ostream& out, const RunReport& r) {
  out << "scenario: " << r.scenario << "\n";
  out << "verdict: " << summary(r.verdict) << "\n";
  out << "paths: " << r.paths_explored << "\n";
  out << "steps: " << r.verdict.stats.steps << "\n";
  if (r.verdict.unsafe()) {
    const auto& u = r.verdict.counterexample();
    out << "failed: " << u.assertion << " at iteration " << u.trace.snapshots.back().iteration << "\n";
  }
  out << "elapsed: " << r.elapsed_seconds << "s\n";
}

inline int run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  scenarios::ScenarioConfig cfg;
  try {
    cfg = resolve_config(opt);
  } catch (const std::exception& e) {
    err << "hil-check: " << e.what() << "\n";
    return kExitError;
  }
  const RunReport report = run_config(cfg, opt.path_ceiling, opt.trace_always);
  print_report(out, report);
  if (report.verdict.failed()) {
    err << "hil-check: " << summary(report.verdict) << "\n";
    return kExitError;
  }
  if (report.trace && !opt.trace_out.empty()) {
    std::ofstream f(opt.trace_out, std::ios::binary | std::ios::trunc);
    f << *report.trace;
    f.close();
    if (!f) {
      err << "hil-check: cannot write trace to " << opt.trace_out << "\n";
      return kExitError;
    }
    out << "trace: " << opt.trace_out << "\n";
  }
  return report.verdict.safe() ? kExitSafe : kExitUnsafe;
}

inline int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded exhaustive checker for the driver / ACC / route case study"};
  app.name("hil-check");
  app.require_subcommand(1);
  RunOptions opt;
  auto* run_cmd = app.add_subcommand("run", "Explore a scenario and report its verdict");
  run_cmd->add_option("scenario", opt.scenario, "lowered-speed, manual-override or ideal");
  run_cmd->add_option("--config", opt.config_path, "Scenario config file (key = value)");
  run_cmd->add_option("--bound", opt.bound, "Control-loop iterations to explore (default 100)");
  run_cmd->add_option("--trace-out", opt.trace_out, "Write the trace here");
  run_cmd->add_flag("--trace-always", opt.trace_always, "Also write a trace for Safe verdicts");
  run_cmd->add_option("--path-ceiling", opt.path_ceiling, "Abort after this many explored paths");
  run_cmd->add_option("--operators", opt.operators, "Restrict the integrator set, e.g. Max,Min");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSafe;
  } catch (const CLI::ParseError& e) {
    err << "hil-check: " << e.what() << "\n" << app.help();
    return kExitError;
  }
  return run(opt, out, err);
}

} // namespace hil::cli
