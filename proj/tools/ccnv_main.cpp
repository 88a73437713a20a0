// Command-line front end: trajectory runs, parameter sweeps, the verification
// suite, and time-refinement studies.
//
// Exit codes: 0 completed, 1 error, 2 blow-up flagged, 3 resolution exhausted.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccnv/run.hpp"
#include "ccnv/verify.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  long long seed = -1;
};

ccnv::RunConfig build_config(const CommonOpts& opts) {
  ccnv::RunConfig c;
  if (!opts.config_path.empty()) c = ccnv::load_config_file(opts.config_path);
  for (const std::string& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    ccnv::apply_override(c, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!opts.out_dir.empty()) c.out_dir = opts.out_dir;
  if (opts.seed >= 0) c.seed = static_cast<std::uint64_t>(opts.seed);
  c.validate();
  return c;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "config file (key = value lines)");
  cmd->add_option("--set", opts.overrides, "override a config key, key=value")->take_all();
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "random seed override");
}

int status_code(ccnv::RunStatus s) { return static_cast<int>(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral laboratory for 2D micropolar convection with critical dissipation"};
  app.require_subcommand(0, 1);

  bool help_config = false;
  app.add_flag("--help-config", help_config, "print the config schema with defaults");

  CommonOpts run_opts, sweep_opts, conv_opts, resume_opts;

  CLI::App* cmd_run = app.add_subcommand("run", "integrate one trajectory");
  add_common(cmd_run, run_opts);

  CLI::App* cmd_sweep = app.add_subcommand("sweep", "run a family of trajectories along one axis");
  add_common(cmd_sweep, sweep_opts);
  std::string sweep_axis = "params.beta";
  std::vector<double> sweep_values;
  int workers = 1;
  cmd_sweep->add_option("--axis", sweep_axis, "config key to vary");
  cmd_sweep->add_option("--values", sweep_values, "axis values")->delimiter(',')->required();
  cmd_sweep->add_option("--workers", workers, "parallel run workers");

  CLI::App* cmd_verify = app.add_subcommand("verify", "run verification suites");
  std::string selector = "all";
  std::string report_path;
  cmd_verify->add_option("selector", selector,
                         "suite or check name (all, trivial, lemmas, solver, bounds, desk, ...)");
  cmd_verify->add_option("--report", report_path, "write the JSONL report here (default stdout)");
  bool list_checks = false;
  cmd_verify->add_flag("--list", list_checks, "list selectors and exit");

  CLI::App* cmd_conv = app.add_subcommand("convergence", "temporal/spatial refinement study");
  add_common(cmd_conv, conv_opts);

  CLI::App* cmd_resume = app.add_subcommand("resume", "continue from a checkpoint");
  add_common(cmd_resume, resume_opts);
  std::string checkpoint_path;
  cmd_resume->add_option("--from", checkpoint_path, "checkpoint file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (help_config) {
      std::cout << ccnv::config_schema();
      return 0;
    }

    if (cmd_run->parsed()) {
      const ccnv::RunConfig c = build_config(run_opts);
      const ccnv::RunResult r = ccnv::run(c);
      std::cout << "status " << status_code(r.status) << ", t_final " << r.t_final
                << ", artifacts in " << r.dir << "\n";
      return status_code(r.status);
    }

    if (cmd_sweep->parsed()) {
      ccnv::SweepPlan plan;
      plan.base = build_config(sweep_opts);
      plan.axis = sweep_axis;
      plan.values = sweep_values;
      plan.workers = workers;
      const ccnv::SweepResult sr = ccnv::sweep(plan);
      const std::string table = sr.table();
      std::cout << table;
      std::ofstream(plan.base.out_dir + "/summary.csv") << table;
      return sr.any_error() ? 1 : 0;
    }

    if (cmd_verify->parsed()) {
      if (list_checks) {
        for (const auto& s : ccnv::verify_selectors()) std::cout << s << "\n";
        return 0;
      }
      const auto results = ccnv::run_verify(selector, &std::cerr);
      if (report_path.empty()) {
        ccnv::write_jsonl(results, std::cout);
      } else {
        std::ofstream os(report_path);
        ccnv::write_jsonl(results, os);
      }
      for (const auto& r : results)
        if (!r.passed()) return 1;
      return 0;
    }

    if (cmd_conv->parsed()) {
      const ccnv::RunConfig c = build_config(conv_opts);
      std::cout << ccnv::convergence(c).table();
      return 0;
    }

    if (cmd_resume->parsed()) {
      const ccnv::RunConfig c = build_config(resume_opts);
      const ccnv::RunResult r = ccnv::resume(checkpoint_path, c);
      std::cout << "status " << status_code(r.status) << ", t_final " << r.t_final
                << ", artifacts in " << r.dir << "\n";
      return status_code(r.status);
    }

    std::cout << app.help();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
