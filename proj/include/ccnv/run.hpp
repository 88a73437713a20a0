#pragma once

#include <string>
#include <vector>

#include "ccnv/config.hpp"
#include "ccnv/diagnostics.hpp"

namespace ccnv {

enum class RunStatus : int {
  completed = 0,
  error = 1,
  blowup = 2,
  resolution_exhausted = 3,
};

struct RunResult {
  RunStatus status = RunStatus::completed;
  double t_final = 0.0;
  double blowup_time = 0.0;  // set when status == blowup
  std::vector<DiagnosticsRecord> records;
  BlowupIndicators indicators;
  State final_state;
  std::string dir;  // empty when artifacts were not written
};

State initial_state(const RunConfig& c);

// Advances the trajectory to t_end (or to flagged blow-up), recording
// diagnostics every output_every steps. With write_artifacts, emits
// run.cfg, diagnostics.csv, bounds.json and checkpoints under out_dir.
RunResult run(const RunConfig& c, bool write_artifacts = true);

// Continue a checkpointed run to t_end; grid and params come from the file.
RunResult resume(const std::string& checkpoint_path, const RunConfig& c,
                 bool write_artifacts = true);

void save_state(const std::string& path, const State& s, const Params& p);
std::pair<State, Params> load_state(const std::string& path, double dealias_fraction);

struct SweepPlan {
  RunConfig base;
  std::string axis;            // config key, e.g. "params.beta"
  std::vector<double> values;  // non-empty
  int workers = 1;

  void validate() const;
};

struct SweepRow {
  double value = 0.0;
  RunStatus status = RunStatus::completed;
  double t_final = 0.0;
  double blowup_time = 0.0;
  double fitted_energy_constant = 0.0;
  bool fit_degenerate = false;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by plan value order
  std::string table() const;
  bool any_error() const;
};

// One run directory per value; per-run failures are recorded, not fatal.
// The summary is a pure function of the per-run results, ordered by the
// given value order regardless of worker scheduling.
SweepResult sweep(const SweepPlan& plan);

struct ConvergenceReport {
  double dt_base = 0.0;
  std::vector<double> errors;  // vs the dt/8 reference at dt, dt/2, dt/4
  std::vector<double> orders;  // log2 of successive error ratios
  double spatial_error_n32 = 0.0;
  double spatial_error_n64 = 0.0;
  std::string table() const;
};

// Temporal refinement against a dt/8 reference on the configured problem,
// plus the spectral-exactness check on a band-limited decoupled linear case.
ConvergenceReport convergence(const RunConfig& c);

}  // namespace ccnv
