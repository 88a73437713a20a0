#include "ccnv/run.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ccnv/checkpoint.hpp"
#include "ccnv/kernels.hpp"
#include "ccnv/ops.hpp"
#include "ccnv/random_fields.hpp"

namespace ccnv {

namespace {

using nlohmann::json;

RealField blob_field(const GridSpec& g, double amplitude, double width) {
  RealField f(g);
  const double h = g.spacing();
  const double w2 = width * width;
  for (int i1 = 0; i1 < g.n; ++i1) {
    for (int i2 = 0; i2 < g.n; ++i2) {
      const double x1 = i1 * h, x2 = i2 * h;
      const double s = std::cos(x1 - std::numbers::pi) + std::cos(x2 - std::numbers::pi) - 2.0;
      f.at(i1, i2) = amplitude * std::exp(s / w2);
    }
  }
  return f;
}

}  // namespace

State initial_state(const RunConfig& c) {
  c.validate();
  State s(c.grid);
  const double amp = c.init_amplitude;
  if (c.init_family == "zero" || amp == 0.0) return s;

  if (c.init_family == "random-bandlimited") {
    // Gaussian modes with a |k|^{-2} spectrum on the 1..8 band; sub-seeds per
    // component. The band sits below every dealias cutoff in use, so the same
    // seed produces the same continuum data on every grid.
    s.Omega = random_power_law_field(c.grid, splitmix64(c.seed ^ 0x01), 2.0, 1.0, 8.0, amp);
    s.omega = random_power_law_field(c.grid, splitmix64(c.seed ^ 0x02), 2.0, 1.0, 8.0, amp);
    s.theta = random_power_law_field(c.grid, splitmix64(c.seed ^ 0x03), 2.0, 1.0, 8.0, amp);
  } else if (c.init_family == "taylor-green") {
    RealField W(c.grid), T(c.grid);
    const double h = c.grid.spacing();
    for (int i1 = 0; i1 < c.grid.n; ++i1) {
      for (int i2 = 0; i2 < c.grid.n; ++i2) {
        const double x1 = i1 * h, x2 = i2 * h;
        W.at(i1, i2) = amp * std::cos(x1) * std::cos(x2);
        T.at(i1, i2) = amp * std::sin(x1) * std::sin(x2);
      }
    }
    s.Omega = transform_forward(W);
    s.theta = transform_forward(T);
  } else if (c.init_family == "buoyant-blob") {
    s.theta = transform_forward(blob_field(c.grid, amp, 0.5));
  }
  dealias(s.Omega);
  dealias(s.omega);
  dealias(s.theta);
  hermitian_project(s.Omega);
  hermitian_project(s.omega);
  hermitian_project(s.theta);
  s.Omega.coeffs[0] = 0.0;
  return s;
}

namespace {

json bound_entry_json(const BoundEntry& e) {
  json j;
  j["name"] = e.name;
  j["fitted_constant"] = e.fitted_constant;
  j["violation"] = e.violation;
  j["degenerate"] = e.degenerate;
  json m = json::array();
  for (const auto& [t, v] : e.margin) m.push_back({t, v});
  j["margin"] = m;
  return j;
}

void write_bounds_json(const std::string& path, std::span<const DiagnosticsRecord> records,
                       const BlowupIndicators& ind) {
  json out;
  json entries = json::array();

  BoundEntry transport = theta_transport_bound(records);
  entries.push_back(bound_entry_json(transport));

  auto fit_entry = [&](const char* name, std::vector<std::pair<double, double>> series) {
    const ExpFit fit = exponential_bound_fit(series);
    BoundEntry e;
    e.name = name;
    e.fitted_constant = fit.c;
    e.degenerate = fit.degenerate;
    for (const auto& [t, q] : series) e.margin.emplace_back(t, q);
    entries.push_back(bound_entry_json(e));
  };
  fit_entry("energy_composite_growth", energy_composite_series(records));
  fit_entry("linf_theta_growth", quantity_series(records, &DiagnosticsRecord::linf_theta));
  fit_entry("linf_vorticity_growth", quantity_series(records, &DiagnosticsRecord::linf_Omega));

  out["entries"] = entries;
  json ji;
  ji["omega_inf_integral"] = ind.omega_inf_integral;
  ji["recent_growth_rate"] = ind.recent_growth_rate;
  if (ind.theta_tail_slope) ji["theta_tail_slope"] = *ind.theta_tail_slope;
  if (ind.omega_tail_slope) ji["vorticity_tail_slope"] = *ind.omega_tail_slope;
  ji["resolution_exhausted"] = ind.resolution_exhausted;
  out["indicators"] = ji;

  std::ofstream os(path);
  os << out.dump(2) << "\n";
}

RunResult drive(State s, const RunConfig& c, bool write_artifacts) {
  namespace fs = std::filesystem;
  RunResult result;
  std::ofstream csv;
  if (write_artifacts) {
    fs::create_directories(c.out_dir);
    result.dir = c.out_dir;
    std::ofstream cfg(c.out_dir + "/run.cfg");
    cfg << serialize_config(c);
    csv.open(c.out_dir + "/diagnostics.csv");
    csv << diagnostics_csv_header(c.diag);
  }

  std::vector<DiagnosticsRecord>& records = result.records;
  records.push_back(record(s, nullptr, c.diag));
  if (write_artifacts) csv << diagnostics_csv_row(records.back());

  bool exhausted = false;
  long step_index = 0;
  long outputs = 0;
  const double theta_mean0 = s.theta.mean().real();
  while (s.t < c.t_end - 1e-14) {
    double dt = stable_dt(s, c.stepper);
    if (dt < 1e-6) {
      // CFL collapse: the velocity has left the range the grid can resolve.
      // Treated as numerical blow-up with the collapse time recorded.
      result.status = RunStatus::blowup;
      result.blowup_time = s.t;
      break;
    }
    dt = std::min(dt, c.t_end - s.t);
    StepResult sr = step(s, c.params, c.stepper, dt);
    if (sr.blew_up) {
      result.status = RunStatus::blowup;
      result.blowup_time = sr.failure_time;
      s = std::move(sr.state);
      break;
    }
    s = std::move(sr.state);
    ++step_index;

    // Mean invariants hold per step; drift marks an integration defect.
    if (std::abs(s.theta.mean().real() - theta_mean0) >
        1e-10 * std::max(1.0, std::abs(theta_mean0)))
      throw std::runtime_error("run: temperature mean drifted");

    if (step_index % c.output_every == 0 || s.t >= c.t_end - 1e-14) {
      records.push_back(record(s, &records.back(), c.diag));
      if (write_artifacts) csv << diagnostics_csv_row(records.back());
      ++outputs;
      if (!records.back().all_finite()) {
        result.status = RunStatus::blowup;
        result.blowup_time = s.t;
        break;
      }
      const BlowupIndicators ind = blowup_indicator(records, s);
      if (ind.resolution_exhausted) exhausted = true;
      if (write_artifacts && c.checkpoint_every > 0 && outputs % c.checkpoint_every == 0)
        save_state(c.out_dir + "/checkpoint_" + std::to_string(outputs) + ".ccnv", s, c.params);
    }
  }

  result.t_final = s.t;
  result.indicators = blowup_indicator(records, s);
  if (result.status == RunStatus::completed && (exhausted || result.indicators.resolution_exhausted))
    result.status = RunStatus::resolution_exhausted;
  if (write_artifacts) {
    save_state(c.out_dir + "/final.ccnv", s, c.params);
    write_bounds_json(c.out_dir + "/bounds.json", records, result.indicators);
  }
  result.final_state = std::move(s);
  return result;
}

}  // namespace

RunResult run(const RunConfig& c, bool write_artifacts) {
  c.validate();
  return drive(initial_state(c), c, write_artifacts);
}

RunResult resume(const std::string& checkpoint_path, const RunConfig& c, bool write_artifacts) {
  auto [s, p] = load_state(checkpoint_path, c.grid.dealias_fraction);
  RunConfig cc = c;
  cc.params = p;
  cc.grid = s.grid();
  cc.validate();
  if (s.t >= cc.t_end) throw std::invalid_argument("resume: checkpoint already at or past t_end");
  return drive(std::move(s), cc, write_artifacts);
}

void save_state(const std::string& path, const State& s, const Params& p) {
  const RealField W = transform_inverse(s.Omega);
  const RealField w = transform_inverse(s.omega);
  const RealField t = transform_inverse(s.theta);
  write_checkpoint(path,
                   {{"Omega", &W}, {"omega", &w}, {"theta", &t}},
                   {{"t", s.t},
                    {"chi", p.chi},
                    {"nu", p.nu},
                    {"beta", p.beta},
                    {"alpha", p.velocity_dissipation_alpha}});
}

std::pair<State, Params> load_state(const std::string& path, double dealias_fraction) {
  const CheckpointData data = read_checkpoint(path);
  GridSpec g;
  g.n = data.n;
  g.dealias_fraction = dealias_fraction;
  g.validate();

  auto lift = [&](const std::string& name) {
    RealField f = data.field(name);
    f.grid = g;
    SpectralField F = transform_forward(f);
    dealias(F);
    hermitian_project(F);
    return F;
  };
  State s(g);
  s.t = data.scalar("t");
  s.Omega = lift("Omega");
  s.omega = lift("omega");
  s.theta = lift("theta");
  s.Omega.coeffs[0] = 0.0;

  Params p;
  p.chi = data.scalar("chi");
  p.nu = data.scalar("nu");
  p.beta = data.scalar("beta");
  p.velocity_dissipation_alpha = data.scalar("alpha");
  return {std::move(s), p};
}

void SweepPlan::validate() const {
  base.validate();
  if (values.empty()) throw std::invalid_argument("sweep: values must be non-empty");
  if (workers < 1) throw std::invalid_argument("sweep: workers must be >= 1");
  for (double v : values) {
    RunConfig probe = base;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    apply_override(probe, axis, buf);
    probe.validate();
  }
}

SweepResult sweep(const SweepPlan& plan) {
  plan.validate();
  SweepResult result;
  result.rows.resize(plan.values.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.values.size()) return;
      SweepRow& row = result.rows[i];
      row.value = plan.values[i];
      try {
        RunConfig c = plan.base;
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", plan.values[i]);
        apply_override(c, plan.axis, buf);
        c.out_dir = plan.base.out_dir + "/" + plan.axis + "=" + buf;
        const RunResult r = run(c);
        row.status = r.status;
        row.t_final = r.t_final;
        row.blowup_time = r.blowup_time;
        const ExpFit fit = exponential_bound_fit(energy_composite_series(r.records));
        row.fitted_energy_constant = fit.c;
        row.fit_degenerate = fit.degenerate;
      } catch (const std::exception& e) {
        row.status = RunStatus::error;
        row.error = e.what();
      }
    }
  };

  const int nworkers = std::min<std::size_t>(plan.workers, plan.values.size());
  if (nworkers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return result;
}

std::string SweepResult::table() const {
  std::string out = "value,status,t_final,blowup_time,fitted_energy_constant,error\n";
  for (const auto& r : rows) {
    char buf[256];
    const char* status = r.status == RunStatus::completed            ? "completed"
                         : r.status == RunStatus::blowup             ? "blowup"
                         : r.status == RunStatus::resolution_exhausted ? "resolution-exhausted"
                                                                      : "error";
    std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g,%.17g,%.17g,%s\n", r.value, status, r.t_final,
                  r.blowup_time, r.fit_degenerate ? std::nan("") : r.fitted_energy_constant,
                  r.error.c_str());
    out += buf;
  }
  return out;
}

bool SweepResult::any_error() const {
  for (const auto& r : rows)
    if (r.status == RunStatus::error) return true;
  return false;
}

namespace {

// Fixed-dt trajectory for refinement studies; throws if the requested dt ever
// violates the CFL bound.
State integrate_fixed_dt(State s, const Params& p, const StepperConfig& cfg, double dt,
                         double t_end) {
  while (s.t < t_end - 1e-14) {
    const double h = std::min(dt, t_end - s.t);
    StepResult sr = step(s, p, cfg, h);
    if (sr.blew_up) throw std::runtime_error("convergence: trajectory blew up");
    s = std::move(sr.state);
  }
  return s;
}

double state_distance(const State& a, const State& b) {
  const double num = l2_norm(a.Omega - b.Omega) + l2_norm(a.omega - b.omega) +
                     l2_norm(a.theta - b.theta);
  const double den = std::max(
      l2_norm(b.Omega) + l2_norm(b.omega) + l2_norm(b.theta), 1e-300);
  return num / den;
}

}  // namespace

ConvergenceReport convergence(const RunConfig& c) {
  c.validate();
  ConvergenceReport rep;

  // Temporal order on the configured coupled problem.
  const State s0 = initial_state(c);
  StepperConfig cfg = c.stepper;
  cfg.cfl = 1.0;  // fixed-dt study; dt chosen below the physical CFL instead
  const double dt0 = std::min(0.25 * stable_dt(s0, c.stepper), c.stepper.dt_max);
  cfg.dt_max = dt0 * (1.0 + 1e-12);
  rep.dt_base = dt0;
  const double T = c.t_end;

  const State ref = integrate_fixed_dt(s0, c.params, cfg, dt0 / 8.0, T);
  for (const double div : {1.0, 2.0, 4.0}) {
    const State sx = integrate_fixed_dt(s0, c.params, cfg, dt0 / div, T);
    rep.errors.push_back(state_distance(sx, ref));
  }
  for (std::size_t i = 0; i + 1 < rep.errors.size(); ++i)
    rep.orders.push_back(std::log2(rep.errors[i] / rep.errors[i + 1]));

  // Spatial floor: decoupled band-limited diffusion is exact in space, so the
  // error against the analytic exponential decay sits at machine precision
  // for every resolution.
  for (int n : {32, 64}) {
    GridSpec g;
    g.n = n;
    State s(g);
    s.omega = cosine_mode(g, 2, 3, 1.0);
    s.theta = cosine_mode(g, 5, 0, 0.7);
    Params p = c.params;
    p.linear_couplings = false;
    StepperConfig cfg2;
    cfg2.dt_max = 1e-3;
    const double Tlin = 0.1;
    State end = integrate_fixed_dt(s, p, cfg2, 1e-3, Tlin);
    State exact(g);
    exact.t = Tlin;
    const double k2w = 2.0 * 2.0 + 3.0 * 3.0;
    const double k2t = 5.0 * 5.0;
    exact.omega = std::exp(-(p.nu * k2w + 4.0 * p.chi) * Tlin) * s.omega;
    exact.theta = std::exp(-std::pow(k2t, 0.5 * p.beta) * Tlin) * s.theta;
    const double err = state_distance(end, exact);
    (n == 32 ? rep.spatial_error_n32 : rep.spatial_error_n64) = err;
  }
  return rep;
}

std::string ConvergenceReport::table() const {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "dt_base,%.17g\n", dt_base);
  out += buf;
  const char* names[] = {"err_dt", "err_dt_2", "err_dt_4"};
  for (std::size_t i = 0; i < errors.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s,%.17g\n", names[i], errors[i]);
    out += buf;
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::snprintf(buf, sizeof buf, "order_%zu,%.17g\n", i + 1, orders[i]);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "spatial_err_n32,%.17g\nspatial_err_n64,%.17g\n",
                spatial_error_n32, spatial_error_n64);
  out += buf;
  return out;
}

}  // namespace ccnv
