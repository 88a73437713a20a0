#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ccnv/ops.hpp"
#include "ccnv/random_fields.hpp"
#include "ccnv/run.hpp"
#include "ccnv/verify.hpp"

using namespace ccnv;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("ccnv_harness_" + tag);
  fs::remove_all(p);
  return p;
}

RunConfig quick_config(const std::string& tag) {
  RunConfig c;
  c.grid.n = 32;
  c.t_end = 0.2;
  c.stepper.dt_max = 5e-3;
  c.init_amplitude = 0.5;
  c.output_every = 5;
  c.out_dir = fresh_dir(tag).string();
  return c;
}

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("config round-trips through serialize/parse and rejects bad input") {
  RunConfig c;
  c.grid.n = 128;
  c.params.beta = 0.75;
  c.params.chi = 0.8;
  c.init_family = "taylor-green";
  c.init_amplitude = 1.25;
  c.seed = 987654321;
  c.t_end = 3.5;
  c.stepper.cfl = 0.3;
  c.out_dir = "some/dir";
  c.diag.k = 0.55;
  c.diag.r = 6.0;
  const RunConfig back = parse_config_text(serialize_config(c));
  CHECK(back == c);

  apply_override(c, "params.chi", "-1");  // applied raw; validation is separate
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("params.chi"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_override(c, "params.chi", "zzz"), doctest::Contains("params.chi"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_override(c, "grid.m", "64"), doctest::Contains("unknown config key"),
                       std::invalid_argument);
  CHECK_THROWS_AS((void)parse_config_text("grid.n 64\n"), std::invalid_argument);

  RunConfig bad;
  bad.params.chi = -1.0;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("params.chi"), std::invalid_argument);
  bad = RunConfig{};
  bad.diag.k = 0.9;  // above (r-2)/r = 0.75
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("diagnostics.k"), std::invalid_argument);

  CHECK(config_schema().find("grid.n") != std::string::npos);
}

TEST_CASE("chi=-1 style hypothesis violations are rejected at load") {
  CHECK_THROWS_AS((void)parse_config_text("params.chi = 0\n").validate(), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_config_text("params.nu = -2\n").validate(), std::invalid_argument);
}

TEST_CASE("zero initial data runs to completion with all-zero diagnostics") {
  RunConfig c = quick_config("zero");
  c.init_family = "zero";
  const RunResult r = run(c);
  CHECK(r.status == RunStatus::completed);
  CHECK(r.t_final == doctest::Approx(c.t_end));
  for (const auto& rec : r.records) {
    CHECK(rec.l2_theta == 0.0);
    CHECK(rec.linf_Omega == 0.0);
  }
  CHECK(fs::exists(fs::path(c.out_dir) / "diagnostics.csv"));
  CHECK(fs::exists(fs::path(c.out_dir) / "bounds.json"));
  CHECK(fs::exists(fs::path(c.out_dir) / "final.ccnv"));
  CHECK(fs::exists(fs::path(c.out_dir) / "run.cfg"));
  fs::remove_all(c.out_dir);
}

TEST_CASE("reruns of the same config produce byte-identical diagnostics") {
  RunConfig a = quick_config("det_a");
  RunConfig b = quick_config("det_b");
  (void)run(a);
  (void)run(b);
  CHECK(slurp(fs::path(a.out_dir) / "diagnostics.csv") ==
        slurp(fs::path(b.out_dir) / "diagnostics.csv"));
  fs::remove_all(a.out_dir);
  fs::remove_all(b.out_dir);
}

TEST_CASE("every initial-data family runs healthy at desk scale") {
  for (const char* family : {"random-bandlimited", "taylor-green", "buoyant-blob"}) {
    RunConfig c = quick_config(std::string("family_") + family);
    c.init_family = family;
    const RunResult r = run(c, false);
    CHECK(r.status == RunStatus::completed);
    CHECK(r.records.back().all_finite());
  }
}

TEST_CASE("resume from a checkpoint matches the uninterrupted trajectory") {
  RunConfig full = quick_config("resume_full");
  full.t_end = 0.2;
  const RunResult whole = run(full, false);

  RunConfig half = quick_config("resume_half");
  half.t_end = 0.1;
  const RunResult first = run(half);
  const fs::path ckpt = fs::path(half.out_dir) / "final.ccnv";
  REQUIRE(fs::exists(ckpt));

  RunConfig rest = quick_config("resume_rest");
  rest.t_end = 0.2;
  const RunResult second = resume(ckpt.string(), rest, false);
  CHECK(second.status == RunStatus::completed);
  CHECK(second.t_final == doctest::Approx(0.2));

  // The checkpoint stores physical samples, so the restart agrees to
  // transform round-trip accuracy rather than bitwise.
  const double scale = l2_norm(whole.final_state.theta) + 1e-30;
  CHECK(l2_norm(second.final_state.theta - whole.final_state.theta) / scale < 1e-9);
  CHECK(l2_norm(second.final_state.Omega - whole.final_state.Omega) /
            (l2_norm(whole.final_state.Omega) + 1e-30) <
        1e-9);
  fs::remove_all(half.out_dir);
}

TEST_CASE("sweep: single value reproduces run; failures do not abort siblings") {
  SweepPlan plan;
  plan.base = quick_config("sweep");
  plan.base.init_family = "zero";
  plan.axis = "params.beta";
  plan.values = {1.0};
  const SweepResult sr = sweep(plan);
  REQUIRE(sr.rows.size() == 1);
  CHECK(sr.rows[0].status == RunStatus::completed);
  CHECK(!sr.any_error());
  CHECK(sr.table().find("completed") != std::string::npos);

  SweepPlan multi;
  multi.base = quick_config("sweep_multi");
  multi.base.init_family = "zero";
  multi.axis = "params.beta";
  multi.values = {0.5, 1.0, 1.5};
  multi.workers = 2;
  const SweepResult sm = sweep(multi);
  REQUIRE(sm.rows.size() == 3);
  for (const auto& row : sm.rows) CHECK(row.status == RunStatus::completed);
  CHECK(sm.rows[0].value == 0.5);
  CHECK(sm.rows[2].value == 1.5);

  SweepPlan bad;
  bad.base = quick_config("sweep_bad");
  bad.axis = "params.beta";
  bad.values = {1.0, 9.0};  // second value invalid
  CHECK_THROWS_AS((void)sweep(bad), std::invalid_argument);
  fs::remove_all(plan.base.out_dir);
  fs::remove_all(multi.base.out_dir);
}

TEST_CASE("zero temperature dissipation under strong data flags exhausted resolution") {
  RunConfig c = quick_config("stress");
  c.grid.n = 64;
  c.t_end = 0.5;
  c.init_amplitude = 3.0;
  c.seed = 5;
  c.params.beta = 0.0;
  const RunResult r = run(c, false);
  CHECK(r.status != RunStatus::error);
  CHECK(r.status == RunStatus::resolution_exhausted);
  CHECK(r.indicators.resolution_exhausted);
}

TEST_CASE("beta sweep over the dissipation exponent completes and reports fits") {
  SweepPlan plan;
  plan.base = quick_config("sweep_beta");
  plan.base.grid.n = 32;
  plan.base.t_end = 0.3;
  plan.base.init_amplitude = 0.5;
  plan.axis = "params.beta";
  plan.values = {1.0, 1.25, 1.5};
  const SweepResult sr = sweep(plan);
  REQUIRE(sr.rows.size() == 3);
  for (const auto& row : sr.rows) {
    CHECK(row.status == RunStatus::completed);
    CHECK(!row.fit_degenerate);
    CHECK(std::isfinite(row.fitted_energy_constant));
  }
  // Trend across beta reported, not asserted.
  MESSAGE("fitted growth constants over beta {1.0, 1.25, 1.5}: ",
          sr.rows[0].fitted_energy_constant, ", ", sr.rows[1].fitted_energy_constant, ", ",
          sr.rows[2].fitted_energy_constant);
  fs::remove_all(plan.base.out_dir);
}

TEST_CASE("verification checks are pure: reruns give identical reports") {
  auto render = [] {
    std::ostringstream ss;
    write_jsonl(run_verify("bernstein-ratios"), ss);
    return ss.str();
  };
  const std::string a = render();
  const std::string b = render();
  // Timing differs; everything else must match bitwise.
  auto strip = [](std::string s) {
    const auto p = s.find("\"seconds\"");
    const auto q = s.find(',', p);
    return s.erase(p, q - p);
  };
  CHECK(strip(a) == strip(b));
}

TEST_CASE("convergence: order two in time, machine floor in space") {
  RunConfig c = quick_config("conv");
  c.grid.n = 32;
  c.t_end = 0.25;
  c.init_amplitude = 0.5;
  const ConvergenceReport rep = convergence(c);
  REQUIRE(rep.orders.size() >= 1);
  CHECK(rep.orders[0] > 1.8);
  CHECK(rep.orders[0] < 2.2);
  CHECK(rep.spatial_error_n32 < 1e-12);
  CHECK(rep.spatial_error_n64 < 1e-12);
  CHECK(rep.table().find("order_1") != std::string::npos);
}

TEST_SUITE_END();
