// Copyright 2026 The oldb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sys/wait.h>

#include "oldb/config.hpp"
#include "oldb/error.hpp"
#include "oldb/initial_data.hpp"
#include "oldb/io.hpp"
#include "oldb/operators.hpp"
#include "oldb/rate_lab.hpp"
#include "oldb/solver.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace oldb;

namespace {

const char* kHeader =
    "t,u_l2sq,u_h1sq,u_h2sq,tau_l2sq,tau_h1sq,tau_h2sq,eps_l2sq,div_u,trace_tau_max,energy,align_cos\n";

std::vector<ConfigIssue> issues_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.issues();
  }
  return {};
}

bool mentions(const std::vector<ConfigIssue>& issues, const std::string& field) {
  for (const auto& i : issues)
    if (i.field == field) return true;
  return false;
}

fs::path scratch(const std::string& name) {
  auto p = fs::path(OLDB_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::string& args, const fs::path& dir) {
  const auto out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string(OLDB_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), read_file(out.string()), read_file(err.string())};
}

SimState small_state(unsigned seed) {
  FourierGrid g(8, 1.5);
  FftPlan fft(g);
  SimState s(g, FluidParams(0.3, 0.2, 1.5, 0.7));
  s.time = 0.125;
  s.u = oldb::testing::random_solenoidal(fft, seed, 2);
  s.tau = oldb::testing::random_field<SymTensorKind>(fft, seed + 1, 2);
  return s;
}

}  // namespace

// ---- config ----

TEST(Config, MinimalSimulateUsesDefaults) {
  const auto cfg = parse_config("mode: simulate\n");
  EXPECT_EQ(cfg.mode, RunMode::simulate);
  EXPECT_EQ(cfg.physics.omega(), 0.5);
  EXPECT_EQ(cfg.physics.a(), 0.0);
  EXPECT_EQ(cfg.box_scale, 16.0);
  EXPECT_EQ(cfg.n, 64);
  EXPECT_EQ(cfg.physics.reynolds(), 1.0);
  EXPECT_EQ(cfg.physics.weissenberg(), 1.0);
  EXPECT_EQ(cfg.solver.integrator, Integrator::etd_heun);
  EXPECT_EQ(cfg.rates.t_lo, 5.0);
  EXPECT_EQ(cfg.rates.t_hi, 50.0);
  EXPECT_FALSE(cfg.u.present());
}

TEST(Config, EmptyTextIsDefaults) { EXPECT_EQ(parse_config("").n, 64); }

TEST(Config, OmegaOutOfRangeNamesField) {
  const auto issues = issues_of("physics:\n  omega: 1.2\n");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].field, "physics.omega");
  EXPECT_EQ(issues[0].line, 2);
  try {
    parse_config("physics:\n  omega: 1.2\n");
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("physics.omega"), std::string::npos);
  }
}

TEST(Config, AllErrorsInOnePass) {
  const auto issues = issues_of("physics:\n  omega: 1.2\n  a: 3\nsolver:\n  dt: -1\n  integrator: rk4\n");
  ASSERT_EQ(issues.size(), 4u);
  EXPECT_TRUE(mentions(issues, "physics.omega"));
  EXPECT_TRUE(mentions(issues, "physics.a"));
  EXPECT_TRUE(mentions(issues, "solver.dt"));
  EXPECT_TRUE(mentions(issues, "solver.integrator"));
  for (std::size_t i = 1; i < issues.size(); ++i) EXPECT_LE(issues[i - 1].line, issues[i].line);
}

TEST(Config, UnknownKeysRejected) {
  auto issues = issues_of("grid:\n  n: 32\n  nn: 3\nextra: 1\n");
  EXPECT_TRUE(mentions(issues, "grid.nn"));
  EXPECT_TRUE(mentions(issues, "extra"));
}

TEST(Config, RandomDataNeedsSeed) {
  auto issues = issues_of("initial:\n  u: random_band(0, 0.5, 0.01)\n");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].field, "initial.u");
  EXPECT_NE(issues[0].message.find("seed"), std::string::npos);
  EXPECT_NO_THROW(parse_config("initial:\n  u: random_band(0, 0.5, 0.01, 42)\n"));
}

TEST(Config, TypeAndSyntaxErrors) {
  auto issues = issues_of("grid:\n  n: sixty\n");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].field, "grid.n");
  issues = issues_of("grid: [1, 2\n");
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].field, "syntax");
  EXPECT_GT(issues[0].line, 0);
}

TEST(Config, CrossFieldChecks) {
  EXPECT_TRUE(mentions(issues_of("rates:\n  window: [50, 5]\n"), "rates.window"));
  EXPECT_TRUE(mentions(issues_of("linear:\n  t_min: 10\n  t_max: 1\n"), "linear.t_max"));
  EXPECT_TRUE(mentions(issues_of("mode: linear\ninitial:\n  u: random_band(0, 1, 1, 3)\n"), "initial.u"));
  EXPECT_TRUE(mentions(issues_of("initial:\n  tau: lp_like(2.5)\n"), "initial.tau"));
  EXPECT_TRUE(mentions(issues_of("initial:\n  tau_angular: solenoidal_axial\n"), "initial.tau_angular"));
}

TEST(Config, FullConfig) {
  const auto cfg = parse_config(R"(mode: fit
output: out/dir
physics: {omega: 0.25, a: -0.5, reynolds: 2, weissenberg: 0.5}
grid: {n: 32, box_scale: 8}
initial:
  u: power_gauss(1)
  tau: lp_like(1.5)
  tau_angular: traceless_diagonal
  amplitude: 0.001
solver: {dt: 0.05, t_end: 10, integrator: etd_euler, checkpoint_every: 7, diagnostics_every: 3, nonlinear: false}
rates: {window: [2, 20], tolerance: 0.2, r_u: 1, r_tau: -1, columns: [energy, tau_l2sq]}
linear: {t_min: 10, t_max: 1000, samples: 11}
)");
  EXPECT_EQ(cfg.mode, RunMode::fit);
  EXPECT_EQ(cfg.output, "out/dir");
  EXPECT_EQ(cfg.physics, FluidParams(0.25, -0.5, 2.0, 0.5));
  EXPECT_EQ(cfg.u.text(), "power_gauss(1)");
  EXPECT_EQ(cfg.u.angular, AngularStructure::solenoidal_axial);
  EXPECT_EQ(cfg.tau.angular, AngularStructure::traceless_diagonal);
  EXPECT_DOUBLE_EQ(*cfg.tau.decay_character(), -1.0);
  EXPECT_EQ(cfg.solver.integrator, Integrator::etd_euler);
  EXPECT_FALSE(cfg.solver.nonlinear);
  EXPECT_EQ(cfg.solver.checkpoint_every, 7);
  EXPECT_EQ(*cfg.rates.r_tau, -1.0);
  EXPECT_EQ(cfg.rates.columns, (std::vector<std::string>{"energy", "tau_l2sq"}));
  EXPECT_EQ(cfg.linear.samples, 11);
}

TEST(Config, InitialSpecGrammar) {
  auto s = parse_initial_spec("random_band(0, 0.5, 1e-2, 42)");
  EXPECT_TRUE(s.random());
  EXPECT_EQ(s.args, (std::vector<double>{0.0, 0.5, 0.01, 42.0}));
  EXPECT_FALSE(parse_initial_spec("none").present());
  EXPECT_EQ(parse_initial_spec("indicator").family, "indicator");
  EXPECT_THROW(parse_initial_spec("power_gauss()"), ValidationError);
  EXPECT_THROW(parse_initial_spec("power_gauss(x)"), ValidationError);
  EXPECT_THROW(parse_initial_spec("gaussian(1)"), ValidationError);
}

TEST(Config, SharedRandomSpecMatchesLibraryDraw) {
  auto cfg = parse_config("grid: {n: 16, box_scale: 2}\ninitial:\n  u: random_band(0, 2, 0.01, 5)\n"
                          "  tau: random_band(0, 2, 0.01, 5)\n");
  const auto a = initial_state(cfg);
  const auto b = random_band(FourierGrid(16, 2.0), FluidParams(), 0.0, 2.0, 0.01, 5);
  EXPECT_TRUE(a.u == b.u);
  EXPECT_TRUE(a.tau == b.tau);
}

TEST(Config, ProfileInitialData) {
  auto cfg = parse_config("grid: {n: 16, box_scale: 2}\ninitial:\n  u: power_gauss(0)\n  amplitude: 0.01\n");
  const auto s = initial_state(cfg);
  EXPECT_NEAR(h2_norm(s), 0.01, 1e-15);
  EXPECT_LT(std::sqrt(l2_norm_sq(divergence(s.u))), 1e-14);
  EXPECT_EQ(l2_norm_sq(s.tau), 0.0);
}

// ---- time series ----

TEST(SeriesIo, EmptySeriesIsHeaderOnly) {
  EXPECT_EQ(timeseries_csv(TimeSeries(diagnostic_columns())), kHeader);
}

TEST(SeriesIo, RoundTripIsExact) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> e(-300.0, 300.0);
  TimeSeries s({"a", "b"});
  double t = 0.0;
  for (int i = 0; i < 200; ++i) {
    t += std::pow(10.0, e(rng) / 100.0);
    s.append(t, {std::pow(10.0, e(rng)), -std::pow(2.0, e(rng) * 3.4)});
  }
  s.append(t + 1.0, {4.9e-324, 0.1});
  const auto back = parse_timeseries(timeseries_csv(s));
  ASSERT_EQ(back.columns(), s.columns());
  ASSERT_EQ(back.size(), s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(back.times()[i], s.times()[i]);
    EXPECT_EQ(back.column("a")[i], s.column("a")[i]);
    EXPECT_EQ(back.column("b")[i], s.column("b")[i]);
  }
  EXPECT_EQ(timeseries_csv(back), timeseries_csv(s));
}

TEST(SeriesIo, MalformedInput) {
  EXPECT_THROW(parse_timeseries(""), ValidationError);
  EXPECT_THROW(parse_timeseries("x,a\n"), ValidationError);
  EXPECT_THROW(parse_timeseries("t,a\n1,2,3\n"), ValidationError);
  EXPECT_THROW(parse_timeseries("t,a\n1,abc\n"), ValidationError);
  EXPECT_THROW(parse_timeseries("t,a\n2,1\n1,1\n"), ValidationError);
}

TEST(SeriesIo, UnwritablePath) {
  EXPECT_THROW(emit_timeseries(TimeSeries({"a"}), "/nonexistent-dir/x.csv"), ValidationError);
}

// ---- reports ----

TEST(Report, ZeroZeroCaseHasEpsExponent) {
  TimeSeries s({"eps_l2sq", "energy"});
  for (int i = 0; i <= 20; ++i) {
    const double t = 5.0 + 2.5 * i;
    s.append(t, {std::pow(1.0 + t, -3.5), 2.0 * std::pow(1.0 + t, -1.5)});
  }
  const auto recs = rate_report(s, predicted_exponents(0.0, 0.0), {"eps_l2sq", "energy"}, 5.0, 50.0, 0.1);
  const auto j = nlohmann::json::parse(report_json(recs));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["quantity"], "eps_l2sq");
  EXPECT_EQ(j[0]["predicted_exponent"].get<double>(), -3.5);
  EXPECT_NEAR(j[0]["fitted_slope"].get<double>(), -3.5, 1e-10);
  EXPECT_EQ(j[0]["verdict"], "pass");
  EXPECT_EQ(j[1]["window"], nlohmann::json::array({5.0, 50.0}));
}

TEST(Report, FieldOrderAndDigits) {
  const double x = 0.1 + 0.2;
  const auto text = report_json({{"q", -1.0, x, 0.0, 1.0, 2.0, "fail"}});
  const std::regex order(R"(\{"quantity": "q", "predicted_exponent": -1, "fitted_slope": 0.30000000000000004, )"
                         R"("stderr": 0, "window": \[1, 2\], "verdict": "fail"\})");
  EXPECT_TRUE(std::regex_search(text, order)) << text;
  EXPECT_EQ(nlohmann::json::parse(text)[0]["fitted_slope"].get<double>(), x);
  EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
}

TEST(Report, MissingPredictionIsReported) {
  TimeSeries s({"div_u"});
  for (int i = 0; i < 5; ++i) s.append(i + 1.0, {1.0});
  const auto recs = rate_report(s, predicted_exponents(0.0, 0.0), {"div_u"}, 0.0, 10.0, 0.1);
  EXPECT_EQ(recs[0].verdict, "reported");
  const auto j = nlohmann::json::parse(report_json(recs));
  EXPECT_TRUE(j[0]["predicted_exponent"].is_null());
  EXPECT_THROW(rate_report(s, predicted_exponents(0.0, 0.0), {"energy"}, 0.0, 10.0, 0.1), ValidationError);
}

TEST(Report, BoundsJson) {
  const auto j = nlohmann::json::parse(bounds_json(scan_pointwise_bounds(0.5, 1.0, 20, 20, 100.0)));
  EXPECT_EQ(j["violations"], 0);
  EXPECT_EQ(j["samples"], 400);
  EXPECT_EQ(j["constants"]["theta"].get<double>(), 0.125);
}

// ---- checkpoints ----

TEST(Checkpoint, HeaderLayout) {
  const auto s = small_state(1);
  const auto b = checkpoint_bytes(s);
  ASSERT_EQ(b.size(), 4 + 4 + 4 + 6 * 8 + 9 * s.grid().mode_count() * 16);
  EXPECT_EQ(b.substr(0, 4), "OLDB");
  auto u32 = [&](std::size_t at) {
    std::uint32_t v = 0;
    for (int k = 3; k >= 0; --k) v = (v << 8) | static_cast<unsigned char>(b[at + k]);
    return v;
  };
  auto f64 = [&](std::size_t at) {
    std::uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | static_cast<unsigned char>(b[at + k]);
    return std::bit_cast<double>(v);
  };
  EXPECT_EQ(u32(4), kCheckpointVersion);
  EXPECT_EQ(u32(8), 8u);
  EXPECT_EQ(f64(12), 1.5);
  EXPECT_EQ(f64(20), 0.3);
  EXPECT_EQ(f64(28), 0.2);
  EXPECT_EQ(f64(36), 1.5);
  EXPECT_EQ(f64(44), 0.7);
  EXPECT_EQ(f64(52), 0.125);
  EXPECT_EQ(f64(60), s.u.at(0, 0).real());
  EXPECT_EQ(f64(68), s.u.at(0, 0).imag());
  EXPECT_EQ(f64(76), s.u.at(0, 1).real());
  const std::size_t tau0 = 60 + 3 * s.grid().mode_count() * 16;
  EXPECT_EQ(f64(tau0 + 8), s.tau.at(0, 0).imag());
}

TEST(Checkpoint, BitExactRoundTrip) {
  const auto dir = scratch("checkpoint");
  const auto s = small_state(2);
  const auto path = (dir / "s.bin").string();
  write_checkpoint(s, path);
  const auto back = read_checkpoint(path);
  EXPECT_EQ(back.time, s.time);
  EXPECT_EQ(back.params, s.params);
  EXPECT_TRUE(back.grid() == s.grid());
  ASSERT_EQ(back.u.raw().size(), s.u.raw().size());
  EXPECT_EQ(std::memcmp(back.u.raw().data(), s.u.raw().data(), s.u.raw().size_bytes()), 0);
  EXPECT_EQ(std::memcmp(back.tau.raw().data(), s.tau.raw().data(), s.tau.raw().size_bytes()), 0);
  EXPECT_EQ(checkpoint_bytes(back), read_file(path));
}

TEST(Checkpoint, CorruptInputRejected) {
  auto b = checkpoint_bytes(small_state(3));
  EXPECT_THROW(parse_checkpoint("NOPE" + b.substr(4)), ValidationError);
  EXPECT_THROW(parse_checkpoint(b.substr(0, b.size() - 3)), ValidationError);
  EXPECT_THROW(parse_checkpoint(b + "x"), ValidationError);
  auto v2 = b;
  v2[4] = 2;
  try {
    parse_checkpoint(v2);
    FAIL() << "version mismatch accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
}

TEST(Checkpoint, ResumeMatchesStraightRun) {
  const FourierGrid g(16, 2.0);
  auto start = random_band(g, FluidParams(0.5, 0.0), 0.0, 2.0, 0.05, 11);
  SolverConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 1.0;
  cfg.diagnostics_every = 1;
  auto straight = start;
  Solver(g, start.params, cfg).run(straight);

  cfg.t_end = 0.5;
  auto first = start;
  Solver(g, start.params, cfg).run(first);
  auto resumed = parse_checkpoint(checkpoint_bytes(first));
  cfg.t_end = 1.0;
  Solver(g, start.params, cfg).run(resumed);

  EXPECT_NEAR(resumed.time, straight.time, 1e-14);
  const double su = oldb::testing::max_abs(straight.u), st = oldb::testing::max_abs(straight.tau);
  EXPECT_LE(oldb::testing::max_abs_diff(resumed.u, straight.u), 1e-12 * su);
  EXPECT_LE(oldb::testing::max_abs_diff(resumed.tau, straight.tau), 1e-12 * st);
}

// ---- plots ----

namespace {

TimeSeries power_law_series() {
  TimeSeries s({"energy", "tau_l2sq"});
  for (int i = 0; i <= 40; ++i) {
    const double t = std::pow(10.0, 0.05 * i);
    s.append(t, {3.0 * std::pow(1.0 + t, -1.5), std::pow(1.0 + t, -2.5)});
  }
  return s;
}

std::vector<std::pair<double, double>> polyline(const std::string& svg, std::size_t which) {
  std::regex re(R"re(<polyline[^>]*points="([^"]*)")re");
  auto it = std::sregex_iterator(svg.begin(), svg.end(), re);
  for (std::size_t k = 0; k < which; ++k) ++it;
  std::vector<std::pair<double, double>> pts;
  std::stringstream ss((*it)[1].str());
  std::string pair;
  while (ss >> pair) {
    const auto comma = pair.find(',');
    pts.emplace_back(std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1)));
  }
  return pts;
}

}  // namespace

TEST(Plot, CurveParallelToGuide) {
  const auto svg = render_plot(power_law_series(), {"energy"}, predicted_exponents(0.0, 0.0));
  const auto pts = polyline(svg, 0);
  const double curve = (pts.back().second - pts.front().second) / (pts.back().first - pts.front().first);
  std::smatch m;
  const std::regex guide(R"re(<line x1="([-\d.]+)" y1="([-\d.]+)" x2="([-\d.]+)" y2="([-\d.]+)"[^>]*dasharray)re");
  ASSERT_TRUE(std::regex_search(svg, m, guide));
  const double slope = (std::stod(m[4]) - std::stod(m[2])) / (std::stod(m[3]) - std::stod(m[1]));
  EXPECT_NEAR(slope, curve, 0.01 * std::abs(curve));
}

TEST(Plot, LegendNamesEveryColumn) {
  const auto svg = render_plot(power_law_series(), {"energy", "tau_l2sq"});
  EXPECT_NE(svg.find(">energy</text>"), std::string::npos);
  EXPECT_NE(svg.find(">tau_l2sq</text>"), std::string::npos);
  EXPECT_EQ(svg.find("dasharray"), std::string::npos);
}

TEST(Plot, Deterministic) {
  const auto dir = scratch("plot");
  const auto s = power_law_series();
  emit_plot(s, {"energy", "tau_l2sq"}, (dir / "a.svg").string(), predicted_exponents(0.0, 0.0));
  emit_plot(s, {"energy", "tau_l2sq"}, (dir / "b.svg").string(), predicted_exponents(0.0, 0.0));
  EXPECT_EQ(read_file((dir / "a.svg").string()), read_file((dir / "b.svg").string()));
}

TEST(Plot, UnknownColumn) { EXPECT_THROW(render_plot(power_law_series(), {"nope"}), ValidationError); }

// ---- command line ----

TEST(Cli, VerifyBoundsSucceeds) {
  const auto dir = scratch("cli_bounds");
  const auto r = run_cli("verify-bounds --omega 0.5 --radius 1", dir);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("violations: 0"), std::string::npos);
}

TEST(Cli, UnknownFlagIsValidationError) {
  const auto dir = scratch("cli_flag");
  const auto r = run_cli("verify-bounds --omega 0.5 --radius 1 --frobnicate", dir);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_NE(r.err.find("ERROR 1:"), std::string::npos);
  EXPECT_EQ(run_cli("--frobnicate", dir).code, 1);
}

TEST(Cli, BadConfigIsValidationError) {
  const auto dir = scratch("cli_config");
  write_file((dir / "c.yaml").string(), "physics:\n  omega: 1.2\ngrid:\n  n: 7\n");
  const auto r = run_cli("simulate --config " + (dir / "c.yaml").string(), dir);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ERROR 1:"), std::string::npos);
  EXPECT_NE(r.err.find("physics.omega"), std::string::npos);
  EXPECT_NE(r.err.find("grid.n"), std::string::npos);
}

TEST(Cli, SimulateFitPlotAndResume) {
  const auto dir = scratch("cli_sim");
  const auto cfg = (dir / "c.yaml").string();
  write_file(cfg, "output: " + (dir / "out").string() +
                      "\ngrid: {n: 16, box_scale: 2}\n"
                      "initial:\n  u: random_band(0, 2, 0.01, 7)\n  tau: random_band(0, 2, 0.01, 7)\n"
                      "solver: {dt: 0.1, t_end: 1, checkpoint_every: 5, diagnostics_every: 1}\n"
                      "rates: {window: [0.2, 1], r_u: 0, r_tau: 0, columns: [energy]}\n");
  auto r = run_cli("simulate --config " + cfg, dir);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto series_path = (dir / "out" / "series.csv").string();
  const auto series = read_timeseries(series_path);
  EXPECT_EQ(read_file(series_path).substr(0, std::strlen(kHeader)), kHeader);
  EXPECT_EQ(series.size(), 11u);
  EXPECT_TRUE(fs::exists(dir / "out" / "final.bin"));

  // Identical config and seed, identical artifacts.
  const auto first = read_file(series_path);
  ASSERT_EQ(run_cli("simulate --config " + cfg, dir).code, 0);
  EXPECT_EQ(read_file(series_path), first);

  // The slope of a rapidly equilibrating box run is far from the unbounded prediction.
  r = run_cli("fit --series " + series_path + " --config " + cfg, dir);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("ERROR 3:"), std::string::npos);
  const auto report = nlohmann::json::parse(read_file((dir / "out" / "report.json").string()));
  EXPECT_EQ(report[0]["quantity"], "energy");
  EXPECT_EQ(report[0]["verdict"], "fail");

  r = run_cli("plot --series " + series_path + " --columns energy,tau_l2sq --output " + (dir / "p.svg").string(),
              dir);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(dir / "p.svg"));
  EXPECT_EQ(run_cli("plot --series " + series_path + " --columns bogus", dir).code, 1);

  // checkpoint.bin holds t = 1; resuming from the t = 0.5 state must reproduce final.bin.
  const auto final_state = read_checkpoint((dir / "out" / "final.bin").string());
  write_file(cfg, read_file(cfg).replace(read_file(cfg).find("t_end: 1"), 8, "t_end: 0.5"));
  ASSERT_EQ(run_cli("simulate --config " + cfg, dir).code, 0);
  const auto half = (dir / "half.bin").string();
  fs::copy_file(dir / "out" / "final.bin", half);
  write_file(cfg, read_file(cfg).replace(read_file(cfg).find("t_end: 0.5"), 10, "t_end: 1"));
  ASSERT_EQ(run_cli("simulate --config " + cfg + " --resume " + half, dir).code, 0);
  const auto resumed = read_checkpoint((dir / "out" / "final.bin").string());
  EXPECT_LE(oldb::testing::max_abs_diff(resumed.u, final_state.u), 1e-12 * oldb::testing::max_abs(final_state.u));
  EXPECT_LE(oldb::testing::max_abs_diff(resumed.tau, final_state.tau), 1e-12 * oldb::testing::max_abs(final_state.tau));
}

TEST(Cli, RuntimeAbortExitsTwo) {
  const auto dir = scratch("cli_abort");
  const auto cfg = (dir / "c.yaml").string();
  write_file(cfg, "output: " + (dir / "out").string() +
                      "\ngrid: {n: 16, box_scale: 2}\n"
                      "initial:\n  u: random_band(0, 2, 50, 7)\n  tau: random_band(0, 2, 50, 7)\n"
                      "solver: {dt: 5, t_end: 10}\n");
  const auto r = run_cli("simulate --config " + cfg, dir);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ERROR 2:"), std::string::npos);
  EXPECT_NE(r.err.find("WARNING:"), std::string::npos);
  const auto failure = nlohmann::json::parse(read_file((dir / "out" / "failure.json").string()));
  EXPECT_EQ(failure["time"].get<double>(), 0.0);
  EXPECT_TRUE(fs::exists(dir / "out" / "checkpoint.bin"));
}

TEST(Cli, LinearAndDecayCharacter) {
  const auto dir = scratch("cli_linear");
  const auto cfg = (dir / "c.yaml").string();
  write_file(cfg, "output: " + (dir / "out").string() +
                      "\ninitial:\n  u: power_gauss(1)\n  tau: power_gauss(-0.5)\nrates: {tolerance: 0.1}\n");
  auto r = run_cli("linear --config " + cfg, dir);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(read_file((dir / "out" / "linear_report.json").string()));
  EXPECT_EQ(report[0]["predicted_exponent"].get<double>(), -2.0);
  EXPECT_EQ(report[0]["verdict"], "pass");
  r = run_cli("decay-character --config " + cfg, dir);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto dc = nlohmann::json::parse(read_file((dir / "out" / "decay_character.json").string()));
  EXPECT_NEAR(dc[0]["r_star"].get<double>(), 1.0, 0.05);
  EXPECT_NEAR(dc[1]["r_star"].get<double>(), -0.5, 0.05);
}
