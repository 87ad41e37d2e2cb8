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

// oldb: decay-rate experiments for Oldroyd-B flows.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>

#include "oldb/config.hpp"
#include "oldb/decay_character.hpp"
#include "oldb/error.hpp"
#include "oldb/io.hpp"
#include "oldb/linear_decay.hpp"
#include "oldb/linear_propagator.hpp"
#include "oldb/rate_lab.hpp"
#include "oldb/solver.hpp"

namespace fs = std::filesystem;
using namespace oldb;

namespace {

enum Exit { kOk = 0, kValidation = 1, kRuntime = 2, kAcceptance = 3 };

struct AcceptanceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  fs::create_directories(cfg.output, ec);
  if (ec) throw ValidationError("cannot create output directory '" + cfg.output + "': " + ec.message());
  return (fs::path(cfg.output) / name).string();
}

std::string fmt(double x, const char* spec = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

void print_records(const std::vector<ReportRecord>& recs) {
  std::printf("%-20s %10s %10s %10s  %s\n", "quantity", "predicted", "fitted", "stderr", "verdict");
  for (const auto& r : recs) {
    auto num = [](const std::optional<double>& v) { return v ? fmt(*v, "%.4f") : std::string("-"); };
    std::printf("%-20s %10s %10s %10s  %s\n", r.quantity.c_str(), num(r.predicted_exponent).c_str(),
                num(r.fitted_slope).c_str(), num(r.stderr_value).c_str(), r.verdict.c_str());
  }
}

std::optional<SpectralProfile> continuum(const InitialSpec& s) {
  if (!s.present()) return std::nullopt;
  return s.profile();
}

// Decay characters for predictions: config values first, then the known
// value of the profile family. A missing field contributes no constraint.
std::pair<std::optional<double>, std::optional<double>> decay_characters(const RunConfig& cfg) {
  auto pick = [](const std::optional<double>& given, const InitialSpec& spec) -> std::optional<double> {
    if (given) return given;
    if (!spec.present()) return std::nullopt;
    if (spec.random())
      throw ValidationError("rates.r_u and rates.r_tau must be given for random initial data");
    return spec.decay_character();
  };
  return {pick(cfg.rates.r_u, cfg.u), pick(cfg.rates.r_tau, cfg.tau)};
}

RatePrediction prediction_for(const RunConfig& cfg) {
  auto [ru, rt] = decay_characters(cfg);
  // An absent field never binds the minimum; 10 sits well past the cap.
  return predicted_exponents(ru.value_or(10.0), rt.value_or(10.0));
}

int cmd_decay_character(const RunConfig& cfg) {
  std::string json = "[";
  bool first = true;
  auto one = [&](const char* name, const InitialSpec& spec) {
    if (!spec.present()) return;
    DecayCharacterEstimate est;
    if (spec.random()) {
      const auto state = initial_state(cfg);
      EstimatorOptions opts;
      opts.rho_min = 4.0 / cfg.box_scale;
      opts.rho_max = std::max(2.0 * opts.rho_min, spec.args[1]);
      est = name[0] == 'u' ? estimate_r_star(state.u, opts) : estimate_r_star(state.tau, opts);
    } else {
      est = estimate_r_star(spec.profile());
    }
    std::printf("%-4s %-28s r* = %.6f  P = %.6g  drift = %.3g\n", name, spec.text().c_str(), est.r_star,
                est.p_r_value, est.drift);
    json += first ? "\n  {" : ",\n  {";
    first = false;
    json += "\"field\": \"" + std::string(name) + "\", \"profile\": \"" + spec.text() +
            "\", \"r_star\": " + format_double(est.r_star) + ", \"p_r\": " + format_double(est.p_r_value) +
            ", \"stderr\": " + format_double(est.slope_stderr) + ", \"drift\": " + format_double(est.drift) + "}";
  };
  if (!cfg.u.present() && !cfg.tau.present()) throw ValidationError("no initial data in config");
  one("u", cfg.u);
  one("tau", cfg.tau);
  json += first ? "]\n" : "\n]\n";
  write_file(out_path(cfg, "decay_character.json"), json);
  return kOk;
}

int cmd_linear(const RunConfig& cfg) {
  if (cfg.physics.reynolds() != 1.0 || cfg.physics.weissenberg() != 1.0)
    throw ValidationError("linear mode uses unit reynolds and weissenberg");
  if (!cfg.u.present() && !cfg.tau.present()) throw ValidationError("no initial data in config");
  const auto& lt = cfg.linear;
  std::vector<double> times(lt.samples);
  for (int i = 0; i < lt.samples; ++i)
    times[i] = lt.t_min * std::pow(lt.t_max / lt.t_min, static_cast<double>(i) / (lt.samples - 1));
  const auto series = linear_energy_curve(continuum(cfg.u), continuum(cfg.tau), cfg.physics.omega(), times);
  emit_timeseries(series, out_path(cfg, "linear.csv"));

  auto [ru, rt] = decay_characters(cfg);
  const double inf = std::numeric_limits<double>::infinity();
  const double m = std::min(ru.value_or(inf), 1.0 + rt.value_or(inf));
  const double lo = times.front(), hi = times.back();
  auto recs = rate_report(series, predicted_exponents(10.0, 10.0), {"energy"}, lo, hi, cfg.rates.tolerance);
  // The linear flow is not capped: energy ~ (1 + t)^{-(3/2 + min)}.
  recs[0].predicted_exponent = -(1.5 + m);
  recs[0].verdict = std::abs(*recs[0].fitted_slope - *recs[0].predicted_exponent) <= cfg.rates.tolerance ? "pass"
                                                                                                        : "fail";
  if (ru && rt) {
    const auto two = two_sided_check(series, predicted_exponents(*ru, *rt), lo, hi, cfg.rates.tolerance);
    for (const auto& c : two.columns)
      recs.push_back({c.column + ":two_sided", c.predicted, c.fit.slope, c.fit.slope_stderr, lo, hi,
                      c.pass ? "pass" : "fail"});
  }
  emit_report(recs, out_path(cfg, "linear_report.json"));
  print_records(recs);
  return kOk;
}

int cmd_simulate(const RunConfig& cfg, const std::string& resume) {
  SimState state = resume.empty() ? initial_state(cfg) : read_checkpoint(resume);
  if (!resume.empty()) {
    if (state.grid().n() != cfg.n || state.grid().box_scale() != cfg.box_scale)
      throw ValidationError("checkpoint grid differs from config grid");
    if (!(state.params == cfg.physics)) throw ValidationError("checkpoint physics differs from config physics");
    if (!(state.time < cfg.solver.t_end)) throw ValidationError("checkpoint time is already past solver.t_end");
  }
  const auto ckpt = out_path(cfg, "checkpoint.bin");
  RunHooks hooks;
  hooks.checkpoint = [&](const SimState& s) { write_checkpoint(s, ckpt); };
  hooks.warning = [](const std::string& w) { std::fprintf(stderr, "WARNING: %s\n", w.c_str()); };
  hooks.failure = [&](const SimState& s, const std::string& why) {
    std::string json = "{\"time\": " + format_double(s.time) + ", \"reason\": " + json_string(why) +
                       ", \"checkpoint\": " + json_string(ckpt) + "}\n";
    write_file(out_path(cfg, "failure.json"), json);
  };
  Solver solver(state.grid(), state.params, cfg.solver);
  auto result = solver.run(state, hooks);
  emit_timeseries(result.series, out_path(cfg, "series.csv"));
  if (result.aborted) throw RuntimeAbort(result.message);
  write_checkpoint(state, out_path(cfg, "final.bin"));
  std::printf("steps %d  t = %s  max |div u| = %.3g  max |tr tau| = %.3g\n", result.steps, fmt(state.time).c_str(),
              result.max_div_u, result.max_trace_tau);
  return kOk;
}

int cmd_fit(const RunConfig& cfg, const std::string& series_path) {
  const auto series = read_timeseries(series_path);
  const auto pred = prediction_for(cfg);
  const double lo = cfg.rates.t_lo, hi = cfg.rates.t_hi;
  auto cols = cfg.rates.columns;
  if (cols.empty())
    for (const auto& c : series.columns())
      if (pred.has(c)) cols.push_back(c);
  auto recs = rate_report(series, pred, cols, lo, hi, cfg.rates.tolerance);

  if (series.has("eps_l2sq") && series.has("tau_l2sq") && series.has("align_cos")) {
    AlignmentTolerances tol{lo, hi, cfg.rates.max_ratio_slope, cfg.rates.min_final_cosine};
    const auto a = alignment_report(series, tol);
    ReportRecord ratio{"eps_over_tau", -1.0, std::nullopt, std::nullopt, lo, hi, a.ratio_pass ? "pass" : "fail"};
    if (a.ratio_fit) ratio.fitted_slope = a.ratio_fit->slope, ratio.stderr_value = a.ratio_fit->slope_stderr;
    recs.push_back(ratio);
    recs.push_back({"align_cos", std::nullopt, std::nullopt, std::nullopt, lo, hi, a.cosine_pass ? "pass" : "fail"});
    std::printf("alignment cosine %.6f -> %.6f\n", a.cosine_start, a.cosine_end);
  }
  const auto two = two_sided_check(series, pred, lo, hi, cfg.rates.tolerance);
  if (two.applicable)
    for (const auto& c : two.columns)
      recs.push_back({c.column + ":two_sided", c.predicted, c.fit.slope, c.fit.slope_stderr, lo, hi,
                      c.pass ? "pass" : "fail"});

  const auto json = report_json(recs);
  write_file(out_path(cfg, "report.json"), json);
  print_records(recs);
  std::fputs(json.c_str(), stdout);
  for (const auto& r : recs)
    if (r.verdict == "fail") throw AcceptanceFailure(r.quantity + " outside tolerance");
  return kOk;
}

int cmd_verify_bounds(double omega, double radius, int n_xi, int n_t, double t_max, const std::string& output) {
  const auto rep = scan_pointwise_bounds(omega, radius, n_xi, n_t, t_max);
  const auto json = bounds_json(rep);
  if (!output.empty()) write_file(output, json);
  std::printf("omega %g radius %g samples %zu\n", omega, radius, rep.samples);
  std::printf("worst margins A %.3g B %.3g C %.3g\n", rep.worst_margin_a, rep.worst_margin_b, rep.worst_margin_c);
  std::printf("violations: %zu\n", rep.violations());
  if (rep.violations() > 0) throw AcceptanceFailure(std::to_string(rep.violations()) + " bound violations");
  return kOk;
}

int cmd_plot(const std::string& series_path, const std::vector<std::string>& columns, const std::string& output,
             std::optional<double> r_u, std::optional<double> r_tau) {
  const auto series = read_timeseries(series_path);
  std::optional<RatePrediction> guides;
  if (r_u || r_tau) guides = predicted_exponents(r_u.value_or(10.0), r_tau.value_or(10.0));
  emit_plot(series, columns, output, guides);
  std::printf("wrote %s\n", output.c_str());
  return kOk;
}

int fail(int code, const std::string& msg) {
  std::fprintf(stderr, "ERROR %d: %s\n", code, msg.c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oldb: decay rates of Oldroyd-B flows"};
  app.require_subcommand(1);

  std::string config, series, resume, output;
  auto* run = app.add_subcommand("run", "Dispatch on the config's mode");
  run->add_option("--config", config, "YAML config")->required()->check(CLI::ExistingFile);

  auto* dc = app.add_subcommand("decay-character", "Estimate decay characters of the initial data");
  dc->add_option("--config", config, "YAML config")->required()->check(CLI::ExistingFile);

  auto* lin = app.add_subcommand("linear", "Continuum linear decay curves and fits");
  lin->add_option("--config", config, "YAML config")->required()->check(CLI::ExistingFile);

  auto* sim = app.add_subcommand("simulate", "Nonlinear box run: series and checkpoints");
  sim->add_option("--config", config, "YAML config")->required()->check(CLI::ExistingFile);
  sim->add_option("--resume", resume, "checkpoint to continue from")->check(CLI::ExistingFile);

  auto* fit = app.add_subcommand("fit", "Slope report for a series");
  fit->add_option("--series", series, "CSV series")->required()->check(CLI::ExistingFile);
  fit->add_option("--config", config, "YAML config")->required()->check(CLI::ExistingFile);

  double omega = 0.5, radius = 1.0, t_max = 100.0;
  int n_xi = 200, n_t = 200;
  auto* vb = app.add_subcommand("verify-bounds", "Scan the pointwise kernel bounds");
  vb->add_option("--omega", omega, "retardation ratio in (0, 1)")->required();
  vb->add_option("--radius", radius, "largest |xi|")->required();
  vb->add_option("--n-xi", n_xi, "samples in |xi|")->capture_default_str();
  vb->add_option("--n-t", n_t, "samples in t")->capture_default_str();
  vb->add_option("--t-max", t_max, "last time")->capture_default_str();
  vb->add_option("--output", output, "JSON report path");

  std::vector<std::string> columns;
  std::optional<double> r_u, r_tau;
  std::string svg = "plot.svg";
  auto* pl = app.add_subcommand("plot", "Log-log SVG of series columns");
  pl->add_option("--series", series, "CSV series")->required()->check(CLI::ExistingFile);
  pl->add_option("--columns", columns, "columns to draw")->required()->delimiter(',');
  pl->add_option("--output", svg, "SVG path")->capture_default_str();
  pl->add_option("--r-u", r_u, "decay character of u0 for guide lines");
  pl->add_option("--r-tau", r_tau, "decay character of tau0 for guide lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help();
    return fail(kValidation, e.what());
  }

  try {
    if (*vb) return cmd_verify_bounds(omega, radius, n_xi, n_t, t_max, output);
    if (*pl) return cmd_plot(series, columns, svg, r_u, r_tau);
    const auto cfg = load_config(config);
    if (*dc) return cmd_decay_character(cfg);
    if (*lin) return cmd_linear(cfg);
    if (*sim) return cmd_simulate(cfg, resume);
    if (*fit) return cmd_fit(cfg, series);
    switch (cfg.mode) {
      case RunMode::decay_character: return cmd_decay_character(cfg);
      case RunMode::linear: return cmd_linear(cfg);
      case RunMode::simulate: return cmd_simulate(cfg, "");
      default: throw ValidationError("mode '" + to_string(cfg.mode) + "' needs its own subcommand");
    }
  } catch (const ValidationError& e) {
    return fail(kValidation, e.what());
  } catch (const AcceptanceFailure& e) {
    return fail(kAcceptance, e.what());
  } catch (const RuntimeAbort& e) {
    return fail(kRuntime, e.what());
  } catch (const NoDecayCharacter& e) {
    return fail(kRuntime, e.what());
  } catch (const std::exception& e) {
    return fail(kRuntime, e.what());
  }
}
