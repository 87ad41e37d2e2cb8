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

#include "oldb/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

#include "oldb/decay_character.hpp"
#include "oldb/initial_data.hpp"

namespace oldb {

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::decay_character: return "decay-character";
    case RunMode::linear: return "linear";
    case RunMode::simulate: return "simulate";
    case RunMode::fit: return "fit";
    case RunMode::verify_bounds: return "verify-bounds";
    case RunMode::plot: return "plot";
  }
  return "?";
}

namespace {

std::string format_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream os;
  os << issues.size() << (issues.size() == 1 ? " config error" : " config errors");
  for (const auto& i : issues) {
    os << "\n  ";
    if (i.line > 0) os << "line " << i.line << ": ";
    os << i.field << ": " << i.message;
  }
  return os.str();
}

std::optional<RunMode> mode_from(const std::string& s) {
  for (auto m : {RunMode::decay_character, RunMode::linear, RunMode::simulate, RunMode::fit,
                 RunMode::verify_bounds, RunMode::plot}) {
    std::string name = to_string(m);
    std::string alt = name;
    for (auto& c : alt)
      if (c == '-') c = '_';
    if (s == name || s == alt) return m;
  }
  return std::nullopt;
}

struct Arity {
  const char* family;
  std::size_t args;
};
constexpr Arity kFamilies[] = {
    {"power_cutoff", 1}, {"power_gauss", 1}, {"indicator", 0}, {"lp_like", 1}, {"random_band", 4},
};

class Reader {
 public:
  std::vector<ConfigIssue> issues;

  void fail(const YAML::Node& at, const std::string& field, const std::string& msg) {
    issues.push_back({at ? at.Mark().line + 1 : 0, field, msg});
  }

  /// Checks that node is a map and that every key is allowed.
  bool section(const YAML::Node& node, const std::string& name, const std::set<std::string>& keys) {
    if (!node || node.IsNull()) return false;
    if (!node.IsMap()) {
      fail(node, name, "expected a mapping");
      return false;
    }
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!keys.count(key))
        issues.push_back({kv.first.Mark().line + 1, name.empty() ? key : name + "." + key, "unknown key"});
    }
    return true;
  }

  template <class T>
  bool scalar(const YAML::Node& parent, const std::string& sec, const std::string& key, T& out) {
    const auto node = parent[key];
    if (!node) return false;
    const std::string field = sec.empty() ? key : sec + "." + key;
    if (!node.IsScalar()) {
      fail(node, field, "expected a scalar");
      return false;
    }
    try {
      out = node.as<T>();
      return true;
    } catch (const YAML::Exception&) {
      fail(node, field, "cannot read '" + node.Scalar() + "' as " + type_name<T>());
      return false;
    }
  }

  void number(const YAML::Node& parent, const std::string& sec, const std::string& key, double& out,
              const std::function<bool(double)>& ok, const std::string& range) {
    double v = out;
    if (!scalar(parent, sec, key, v)) return;
    if (!std::isfinite(v) || !ok(v)) {
      fail(parent[key], sec + "." + key, "must be " + range + ", got " + parent[key].Scalar());
      return;
    }
    out = v;
  }

  void integer(const YAML::Node& parent, const std::string& sec, const std::string& key, int& out,
               const std::function<bool(int)>& ok, const std::string& range) {
    int v = out;
    if (!scalar(parent, sec, key, v)) return;
    if (!ok(v)) {
      fail(parent[key], sec + "." + key, "must be " + range + ", got " + parent[key].Scalar());
      return;
    }
    out = v;
  }

 private:
  template <class T>
  static const char* type_name() {
    if constexpr (std::is_same_v<T, double>) return "a number";
    else if constexpr (std::is_same_v<T, int>) return "an integer";
    else if constexpr (std::is_same_v<T, bool>) return "a boolean";
    else return "a string";
  }
};

void check_initial(Reader& r, const YAML::Node& node, const std::string& field, const InitialSpec& s) {
  if (!s.present()) return;
  const auto& a = s.args;
  auto bad = [&](const std::string& msg) { r.fail(node, field, msg); };
  if (s.family == "lp_like" && !(a[0] >= 1.0 && a[0] < 2.0)) bad("lp_like(p) needs p in [1, 2)");
  if (s.random()) {
    if (!(a[0] >= 0.0)) bad("random_band k_lo must be >= 0");
    if (!(a[1] > a[0])) bad("random_band k_hi must exceed k_lo");
    if (!(a[2] > 0.0)) bad("random_band amplitude must be positive");
    if (!(a[3] >= 0.0 && a[3] == std::floor(a[3]) && a[3] < 9.007199254740992e15))
      bad("random_band seed must be a nonnegative integer");
    return;
  }
  try {
    (void)s.profile();
  } catch (const ValidationError& e) {
    bad(e.what());
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : ValidationError(format_issues(issues)), issues_(std::move(issues)) {}

InitialSpec parse_initial_spec(const std::string& text) {
  static const std::regex call(R"(^\s*([A-Za-z_]+)\s*(?:\((.*)\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, call)) throw ValidationError("cannot parse initial data '" + text + "'");
  InitialSpec s;
  const std::string fam = m[1];
  if (fam == "none" || fam == "zero") {
    if (m[2].matched && !m[2].str().empty()) throw ValidationError(fam + " takes no arguments");
    return s;
  }
  const Arity* arity = nullptr;
  for (const auto& f : kFamilies)
    if (fam == f.family) arity = &f;
  if (!arity) throw ValidationError("unknown profile family '" + fam + "'");
  s.family = fam;
  if (m[2].matched) {
    std::string list = m[2];
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        throw ValidationError("argument '" + item + "' of " + fam + " is not a number");
      }
      if (item.find_first_not_of(" \t", used) != std::string::npos)
        throw ValidationError("argument '" + item + "' of " + fam + " is not a number");
      s.args.push_back(v);
    }
  }
  if (s.random() && s.args.size() == 3)
    throw ValidationError("random_band needs an explicit seed: random_band(k_lo, k_hi, amplitude, seed)");
  if (s.args.size() != arity->args)
    throw ValidationError(fam + " takes " + std::to_string(arity->args) + " argument(s), got " +
                          std::to_string(s.args.size()));
  return s;
}

SpectralProfile InitialSpec::profile(int d) const {
  if (family == "power_cutoff") return SpectralProfile::power_cutoff(args[0], angular, d);
  if (family == "power_gauss") return SpectralProfile::power_gauss(args[0], angular, d);
  if (family == "indicator") return SpectralProfile::indicator(angular, d);
  if (family == "lp_like") return SpectralProfile::lp_like(args[0], angular, d);
  throw ValidationError("'" + text() + "' is not a continuum profile");
}

std::optional<double> InitialSpec::decay_character() const {
  if (family == "power_cutoff" || family == "power_gauss") return args[0];
  if (family == "indicator") return 0.0;
  if (family == "lp_like") return lp_decay_character(args[0], 3);
  return std::nullopt;
}

std::string InitialSpec::text() const {
  if (!present()) return "none";
  std::ostringstream os;
  os << family;
  if (!args.empty()) {
    os << '(';
    for (std::size_t i = 0; i < args.size(); ++i) os << (i ? ", " : "") << args[i];
    os << ')';
  }
  return os.str();
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError({{e.mark.line + 1, "syntax", e.msg}});
  }
  RunConfig cfg;
  cfg.u.angular = AngularStructure::solenoidal_axial;
  cfg.tau.angular = AngularStructure::shear_pair;
  if (!root || root.IsNull()) return cfg;

  Reader r;
  if (!root.IsMap()) throw ConfigError({{root.Mark().line + 1, "config", "expected a mapping at top level"}});
  r.section(root, "", {"mode", "output", "physics", "grid", "initial", "solver", "rates", "linear"});

  std::string s;
  if (r.scalar(root, "", "mode", s)) {
    if (auto m = mode_from(s)) cfg.mode = *m;
    else r.fail(root["mode"], "mode", "unknown mode '" + s + "'");
  }
  r.scalar(root, "", "output", cfg.output);

  auto positive = [](double v) { return v > 0.0; };
  if (auto ph = root["physics"]; r.section(ph, "physics", {"omega", "a", "reynolds", "weissenberg"})) {
    double omega = 0.5, a = 0.0, re = 1.0, we = 1.0;
    const auto before = r.issues.size();
    r.number(ph, "physics", "omega", omega, [](double v) { return v > 0.0 && v < 1.0; }, "in (0, 1)");
    r.number(ph, "physics", "a", a, [](double v) { return std::abs(v) <= 1.0; }, "in [-1, 1]");
    r.number(ph, "physics", "reynolds", re, positive, "positive");
    r.number(ph, "physics", "weissenberg", we, positive, "positive");
    if (r.issues.size() == before) cfg.physics = FluidParams(omega, a, re, we);
  }

  if (auto gr = root["grid"]; r.section(gr, "grid", {"n", "box_scale"})) {
    r.integer(gr, "grid", "n", cfg.n, [](int v) { return v >= 4 && v % 2 == 0; }, "an even integer >= 4");
    r.number(gr, "grid", "box_scale", cfg.box_scale, positive, "positive");
  }

  if (auto in = root["initial"];
      r.section(in, "initial", {"u", "tau", "u_angular", "tau_angular", "amplitude"})) {
    auto read_spec = [&](const std::string& key, InitialSpec& spec) {
      std::string t;
      if (!r.scalar(in, "initial", key, t)) return;
      try {
        auto parsed = parse_initial_spec(t);
        parsed.angular = spec.angular;
        spec = parsed;
      } catch (const ValidationError& e) {
        r.fail(in[key], "initial." + key, e.what());
      }
    };
    auto read_angular = [&](const std::string& key, InitialSpec& spec, bool tensor) {
      std::string t;
      if (!r.scalar(in, "initial", key, t)) return;
      try {
        auto a = angular_structure_from_string(t);
        if (is_tensor(a) != tensor)
          r.fail(in[key], "initial." + key, std::string("must be a ") + (tensor ? "tensor" : "vector") + " pattern");
        else spec.angular = a;
      } catch (const std::exception& e) {
        r.fail(in[key], "initial." + key, e.what());
      }
    };
    read_angular("u_angular", cfg.u, false);
    read_angular("tau_angular", cfg.tau, true);
    read_spec("u", cfg.u);
    read_spec("tau", cfg.tau);
    check_initial(r, in["u"], "initial.u", cfg.u);
    check_initial(r, in["tau"], "initial.tau", cfg.tau);
    r.number(in, "initial", "amplitude", cfg.amplitude, [](double v) { return v >= 0.0; }, ">= 0");
  }

  if (auto so = root["solver"]; r.section(so, "solver", {"dt", "t_end", "integrator", "checkpoint_every",
                                                         "diagnostics_every", "nonlinear", "cfl_cap"})) {
    auto& c = cfg.solver;
    r.number(so, "solver", "dt", c.dt, positive, "positive");
    r.number(so, "solver", "t_end", c.t_end, positive, "positive");
    r.number(so, "solver", "cfl_cap", c.cfl_cap, positive, "positive");
    r.integer(so, "solver", "checkpoint_every", c.checkpoint_every, [](int v) { return v >= 0; }, ">= 0");
    r.integer(so, "solver", "diagnostics_every", c.diagnostics_every, [](int v) { return v >= 1; }, ">= 1");
    r.scalar(so, "solver", "nonlinear", c.nonlinear);
    if (r.scalar(so, "solver", "integrator", s)) {
      try {
        c.integrator = integrator_from_string(s);
      } catch (const ValidationError& e) {
        r.fail(so["integrator"], "solver.integrator", e.what());
      }
    }
  }

  if (auto ra = root["rates"]; r.section(ra, "rates", {"window", "tolerance", "r_u", "r_tau", "max_ratio_slope",
                                                       "min_final_cosine", "columns"})) {
    auto& c = cfg.rates;
    if (auto w = ra["window"]) {
      if (!w.IsSequence() || w.size() != 2) {
        r.fail(w, "rates.window", "expected [t_lo, t_hi]");
      } else {
        try {
          const double lo = w[0].as<double>(), hi = w[1].as<double>();
          if (!(lo >= 0.0 && hi > lo)) r.fail(w, "rates.window", "needs 0 <= t_lo < t_hi");
          else c.t_lo = lo, c.t_hi = hi;
        } catch (const YAML::Exception&) {
          r.fail(w, "rates.window", "entries must be numbers");
        }
      }
    }
    r.number(ra, "rates", "tolerance", c.tolerance, positive, "positive");
    auto admissible = [](double v) { return v > -1.5; };
    for (auto [key, slot] : {std::pair{"r_u", &c.r_u}, std::pair{"r_tau", &c.r_tau}}) {
      if (!ra[key]) continue;
      const auto before = r.issues.size();
      double v = 0.0;
      r.number(ra, "rates", key, v, admissible, "> -3/2");
      if (r.issues.size() == before) *slot = v;
    }
    r.number(ra, "rates", "max_ratio_slope", c.max_ratio_slope, [](double) { return true; }, "a number");
    r.number(ra, "rates", "min_final_cosine", c.min_final_cosine, [](double x) { return x >= -1.0 && x <= 1.0; },
             "in [-1, 1]");
    if (auto cols = ra["columns"]) {
      if (!cols.IsSequence()) r.fail(cols, "rates.columns", "expected a list of column names");
      else
        for (const auto& e : cols) c.columns.push_back(e.as<std::string>());
    }
  }

  if (auto li = root["linear"]; r.section(li, "linear", {"t_min", "t_max", "samples"})) {
    auto& c = cfg.linear;
    r.number(li, "linear", "t_min", c.t_min, positive, "positive");
    r.number(li, "linear", "t_max", c.t_max, positive, "positive");
    r.integer(li, "linear", "samples", c.samples, [](int x) { return x >= 4; }, ">= 4");
    if (!(c.t_max > c.t_min)) r.fail(li, "linear.t_max", "must exceed linear.t_min");
  }

  if (cfg.mode == RunMode::linear) {
    if (cfg.u.random()) r.fail(root["initial"], "initial.u", "linear mode needs a continuum profile");
    if (cfg.tau.random()) r.fail(root["initial"], "initial.tau", "linear mode needs a continuum profile");
  }

  if (!r.issues.empty()) {
    std::stable_sort(r.issues.begin(), r.issues.end(),
                     [](const ConfigIssue& a, const ConfigIssue& b) { return a.line < b.line; });
    throw ConfigError(std::move(r.issues));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

SimState random_part(const FourierGrid& g, const FluidParams& p, const InitialSpec& s) {
  return random_band(g, p, s.args[0], s.args[1], s.args[2], static_cast<std::uint64_t>(s.args[3]));
}

}  // namespace

SimState initial_state(const RunConfig& cfg) {
  const FourierGrid grid(cfg.n, cfg.box_scale);
  const auto& p = cfg.physics;
  if (cfg.u.random() && cfg.tau.random() && cfg.u.args == cfg.tau.args) return random_part(grid, p, cfg.u);

  SimState state(grid, p);
  // Independent random draws: each field carries its own H^2 amplitude.
  if (cfg.u.random()) {
    auto rb = random_part(grid, p, cfg.u);
    rb.tau = SpectralTensorField(grid);
    rescale(rb, cfg.u.args[2] / h2_norm(rb));
    state.u = rb.u;
  }
  if (cfg.tau.random()) {
    auto rb = random_part(grid, p, cfg.tau);
    rb.u = SpectralVectorField(grid);
    rescale(rb, cfg.tau.args[2] / h2_norm(rb));
    state.tau = rb.tau;
  }
  std::optional<SpectralProfile> up, tp;
  if (cfg.u.present() && !cfg.u.random()) up = cfg.u.profile();
  if (cfg.tau.present() && !cfg.tau.random()) tp = cfg.tau.profile();
  if (up || tp) {
    auto prof = profile_data(grid, p, up, tp, cfg.amplitude);
    state.u += prof.u;
    state.tau += prof.tau;
  }
  return state;
}

}  // namespace oldb
