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

#include "oldb/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "oldb/error.hpp"

namespace oldb {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- time series ----

std::string timeseries_csv(const TimeSeries& series) {
  std::string out = "t";
  for (const auto& c : series.columns()) out += "," + c;
  out += "\n";
  std::vector<std::span<const double>> cols;
  for (const auto& c : series.columns()) cols.push_back(series.column(c));
  const auto t = series.times();
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += format_double(t[i]);
    for (const auto& c : cols) out += "," + format_double(c[i]);
    out += "\n";
  }
  return out;
}

void emit_timeseries(const TimeSeries& series, const std::string& path) {
  write_file(path, timeseries_csv(series));
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(line);
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  const char* b = s.c_str();
  char* e = nullptr;
  const double v = std::strtod(b, &e);
  if (e == b || *e != '\0')
    throw ValidationError("line " + std::to_string(line) + ": '" + s + "' is not a number");
  return v;
}

}  // namespace

TimeSeries parse_timeseries(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw ValidationError("time series is empty (no header)");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split(line, ',');
  if (header.empty() || header[0] != "t") throw ValidationError("time series header must start with 't'");
  TimeSeries series(std::vector<std::string>(header.begin() + 1, header.end()));
  std::vector<double> row(header.size() - 1);
  std::size_t lineno = 1;
  while (std::getline(ss, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != header.size())
      throw ValidationError("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                            " fields, got " + std::to_string(cells.size()));
    for (std::size_t i = 1; i < cells.size(); ++i) row[i - 1] = parse_number(cells[i], lineno);
    try {
      series.append(parse_number(cells[0], lineno), row);
    } catch (const std::exception& e) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return series;
}

TimeSeries read_timeseries(const std::string& path) { return parse_timeseries(read_file(path)); }

// ---- reports ----

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
      continue;
    }
    out += c;
  }
  return out + "\"";
}

namespace {

std::string json_number(double x) { return std::isfinite(x) ? format_double(x) : "null"; }
std::string json_number(const std::optional<double>& x) { return x ? json_number(*x) : "null"; }

}  // namespace

std::string report_json(const std::vector<ReportRecord>& records) {
  std::string out = "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out += i ? ",\n  {" : "\n  {";
    out += "\"quantity\": " + json_string(r.quantity);
    out += ", \"predicted_exponent\": " + json_number(r.predicted_exponent);
    out += ", \"fitted_slope\": " + json_number(r.fitted_slope);
    out += ", \"stderr\": " + json_number(r.stderr_value);
    out += ", \"window\": [" + json_number(r.t_lo) + ", " + json_number(r.t_hi) + "]";
    out += ", \"verdict\": " + json_string(r.verdict) + "}";
  }
  out += records.empty() ? "]\n" : "\n]\n";
  return out;
}

void emit_report(const std::vector<ReportRecord>& records, const std::string& path) {
  write_file(path, report_json(records));
}

std::vector<ReportRecord> rate_report(const TimeSeries& series, const RatePrediction& prediction,
                                      const std::vector<std::string>& columns, double t_lo, double t_hi,
                                      double tolerance) {
  std::vector<ReportRecord> out;
  for (const auto& col : columns) {
    if (!series.has(col)) throw ValidationError("series has no column '" + col + "'");
    ReportRecord r{col, std::nullopt, std::nullopt, std::nullopt, t_lo, t_hi, "reported"};
    if (prediction.has(col)) r.predicted_exponent = prediction.exponent(col);
    try {
      const auto fit = fit_loglog_slope(series, col, t_lo, t_hi);
      r.fitted_slope = fit.slope;
      r.stderr_value = fit.slope_stderr;
      if (r.predicted_exponent)
        r.verdict = std::abs(fit.slope - *r.predicted_exponent) <= tolerance ? "pass" : "fail";
    } catch (const ValidationError&) {
      r.verdict = r.predicted_exponent ? "fail" : "not applicable";
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string bounds_json(const BoundViolationReport& b) {
  std::string out = "{";
  out += "\"omega\": " + json_number(b.omega);
  out += ", \"radius\": " + json_number(b.radius);
  out += ", \"samples\": " + std::to_string(b.samples);
  out += ", \"violations\": " + std::to_string(b.violations());
  out += ", \"violations_a\": " + std::to_string(b.violations_a);
  out += ", \"violations_b\": " + std::to_string(b.violations_b);
  out += ", \"violations_c\": " + std::to_string(b.violations_c);
  out += ", \"worst_margin\": [" + json_number(b.worst_margin_a) + ", " + json_number(b.worst_margin_b) + ", " +
         json_number(b.worst_margin_c) + "]";
  out += ", \"constants\": {\"theta\": " + json_number(b.constants.theta) +
         ", \"c1\": " + json_number(b.constants.c1) + ", \"c2\": " + json_number(b.constants.c2) +
         ", \"c3\": " + json_number(b.constants.c3) + "}";
  return out + "}\n";
}

// ---- checkpoints ----

namespace {

template <class T>
void put(std::string& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    out.append(bytes.data(), bytes.size());
  } else {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
  }
}

class ByteReader {
 public:
  explicit ByteReader(const std::string& b) : b_(b) {}

  template <class T>
  T get(const char* what) {
    if (pos_ + sizeof(T) > b_.size()) throw ValidationError(std::string("checkpoint truncated in ") + what);
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), b_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  bool done() const noexcept { return pos_ == b_.size(); }

 private:
  const std::string& b_;
  std::size_t pos_ = 0;
};

template <class Kind>
void put_field(std::string& out, const SpectralField<Kind>& f) {
  for (const auto& v : f.raw()) {
    put(out, v.real());
    put(out, v.imag());
  }
}

template <class Kind>
void get_field(ByteReader& in, SpectralField<Kind>& f) {
  for (auto& v : f.raw()) {
    const double re = in.get<double>("coefficients");
    const double im = in.get<double>("coefficients");
    v = {re, im};
  }
}

}  // namespace

std::string checkpoint_bytes(const SimState& s) {
  const auto& g = s.grid();
  std::string out = "OLDB";
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n()));
  for (double v : {g.box_scale(), s.params.omega(), s.params.a(), s.params.reynolds(), s.params.weissenberg(),
                   s.time})
    put(out, v);
  put_field(out, s.u);
  put_field(out, s.tau);
  return out;
}

SimState parse_checkpoint(const std::string& bytes) {
  if (bytes.size() < 4 || bytes.compare(0, 4, "OLDB") != 0) throw ValidationError("not a checkpoint (bad magic)");
  const std::string body = bytes.substr(4);
  ByteReader in(body);
  const auto version = in.get<std::uint32_t>("header");
  if (version != kCheckpointVersion)
    throw ValidationError("checkpoint version " + std::to_string(version) + " unsupported (expected " +
                          std::to_string(kCheckpointVersion) + ")");
  const auto n = in.get<std::uint32_t>("header");
  double h[6];
  for (auto& v : h) v = in.get<double>("header");
  const FourierGrid grid(static_cast<int>(n), h[0]);
  SimState s(grid, FluidParams(h[1], h[2], h[3], h[4]));
  s.time = h[5];
  get_field(in, s.u);
  get_field(in, s.tau);
  if (!in.done()) throw ValidationError("checkpoint has trailing bytes");
  return s;
}

void write_checkpoint(const SimState& state, const std::string& path) { write_file(path, checkpoint_bytes(state)); }

SimState read_checkpoint(const std::string& path) { return parse_checkpoint(read_file(path)); }

// ---- plots ----

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
                                    "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string fixed(double x, int digits = 2) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string tick_label(int decade) { return "1e" + std::to_string(decade); }

}  // namespace

std::string render_plot(const TimeSeries& series, const std::vector<std::string>& columns,
                        const std::optional<RatePrediction>& guides) {
  if (columns.empty()) throw ValidationError("no columns to plot");
  for (const auto& c : columns)
    if (!series.has(c)) throw ValidationError("unknown column '" + c + "'");

  struct Curve {
    std::string name;
    std::vector<std::pair<double, double>> pts;  // log10(1 + t), log10(value)
  };
  std::vector<Curve> curves;
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  const auto t = series.times();
  for (const auto& c : columns) {
    Curve cv{c, {}};
    const auto v = series.column(c);
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (!(v[i] > 0.0) || !std::isfinite(v[i]) || t[i] < 0.0) continue;
      const double x = std::log10(1.0 + t[i]), y = std::log10(v[i]);
      cv.pts.emplace_back(x, y);
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    curves.push_back(std::move(cv));
  }
  if (x0 > x1) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  x0 = std::floor(x0), x1 = std::max(std::ceil(x1), x0 + 1.0);
  y0 = std::floor(y0), y1 = std::max(std::ceil(y1), y0 + 1.0);

  const double W = 720, H = 480, left = 80, right = 200, top = 30, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<defs><clipPath id=\"plot\"><rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\""
     << fixed(pw) << "\" height=\"" << fixed(ph) << "\"/></clipPath></defs>\n";
  os << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw) << "\" height=\""
     << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  const int xstep = std::max(1, static_cast<int>((x1 - x0) / 8.0 + 0.999));
  for (int d = static_cast<int>(x0); d <= static_cast<int>(x1); d += xstep) {
    const double X = px(d);
    os << "<line x1=\"" << fixed(X) << "\" y1=\"" << fixed(top + ph) << "\" x2=\"" << fixed(X) << "\" y2=\""
       << fixed(top + ph + 5) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << fixed(X) << "\" y=\"" << fixed(top + ph + 18) << "\" text-anchor=\"middle\">"
       << tick_label(d) << "</text>\n";
  }
  const int ystep = std::max(1, static_cast<int>((y1 - y0) / 10.0 + 0.999));
  for (int d = static_cast<int>(y0); d <= static_cast<int>(y1); d += ystep) {
    const double Y = py(d);
    os << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(Y) << "\" x2=\"" << fixed(left) << "\" y2=\""
       << fixed(Y) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(Y + 4) << "\" text-anchor=\"end\">"
       << tick_label(d) << "</text>\n";
  }
  os << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(H - 15) << "\" text-anchor=\"middle\">1 + t</text>\n";

  double ly = top + 10;
  auto legend = [&](const std::string& color, bool dashed, const std::string& label) {
    os << "<line x1=\"" << fixed(W - right + 15) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(W - right + 45)
       << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\""
       << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>";
    os << "<text x=\"" << fixed(W - right + 52) << "\" y=\"" << fixed(ly + 4) << "\">" << label << "</text>\n";
    ly += 18;
  };

  os << "<g clip-path=\"url(#plot)\">\n";
  std::vector<std::pair<std::string, std::string>> guide_legend;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& cv = curves[i];
    const std::string color = kPalette[i % std::size(kPalette)];
    if (!cv.pts.empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t k = 0; k < cv.pts.size(); ++k)
        os << (k ? " " : "") << fixed(px(cv.pts[k].first)) << ',' << fixed(py(cv.pts[k].second));
      os << "\"/>\n";
    }
    if (guides && guides->has(cv.name) && !cv.pts.empty()) {
      // Anchored at the last sample so the guide meets the curve's tail.
      const double p = guides->exponent(cv.name);
      const auto [xa, ya] = cv.pts.back();
      os << "<line x1=\"" << fixed(px(x0)) << "\" y1=\"" << fixed(py(ya + p * (x0 - xa))) << "\" x2=\""
         << fixed(px(x1)) << "\" y2=\"" << fixed(py(ya + p * (x1 - xa))) << "\" stroke=\"" << color
         << "\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
      guide_legend.emplace_back(color, "slope " + fixed(p, 3));
    }
  }
  os << "</g>\n";
  for (std::size_t i = 0; i < curves.size(); ++i) legend(kPalette[i % std::size(kPalette)], false, curves[i].name);
  for (const auto& [color, label] : guide_legend) legend(color, true, label);
  os << "</svg>\n";
  return os.str();
}

void emit_plot(const TimeSeries& series, const std::vector<std::string>& columns, const std::string& path,
               const std::optional<RatePrediction>& guides) {
  write_file(path, render_plot(series, columns, guides));
}

}  // namespace oldb
