#pragma once

// Experiment specifications (JSON in), holonomy reports (JSON out), lift
// traces (CSV out), and the batch driver.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "hopf/bundle.hpp"
#include "hopf/curves.hpp"
#include "hopf/error.hpp"
#include "hopf/holonomy.hpp"

namespace hopf {

using json = nlohmann::json;

struct IntegratorSpec {
  int N = kDefaultSteps;
  LiftMethod method = LiftMethod::both;
  friend bool operator==(const IntegratorSpec&, const IntegratorSpec&) = default;
};

struct OutputSpec {
  std::optional<std::string> report;
  std::optional<std::string> trace;
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct ExperimentSpec {
  std::string id;
  BundleKind bundle = BundleKind::CpxHyperbolic;
  std::size_t n = 1;
  ComplexVector v;
  ComplexVector w;
  ChartCurve curve = ChartCurve::rectangle(0.0, 1.0, 0.0, 1.0);
  IntegratorSpec integrator;
  OutputSpec output;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

namespace detail {

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail_validation(std::string("spec: missing field '") + key + "'");
  return j.at(key);
}

inline double number(const json& j, const char* what) {
  if (!j.is_number()) fail_validation(std::string("spec: '") + what + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail_validation(std::string("spec: '") + what + "' must be finite");
  return v;
}

inline ChartPoint point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) fail_validation(std::string("spec: '") + what + "' must be an [x, y] pair");
  return {number(j[0], what), number(j[1], what)};
}

inline std::vector<ChartPoint> points(const json& j, const char* what) {
  if (!j.is_array()) fail_validation(std::string("spec: '") + what + "' must be a list of [x, y] pairs");
  std::vector<ChartPoint> out;
  for (const auto& p : j) out.push_back(point(p, what));
  return out;
}

inline json point_json(ChartPoint p) { return json::array({p.x, p.y}); }

inline ComplexVector complex_vector(const json& j, const char* what) {
  if (!j.is_array()) fail_validation(std::string("spec: '") + what + "' must be a list of [re, im] pairs");
  ComplexVector out(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto p = point(j[k], what);
    out[k] = Complex(p.x, p.y);
  }
  return out;
}

inline json complex_vector_json(const ComplexVector& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(json::array({z.real(), z.imag()}));
  return a;
}

inline std::string string_field(const json& j, const char* what) {
  if (!j.is_string()) fail_validation(std::string("spec: '") + what + "' must be a string");
  return j.get<std::string>();
}

}  // namespace detail

inline BundleKind parse_bundle_kind(const std::string& s) {
  if (s == "CpxHyperbolic") return BundleKind::CpxHyperbolic;
  if (s == "Heisenberg") return BundleKind::Heisenberg;
  fail_validation("spec: unknown bundle '" + s + "' (expected CpxHyperbolic or Heisenberg)");
}

inline LiftMethod parse_method(const std::string& s) {
  if (s == "closed_form") return LiftMethod::closed_form;
  if (s == "generic") return LiftMethod::generic;
  if (s == "both") return LiftMethod::both;
  fail_validation("unknown method '" + s + "' (expected closed_form, generic or both)");
}

inline ChartCurve curve_from_json(const json& j) {
  using detail::number;
  using detail::require;
  const std::string kind = detail::string_field(require(j, "kind"), "curve.kind");
  Orientation o = Orientation::Positive;
  if (j.contains("orientation")) {
    const std::string s = detail::string_field(j.at("orientation"), "curve.orientation");
    if (s == "Negative")
      o = Orientation::Negative;
    else if (s != "Positive")
      fail_validation("spec: curve.orientation must be Positive or Negative");
  }
  if (kind == "Rectangle")
    return ChartCurve::rectangle(number(require(j, "p"), "p"), number(require(j, "a"), "a"),
                                 number(require(j, "q"), "q"), number(require(j, "b"), "b"), o);
  if (kind == "Circle")
    return ChartCurve::circle(detail::point(require(j, "center"), "center"), number(require(j, "radius"), "radius"), o);
  if (kind == "Polygon") return ChartCurve::polygon(detail::points(require(j, "vertices"), "vertices"), o);
  if (kind == "Sampled") return ChartCurve::sampled(detail::points(require(j, "points"), "points"), o);
  fail_validation("spec: unknown curve kind '" + kind + "'");
}

inline json curve_to_json(const ChartCurve& c) {
  json j;
  j["kind"] = std::string(c.kind_name());
  std::visit(
      [&j](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Rectangle>) {
          j["p"] = s.p;
          j["a"] = s.a;
          j["q"] = s.q;
          j["b"] = s.b;
        } else if constexpr (std::is_same_v<S, Circle>) {
          j["center"] = detail::point_json(s.center);
          j["radius"] = s.radius;
        } else {
          json pts = json::array();
          const auto& list = [&s]() -> const std::vector<ChartPoint>& {
            if constexpr (std::is_same_v<S, Polygon>)
              return s.vertices;
            else
              return s.points;
          }();
          for (const auto& p : list) pts.push_back(detail::point_json(p));
          j[std::is_same_v<S, Polygon> ? "vertices" : "points"] = std::move(pts);
        }
      },
      c.shape());
  j["orientation"] = c.orientation() == Orientation::Positive ? "Positive" : "Negative";
  return j;
}

inline ExperimentSpec spec_from_json(const json& j) {
  using detail::require;
  if (!j.is_object()) fail_validation("spec: document must be a JSON object");
  ExperimentSpec s;
  if (j.contains("id")) s.id = detail::string_field(j.at("id"), "id");
  s.bundle = parse_bundle_kind(detail::string_field(require(j, "bundle"), "bundle"));
  const json& n = require(j, "n");
  if (!n.is_number_integer() || n.get<long long>() < 1) fail_validation("spec: 'n' must be a positive integer");
  s.n = n.get<std::size_t>();
  const json& surface = require(j, "surface");
  s.v = detail::complex_vector(require(surface, "v"), "surface.v");
  s.w = detail::complex_vector(require(surface, "w"), "surface.w");
  if (s.v.size() != s.n || s.w.size() != s.n)
    fail_validation("spec: surface.v and surface.w must have length n = " + std::to_string(s.n));
  s.curve = curve_from_json(require(j, "curve"));
  if (j.contains("integrator")) {
    const json& in = j.at("integrator");
    if (in.contains("N")) {
      if (!in.at("N").is_number_integer() || in.at("N").get<long long>() < 1)
        fail_validation("spec: integrator.N must be a positive integer");
      s.integrator.N = in.at("N").get<int>();
    }
    if (in.contains("method")) s.integrator.method = parse_method(detail::string_field(in.at("method"), "method"));
  }
  if (j.contains("output")) {
    const json& out = j.at("output");
    if (out.contains("report")) s.output.report = detail::string_field(out.at("report"), "output.report");
    if (out.contains("trace")) s.output.trace = detail::string_field(out.at("trace"), "output.trace");
  }
  return s;
}

inline json spec_to_json(const ExperimentSpec& s) {
  json j;
  if (!s.id.empty()) j["id"] = s.id;
  j["bundle"] = std::string(to_string(s.bundle));
  j["n"] = s.n;
  j["surface"] = {{"v", detail::complex_vector_json(s.v)}, {"w", detail::complex_vector_json(s.w)}};
  j["curve"] = curve_to_json(s.curve);
  j["integrator"] = {{"N", s.integrator.N}, {"method", std::string(to_string(s.integrator.method))}};
  if (s.output.report || s.output.trace) {
    json out = json::object();
    if (s.output.report) out["report"] = *s.output.report;
    if (s.output.trace) out["trace"] = *s.output.trace;
    j["output"] = std::move(out);
  }
  return j;
}

inline ExperimentSpec parse_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_validation(std::string("spec: malformed JSON: ") + e.what());
  }
  try {
    return spec_from_json(j);
  } catch (const json::exception& e) {
    fail_validation(std::string("spec: ") + e.what());
  }
}

/// Classification label written into reports. Heisenberg planes are all
/// totally geodesic in C^n, so the CH^n-specific rejection tag is not used there.
inline std::string classification_label(const BundleDescriptor& b) {
  if (b.kind == BundleKind::Heisenberg && b.plane_class.tag == PlaneTag::NotTotallyGeodesic) return "Generic";
  return std::string(to_string(b.plane_class.tag));
}

inline json report_to_json(const HolonomyReport& r, const BundleDescriptor& b, int requested_steps) {
  json j;
  j["measured"] = r.measured;
  j["measured_mod"] = r.measured_mod ? json(*r.measured_mod) : json(nullptr);
  j["predicted"] = r.predicted;
  j["area"] = r.metrics.area;
  j["area_abs"] = std::abs(r.metrics.area);
  j["length"] = r.metrics.length;
  j["residual"] = r.residual;
  j["classification"] = classification_label(b);
  j["lambda_or_e"] = r.lambda_or_e;
  j["generic_measured"] = r.generic_measured ? json(*r.generic_measured) : json(nullptr);
  j["integrator"] = {{"N", requested_steps}, {"method", std::string(to_string(r.method))}};
  j["status"] = std::string(to_string(r.status));
  return j;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV with header t,x,y,z and one row per lift node.
inline std::string trace_to_csv(const AnyLiftTrace& trace) {
  std::string out = "t,x,y,z\n";
  std::visit(
      [&out](const auto& tr) {
        for (std::size_t i = 0; i < tr.t.size(); ++i) {
          out += format_double(tr.t[i]);
          out += ',';
          out += format_double(tr.base[i].x);
          out += ',';
          out += format_double(tr.base[i].y);
          out += ',';
          out += format_double(tr.fiber[i]);
          out += '\n';
        }
      },
      trace);
  return out;
}

/// Writes to a sibling temporary and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail_validation("cannot write " + tmp.string());
    f << content;
    if (!f) fail_validation("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

struct RunResult {
  HolonomyReport report;
  json report_json;
  std::optional<AnyLiftTrace> trace;

  /// 0, or 3 when the closed-form and generic lifts disagree.
  int exit_code() const noexcept { return report.status == HolonomyStatus::ok ? 0 : 3; }
};

inline BundleDescriptor spec_descriptor(const ExperimentSpec& spec) {
  const SurfacePlane plane = SurfacePlane::from_basis(spec.v, spec.w);
  return descriptor(spec.bundle, spec.n, plane);
}

/// Runs one experiment. Validation and integration failures throw hopf::Error.
inline RunResult run(const ExperimentSpec& spec, bool keep_trace = false) {
  const BundleDescriptor bundle = spec_descriptor(spec);
  RunResult result;
  AnyLiftTrace trace;
  const bool want_trace = keep_trace || spec.output.trace.has_value();
  result.report = holonomy(bundle, spec.curve, spec.integrator.N, spec.integrator.method, want_trace ? &trace : nullptr);
  result.report_json = report_to_json(result.report, bundle, spec.integrator.N);
  if (want_trace) result.trace = std::move(trace);
  return result;
}

inline std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

/// Runs a spec and writes whichever outputs it names.
inline RunResult run_and_write(const ExperimentSpec& spec) {
  RunResult r = run(spec);
  if (spec.output.report) write_file_atomic(*spec.output.report, dump_report(r.report_json));
  if (spec.output.trace && r.trace) write_file_atomic(*spec.output.trace, trace_to_csv(*r.trace));
  return r;
}

struct BatchRow {
  std::string id;
  std::optional<double> residual;
  std::string status;
  int exit_code = 0;
  std::string diagnostic;
  std::optional<json> report;
};

inline std::string error_status(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::validation: return "validation_error";
    case ErrorKind::integration: return "integration_error";
    case ErrorKind::inconsistent: return "INCONSISTENT";
  }
  return "error";
}

inline BatchRow run_row(const ExperimentSpec& spec) {
  BatchRow row;
  row.id = spec.id;
  try {
    const RunResult r = run_and_write(spec);
    row.residual = r.report.residual;
    row.status = std::string(to_string(r.report.status));
    row.exit_code = r.exit_code();
    row.report = r.report_json;
  } catch (const Error& e) {
    row.status = error_status(e);
    row.exit_code = e.exit_code();
    row.diagnostic = e.what();
  } catch (const std::exception& e) {
    row.status = "error";
    row.exit_code = 1;
    row.diagnostic = e.what();
  }
  return row;
}

/// Runs independent specs concurrently; a failing spec only marks its own row.
inline std::vector<BatchRow> batch(const std::vector<ExperimentSpec>& specs, unsigned threads = 0) {
  std::vector<BatchRow> rows(specs.size());
  if (specs.empty()) return rows;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(specs.size()));
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) rows[i] = run_row(specs[i]);
      });
  }
  return rows;
}

inline std::string summary_csv(const std::vector<BatchRow>& rows) {
  std::string out = "id,residual,status\n";
  for (const auto& r : rows) {
    out += r.id;
    out += ',';
    if (r.residual) out += format_double(*r.residual);
    out += ',';
    out += r.status;
    out += '\n';
  }
  return out;
}

}  // namespace hopf
