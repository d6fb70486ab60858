#pragma once

// Horizontal lifts of closed chart curves, holonomy displacement, and the
// flat models of the Hopf torus and Hopf cylinder.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hopf/bundle.hpp"
#include "hopf/connection.hpp"
#include "hopf/curves.hpp"
#include "hopf/error.hpp"

namespace hopf {

inline constexpr int kDefaultSteps = 10000;
inline constexpr double kConsistencyTolerance = 1e-4;

enum class LiftMethod { closed_form, generic, both };

inline std::string_view to_string(LiftMethod m) noexcept {
  switch (m) {
    case LiftMethod::closed_form: return "closed_form";
    case LiftMethod::generic: return "generic";
    case LiftMethod::both: return "both";
  }
  return "?";
}

struct LiftOptions {
  /// Accepted horizontality residual; above it the step is halved.
  double accept_residual = 1e-6;
  /// Residual still above this after all halvings is an integration failure.
  double fail_residual = 1e-5;
  int max_halvings = 4;
  /// Finite-difference step in the piece parameter and in the fiber coordinate.
  double difference_step = 1e-5;
  /// Step used to probe the velocity of the lift when measuring horizontality.
  double probe_step = 1e-6;
};

template <typename Element>
struct LiftTrace {
  std::vector<double> t;
  std::vector<ChartPoint> base;
  std::vector<double> fiber;
  std::vector<Element> lift;
  int steps = 0;
  double max_horizontality_residual = 0.0;
  double max_projection_residual = 0.0;

  double displacement() const { return fiber.empty() ? 0.0 : fiber.back() - fiber.front(); }
};

/// One classical fourth-order Runge-Kutta step of dz/ds = rate(s, z).
template <typename Rate>
double rk4_step(const Rate& rate, double s, double z, double h) {
  const double k1 = rate(s, z);
  const double k2 = rate(s + 0.5 * h, z + 0.5 * h * k1);
  const double k3 = rate(s + 0.5 * h, z + 0.5 * h * k2);
  const double k4 = rate(s + h, z + h * k3);
  return z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Solved fiber ODE of the model along one piece.
template <Connection C>
auto closed_form_rate(const C& model, const Piece& piece) {
  return [&model, &piece](double s, double) { return model.closed_form_rate(piece.position(s), piece.velocity(s)); };
}

/// Fiber rate with no knowledge of the solved ODE: move the current lift
/// point along the smooth lift and along the fiber, measure both velocities'
/// vertical components with the metric, and cancel the first by the second.
template <Connection C>
auto generic_rate(const C& model, const Piece& piece, double h) {
  return [&model, &piece, h](double s, double z) {
    const auto at = [&](double ss, double zz) { return model.act(model.smooth_lift(piece.position(ss)), zz); };
    const auto eta = at(s, z);
    const double base_vertical = model.vertical(eta, model.difference(at(s + h, z), at(s - h, z), 2.0 * h));
    const double fiber_vertical = model.vertical(eta, model.difference(at(s, z + h), at(s, z - h), 2.0 * h));
    return -base_vertical / fiber_vertical;
  };
}

/// |<eta', vertical>| / max(1, |eta'|) at a lift point, with eta' probed by
/// advancing the lift a short step either way along its own fiber rate.
template <Connection C, typename Rate>
double horizontality_residual(const C& model, const Piece& piece, double s, double z, const Rate& rate, double probe) {
  const auto at = [&](double ss, double zz) { return model.act(model.smooth_lift(piece.position(ss)), zz); };
  const double zp = rk4_step(rate, s, z, probe);
  const double zm = rk4_step(rate, s, z, -probe);
  const auto eta = at(s, z);
  const auto velocity = model.difference(at(s + probe, zp), at(s - probe, zm), 2.0 * probe);
  return std::abs(model.vertical(eta, velocity)) / std::max(1.0, model.speed(eta, velocity));
}

/// Integrates the lift piece by piece with RK4, halving the step on a piece
/// while its horizontality residual exceeds the acceptance threshold.
template <Connection C, typename RateFactory>
LiftTrace<typename C::element_type> integrate_lift(const C& model, const ChartCurve& curve, int N,
                                                   RateFactory&& make_rate, const LiftOptions& opt = {}) {
  const auto pieces = curve.pieces();
  const int base_steps = curve.steps_per_piece(N);
  const double k = static_cast<double>(pieces.size());

  LiftTrace<typename C::element_type> trace;
  double z = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& piece = pieces[i];
    const auto rate = make_rate(piece);

    std::vector<double> zs;
    std::vector<double> residuals;
    int m = base_steps;
    double worst = 0.0;
    for (int attempt = 0;; ++attempt, m *= 2) {
      zs.assign(1, z);
      residuals.clear();
      const double h = 1.0 / m;
      for (int j = 0; j <= m; ++j) {
        if (j > 0) zs.push_back(rk4_step(rate, (j - 1) * h, zs.back(), h));
        residuals.push_back(horizontality_residual(model, piece, j * h, zs.back(), rate, opt.probe_step));
      }
      worst = *std::max_element(residuals.begin(), residuals.end());
      if (worst <= opt.accept_residual || attempt >= opt.max_halvings) break;
    }
    if (!(worst <= opt.fail_residual)) {
      std::ostringstream msg;
      msg << "horizontal lift failed on piece " << i << ": horizontality residual " << worst
          << " after step halving";
      fail_integration(msg.str());
    }

    const double h = 1.0 / m;
    for (int j = (i == 0 ? 0 : 1); j <= m; ++j) {
      const double s = (j == m) ? 1.0 : j * h;
      const ChartPoint p = piece.position(s);
      const auto eta = model.act(model.smooth_lift(p), zs[j]);
      trace.t.push_back((static_cast<double>(i) + s) / k);
      trace.base.push_back(p);
      trace.fiber.push_back(zs[j]);
      trace.max_projection_residual = std::max(trace.max_projection_residual, model.projection_residual(eta, p));
      trace.lift.push_back(eta);
    }
    trace.max_horizontality_residual = std::max(trace.max_horizontality_residual, worst);
    trace.steps += m;
    z = zs.back();
  }
  return trace;
}

template <Connection C>
LiftTrace<typename C::element_type> lift_closed_form(const C& model, const ChartCurve& curve, int N,
                                                     const LiftOptions& opt = {}) {
  return integrate_lift(model, curve, N, [&model](const Piece& p) { return closed_form_rate(model, p); }, opt);
}

template <Connection C>
LiftTrace<typename C::element_type> lift_generic(const C& model, const ChartCurve& curve, int N,
                                                 const LiftOptions& opt = {}) {
  return integrate_lift(model, curve, N,
                        [&model, h = opt.difference_step](const Piece& p) { return generic_rate(model, p, h); }, opt);
}

/// Horizontal lift in S^1 -> SU(1,1) -> CH^1 from the solved ODE z' = sinh^2(x) y'.
inline LiftTrace<Su11Element> lift_su11_closed_form(const ChartCurve& curve, int N) {
  require_hyperbolic_chart(curve);
  return lift_closed_form(Su11HopfConnection{}, curve, N);
}

/// Horizontal lift in H^{2n+1} over span{v, w} from z' = 2 (x y' - x' y) Im<v, w>.
inline LiftTrace<HeisenbergElement> lift_heisenberg_closed_form(const ChartCurve& curve, const SurfacePlane& plane,
                                                                int N) {
  return lift_closed_form(HeisenbergConnection(plane), curve, N);
}

using AnyLiftTrace = std::variant<LiftTrace<Su11Element>, LiftTrace<HeisenbergElement>, LiftTrace<ProductPoint>>;

inline double displacement(const AnyLiftTrace& t) {
  return std::visit([](const auto& tr) { return tr.displacement(); }, t);
}

/// Dispatches on the bundle: complex lines of CH^n reduce to the SU(1,1)
/// chart, totally real planes to the flat product bundle.
template <typename Fn>
AnyLiftTrace with_connection(const BundleDescriptor& bundle, const ChartCurve& curve, Fn&& fn) {
  if (bundle.kind == BundleKind::Heisenberg) return AnyLiftTrace(fn(HeisenbergConnection(bundle.surface)));
  require_hyperbolic_chart(curve);
  if (bundle.plane_class.tag == PlaneTag::Complex) return AnyLiftTrace(fn(Su11HopfConnection{}));
  return AnyLiftTrace(fn(ProductConnection{}));
}

inline AnyLiftTrace lift_closed_form(const BundleDescriptor& bundle, const ChartCurve& curve, int N) {
  return with_connection(bundle, curve, [&](const auto& model) { return lift_closed_form(model, curve, N); });
}

inline AnyLiftTrace lift_generic(const BundleDescriptor& bundle, const ChartCurve& curve, int N) {
  return with_connection(bundle, curve, [&](const auto& model) { return lift_generic(model, curve, N); });
}

/// Reduces an angle to (-pi, pi].
inline double reduce_angle(double a) noexcept {
  double r = std::remainder(a, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

enum class HolonomyStatus { ok, inconsistent };

inline std::string_view to_string(HolonomyStatus s) noexcept {
  return s == HolonomyStatus::ok ? "ok" : "INCONSISTENT";
}

struct HolonomyReport {
  BundleKind kind = BundleKind::CpxHyperbolic;
  double measured = 0.0;
  std::optional<double> measured_mod;
  double predicted = 0.0;
  CurveMetrics metrics;
  double residual = 0.0;
  PlaneClass plane_class;
  double lambda_or_e = 0.0;
  int steps = 0;
  LiftMethod method = LiftMethod::both;
  std::optional<double> generic_measured;
  double max_horizontality_residual = 0.0;
  HolonomyStatus status = HolonomyStatus::ok;
};

/// Signed enclosed area and length in the metric of the bundle's base.
inline CurveMetrics curve_metrics(const BundleDescriptor& bundle, const ChartCurve& curve, int N) {
  if (bundle.kind == BundleKind::Heisenberg)
    return {euclidean_area(curve, N), curve_length(curve, N, ChartMetric::Euclidean)};
  return {hyperbolic_area(curve, N), curve_length(curve, N, ChartMetric::Hyperbolic)};
}

/// Lift, measure, and compare with lambda * area.
inline HolonomyReport holonomy(const BundleDescriptor& bundle, const ChartCurve& curve, int N = kDefaultSteps,
                               LiftMethod method = LiftMethod::both, AnyLiftTrace* trace_out = nullptr) {
  HolonomyReport r;
  r.kind = bundle.kind;
  r.plane_class = bundle.plane_class;
  r.lambda_or_e = bundle.lambda;
  r.method = method;
  r.metrics = curve_metrics(bundle, curve, N);

  const auto stats = [&r](const AnyLiftTrace& t) {
    std::visit(
        [&r](const auto& tr) {
          r.steps = std::max(r.steps, tr.steps);
          r.max_horizontality_residual = std::max(r.max_horizontality_residual, tr.max_horizontality_residual);
        },
        t);
  };

  if (method == LiftMethod::generic) {
    AnyLiftTrace g = lift_generic(bundle, curve, N);
    stats(g);
    r.measured = displacement(g);
    r.generic_measured = r.measured;
    if (trace_out) *trace_out = std::move(g);
  } else {
    AnyLiftTrace c = lift_closed_form(bundle, curve, N);
    stats(c);
    r.measured = displacement(c);
    if (method == LiftMethod::both) {
      const AnyLiftTrace g = lift_generic(bundle, curve, N);
      stats(g);
      r.generic_measured = displacement(g);
      if (!(std::abs(*r.generic_measured - r.measured) <= kConsistencyTolerance))
        r.status = HolonomyStatus::inconsistent;
    }
    if (trace_out) *trace_out = std::move(c);
  }

  r.predicted = bundle.lambda * r.metrics.area;
  r.residual = std::abs(r.measured - r.predicted);
  if (bundle.kind == BundleKind::CpxHyperbolic) r.measured_mod = reduce_angle(r.measured);
  return r;
}

/// Lattice or translation generating the flat Hopf torus / Hopf cylinder.
struct FlatModel {
  BundleKind kind = BundleKind::CpxHyperbolic;
  /// Torus: {(2 pi, 0), (lambda A, L/2)}. Cylinder: {(e A, L)}.
  std::vector<ChartPoint> generators;
  double area = 0.0;
  double length = 0.0;
};

inline FlatModel hopf_torus(double lambda, double area, double length) {
  if (!(length > 0.0)) fail_validation("flat_model: curve has zero length");
  return {BundleKind::CpxHyperbolic, {{2.0 * std::numbers::pi, 0.0}, {lambda * area, 0.5 * length}}, area, length};
}

inline FlatModel hopf_cylinder(double euler_coefficient, double area, double length) {
  if (!(length > 0.0)) fail_validation("flat_model: curve has zero length");
  return {BundleKind::Heisenberg, {{euler_coefficient * area, length}}, area, length};
}

inline FlatModel flat_model(const BundleDescriptor& bundle, const ChartCurve& curve, int N = kDefaultSteps) {
  const CurveMetrics m = curve_metrics(bundle, curve, N);
  if (!(m.length > 1e-14)) fail_validation("flat_model: curve has zero length");
  if (bundle.kind == BundleKind::Heisenberg) return hopf_cylinder(bundle.euler_coefficient, m.area, m.length);
  return hopf_torus(bundle.lambda, m.area, m.length);
}

}  // namespace hopf
