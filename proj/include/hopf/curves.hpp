#pragma once

// Closed curves in 2-D chart coordinates and the line integrals over them.
//
// A curve is a sequence of pieces (segments or circular arcs), each
// parametrized over s in [0, 1] with analytic derivatives. All integrals are
// composite Simpson sums per piece, so corners never fall inside a panel.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hopf/error.hpp"

namespace hopf {

struct ChartPoint {
  double x = 0.0;
  double y = 0.0;

  friend ChartPoint operator+(ChartPoint a, ChartPoint b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend ChartPoint operator-(ChartPoint a, ChartPoint b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend ChartPoint operator*(double s, ChartPoint a) noexcept { return {s * a.x, s * a.y}; }
  friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

inline double distance(ChartPoint a, ChartPoint b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

struct Segment {
  ChartPoint from;
  ChartPoint to;
};

struct Arc {
  ChartPoint center;
  double radius = 0.0;
  double theta0 = 0.0;
  double theta1 = 0.0;
};

class Piece {
 public:
  Piece(Segment s) : shape_(s) {}  // NOLINT(google-explicit-constructor)
  Piece(Arc a) : shape_(a) {}      // NOLINT(google-explicit-constructor)

  bool linear() const noexcept { return std::holds_alternative<Segment>(shape_); }

  ChartPoint position(double s) const noexcept {
    if (const auto* seg = std::get_if<Segment>(&shape_)) return seg->from + s * (seg->to - seg->from);
    const auto& a = std::get<Arc>(shape_);
    const double th = a.theta0 + s * (a.theta1 - a.theta0);
    return {a.center.x + a.radius * std::cos(th), a.center.y + a.radius * std::sin(th)};
  }

  /// d/ds of position.
  ChartPoint velocity(double s) const noexcept {
    if (const auto* seg = std::get_if<Segment>(&shape_)) return seg->to - seg->from;
    const auto& a = std::get<Arc>(shape_);
    const double dth = a.theta1 - a.theta0;
    const double th = a.theta0 + s * dth;
    return {-a.radius * dth * std::sin(th), a.radius * dth * std::cos(th)};
  }

  Piece reversed() const noexcept {
    if (const auto* seg = std::get_if<Segment>(&shape_)) return Segment{seg->to, seg->from};
    auto a = std::get<Arc>(shape_);
    std::swap(a.theta0, a.theta1);
    return a;
  }

 private:
  std::variant<Segment, Arc> shape_;
};

enum class Orientation { Positive, Negative };

struct Rectangle {
  double p = 0.0, a = 0.0, q = 0.0, b = 0.0;
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};
struct Circle {
  ChartPoint center;
  double radius = 0.0;
  friend bool operator==(const Circle&, const Circle&) = default;
};
/// Vertex list without the closing repeat.
struct Polygon {
  std::vector<ChartPoint> vertices;
  friend bool operator==(const Polygon&, const Polygon&) = default;
};
/// Closed point list: first and last points coincide.
struct Sampled {
  std::vector<ChartPoint> points;
  friend bool operator==(const Sampled&, const Sampled&) = default;
};

using CurveShape = std::variant<Rectangle, Circle, Polygon, Sampled>;

inline constexpr double kClosureTolerance = 1e-12;

namespace detail {

inline double cross(ChartPoint a, ChartPoint b) noexcept { return a.x * b.y - a.y * b.x; }

inline int orient(ChartPoint a, ChartPoint b, ChartPoint c) noexcept {
  const double v = cross(b - a, c - a);
  return (v > 0) - (v < 0);
}

inline bool on_segment(ChartPoint a, ChartPoint b, ChartPoint p) noexcept {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

/// Closed-segment intersection, touching included.
inline bool segments_intersect(ChartPoint a, ChartPoint b, ChartPoint c, ChartPoint d) noexcept {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace detail

/// True when the closed polygon through `v` has no self-intersections. O(k^2).
inline bool polygon_is_simple(const std::vector<ChartPoint>& v) {
  const std::size_t k = v.size();
  if (k < 3) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const ChartPoint a = v[i], b = v[(i + 1) % k];
    if (a == b) return false;
    // Adjacent edges may share only their common vertex.
    const ChartPoint c = v[(i + 2) % k];
    if (detail::orient(a, b, c) == 0) {
      const ChartPoint d1 = b - a, d2 = c - b;
      if (d1.x * d2.x + d1.y * d2.y < 0) return false;
    }
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      if (detail::segments_intersect(a, b, v[j], v[(j + 1) % k])) return false;
    }
  }
  return true;
}

class ChartCurve {
 public:
  explicit ChartCurve(CurveShape shape, Orientation orientation = Orientation::Positive)
      : shape_(std::move(shape)), orientation_(orientation) {
    if (auto* poly = std::get_if<Polygon>(&shape_); poly && poly->vertices.size() > 1 &&
                                                    poly->vertices.front() == poly->vertices.back())
      poly->vertices.pop_back();
    validate();
  }

  static ChartCurve rectangle(double p, double a, double q, double b, Orientation o = Orientation::Positive) {
    return ChartCurve(Rectangle{p, a, q, b}, o);
  }
  static ChartCurve circle(ChartPoint center, double radius, Orientation o = Orientation::Positive) {
    return ChartCurve(Circle{center, radius}, o);
  }
  static ChartCurve polygon(std::vector<ChartPoint> vertices, Orientation o = Orientation::Positive) {
    return ChartCurve(Polygon{std::move(vertices)}, o);
  }
  static ChartCurve sampled(std::vector<ChartPoint> points, Orientation o = Orientation::Positive) {
    return ChartCurve(Sampled{std::move(points)}, o);
  }

  const CurveShape& shape() const noexcept { return shape_; }
  Orientation orientation() const noexcept { return orientation_; }

  std::string_view kind_name() const noexcept {
    constexpr std::string_view names[] = {"Rectangle", "Circle", "Polygon", "Sampled"};
    return names[shape_.index()];
  }

  bool piecewise_linear() const noexcept { return !std::holds_alternative<Circle>(shape_); }

  ChartCurve reversed() const {
    return ChartCurve(shape_, orientation_ == Orientation::Positive ? Orientation::Negative : Orientation::Positive);
  }

  /// Corner points of a piecewise-linear curve, traversal order, no closing repeat.
  std::vector<ChartPoint> corners() const {
    std::vector<ChartPoint> c;
    if (const auto* r = std::get_if<Rectangle>(&shape_)) {
      // A(p,q) -> B(p+a,q) -> C(p+a,q+b) -> D(p,q+b)
      c = {{r->p, r->q}, {r->p + r->a, r->q}, {r->p + r->a, r->q + r->b}, {r->p, r->q + r->b}};
    } else if (const auto* poly = std::get_if<Polygon>(&shape_)) {
      c = poly->vertices;
    } else if (const auto* smp = std::get_if<Sampled>(&shape_)) {
      c.assign(smp->points.begin(), smp->points.end() - 1);
    }
    if (orientation_ == Orientation::Negative && c.size() > 1) std::reverse(c.begin() + 1, c.end());
    return c;
  }

  /// Oriented pieces, each parametrized over [0, 1].
  std::vector<Piece> pieces() const {
    if (const auto* circ = std::get_if<Circle>(&shape_)) {
      const double turn = orientation_ == Orientation::Positive ? 2.0 * std::numbers::pi : -2.0 * std::numbers::pi;
      return {Piece(Arc{circ->center, circ->radius, 0.0, turn})};
    }
    const auto c = corners();
    std::vector<Piece> out;
    out.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out.emplace_back(Segment{c[i], c[(i + 1) % c.size()]});
    return out;
  }

  /// Integration steps per piece for a total budget of N steps.
  int steps_per_piece(int N) const {
    if (!piecewise_linear()) {
      if (N < 8) fail_validation("smooth curves need N >= 8 steps, got " + std::to_string(N));
      return N;
    }
    if (N < 1) fail_validation("step count must be positive, got " + std::to_string(N));
    const int k = static_cast<int>(corners().size());
    return (N + k - 1) / k;
  }

  /// Smallest x over the curve; lines are extremal at corners, circles at cx - r.
  double min_x() const {
    if (const auto* circ = std::get_if<Circle>(&shape_)) return circ->center.x - circ->radius;
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : corners()) m = std::min(m, p.x);
    return m;
  }

  friend bool operator==(const ChartCurve&, const ChartCurve&) = default;

 private:
  void validate() const {
    if (const auto* r = std::get_if<Rectangle>(&shape_)) {
      if (!(r->a >= 0.0) || !(r->b >= 0.0)) fail_validation("Rectangle: side lengths a, b must be non-negative");
    } else if (const auto* circ = std::get_if<Circle>(&shape_)) {
      if (!(circ->radius >= 0.0)) fail_validation("Circle: radius must be non-negative");
    } else if (const auto* poly = std::get_if<Polygon>(&shape_)) {
      if (poly->vertices.size() < 3) fail_validation("Polygon: need at least 3 vertices");
      if (!polygon_is_simple(poly->vertices)) fail_validation("Polygon: curve is not simple (edges intersect)");
    } else if (const auto* smp = std::get_if<Sampled>(&shape_)) {
      if (smp->points.size() < 3) fail_validation("Sampled: need at least 3 points");
      if (distance(smp->points.front(), smp->points.back()) > kClosureTolerance)
        fail_validation("Sampled: curve is not closed (first and last points differ)");
    }
  }

  CurveShape shape_;
  Orientation orientation_;
};

struct CurveSample {
  double t;
  ChartPoint point;
};

/// N+1 samples uniform in t in [0, 1]; piecewise-linear curves get a whole
/// number of steps per edge so every corner is a sample.
inline std::vector<CurveSample> sample(const ChartCurve& curve, int N) {
  const auto pieces = curve.pieces();
  const int m = curve.steps_per_piece(N);
  const std::size_t total = pieces.size() * static_cast<std::size_t>(m);
  std::vector<CurveSample> out;
  out.reserve(total + 1);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (int j = 0; j < m; ++j) {
      const std::size_t idx = i * static_cast<std::size_t>(m) + static_cast<std::size_t>(j);
      out.push_back({static_cast<double>(idx) / static_cast<double>(total),
                     pieces[i].position(static_cast<double>(j) / m)});
    }
  out.push_back({1.0, out.front().point});
  return out;
}

/// Composite Simpson over each piece of f(position, velocity) ds.
template <typename F>
double integrate_over(const ChartCurve& curve, int N, F&& f) {
  const int m = curve.steps_per_piece(N);
  const double h = 1.0 / m;
  double total = 0.0;
  for (const auto& piece : curve.pieces()) {
    double sum = 0.0;
    double left = f(piece.position(0.0), piece.velocity(0.0));
    for (int j = 0; j < m; ++j) {
      const double s0 = j * h;
      const double sm = s0 + 0.5 * h;
      const double s1 = (j + 1 == m) ? 1.0 : s0 + h;
      const double mid = f(piece.position(sm), piece.velocity(sm));
      const double right = f(piece.position(s1), piece.velocity(s1));
      sum += left + 4.0 * mid + right;
      left = right;
    }
    total += sum * h / 6.0;
  }
  return total;
}

inline void require_hyperbolic_chart(const ChartCurve& curve) {
  const double mx = curve.min_x();
  if (mx < -kClosureTolerance)
    fail_validation("curve leaves the hyperbolic chart: x = " + std::to_string(mx) + " < 0");
}

/// Signed area in CH^1 of the region bounded by the chart curve:
/// the Green integral of 2 sinh^2(x) dy, whose derivative is 2 sinh(2x) dx dy.
inline double hyperbolic_area(const ChartCurve& curve, int N) {
  require_hyperbolic_chart(curve);
  return integrate_over(curve, N, [](ChartPoint p, ChartPoint d) {
    const double s = std::sinh(p.x);
    return 2.0 * s * s * d.y;
  });
}

/// Signed area 1/2 of the integral of (x dy - y dx).
inline double euclidean_area(const ChartCurve& curve, int N) {
  return integrate_over(curve, N, [](ChartPoint p, ChartPoint d) { return 0.5 * (p.x * d.y - p.y * d.x); });
}

enum class ChartMetric { Euclidean, Hyperbolic };

/// Arc length; Hyperbolic uses the induced first fundamental form E = 4, F = 0, G = sinh^2(2x).
inline double curve_length(const ChartCurve& curve, int N, ChartMetric metric) {
  if (metric == ChartMetric::Euclidean)
    return integrate_over(curve, N, [](ChartPoint, ChartPoint d) { return std::hypot(d.x, d.y); });
  require_hyperbolic_chart(curve);
  return integrate_over(curve, N, [](ChartPoint p, ChartPoint d) {
    return std::hypot(2.0 * d.x, std::sinh(2.0 * p.x) * d.y);
  });
}

struct CurveMetrics {
  double area = 0.0;
  double length = 0.0;
};

}  // namespace hopf
