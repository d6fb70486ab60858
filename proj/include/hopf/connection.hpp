#pragma once

// Principal connections over a 2-D chart, presented uniformly so one lift
// integrator serves every bundle. A model supplies
//   - a smooth (not necessarily horizontal) lift of chart points,
//   - the right action of the fiber coordinate z,
//   - the vertical component <X, (l_g)_* e_vert> of tangent vectors,
//   - the solved fiber ODE dz/ds as a function of the base velocity.

#include <cmath>
#include <concepts>
#include <numbers>

#include "hopf/bundle.hpp"
#include "hopf/curves.hpp"
#include "hopf/heisenberg.hpp"
#include "hopf/su11.hpp"

namespace hopf {

template <typename C>
concept Connection = requires(const C& c, const typename C::element_type& g, const typename C::tangent_type& x,
                              ChartPoint p, double z) {
  { c.smooth_lift(p) } -> std::same_as<typename C::element_type>;
  { c.act(g, z) } -> std::same_as<typename C::element_type>;
  { c.difference(g, g, z) } -> std::same_as<typename C::tangent_type>;
  { c.vertical(g, x) } -> std::convertible_to<double>;
  { c.speed(g, x) } -> std::convertible_to<double>;
  { c.closed_form_rate(p, p) } -> std::convertible_to<double>;
  { c.projection_residual(g, p) } -> std::convertible_to<double>;
};

/// S^1 -> SU(1,1) -> CH^1. Smooth lift through T, fiber action by right
/// multiplication with diag(e^{iz}, e^{-iz}), vertical direction e3.
struct Su11HopfConnection {
  using element_type = Su11Element;
  using tangent_type = Su11Tangent;

  Su11Element smooth_lift(ChartPoint p) const noexcept { return Su11Element::hyperbolic(p.x, p.y); }

  Su11Element act(const Su11Element& g, double z) const noexcept {
    return Su11Element::unchecked(quat_mul(g.coordinates(), Su11Element::circle(z).coordinates()));
  }

  Su11Tangent difference(const Su11Element& a, const Su11Element& b, double denom) const noexcept {
    Su11Tangent d;
    for (int k = 0; k < 4; ++k) d[k] = (a.coordinates()[k] - b.coordinates()[k]) / denom;
    return d;
  }

  double vertical(const Su11Element& g, const Su11Tangent& x) const {
    return left_invariant_inner(g, x, push_forward(g, Su11Algebra{0.0, 0.0, 1.0}));
  }

  double speed(const Su11Element& g, const Su11Tangent& x) const {
    return std::sqrt(std::max(0.0, left_invariant_inner(g, x, x)));
  }

  /// z' = sinh^2(x) y'.
  double closed_form_rate(ChartPoint p, ChartPoint d) const noexcept {
    const double s = std::sinh(p.x);
    return s * s * d.y;
  }

  double projection_residual(const Su11Element& g, ChartPoint p) const noexcept {
    const CH1Point got = project_su11(g);
    const CH1Point want = CH1Point::from_chart(p.x, p.y);
    const double scale = std::max(1.0, want.X);
    return std::max({std::abs(got.X - want.X), std::abs(got.Y - want.Y), std::abs(got.Z - want.Z)}) / scale;
  }
};

/// R -> H^{2n+1} -> C^n restricted to the plane span{v, w}: chart point
/// (x, y) sits at x v + y w, the fiber acts by central translation.
class HeisenbergConnection {
 public:
  using element_type = HeisenbergElement;
  using tangent_type = HeisenbergTangent;

  explicit HeisenbergConnection(SurfacePlane plane)
      : plane_(std::move(plane)), pairing_(plane_.imaginary_pairing()), center_(HeisenbergAlgebra::basis(plane_.n(), 2 * plane_.n() + 1)) {}

  const SurfacePlane& plane() const noexcept { return plane_; }

  HeisenbergElement smooth_lift(ChartPoint p) const { return {0.0, plane_.at(p.x, p.y)}; }

  HeisenbergElement act(const HeisenbergElement& g, double z) const {
    return heis_mul(g, HeisenbergElement{z, ComplexVector(g.n())});
  }

  HeisenbergTangent difference(const HeisenbergElement& a, const HeisenbergElement& b, double denom) const {
    return {(a.s - b.s) / denom, (1.0 / denom) * (a.z - b.z)};
  }

  double vertical(const HeisenbergElement& g, const HeisenbergTangent& x) const {
    return left_invariant_inner(g, x, push_forward(g, center_));
  }

  double speed(const HeisenbergElement& g, const HeisenbergTangent& x) const {
    return std::sqrt(std::max(0.0, left_invariant_inner(g, x, x)));
  }

  /// z' = 2 (x y' - x' y) Im<v, w>.
  double closed_form_rate(ChartPoint p, ChartPoint d) const noexcept {
    return 2.0 * (p.x * d.y - d.x * p.y) * pairing_;
  }

  double projection_residual(const HeisenbergElement& g, ChartPoint p) const { return norm(g.z - plane_.at(p.x, p.y)); }

 private:
  SurfacePlane plane_;
  double pairing_;
  HeisenbergAlgebra center_;
};

/// Point of the product bundle S^1 x CH^1 in chart coordinates.
struct ProductPoint {
  ChartPoint base;
  double fiber = 0.0;
};

struct ProductTangent {
  double dx = 0.0, dy = 0.0, dfiber = 0.0;
};

/// Flat connection on S^1 x CH^1: the pullback over a totally real
/// totally geodesic surface. Horizontal means the fiber coordinate is frozen.
struct ProductConnection {
  using element_type = ProductPoint;
  using tangent_type = ProductTangent;

  ProductPoint smooth_lift(ChartPoint p) const noexcept { return {p, 0.0}; }
  ProductPoint act(const ProductPoint& g, double z) const noexcept { return {g.base, g.fiber + z}; }
  ProductTangent difference(const ProductPoint& a, const ProductPoint& b, double denom) const noexcept {
    return {(a.base.x - b.base.x) / denom, (a.base.y - b.base.y) / denom, (a.fiber - b.fiber) / denom};
  }
  double vertical(const ProductPoint&, const ProductTangent& x) const noexcept { return x.dfiber; }
  double speed(const ProductPoint& g, const ProductTangent& x) const noexcept {
    // Base carries the lifted chart metric (half the CH^1 lengths).
    return std::sqrt(x.dx * x.dx + 0.25 * std::pow(std::sinh(2.0 * g.base.x) * x.dy, 2) + x.dfiber * x.dfiber);
  }
  double closed_form_rate(ChartPoint, ChartPoint) const noexcept { return 0.0; }
  double projection_residual(const ProductPoint& g, ChartPoint p) const noexcept { return distance(g.base, p); }
};

static_assert(Connection<Su11HopfConnection>);
static_assert(Connection<HeisenbergConnection>);
static_assert(Connection<ProductConnection>);

}  // namespace hopf
