#pragma once

// Bundle projections and the classification of 2-planes in m = C^n that
// span complete totally geodesic surfaces in CH^n.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>

#include "hopf/complex_vector.hpp"
#include "hopf/error.hpp"
#include "hopf/matrix.hpp"
#include "hopf/su11.hpp"

namespace hopf {

/// Point of CH^1 on the hyperboloid X^2 - Y^2 - Z^2 = 1, X > 0.
struct CH1Point {
  double X = 1.0;
  double Y = 0.0;
  double Z = 0.0;

  double constraint_residual() const noexcept { return X * X - Y * Y - Z * Z - 1.0; }

  /// The symmetric 4x4 matrix [[X,0,Y,Z],[0,X,-Z,Y],[Y,-Z,X,0],[Z,Y,0,X]].
  Matrix4 realization() const noexcept { return realize({X, 0.0, Y, Z}); }

  /// Image of the chart point (x, y) under r(x, y) = (cosh 2x, sinh 2x cos y, sinh 2x sin y).
  static CH1Point from_chart(double x, double y) noexcept {
    const double s = std::sinh(2.0 * x);
    return {std::cosh(2.0 * x), s * std::cos(y), s * std::sin(y)};
  }

  friend bool operator==(const CH1Point&, const CH1Point&) = default;
};

/// p(w) = w w~.
inline CH1Point project_su11(const Su11Element& w) noexcept {
  const auto [w1, w2, w3, w4] = w.coordinates();
  return {w1 * w1 + w2 * w2 + w3 * w3 + w4 * w4, 2.0 * (w1 * w3 - w2 * w4), 2.0 * (w2 * w3 + w1 * w4)};
}

/// Max-entry residual of p(wv) - w p(v) w~ in the 4x4 realization.
inline double equivariance_check(const Su11Element& w, const Su11Element& v) {
  const Matrix4 lhs = project_su11(su11_mul(w, v)).realization();
  const Matrix4 rhs = mat_mul(mat_mul(w.realization(), project_su11(v).realization()), i_conjugate(w).realization());
  return max_abs_diff(lhs, rhs);
}

/// [[v, w], v] for v, w in m = C^n, in closed form:
///   Re<v,w> v - |v|^2 w - 3 Im<v,w> (i v).
inline ComplexVector triple_bracket(const ComplexVector& v, const ComplexVector& w) {
  if (v.size() != w.size()) fail_validation("triple_bracket: dimension mismatch");
  double re = 0.0, sq = 0.0, im = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double x = v[k].real(), y = v[k].imag();
    const double a = w[k].real(), b = w[k].imag();
    re += x * a + y * b;
    sq += x * x + y * y;
    im += x * b - y * a;
  }
  return re * v - sq * w - (3.0 * im) * times_i(v);
}

inline constexpr double kOrthonormalTolerance = 1e-10;
inline constexpr double kPairingTolerance = 1e-9;
inline constexpr double kSpanResidualTolerance = 1e-8;
inline constexpr double kDependenceTolerance = 1e-12;

/// Real 2-plane span{v, w} in C^n with v, w orthonormal over R.
class SurfacePlane {
 public:
  /// Accepts an already orthonormal pair; anything else is rejected.
  static SurfacePlane orthonormal(ComplexVector v, ComplexVector w) {
    check_dimensions(v, w);
    const double nv = norm(v), nw = norm(w), re = real_inner(v, w);
    if (std::abs(nv - 1.0) > kOrthonormalTolerance || std::abs(nw - 1.0) > kOrthonormalTolerance ||
        std::abs(re) > kOrthonormalTolerance) {
      std::ostringstream msg;
      msg << "SurfacePlane: basis is not orthonormal (|v| = " << nv << ", |w| = " << nw << ", Re<v,w> = " << re
          << ")";
      fail_validation(msg.str());
    }
    return SurfacePlane(std::move(v), std::move(w));
  }

  /// Gram-Schmidt over R (C^n read as R^{2n}); rejects dependent pairs.
  static SurfacePlane from_basis(const ComplexVector& v, const ComplexVector& w) {
    check_dimensions(v, w);
    const double nv = norm(v);
    if (nv < kDependenceTolerance) fail_validation("SurfacePlane: first basis vector is zero");
    ComplexVector e1 = (1.0 / nv) * v;
    ComplexVector r = w - real_inner(e1, w) * e1;
    // Second pass keeps the pair orthogonal to round-off.
    r = r - real_inner(e1, r) * e1;
    const double nr = norm(r);
    if (nr < kDependenceTolerance) fail_validation("SurfacePlane: basis vectors are linearly dependent over R");
    return SurfacePlane(std::move(e1), (1.0 / nr) * r);
  }

  std::size_t n() const noexcept { return v_.size(); }
  const ComplexVector& v() const noexcept { return v_; }
  const ComplexVector& w() const noexcept { return w_; }

  /// Im<v, w>; depends only on the oriented plane, not on the chosen basis.
  double imaginary_pairing() const { return hermitian(v_, w_).imag(); }

  /// Point x v + y w of the plane.
  ComplexVector at(double x, double y) const { return x * v_ + y * w_; }

 private:
  SurfacePlane(ComplexVector v, ComplexVector w) : v_(std::move(v)), w_(std::move(w)) {}

  static void check_dimensions(const ComplexVector& v, const ComplexVector& w) {
    if (v.size() == 0) fail_validation("SurfacePlane: dimension must be positive");
    if (v.size() != w.size()) fail_validation("SurfacePlane: v and w have different dimensions");
  }

  ComplexVector v_;
  ComplexVector w_;
};

enum class PlaneTag { Complex, TotallyReal, NotTotallyGeodesic };

inline std::string_view to_string(PlaneTag t) noexcept {
  switch (t) {
    case PlaneTag::Complex: return "Complex";
    case PlaneTag::TotallyReal: return "TotallyReal";
    case PlaneTag::NotTotallyGeodesic: return "NotTotallyGeodesic";
  }
  return "?";
}

struct PlaneClass {
  PlaneTag tag = PlaneTag::NotTotallyGeodesic;
  double imaginary_pairing = 0.0;
};

/// Distance from x to span{v, w} (v, w orthonormal over R).
inline double distance_to_plane(const SurfacePlane& plane, const ComplexVector& x) {
  const ComplexVector r = x - real_inner(plane.v(), x) * plane.v() - real_inner(plane.w(), x) * plane.w();
  return norm(r);
}

/// Largest distance of [[v,w],v] and [[w,v],w] from the plane; zero iff the
/// plane is closed under the double bracket.
inline double bracket_closure_residual(const SurfacePlane& plane) {
  return std::max(distance_to_plane(plane, triple_bracket(plane.v(), plane.w())),
                  distance_to_plane(plane, triple_bracket(plane.w(), plane.v())));
}

inline PlaneClass classify_plane(const SurfacePlane& plane) {
  const double im = plane.imaginary_pairing();
  if (std::abs(im) <= kPairingTolerance) return {PlaneTag::TotallyReal, im};
  if (std::abs(std::abs(im) - 1.0) <= kPairingTolerance) return {PlaneTag::Complex, im};
  if (bracket_closure_residual(plane) <= kSpanResidualTolerance)
    return {std::abs(im) < 0.5 ? PlaneTag::TotallyReal : PlaneTag::Complex, im};
  return {PlaneTag::NotTotallyGeodesic, im};
}

enum class BundleKind { CpxHyperbolic, Heisenberg };

inline std::string_view to_string(BundleKind k) noexcept {
  return k == BundleKind::CpxHyperbolic ? "CpxHyperbolic" : "Heisenberg";
}

/// Pullback of a bundle to the surface spanned by a plane.
///   CpxHyperbolic: lambda = 1/2 on complex lines, 0 on totally real planes.
///   Heisenberg:    lambda = euler_coefficient = 4 Im<v, w>.
struct BundleDescriptor {
  BundleKind kind;
  std::size_t n;
  SurfacePlane surface;
  PlaneClass plane_class;
  double lambda;
  double euler_coefficient;
};

inline BundleDescriptor descriptor(BundleKind kind, std::size_t n, const SurfacePlane& plane) {
  if (plane.n() != n)
    fail_validation("descriptor: plane lives in C^" + std::to_string(plane.n()) + ", expected C^" + std::to_string(n));
  const PlaneClass cls = classify_plane(plane);
  if (kind == BundleKind::Heisenberg) {
    const double e = 4.0 * cls.imaginary_pairing;
    return {kind, n, plane, cls, e, e};
  }
  switch (cls.tag) {
    case PlaneTag::Complex: return {kind, n, plane, cls, 0.5, 0.0};
    case PlaneTag::TotallyReal: return {kind, n, plane, cls, 0.0, 0.0};
    case PlaneTag::NotTotallyGeodesic: break;
  }
  std::ostringstream msg;
  msg << "surface plane is NotTotallyGeodesic in CH^" << n
      << ": span{v,w} is neither J-invariant (|Im<v,w>| = 1) nor totally real (Im<v,w> = 0); Im<v,w> = "
      << cls.imaginary_pairing << ", [[v,w],v] leaves the plane by " << bracket_closure_residual(plane);
  fail_validation(msg.str());
}

}  // namespace hopf
