#pragma once

// SU(1,1) as unit split quaternions w1 + w2 i + w3 j + w4 k with
// w1^2 + w2^2 - w3^2 - w4^2 = 1, realized as real 4x4 matrices.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "hopf/error.hpp"
#include "hopf/matrix.hpp"

namespace hopf {

inline constexpr double kSu11ConstraintTolerance = 1e-9;

/// Split-quaternion coordinates. Unconstrained; used for tangent vectors and
/// Lie algebra elements as well as for group elements.
using Quaternion = std::array<double, 4>;

constexpr Quaternion quat_mul(const Quaternion& a, const Quaternion& b) noexcept {
  return {a[0] * b[0] - a[1] * b[1] + a[2] * b[2] + a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] - a[2] * b[3] + a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

/// The quadratic form w1^2 + w2^2 - w3^2 - w4^2.
constexpr double norm_form(const Quaternion& w) noexcept {
  return w[0] * w[0] + w[1] * w[1] - w[2] * w[2] - w[3] * w[3];
}

/// The 4x4 realization; linear in the coordinates and multiplicative.
constexpr Matrix4 realize(const Quaternion& w) noexcept {
  const auto [w1, w2, w3, w4] = w;
  Matrix4 m;
  m.a = {w1, w2, w3, w4,     //
         -w2, w1, -w4, w3,   //
         w3, -w4, w1, -w2,   //
         w4, w3, w2, w1};
  return m;
}

class Su11Element {
 public:
  constexpr Su11Element() noexcept : w_{1.0, 0.0, 0.0, 0.0} {}

  /// Rejects coordinates off the pseudo-sphere.
  explicit Su11Element(const Quaternion& w) : w_(w) {
    const double residual = std::abs(norm_form(w) - 1.0);
    if (!(residual <= kSu11ConstraintTolerance))
      fail_validation("Su11Element: w1^2+w2^2-w3^2-w4^2 deviates from 1 by " + std::to_string(residual));
  }
  Su11Element(double w1, double w2, double w3, double w4) : Su11Element(Quaternion{w1, w2, w3, w4}) {}

  static constexpr Su11Element identity() noexcept { return {}; }

  /// The fiber element diag(e^{iz}, e^{-iz}).
  static Su11Element circle(double z) noexcept { return unchecked({std::cos(z), -std::sin(z), 0.0, 0.0}); }

  /// [[cosh x, sinh x e^{-iy}], [sinh x e^{iy}, cosh x]] = exp(x (cos y e1 + sin y e2)).
  static Su11Element hyperbolic(double x, double y) noexcept {
    const double s = std::sinh(x);
    return unchecked({std::cosh(x), 0.0, s * std::cos(y), s * std::sin(y)});
  }

  static constexpr Su11Element unchecked(const Quaternion& w) noexcept {
    Su11Element e;
    e.w_ = w;
    return e;
  }

  constexpr const Quaternion& coordinates() const noexcept { return w_; }
  constexpr double w1() const noexcept { return w_[0]; }
  constexpr double w2() const noexcept { return w_[1]; }
  constexpr double w3() const noexcept { return w_[2]; }
  constexpr double w4() const noexcept { return w_[3]; }

  constexpr double constraint_residual() const noexcept { return norm_form(w_) - 1.0; }
  constexpr Matrix4 realization() const noexcept { return realize(w_); }

  constexpr Su11Element inverse() const noexcept { return unchecked({w_[0], -w_[1], -w_[2], -w_[3]}); }

  /// Divides by sqrt|form|; pulls a drifted product back onto the pseudo-sphere.
  Su11Element renormalized() const noexcept {
    const double s = 1.0 / std::sqrt(std::abs(norm_form(w_)));
    return unchecked({w_[0] * s, w_[1] * s, w_[2] * s, w_[3] * s});
  }

  friend constexpr bool operator==(const Su11Element&, const Su11Element&) = default;

 private:
  Quaternion w_;
};

namespace detail {
inline void require_on_pseudo_sphere(const Su11Element& e, const char* who) {
  const double r = std::abs(e.constraint_residual());
  if (!(r <= kSu11ConstraintTolerance))
    fail_validation(std::string(who) + ": input violates the SU(1,1) constraint by " + std::to_string(r));
}
}  // namespace detail

inline Su11Element su11_mul(const Su11Element& a, const Su11Element& b) {
  detail::require_on_pseudo_sphere(a, "su11_mul");
  detail::require_on_pseudo_sphere(b, "su11_mul");
  return Su11Element::unchecked(quat_mul(a.coordinates(), b.coordinates()));
}

/// Replaces w2 by -w2. An involution that reverses products.
constexpr Su11Element i_conjugate(const Su11Element& w) noexcept {
  return Su11Element::unchecked({w.w1(), -w.w2(), w.w3(), w.w4()});
}

/// Running product with re-normalization every `period` compositions.
class Su11Accumulator {
 public:
  static constexpr int kDefaultPeriod = 64;

  explicit Su11Accumulator(int period = kDefaultPeriod) : period_(period) {}

  const Su11Element& value() const noexcept { return value_; }

  void compose(const Su11Element& right) {
    value_ = su11_mul(value_, right);
    if (period_ > 0 && ++count_ % period_ == 0) value_ = value_.renormalized();
  }

 private:
  Su11Element value_;
  int period_;
  long count_ = 0;
};

// Lie algebra su(1,1) with orthonormal basis e1, e2, e3.
//   e1 <-> j, e2 <-> k, e3 <-> i in split-quaternion coordinates.

struct Su11Algebra {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  constexpr Quaternion coordinates() const noexcept { return {0.0, c3, c1, c2}; }
  constexpr Matrix4 matrix() const noexcept { return realize(coordinates()); }

  static constexpr Su11Algebra from_coordinates(const Quaternion& q) noexcept { return {q[2], q[3], q[1]}; }

  friend constexpr Su11Algebra operator+(Su11Algebra a, Su11Algebra b) noexcept {
    return {a.c1 + b.c1, a.c2 + b.c2, a.c3 + b.c3};
  }
  friend constexpr Su11Algebra operator*(double s, Su11Algebra a) noexcept { return {s * a.c1, s * a.c2, s * a.c3}; }
  friend constexpr bool operator==(const Su11Algebra&, const Su11Algebra&) = default;
};

/// Basis matrix e_k, k in {1, 2, 3}.
inline Matrix4 su11_basis(int k) {
  switch (k) {
    case 1: return Su11Algebra{1.0, 0.0, 0.0}.matrix();
    case 2: return Su11Algebra{0.0, 1.0, 0.0}.matrix();
    case 3: return Su11Algebra{0.0, 0.0, 1.0}.matrix();
    default: fail_validation("su11_basis: index must be 1, 2 or 3");
  }
}

/// Expands a 4x4 matrix in e1, e2, e3 (Frobenius projection; <e_i, e_j>_F = 4 delta_ij).
/// Returns the coefficients and the max-entry residual of the expansion.
inline std::pair<Su11Algebra, double> su11_expand(const Matrix4& m) {
  double c[3];
  for (int k = 0; k < 3; ++k) {
    const Matrix4 e = su11_basis(k + 1);
    double dot = 0.0;
    for (std::size_t i = 0; i < 16; ++i) dot += m.a[i] * e.a[i];
    c[k] = dot / 4.0;
  }
  const Su11Algebra coeffs{c[0], c[1], c[2]};
  return {coeffs, max_abs_diff(m, coeffs.matrix())};
}

inline Su11Algebra su11_bracket(const Su11Algebra& a, const Su11Algebra& b) {
  const Matrix4 c = commutator(a.matrix(), b.matrix());
  const auto [coeffs, residual] = su11_expand(c);
  if (residual > 1e-12 * std::max(1.0, max_abs(c)))
    fail_integration("su11_bracket: commutator left the algebra (residual " + std::to_string(residual) + ")");
  return coeffs;
}

/// Tangent vector at `base`, in split-quaternion coordinates.
using Su11Tangent = Quaternion;

/// (l_{g^-1})_* X as an algebra element. Validates that X is tangent at g.
inline Su11Algebra left_translate_to_identity(const Su11Element& base, const Su11Tangent& x) {
  const auto& g = base.coordinates();
  // Tangency: the polarized form <g, X> = g1X1 + g2X2 - g3X3 - g4X4 vanishes.
  const double polar = g[0] * x[0] + g[1] * x[1] - g[2] * x[2] - g[3] * x[3];
  double gn = 0.0, xn = 0.0;
  for (int k = 0; k < 4; ++k) {
    gn += g[k] * g[k];
    xn += x[k] * x[k];
  }
  if (std::abs(polar) > 1e-6 * std::sqrt(gn * xn) + 1e-12)
    fail_validation("left_invariant_inner: vector is not tangent to SU(1,1) at the base point");
  return Su11Algebra::from_coordinates(quat_mul(base.inverse().coordinates(), x));
}

/// (l_g)_* X for an algebra element X.
inline Su11Tangent push_forward(const Su11Element& base, const Su11Algebra& x) noexcept {
  return quat_mul(base.coordinates(), x.coordinates());
}

inline double algebra_inner(const Su11Algebra& x, const Su11Algebra& y) noexcept {
  return x.c1 * y.c1 + x.c2 * y.c2 + x.c3 * y.c3;
}

/// Left-invariant metric for which e1, e2, e3 are orthonormal at the identity.
inline double left_invariant_inner(const Su11Element& base, const Su11Tangent& x, const Su11Tangent& y) {
  return algebra_inner(left_translate_to_identity(base, x), left_translate_to_identity(base, y));
}

}  // namespace hopf
