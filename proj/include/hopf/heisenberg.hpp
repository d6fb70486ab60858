#pragma once

// Complex Heisenberg group H^{2n+1} = R x C^n with
//   (s, z)(t, z') = (s + t + 2 Im<z, z'>, z + z'),
// its affine representation in GL(2n+2, R), and the left-invariant metric
// making e_1, ..., e_{2n+1} orthonormal.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hopf/complex_vector.hpp"
#include "hopf/error.hpp"
#include "hopf/matrix.hpp"

namespace hopf {

struct HeisenbergElement {
  double s = 0.0;
  ComplexVector z;

  std::size_t n() const noexcept { return z.size(); }

  static HeisenbergElement identity(std::size_t n) { return {0.0, ComplexVector(n)}; }

  HeisenbergElement inverse() const { return {-s, -z}; }

  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

inline HeisenbergElement heis_mul(const HeisenbergElement& g, const HeisenbergElement& h) {
  if (g.n() != h.n()) fail_validation("heis_mul: dimension mismatch");
  return {g.s + h.s + 2.0 * hermitian(g.z, h.z).imag(), g.z + h.z};
}

/// First row (1, -2y_1, 2x_1, ..., -2y_n, 2x_n, s), unit diagonal, last
/// column (s, x_1, y_1, ..., x_n, y_n, 1).
inline RealMatrix heis_affine_rep(const HeisenbergElement& g) {
  const std::size_t n = g.n();
  const std::size_t last = 2 * n + 1;
  RealMatrix m = RealMatrix::identity(2 * n + 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = g.z[k].real(), y = g.z[k].imag();
    m(0, 2 * k + 1) = -2.0 * y;
    m(0, 2 * k + 2) = 2.0 * x;
    m(2 * k + 1, last) = x;
    m(2 * k + 2, last) = y;
  }
  m(0, last) = g.s;
  return m;
}

/// Coefficients c_1 .. c_{2n+1}; c_{2k-1}, c_{2k} move Re z_k, Im z_k and
/// c_{2n+1} is central.
class HeisenbergAlgebra {
 public:
  explicit HeisenbergAlgebra(std::size_t n) : c_(2 * n + 1, 0.0) {}
  explicit HeisenbergAlgebra(std::vector<double> c) : c_(std::move(c)) {
    if (c_.size() % 2 != 1) fail_validation("HeisenbergAlgebra: expected 2n+1 coefficients");
  }
  HeisenbergAlgebra(double central, const ComplexVector& planar) : c_(2 * planar.size() + 1, 0.0) {
    for (std::size_t k = 0; k < planar.size(); ++k) {
      c_[2 * k] = planar[k].real();
      c_[2 * k + 1] = planar[k].imag();
    }
    c_.back() = central;
  }

  /// Basis vector e_k, 1-based as in the usual numbering.
  static HeisenbergAlgebra basis(std::size_t n, std::size_t k) {
    if (k < 1 || k > 2 * n + 1) fail_validation("HeisenbergAlgebra::basis: index out of range");
    HeisenbergAlgebra a(n);
    a.c_[k - 1] = 1.0;
    return a;
  }

  std::size_t n() const noexcept { return (c_.size() - 1) / 2; }
  double operator[](std::size_t i) const { return c_[i]; }
  double coefficient(std::size_t k) const { return c_.at(k - 1); }
  double central() const noexcept { return c_.back(); }
  const std::vector<double>& coefficients() const noexcept { return c_; }

  ComplexVector planar() const {
    ComplexVector z(n());
    for (std::size_t k = 0; k < n(); ++k) z[k] = Complex(c_[2 * k], c_[2 * k + 1]);
    return z;
  }

  /// Derivative of the affine representation at the identity.
  RealMatrix matrix() const {
    const std::size_t m = n();
    const std::size_t last = 2 * m + 1;
    RealMatrix a(2 * m + 2, 2 * m + 2);
    for (std::size_t k = 0; k < m; ++k) {
      a(0, 2 * k + 1) = -2.0 * c_[2 * k + 1];
      a(0, 2 * k + 2) = 2.0 * c_[2 * k];
      a(2 * k + 1, last) = c_[2 * k];
      a(2 * k + 2, last) = c_[2 * k + 1];
    }
    a(0, last) = central();
    return a;
  }

  /// Reads coefficients back off an algebra matrix; returns the off-pattern residual too.
  static std::pair<HeisenbergAlgebra, double> expand(const RealMatrix& m) {
    if (!m.square() || m.rows() % 2 != 0 || m.rows() < 4)
      fail_validation("HeisenbergAlgebra::expand: expected a (2n+2)x(2n+2) matrix");
    const std::size_t n = m.rows() / 2 - 1;
    const std::size_t last = 2 * n + 1;
    HeisenbergAlgebra a(n);
    for (std::size_t k = 0; k < n; ++k) {
      a.c_[2 * k] = m(2 * k + 1, last);
      a.c_[2 * k + 1] = m(2 * k + 2, last);
    }
    a.c_.back() = m(0, last);
    return {a, max_abs_diff(m, a.matrix())};
  }

  friend HeisenbergAlgebra operator+(HeisenbergAlgebra a, const HeisenbergAlgebra& b) {
    a.require_same_n(b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend HeisenbergAlgebra operator*(double s, HeisenbergAlgebra a) {
    for (auto& x : a.c_) x *= s;
    return a;
  }
  friend bool operator==(const HeisenbergAlgebra&, const HeisenbergAlgebra&) = default;

  void require_same_n(const HeisenbergAlgebra& b) const {
    if (b.c_.size() != c_.size()) fail_validation("Heisenberg algebra dimension mismatch");
  }

 private:
  std::vector<double> c_;
};

/// [a, b] = 4 Im<a_planar, b_planar> e_{2n+1}; nothing else survives.
inline HeisenbergAlgebra heis_bracket(const HeisenbergAlgebra& a, const HeisenbergAlgebra& b) {
  a.require_same_n(b);
  const double c = 4.0 * hermitian(a.planar(), b.planar()).imag();
  return HeisenbergAlgebra(c, ComplexVector(a.n()));
}

/// Tangent vector at a base point, in (s, z) coordinates.
struct HeisenbergTangent {
  double ds = 0.0;
  ComplexVector dz;
};

inline HeisenbergAlgebra left_translate_to_identity(const HeisenbergElement& base, const HeisenbergTangent& x) {
  if (x.dz.size() != base.n()) fail_validation("left_invariant_inner: tangent dimension does not match base");
  return HeisenbergAlgebra(x.ds - 2.0 * hermitian(base.z, x.dz).imag(), x.dz);
}

inline HeisenbergTangent push_forward(const HeisenbergElement& base, const HeisenbergAlgebra& x) {
  if (x.n() != base.n()) fail_validation("push_forward: dimension mismatch");
  const ComplexVector dz = x.planar();
  return {x.central() + 2.0 * hermitian(base.z, dz).imag(), dz};
}

inline double algebra_inner(const HeisenbergAlgebra& x, const HeisenbergAlgebra& y) {
  x.require_same_n(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.coefficients().size(); ++i) s += x[i] * y[i];
  return s;
}

inline double left_invariant_inner(const HeisenbergElement& base, const HeisenbergTangent& x,
                                   const HeisenbergTangent& y) {
  return algebra_inner(left_translate_to_identity(base, x), left_translate_to_identity(base, y));
}

}  // namespace hopf
