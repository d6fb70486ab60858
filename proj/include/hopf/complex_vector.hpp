#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "hopf/error.hpp"

namespace hopf {

using Complex = std::complex<double>;

/// Vector in C^n; component k is x_k + i y_k.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : c_(n) {}
  ComplexVector(std::initializer_list<Complex> c) : c_(c) {}
  explicit ComplexVector(std::vector<Complex> c) : c_(std::move(c)) {}

  std::size_t size() const noexcept { return c_.size(); }
  Complex& operator[](std::size_t k) { return c_[k]; }
  const Complex& operator[](std::size_t k) const { return c_[k]; }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }

  ComplexVector& operator+=(const ComplexVector& o) {
    require_same_size(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  ComplexVector& operator-=(const ComplexVector& o) {
    require_same_size(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  ComplexVector& operator*=(Complex s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
  friend ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
  friend ComplexVector operator*(Complex s, ComplexVector a) { return a *= s; }
  friend ComplexVector operator*(double s, ComplexVector a) { return a *= Complex(s, 0.0); }
  friend ComplexVector operator-(ComplexVector a) { return a *= Complex(-1.0, 0.0); }
  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

  /// Real coordinates (x_1, y_1, ..., x_n, y_n), i.e. C^n read as R^{2n}.
  std::vector<double> real_coordinates() const {
    std::vector<double> out;
    out.reserve(2 * c_.size());
    for (const auto& z : c_) {
      out.push_back(z.real());
      out.push_back(z.imag());
    }
    return out;
  }

  static ComplexVector from_real_coordinates(const std::vector<double>& r) {
    if (r.size() % 2 != 0) fail_validation("real coordinate list must have even length");
    ComplexVector v(r.size() / 2);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = Complex(r[2 * k], r[2 * k + 1]);
    return v;
  }

 private:
  void require_same_size(const ComplexVector& o) const {
    if (o.size() != c_.size()) fail_validation("complex vector dimension mismatch");
  }

  std::vector<Complex> c_;
};

/// Hermitian pairing <v, w> = sum conj(v_k) w_k.
inline Complex hermitian(const ComplexVector& v, const ComplexVector& w) {
  if (v.size() != w.size()) fail_validation("hermitian pairing: dimension mismatch");
  Complex s{};
  for (std::size_t k = 0; k < v.size(); ++k) s += std::conj(v[k]) * w[k];
  return s;
}

/// Real inner product on C^n = R^{2n}; equals Re<v, w>.
inline double real_inner(const ComplexVector& v, const ComplexVector& w) {
  return hermitian(v, w).real();
}

inline double norm(const ComplexVector& v) { return std::sqrt(real_inner(v, v)); }

inline ComplexVector times_i(const ComplexVector& v) { return Complex(0.0, 1.0) * v; }

}  // namespace hopf
