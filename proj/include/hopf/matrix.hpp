#pragma once

// Dense matrices: a runtime-sized DenseMatrix<T> for the Heisenberg affine
// representation and a fixed 4x4 type for the SU(1,1) hot loops.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hopf/error.hpp"

namespace hopf {

template <typename T>
class DenseMatrix {
 public:
  using value_type = T;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) fail_validation("matrix dimensions must be positive");
  }
  DenseMatrix(std::size_t rows, std::size_t cols, std::initializer_list<T> row_major)
      : DenseMatrix(rows, cols) {
    if (row_major.size() != rows * cols) fail_validation("matrix initializer has wrong entry count");
    std::copy(row_major.begin(), row_major.end(), data_.begin());
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> entries() const noexcept { return data_; }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  DenseMatrix& operator*=(T s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, T s) { return a *= s; }
  friend DenseMatrix operator*(T s, DenseMatrix a) { return a *= s; }
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

 private:
  void require_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail_validation("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<std::complex<double>>;

/// Fixed-size square matrix, row-major.
template <std::size_t N>
struct FixedMatrix {
  std::array<double, N * N> a{};

  static constexpr std::size_t rows() noexcept { return N; }
  static constexpr std::size_t cols() noexcept { return N; }

  static constexpr FixedMatrix identity() noexcept {
    FixedMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  constexpr double& operator()(std::size_t r, std::size_t c) noexcept { return a[r * N + c]; }
  constexpr double operator()(std::size_t r, std::size_t c) const noexcept { return a[r * N + c]; }

  constexpr FixedMatrix& operator+=(const FixedMatrix& o) noexcept {
    for (std::size_t i = 0; i < N * N; ++i) a[i] += o.a[i];
    return *this;
  }
  constexpr FixedMatrix& operator-=(const FixedMatrix& o) noexcept {
    for (std::size_t i = 0; i < N * N; ++i) a[i] -= o.a[i];
    return *this;
  }
  constexpr FixedMatrix& operator*=(double s) noexcept {
    for (auto& x : a) x *= s;
    return *this;
  }
  friend constexpr FixedMatrix operator+(FixedMatrix x, const FixedMatrix& y) noexcept { return x += y; }
  friend constexpr FixedMatrix operator-(FixedMatrix x, const FixedMatrix& y) noexcept { return x -= y; }
  friend constexpr FixedMatrix operator*(FixedMatrix x, double s) noexcept { return x *= s; }
  friend constexpr FixedMatrix operator*(double s, FixedMatrix x) noexcept { return x *= s; }
  friend constexpr bool operator==(const FixedMatrix&, const FixedMatrix&) = default;

  constexpr FixedMatrix transpose() const noexcept {
    FixedMatrix t;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) t(c, r) = (*this)(r, c);
    return t;
  }
};

using Matrix4 = FixedMatrix<4>;

template <std::size_t N>
constexpr FixedMatrix<N> mat_mul(const FixedMatrix<N>& x, const FixedMatrix<N>& y) noexcept {
  FixedMatrix<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t k = 0; k < N; ++k) {
      const double xr = x(r, k);
      for (std::size_t c = 0; c < N; ++c) out(r, c) += xr * y(k, c);
    }
  return out;
}

template <typename T>
DenseMatrix<T> mat_mul(const DenseMatrix<T>& x, const DenseMatrix<T>& y) {
  if (x.cols() != y.rows())
    fail_validation("mat_mul: inner dimensions differ (" + std::to_string(x.cols()) + " vs " +
                    std::to_string(y.rows()) + ")");
  DenseMatrix<T> out(x.rows(), y.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      const T xr = x(r, k);
      for (std::size_t c = 0; c < y.cols(); ++c) out(r, c) += xr * y(k, c);
    }
  return out;
}

template <typename M>
M commutator(const M& x, const M& y) {
  return mat_mul(x, y) - mat_mul(y, x);
}

template <typename M>
double max_abs(const M& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) best = std::max(best, std::abs(m(r, c)));
  return best;
}

template <typename M>
double max_abs_diff(const M& x, const M& y) {
  return max_abs(x - y);
}

namespace detail {

template <typename M>
M identity_like(const M& m) {
  if constexpr (requires { M::identity(); })
    return M::identity();
  else
    return M::identity(m.rows());
}

template <typename M>
double norm_one(const M& m) {
  double best = 0.0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double col = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) col += std::abs(m(r, c));
    best = std::max(best, col);
  }
  return best;
}

}  // namespace detail

/// Matrix exponential by scaling and squaring around a truncated Taylor series.
/// The scaled argument has 1-norm at most 1/2; the series runs until the next
/// term falls below `tolerance` relative to the running sum.
template <typename M>
M mat_exp(const M& x, double tolerance = 1e-12) {
  if (x.rows() != x.cols()) fail_validation("mat_exp: matrix must be square");
  const double norm = detail::norm_one(x);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const M scaled = x * std::ldexp(1.0, -squarings);

  M sum = detail::identity_like(x);
  M term = sum;
  // Truncation error after term k is bounded by ~|term_k| since |scaled| <= 1/2.
  const double cutoff = std::min(tolerance, 1e-12) * 1e-4;
  for (int k = 1; k < 64; ++k) {
    term = mat_mul(term, scaled) * (1.0 / k);
    sum += term;
    if (max_abs(term) <= cutoff * std::max(1.0, max_abs(sum))) break;
  }
  for (int i = 0; i < squarings; ++i) sum = mat_mul(sum, sum);
  return sum;
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
inline RealMatrix inverse(const RealMatrix& m) {
  if (!m.square()) fail_validation("inverse: matrix must be square");
  const std::size_t n = m.rows();
  RealMatrix a = m;
  RealMatrix inv = RealMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < 1e-300) fail_validation("inverse: matrix is singular");
    if (pivot != col)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    const double d = 1.0 / a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) *= d;
      inv(col, c) *= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

template <std::size_t N>
FixedMatrix<N> inverse(const FixedMatrix<N>& m) {
  RealMatrix d(N, N);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) d(r, c) = m(r, c);
  const RealMatrix di = inverse(d);
  FixedMatrix<N> out;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out(r, c) = di(r, c);
  return out;
}

/// gl(n,C) -> gl(2n,R): each entry x+iy becomes the block [[x, -y], [y, x]].
inline RealMatrix embed_complex(const ComplexMatrix& z) {
  if (!z.square()) fail_validation("embed_complex: matrix must be square");
  const std::size_t n = z.rows();
  RealMatrix out(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const auto v = z(r, c);
      out(2 * r, 2 * c) = v.real();
      out(2 * r, 2 * c + 1) = -v.imag();
      out(2 * r + 1, 2 * c) = v.imag();
      out(2 * r + 1, 2 * c + 1) = v.real();
    }
  return out;
}

inline ComplexMatrix conjugate_transpose(const ComplexMatrix& z) {
  ComplexMatrix t(z.cols(), z.rows());
  for (std::size_t r = 0; r < z.rows(); ++r)
    for (std::size_t c = 0; c < z.cols(); ++c) t(c, r) = std::conj(z(r, c));
  return t;
}

inline Matrix4 to_fixed4(const RealMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) fail_validation("expected a 4x4 matrix");
  Matrix4 out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = m(r, c);
  return out;
}

}  // namespace hopf
