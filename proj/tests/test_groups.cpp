#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "hopf/heisenberg.hpp"
#include "hopf/su11.hpp"

using namespace hopf;

namespace {

double scale_of(const Matrix4& m) { return std::max(1.0, max_abs(m)); }

double algebra_distance(const Su11Algebra& a, const Su11Algebra& b) {
  return std::max({std::abs(a.c1 - b.c1), std::abs(a.c2 - b.c2), std::abs(a.c3 - b.c3)});
}

double algebra_distance(const HeisenbergAlgebra& a, const HeisenbergAlgebra& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double element_distance(const HeisenbergElement& a, const HeisenbergElement& b) {
  return std::max(std::abs(a.s - b.s), norm(a.z - b.z));
}

// Coefficients of an su(1,1) matrix read straight off its first row (0, c3, c1, c2).
Su11Algebra read_first_row(const Matrix4& m) { return {m(0, 2), m(0, 3), m(0, 1)}; }

}  // namespace

TEST(Su11Element, ConstraintEnforcedOnConstruction) {
  EXPECT_NO_THROW(Su11Element(1.0, 0.0, 0.0, 0.0));
  EXPECT_THROW(Su11Element(1.0, 0.0, 0.5, 0.0), Error);
  const double c = std::cosh(0.3), s = std::sinh(0.3);
  EXPECT_NO_THROW(Su11Element(c, 0.0, s, 0.0));
}

TEST(Su11Element, RealizationPattern) {
  const Su11Element w = Su11Element::unchecked({1.0, 2.0, 3.0, 4.0});
  const Matrix4 m = w.realization();
  const double want[16] = {1, 2, 3, 4, -2, 1, -4, 3, 3, -4, 1, -2, 4, 3, 2, 1};
  for (int i = 0; i < 16; ++i) EXPECT_EQ(m.a[i], want[i]) << i;
}

TEST(Su11Mul, Identity) {
  gen::Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    const Su11Element a = gen::su11(rng);
    EXPECT_EQ(su11_mul(a, Su11Element::identity()), a);
    EXPECT_EQ(su11_mul(Su11Element::identity(), a), a);
  }
}

TEST(Su11Mul, AgreesWithMatrixProduct) {
  gen::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Su11Element a = gen::su11(rng), b = gen::su11(rng);
    const Matrix4 want = mat_mul(a.realization(), b.realization());
    EXPECT_LE(max_abs_diff(su11_mul(a, b).realization(), want), 1e-12 * scale_of(want));
  }
}

TEST(Su11Mul, HyperbolicSquare) {
  // cosh 2 and sinh 2 to 30 digits.
  constexpr double kCosh2 = 3.76219569108363145956221347777;
  constexpr double kSinh2 = 3.62686040784701876766821398280;
  const Su11Element t = Su11Element::hyperbolic(1.0, 0.0);
  const Su11Element sq = su11_mul(t, t);
  EXPECT_NEAR(sq.w1(), kCosh2, 1e-14);
  EXPECT_NEAR(sq.w3(), kSinh2, 1e-14);
  EXPECT_EQ(sq.w2(), 0.0);
  EXPECT_EQ(sq.w4(), 0.0);
}

TEST(Su11Mul, RejectsOffShellInput) {
  const Su11Element bad = Su11Element::unchecked({2.0, 0.0, 0.0, 0.0});
  EXPECT_THROW(su11_mul(bad, Su11Element::identity()), Error);
}

TEST(Su11Mul, ConstraintPreservedOverLongChains) {
  // 1000 chains of 1000 products, no re-normalization.
  gen::Rng rng(12);
  double worst = 0.0;
  long products = 0;
  for (int chain = 0; chain < 1000; ++chain) {
    Su11Element acc;
    for (int k = 0; k < 1000; ++k) {
      acc = su11_mul(acc, gen::su11(rng, 0.05));
      worst = std::max(worst, std::abs(acc.constraint_residual()));
      ++products;
    }
  }
  EXPECT_EQ(products, 1000000);
  EXPECT_LE(worst, 1e-9);
}

TEST(Su11Accumulator, RenormalizesPeriodically) {
  gen::Rng rng(13);
  Su11Accumulator acc;
  Su11Element plain;
  for (int k = 0; k < 5000; ++k) {
    const Su11Element g = gen::su11(rng, 0.02);
    acc.compose(g);
    plain = Su11Element::unchecked(quat_mul(plain.coordinates(), g.coordinates()));
  }
  EXPECT_LE(std::abs(acc.value().constraint_residual()), 1e-12);
  EXPECT_LE(max_abs_diff(acc.value().realization(), plain.realization()), 1e-9 * scale_of(plain.realization()));
}

TEST(Su11Element, InverseAndRenormalize) {
  gen::Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    const Su11Element a = gen::su11(rng);
    EXPECT_LE(max_abs_diff(su11_mul(a, a.inverse()).realization(), Matrix4::identity()), 1e-12 * scale_of(a.realization()) * scale_of(a.realization()));
    const Su11Element drifted = Su11Element::unchecked({1.001 * a.w1(), 1.001 * a.w2(), 1.001 * a.w3(), 1.001 * a.w4()});
    EXPECT_LE(std::abs(drifted.renormalized().constraint_residual()), 1e-12);
  }
}

TEST(IConjugate, InvolutionAndFixedIdentity) {
  gen::Rng rng(15);
  EXPECT_EQ(i_conjugate(Su11Element::identity()), Su11Element::identity());
  for (int i = 0; i < 100; ++i) {
    const Su11Element w = gen::su11(rng);
    EXPECT_EQ(i_conjugate(i_conjugate(w)), w);
  }
}

TEST(IConjugate, ReversesProducts) {
  gen::Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    const Su11Element a = gen::su11(rng), b = gen::su11(rng);
    const Matrix4 lhs = i_conjugate(su11_mul(a, b)).realization();
    const Matrix4 rhs = su11_mul(i_conjugate(b), i_conjugate(a)).realization();
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12 * scale_of(lhs));
  }
}

TEST(IConjugate, ProductWithConjugateIsSymmetricPattern) {
  gen::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const Su11Element w = gen::su11(rng);
    const auto [w1, w2, w3, w4] = w.coordinates();
    const Matrix4 m = mat_mul(w.realization(), i_conjugate(w).realization());
    const double X = w1 * w1 + w2 * w2 + w3 * w3 + w4 * w4;
    const double Y = 2 * (w1 * w3 - w2 * w4);
    const double Z = 2 * (w2 * w3 + w1 * w4);
    const double want[16] = {X, 0, Y, Z, 0, X, -Z, Y, Y, -Z, X, 0, Z, Y, 0, X};
    for (int k = 0; k < 16; ++k) EXPECT_NEAR(m.a[k], want[k], 1e-12 * scale_of(m)) << k;
    EXPECT_LE(max_abs_diff(m, m.transpose()), 1e-12 * scale_of(m));
  }
}

TEST(Su11Algebra, BasisMatchesSplitQuaternionUnits) {
  EXPECT_EQ(su11_basis(1), realize({0, 0, 1, 0}));
  EXPECT_EQ(su11_basis(2), realize({0, 0, 0, 1}));
  EXPECT_EQ(su11_basis(3), realize({0, 1, 0, 0}));
  EXPECT_THROW(su11_basis(4), Error);
}

TEST(Su11Bracket, StructureConstants) {
  const Su11Algebra e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1};
  const Su11Algebra c12 = su11_bracket(e1, e2);
  EXPECT_LE(algebra_distance(c12, Su11Algebra{0, 0, -2}), 1e-15);
  // [e1, e3] and [e2, e3] against the raw matrix commutators.
  for (const auto& [a, b] : {std::pair{e1, e3}, std::pair{e2, e3}}) {
    const Matrix4 c = commutator(a.matrix(), b.matrix());
    const Su11Algebra direct = read_first_row(c);
    EXPECT_LE(max_abs_diff(direct.matrix(), c), 1e-15);
    EXPECT_LE(algebra_distance(su11_bracket(a, b), direct), 1e-15);
  }
  EXPECT_LE(algebra_distance(su11_bracket(e1, e1), Su11Algebra{}), 0.0);
}

TEST(Su11Bracket, AntisymmetryAndJacobi) {
  gen::Rng rng(18);
  for (int i = 0; i < 1000; ++i) {
    const Su11Algebra a = gen::su11_algebra(rng), b = gen::su11_algebra(rng), c = gen::su11_algebra(rng);
    EXPECT_LE(algebra_distance(su11_bracket(a, b), -1.0 * su11_bracket(b, a)), 1e-10);
    const Su11Algebra j = su11_bracket(a, su11_bracket(b, c)) + su11_bracket(b, su11_bracket(c, a)) +
                          su11_bracket(c, su11_bracket(a, b));
    EXPECT_LE(algebra_distance(j, Su11Algebra{}), 1e-10);
  }
}

TEST(Su11Expand, ResidualFlagsNonAlgebraMatrices) {
  const auto [coeffs, residual] = su11_expand(Matrix4::identity());
  EXPECT_LE(algebra_distance(coeffs, Su11Algebra{}), 0.0);
  EXPECT_NEAR(residual, 1.0, 1e-15);
}

TEST(Su11Metric, OrthonormalAtIdentity) {
  const Su11Element id;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const Su11Algebra ei = read_first_row(su11_basis(i)), ej = read_first_row(su11_basis(j));
      EXPECT_EQ(left_invariant_inner(id, ei.coordinates(), ej.coordinates()), i == j ? 1.0 : 0.0);
    }
  const Su11Algebra x{1, 2, 0}, y{0, 1, 0};
  EXPECT_EQ(left_invariant_inner(id, x.coordinates(), y.coordinates()), 2.0);
}

TEST(Su11Metric, LeftInvariance) {
  gen::Rng rng(19);
  for (int i = 0; i < 500; ++i) {
    const Su11Element g = gen::su11(rng);
    const Su11Algebra x = gen::su11_algebra(rng), y = gen::su11_algebra(rng);
    const double at_g = left_invariant_inner(g, push_forward(g, x), push_forward(g, y));
    EXPECT_NEAR(at_g, algebra_inner(x, y), 1e-10);
  }
}

TEST(Su11Metric, RejectsNonTangentVectors) {
  EXPECT_THROW(left_invariant_inner(Su11Element{}, Quaternion{1, 0, 0, 0}, Quaternion{0, 1, 0, 0}), Error);
}

TEST(Heisenberg, GroupLawExample) {
  const HeisenbergElement g{0.0, ComplexVector{Complex(1, 0)}};
  const HeisenbergElement h{0.0, ComplexVector{Complex(0, 1)}};
  const HeisenbergElement gh = heis_mul(g, h);
  EXPECT_EQ(gh.s, 2.0);
  EXPECT_EQ(gh.z[0], Complex(1, 1));
}

TEST(Heisenberg, IdentityAndInverse) {
  gen::Rng rng(20);
  for (std::size_t n : {1u, 2u, 3u}) {
    const HeisenbergElement g = gen::heisenberg(rng, n);
    EXPECT_EQ(heis_mul(g, HeisenbergElement::identity(n)), g);
    EXPECT_LE(element_distance(heis_mul(g, g.inverse()), HeisenbergElement::identity(n)), 0.0);
  }
  EXPECT_THROW(heis_mul(gen::heisenberg(rng, 1), gen::heisenberg(rng, 2)), Error);
}

TEST(Heisenberg, Associativity) {
  gen::Rng rng(21);
  for (std::size_t n : {1u, 2u, 3u, 4u})
    for (int i = 0; i < 300; ++i) {
      const auto g = gen::heisenberg(rng, n), h = gen::heisenberg(rng, n), k = gen::heisenberg(rng, n);
      EXPECT_LE(element_distance(heis_mul(heis_mul(g, h), k), heis_mul(g, heis_mul(h, k))), 1e-12);
    }
}

TEST(Heisenberg, AffineRepresentationPattern) {
  EXPECT_EQ(heis_affine_rep(HeisenbergElement::identity(2)), RealMatrix::identity(6));
  const HeisenbergElement g{0.7, ComplexVector{Complex(0.3, -1.2)}};
  const RealMatrix m = heis_affine_rep(g);
  ASSERT_EQ(m.rows(), 4u);
  const double row0[4] = {1, 2.4, 0.6, 0.7};
  const double last[4] = {0.7, 0.3, -1.2, 1};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(m(0, i), row0[i]);
    EXPECT_EQ(m(i, 3), last[i]);
  }
  EXPECT_EQ(m(1, 1), 1.0);
  EXPECT_EQ(m(2, 2), 1.0);
  EXPECT_EQ(m(1, 2), 0.0);
}

TEST(Heisenberg, AffineRepresentationIsHomomorphism) {
  gen::Rng rng(22);
  for (std::size_t n : {1u, 2u, 3u})
    for (int i = 0; i < 300; ++i) {
      const auto g = gen::heisenberg(rng, n), h = gen::heisenberg(rng, n);
      EXPECT_LE(max_abs_diff(heis_affine_rep(heis_mul(g, h)), mat_mul(heis_affine_rep(g), heis_affine_rep(h))), 1e-12);
    }
}

TEST(HeisenbergAlgebra, BasisMatrices) {
  // e1 at n = 1: 2 in the first row under the Im slot's neighbour, 1 in the last column.
  const RealMatrix e1 = HeisenbergAlgebra::basis(1, 1).matrix();
  const RealMatrix e2 = HeisenbergAlgebra::basis(1, 2).matrix();
  const RealMatrix e3 = HeisenbergAlgebra::basis(1, 3).matrix();
  EXPECT_EQ(e1(0, 2), 2.0);
  EXPECT_EQ(e1(1, 3), 1.0);
  EXPECT_EQ(e2(0, 1), -2.0);
  EXPECT_EQ(e2(2, 3), 1.0);
  EXPECT_EQ(e3(0, 3), 1.0);
  EXPECT_EQ(max_abs(e3), 1.0);
}

TEST(HeisenbergBracket, Examples) {
  const auto e = [](std::size_t n, std::size_t k) { return HeisenbergAlgebra::basis(n, k); };
  EXPECT_LE(algebra_distance(heis_bracket(e(1, 1), e(1, 2)), 4.0 * e(1, 3)), 1e-15);
  EXPECT_LE(algebra_distance(heis_bracket(e(2, 1), e(2, 3)), HeisenbergAlgebra(2)), 0.0);
  const auto c = commutator(e(2, 1).matrix(), e(2, 3).matrix());
  EXPECT_EQ(max_abs(c), 0.0);
  gen::Rng rng(23);
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto a = gen::heisenberg_algebra(rng, n);
    EXPECT_LE(algebra_distance(heis_bracket(a, e(n, 2 * n + 1)), HeisenbergAlgebra(n)), 0.0);
  }
}

TEST(HeisenbergBracket, MatchesMatrixCommutator) {
  gen::Rng rng(24);
  for (std::size_t n : {1u, 2u, 3u, 4u})
    for (int i = 0; i < 200; ++i) {
      const auto a = gen::heisenberg_algebra(rng, n), b = gen::heisenberg_algebra(rng, n);
      const auto [coeffs, residual] = HeisenbergAlgebra::expand(commutator(a.matrix(), b.matrix()));
      EXPECT_LE(residual, 1e-12);
      EXPECT_LE(algebra_distance(heis_bracket(a, b), coeffs), 1e-12);
    }
}

TEST(HeisenbergBracket, AntisymmetryAndJacobi) {
  gen::Rng rng(25);
  for (std::size_t n : {1u, 2u, 3u})
    for (int i = 0; i < 300; ++i) {
      const auto a = gen::heisenberg_algebra(rng, n), b = gen::heisenberg_algebra(rng, n),
                 c = gen::heisenberg_algebra(rng, n);
      EXPECT_LE(algebra_distance(heis_bracket(a, b), -1.0 * heis_bracket(b, a)), 1e-10);
      const auto j = heis_bracket(a, heis_bracket(b, c)) + heis_bracket(b, heis_bracket(c, a)) +
                     heis_bracket(c, heis_bracket(a, b));
      EXPECT_LE(algebra_distance(j, HeisenbergAlgebra(n)), 1e-10);
    }
}

TEST(HeisenbergMetric, OrthonormalAndInvariant) {
  gen::Rng rng(26);
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto id = HeisenbergElement::identity(n);
    for (std::size_t i = 1; i <= 2 * n + 1; ++i)
      for (std::size_t j = 1; j <= 2 * n + 1; ++j) {
        const auto ei = push_forward(id, HeisenbergAlgebra::basis(n, i));
        const auto ej = push_forward(id, HeisenbergAlgebra::basis(n, j));
        EXPECT_EQ(left_invariant_inner(id, ei, ej), i == j ? 1.0 : 0.0);
      }
    for (int k = 0; k < 200; ++k) {
      const auto g = gen::heisenberg(rng, n);
      const auto x = gen::heisenberg_algebra(rng, n), y = gen::heisenberg_algebra(rng, n);
      EXPECT_NEAR(left_invariant_inner(g, push_forward(g, x), push_forward(g, y)), algebra_inner(x, y), 1e-10);
    }
    const auto x = HeisenbergAlgebra::basis(n, 1) + 2.0 * HeisenbergAlgebra::basis(n, 2);
    EXPECT_EQ(algebra_inner(x, HeisenbergAlgebra::basis(n, 2)), 2.0);
  }
}

TEST(HeisenbergMetric, RejectsMismatchedTangent) {
  const auto g = HeisenbergElement::identity(2);
  const HeisenbergTangent bad{0.0, ComplexVector(1)};
  EXPECT_THROW(left_invariant_inner(g, bad, bad), Error);
}

TEST(HeisenbergAlgebra, MatrixRoundTrip) {
  gen::Rng rng(27);
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto a = gen::heisenberg_algebra(rng, n);
    const auto [b, residual] = HeisenbergAlgebra::expand(a.matrix());
    EXPECT_EQ(residual, 0.0);
    EXPECT_EQ(a, b);
  }
}
