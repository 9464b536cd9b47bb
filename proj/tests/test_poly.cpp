#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "cyclodio/poly.hpp"
#include "cyclodio/realalg.hpp"

using namespace cyclodio;

namespace {

const IntPoly kF15 = int_poly({2, -1, 0, 1, -1, 1, 0, -1, 1});
const IntPoly kF10 = int_poly({2, -1, 1, -1, 1});

IntPoly random_poly(std::mt19937_64& rng, int deg, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  std::vector<mpz_class> c(static_cast<std::size_t>(deg + 1));
  for (auto& v : c) v = dist(rng);
  if (c.back() == 0) c.back() = 1;
  return IntPoly(std::move(c));
}

}  // namespace

TEST(Poly, ZeroPolynomialHasDegreeMinusOne) {
  IntPoly z;
  EXPECT_EQ(z.degree(), -1);
  EXPECT_TRUE(int_poly({0, 0, 0}).is_zero());
  EXPECT_EQ(int_poly({1, 2, 0}).degree(), 1);
}

TEST(Poly, EvalExamples) {
  EXPECT_EQ(poly_eval(cyclotomic(15), mpz_class(1)), 1);
  EXPECT_EQ(poly_eval(kF10, mpz_class(2)), 12);
  EXPECT_EQ(poly_eval(kF15, mpz_class(-1)), 2);
}

TEST(Poly, HornerMatchesPowerSum) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    IntPoly f = random_poly(rng, 1 + t % 9, 1000);
    mpz_class x = static_cast<long>(rng() % 2001) - 1000;
    mpz_class naive = 0, xp = 1;
    for (const auto& c : f.coeffs()) {
      naive += c * xp;
      xp *= x;
    }
    EXPECT_EQ(poly_eval(f, x), naive);
  }
}

TEST(Poly, Derivative) {
  EXPECT_EQ(poly_derivative(int_poly({1, 0, 1})), int_poly({0, 2}));
  EXPECT_EQ(poly_derivative(kF10), int_poly({-1, 2, -3, 4}));
  EXPECT_TRUE(poly_derivative(int_poly({7})).is_zero());
}

TEST(Poly, TaylorCoefficientIsScaledDerivative) {
  // f^(i)/i! via repeated differentiation and exact division by i!.
  IntPoly g = kF15;
  mpz_class fact = 1;
  for (unsigned i = 1; i <= 8; ++i) {
    g = poly_derivative(g);
    fact *= i;
    EXPECT_EQ(taylor_coefficient(kF15, i), divide_exact(g, fact)) << "i = " << i;
  }
}

TEST(Poly, ResultantExamples) {
  EXPECT_EQ(resultant(int_poly({-2, 1}), int_poly({-3, 1})), -1);
  EXPECT_EQ(resultant(kF10, int_poly({0, 1})), 2);
  EXPECT_THROW(resultant(IntPoly(), IntPoly()), DomainError);
  EXPECT_EQ(resultant(int_poly({3}), kF10), 81);
}

TEST(Poly, ResultantAntisymmetry) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 40; ++t) {
    IntPoly f = random_poly(rng, 1 + t % 5, 50), g = random_poly(rng, 1 + (t / 5) % 5, 50);
    mpz_class s = (f.degree() * g.degree()) % 2 ? -1 : 1;
    EXPECT_EQ(resultant(f, g), s * resultant(g, f));
  }
}

TEST(Poly, ResultantMatchesRootProduct) {
  // Res(f, g) = lc(f)^deg g * prod g(root_i), roots from certified numerics.
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 20) {
    IntPoly f = random_poly(rng, 3, 20), g = random_poly(rng, 3, 20);
    try {
      discriminant(f);
    } catch (const NotSquarefreeError&) {
      continue;
    }
    const auto roots = complex_roots(f, 256);
    ComplexBall prod{Ball(1L, 256), Ball(0L, 256)};
    for (const auto& z : roots) prod = prod * eval_complex(g, z);
    const mpz_class lc3 = f.leading() * f.leading() * f.leading();
    const Ball expect(resultant(f, g), 256);
    const Ball got = Ball(lc3, 256) * prod.re;
    const Ball tol(mpq_class(1, mpz_class("100000000000000000000")), 256);
    const Ball scale = ball_max(abs(expect), Ball(1L, 256));
    EXPECT_TRUE(certainly_less(abs(got - expect) / scale, tol)) << f << " / " << g;
    EXPECT_TRUE(certainly_less(abs(Ball(lc3, 256) * prod.im) / scale, tol));
    ++checked;
  }
}

TEST(Poly, DiscriminantExamples) {
  EXPECT_EQ(discriminant(int_poly({1, 0, 1})), -4);
  EXPECT_EQ(discriminant(kF15), 682862912);
  EXPECT_EQ(discriminant(kF10), 1396);
  EXPECT_THROW(discriminant(int_poly({1, 2, 1})), NotSquarefreeError);
  EXPECT_THROW(discriminant(int_poly({1, 1})), DomainError);
}

TEST(Poly, DiscriminantCoprimeToPrimes) {
  const mpz_class d15 = discriminant(kF15), d10 = discriminant(kF10);
  EXPECT_NE(d15 % 41, 0);
  EXPECT_NE(d15 % 5581, 0);
  EXPECT_NE(d10 % 271, 0);
}

TEST(Poly, CyclotomicExamples) {
  EXPECT_EQ(cyclotomic(10), int_poly({1, -1, 1, -1, 1}));
  EXPECT_EQ(cyclotomic(15), int_poly({1, -1, 0, 1, -1, 1, 0, -1, 1}));
  EXPECT_EQ(cyclotomic(1), int_poly({-1, 1}));
  EXPECT_EQ(cyclotomic(15) + IntPoly::constant(1), kF15);
  EXPECT_EQ(cyclotomic(10) + IntPoly::constant(1), kF10);
}

TEST(Poly, CyclotomicDegreesAndComposition) {
  EXPECT_EQ(cyclotomic(20), poly_compose(cyclotomic(10), int_poly({0, 0, 1})));
  const int phi[] = {0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4, 12, 6, 8, 8, 16, 6, 18, 8};
  for (unsigned long m = 1; m <= 20; ++m) EXPECT_EQ(cyclotomic(m).degree(), phi[m]) << m;
}

TEST(Poly, ExactDivision) {
  IntPoly a = int_poly({-1, 0, 0, 1});
  EXPECT_EQ(poly_divide_exact(a, int_poly({-1, 1})), int_poly({1, 1, 1}));
  EXPECT_THROW(poly_divide_exact(a, int_poly({1, 2})), ArithmeticError);
}
