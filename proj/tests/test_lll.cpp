#include <gtest/gtest.h>

#include <random>

#include "cyclodio/lll.hpp"
#include "property_checks.hpp"

using namespace cyclodio;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m;
  for (const auto& r : rows) {
    std::vector<mpz_class> v;
    for (long x : r) v.emplace_back(x);
    m.push_back(std::move(v));
  }
  return m;
}

}  // namespace

TEST(Lll, IdentityIsFixed) {
  const IntMatrix id = identity_matrix(4);
  const LllResult r = lll_reduce(id);
  EXPECT_EQ(r.basis, id);
  EXPECT_EQ(r.swaps, 0);
}

TEST(Lll, SkewedBasisBecomesShort) {
  const IntMatrix b = mat({{1, 0}, {1000000, 1}});
  const LllResult r = lll_reduce(b);
  EXPECT_TRUE(is_lll_reduced(r.basis));
  EXPECT_TRUE(transform_consistent(b, r));
  for (const auto& v : r.basis) EXPECT_EQ(dot(v, v), 1);
}

TEST(Lll, FirstVectorWithinFactorOfShortest) {
  // Brute force over the box [-10, 10]^2 of coefficient vectors.
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const IntMatrix b = props::random_basis(rng, 2, 50);
    const LllResult r = lll_reduce(b);
    mpz_class best = -1;
    for (long i = -10; i <= 10; ++i)
      for (long j = -10; j <= 10; ++j) {
        if (i == 0 && j == 0) continue;
        std::vector<mpz_class> v{i * b[0][0] + j * b[1][0], i * b[0][1] + j * b[1][1]};
        mpz_class n = dot(v, v);
        if (best < 0 || n < best) best = n;
      }
    EXPECT_LE(dot(r.basis[0], r.basis[0]), 2 * best);
  }
}

TEST(Lll, DeterminantPreserved) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 20; ++t) {
    const IntMatrix b = props::random_basis(rng, 4, 10000);
    const LllResult r = lll_reduce(b);
    EXPECT_EQ(abs(determinant(r.basis)), abs(determinant(b)));
  }
}

TEST(Lll, BareissDeterminant) {
  EXPECT_EQ(determinant(mat({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}})), 18);
  EXPECT_EQ(determinant(mat({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(determinant(mat({{1, 2}, {2, 4}})), 0);
}

TEST(Lll, DependentInputRejected) {
  EXPECT_THROW(lll_reduce(mat({{1, 2}, {2, 4}})), DomainError);
}

TEST(Lll, SolveCoordinates) {
  const IntMatrix b = mat({{2, 0}, {1, 3}});
  const auto s = solve_coordinates(b, {mpz_class(5), mpz_class(9)});
  EXPECT_EQ(s[0], mpq_class(1));
  EXPECT_EQ(s[1], mpq_class(3));
  EXPECT_EQ(dist_to_int(mpq_class(7, 3)), mpq_class(1, 3));
  EXPECT_EQ(dist_to_int(mpq_class(-5, 2)), mpq_class(1, 2));
}
