#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cyclodio/cases.hpp"
#include "cyclodio/padic.hpp"

using namespace cyclodio;

TEST(PAdic, RootsModP) {
  EXPECT_EQ(roots_mod_p(case_15_41().f, 41), std::vector<long>{8});
  EXPECT_EQ(roots_mod_p(case_15_5581().f, 5581), (std::vector<long>{257, 4477}));
  EXPECT_EQ(roots_mod_p(case_10_271().f, 271), std::vector<long>{241});
}

TEST(PAdic, LiftExamples) {
  const PAdicRoot r41 = hensel_lift(case_15_41().f, 41, 8, 27);
  EXPECT_EQ(r41.digits, (std::vector<long>{8, 18, 3, 17, 9, 14, 12, 38, 31, 35, 19, 25, 19, 38, 25, 24, 1, 18, 25, 10, 14, 29, 31, 18, 36, 2, 24}));
  const PAdicRoot r271 = hensel_lift(case_10_271().f, 271, 241, 25);
  EXPECT_EQ(r271.digits, (std::vector<long>{241, 8, 147, 250, 135, 263, 1, 126, 89, 262, 149, 20, 147, 78, 220, 219, 176, 148, 206, 255, 38, 115, 186, 178, 235}));
  const PAdicRoot r1 = hensel_lift(case_15_5581().f, 5581, 257, 23);
  EXPECT_EQ(r1.digits, (std::vector<long>{257, 64, 5438, 1453, 629, 833, 3090, 5096, 4809, 1493, 4462, 1922, 4807, 782, 3819, 2190, 99, 2554, 3603, 4471, 1034, 1407, 3688}));
  const PAdicRoot r2 = hensel_lift(case_15_5581().f, 5581, 4477, 21);
  EXPECT_EQ(r2.digits, (std::vector<long>{4477, 3993, 3590, 3157, 3667, 3404, 2233, 3440, 3784, 2333, 900, 2522, 184, 1707, 5103, 2005, 5325, 1780, 4765, 2645, 3577}));
  const PAdicRoot lin = hensel_lift(int_poly({-7, 1}), 5, 2, 3);
  EXPECT_EQ(lin.digits, (std::vector<long>{2, 1, 0}));
}

TEST(PAdic, LiftRejectsBadStart) {
  EXPECT_THROW(hensel_lift(case_15_41().f, 41, 9, 5), DomainError);
  // x^2 has the double root 0 mod 3.
  EXPECT_THROW(hensel_lift(int_poly({0, 0, 1}), 3, 0, 4), DomainError);
}

TEST(PAdic, DigitRoundTrip) {
  const PAdicRoot r = hensel_lift(case_15_5581().f, 5581, 257, 40);
  EXPECT_EQ(padic_digits(r.partial_sum(40), 5581, 40), r.digits);
}

TEST(PAdic, TwoDigitPrefixMatchesExhaustiveScan) {
  // Every residue mod p^2 that is a root extends a root mod p; the lifted
  // roots must be exactly those residues.
  for (const auto& cfg : {case_15_41(), case_10_271()}) {
    const long p = cfg.p;
    std::vector<long> brute;
    for (long x = 0; x < p * p; ++x)
      if (poly_eval(cfg.f, mpz_class(x)) % mpz_class(p * p) == 0) brute.push_back(x);
    std::vector<long> lifted;
    for (long r : roots_mod_p(cfg.f, p)) lifted.push_back(hensel_lift(cfg.f, p, r, 2).partial_sum(2).get_si());
    std::sort(lifted.begin(), lifted.end());
    EXPECT_EQ(lifted, brute) << cfg.id;
  }
}

TEST(PAdic, DigitScanBounds) {
  const CaseConfig c41 = case_15_41();
  const PAdicRoot r41 = hensel_lift(c41.f, 41, 8, 61);
  EXPECT_TRUE(r41.digits[53] == 0 || r41.digits[53] == 40);
  for (std::size_t k = 1; k < 53; ++k) EXPECT_TRUE(r41.digits[k] != 0 && r41.digits[k] != 40) << k;
  EXPECT_EQ(r41.digits[54], 15);
  EXPECT_EQ(digit_scan_bound(r41, 8), 415);
  EXPECT_EQ(digit_scan_bound(hensel_lift(case_10_271().f, 271, 241, 71), 4), 239);
  EXPECT_EQ(combined_lower_bound(c41, 60).bound, 415);
  EXPECT_EQ(combined_lower_bound(case_10_271(), 70).bound, 239);
  const LowerBoundResult lb = combined_lower_bound(case_15_5581(), 502);
  EXPECT_EQ(lb.bound, 4015);
  EXPECT_EQ(lb.roots.size(), 2u);
  EXPECT_THROW(digit_scan_bound(hensel_lift(c41.f, 41, 8, 1), 8), DomainError);
}

TEST(PAdic, HeuristicValues) {
  // Closed forms evaluated independently in double precision.
  EXPECT_NEAR(heuristic_expected_solutions(271, 4).mid_d(), 1.0 / (std::pow(271.0, 0.75) - 1.0), 1e-15);
  EXPECT_NEAR(heuristic_expected_solutions(2, 2).mid_d(), 1.0 / (std::sqrt(2.0) - 1.0), 1e-14);
  EXPECT_NEAR(heuristic_expected_solutions(41, 8).mid_d(), 1.0 / (std::pow(41.0, 0.875) - 1.0), 1e-15);
  EXPECT_THROW(heuristic_expected_solutions(1, 4), DomainError);
}
