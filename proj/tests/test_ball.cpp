#include <gtest/gtest.h>

#include "cyclodio/ball.hpp"

using namespace cyclodio;

TEST(Ball, ExactIntegersHaveZeroRadius) {
  Ball b(12345L, 128);
  EXPECT_TRUE(b.is_exact());
  EXPECT_TRUE(b.contains(mpq_class(12345)));
}

TEST(Ball, ThirdContainsOneThird) {
  Ball t = Ball(1L, 128) / Ball(3L, 128);
  EXPECT_TRUE(t.contains(mpq_class(1, 3)));
  EXPECT_FALSE(t.is_exact());
  EXPECT_LT(t.rel_radius(), 1e-37);
}

TEST(Ball, LogExpRoundTrip) {
  Ball x(mpq_class(7, 5), 192);
  Ball y = exp(log(x));
  EXPECT_TRUE(y.contains(mpq_class(7, 5)));
}

TEST(Ball, SqrtTwoSquared) {
  Ball s = sqrt(Ball(2L, 192));
  Ball s2 = s * s;
  EXPECT_TRUE(s2.contains(mpq_class(2)));
  EXPECT_TRUE(certainly_less(Ball(mpq_class(14142) / 10000, 192), s));
  EXPECT_TRUE(certainly_less(s, Ball(mpq_class(14143) / 10000, 192)));
}

TEST(Ball, DivisionByBallContainingZeroThrows) {
  Ball z = Ball(1L, 64) - Ball(1L, 64);
  z.add_radius(Mpfr(64));
  Ball w = Ball(1L, 64) / Ball(3L, 64) - Ball(1L, 64) / Ball(3L, 64);
  EXPECT_THROW(Ball(1L, 64) / z, PrecisionError);
  EXPECT_THROW(log(w), PrecisionError);
}

TEST(Ball, RoundSigIsOutward) {
  Ball x(mpq_class(12345) / 10000, 128);  // 1.2345
  EXPECT_EQ(round_sig(x, 4, Round::Up), mpq_class(247) / 200);
  EXPECT_EQ(round_sig(x, 4, Round::Down), mpq_class(617) / 500);
  Ball e(mpq_class(1090), 128);
  EXPECT_EQ(round_sig(e, 4, Round::Up), mpq_class(1090));
  Ball neg(mpq_class(-12345) / 10000, 128);
  EXPECT_EQ(round_sig(neg, 4, Round::Up), mpq_class(-617) / 500);
  EXPECT_EQ(round_sig(neg, 4, Round::Down), mpq_class(-247) / 200);
}

TEST(Ball, FormatSig) {
  EXPECT_EQ(format_sig(mpq_class(8706) / 1000, 4), "8.706");
  EXPECT_EQ(format_sig(mpq_class(4970) / 10000, 4), "0.4970");
  EXPECT_EQ(format_sig(mpq_class(mpz_class("14650000000000000000000000")), 4), "1.465e+25");
  EXPECT_EQ(format_sig(mpq_class(1096) / 1000, 4), "1.096");
  EXPECT_EQ(format_sig(mpq_class(10960), 4), "10960");
  EXPECT_EQ(format_sig(mpq_class(47800) / 1000, 4), "47.80");
}

TEST(Ball, ComplexAbsAndArg) {
  ComplexBall z{Ball(3L, 128), Ball(-4L, 128)};
  EXPECT_TRUE(abs(z).contains(mpq_class(5)));
  ComplexBall i{Ball(0L, 128), Ball(1L, 128)};
  Ball a = arg_abs(i);
  Ball half_pi = mul_2si(Ball::pi(128), -1);
  EXPECT_TRUE(certainly_less(abs(a - half_pi), Ball(mpq_class(1) / 1000000, 128)));
}
