#pragma once

// Matveev's lower bound for a linear form in r logarithms over a field of
// degree d, and the resulting absolute upper bound on n.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cyclodio/ball.hpp"
#include "cyclodio/error.hpp"
#include "cyclodio/realalg.hpp"

namespace cyclodio {

struct BoundInput {
  int r = 0;
  int d = 0;
  long p = 0;
  std::vector<mpq_class> A;
  mpq_class C3, C7, C8;

  static BoundInput from(const ConstantSet& cs) { return {cs.r, cs.d, cs.p, cs.A, cs.C3, cs.C7, cs.C8}; }
};

/// 3 * 30^(r+4) * (r+1)^5.5 * d^2 * (1 + log d) * prod A_j, certified.
inline Ball matveev_c9_ball(const BoundInput& in, mpfr_prec_t prec = kPrecisionFloor) {
  if (in.r < 1 || in.d < 1) throw DomainError("matveev_c9: r and d must be positive");
  if (static_cast<int>(in.A.size()) != in.r) throw DomainError("matveev_c9: need exactly r values A_j");
  const Ball D(static_cast<long>(in.d), prec);
  Ball v = Ball(3L, prec) * pow_ui(Ball(30L, prec), static_cast<unsigned long>(in.r + 4));
  v *= pow_rational(Ball(static_cast<long>(in.r + 1), prec), 11, 2);
  v *= D * D * (Ball(1L, prec) + log(D));
  for (const auto& a : in.A) {
    if (a < mpq_class(4, 25)) throw DomainError("matveev_c9: A_j must be at least 0.16");
    v *= Ball(a, prec);
  }
  return v;
}

/// C9 rounded up to 4 significant digits.
inline mpq_class matveev_c9(const BoundInput& in, mpfr_prec_t prec = kPrecisionFloor) {
  return round_sig(matveev_c9_ball(in, prec), kConstantDigits, Round::Up);
}

/// (log p / d) n - log C3 - C9 (1 + log(r d (C7 n + C8))).
inline Ball bound_gap(const BoundInput& in, const mpq_class& c9, const mpz_class& n, mpfr_prec_t prec = kPrecisionFloor) {
  const Ball N(n, prec);
  const Ball lin = log(Ball(in.p, prec)) / Ball(static_cast<long>(in.d), prec) * N - log(Ball(in.C3, prec));
  const Ball B = Ball(static_cast<long>(in.r) * in.d, prec) * (Ball(in.C7, prec) * N + Ball(in.C8, prec));
  return lin - Ball(c9, prec) * (Ball(1L, prec) + log(B));
}

/// Least integer N with a certified positive gap. The gap is concave in n
/// with slope log p / d - C9 / n, so it increases for n > C9 d / log p and
/// stays positive past its sign change; the bracket is checked before
/// bisecting.
inline mpz_class absolute_bound(const BoundInput& in, const mpq_class& c9, mpfr_prec_t prec = kPrecisionFloor) {
  if (in.C7 < 0 || in.C8 < 0 || c9 <= 0) throw DomainError("absolute_bound: constants must be positive");
  // Start of the increasing region.
  mpq_class turn = c9 * in.d / Ball(log(Ball(in.p, prec))).lower_q();
  mpz_class lo(turn);
  lo += 1;
  if (bound_gap(in, c9, lo, prec).is_positive()) {
    // Already positive where the gap starts increasing: search below it
    // would need the decreasing branch, so report the conservative lo.
    return lo;
  }
  mpz_class hi = 2 * lo;
  for (int i = 0; !bound_gap(in, c9, hi, prec).is_positive(); ++i) {
    if (i > 200) throw ArithmeticError("absolute_bound: gap never becomes positive");
    hi *= 2;
  }
  // Invariant: gap(lo) not certified positive, gap(hi) certified positive.
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (bound_gap(in, c9, mid, prec).is_positive())
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace cyclodio
