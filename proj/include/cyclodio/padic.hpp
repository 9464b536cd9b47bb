#pragma once

// p-adic roots of integer polynomials and the digit-scan lower bound on n:
// a solution of f(x) = 2 p^n forces the p-adic digits of some root of f to
// be all 0 (x > 0) or all p - 1 (x < 0) on the index window
// floor((n+1)/d) + 1 <= k <= n - 1.

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <vector>

#include "cyclodio/ball.hpp"
#include "cyclodio/error.hpp"
#include "cyclodio/numberfield.hpp"
#include "cyclodio/poly.hpp"

namespace cyclodio {

struct PAdicRoot {
  long p = 0;
  /// digits[k] = a_k in {0, ..., p-1}; depth() digits in total.
  std::vector<long> digits;

  std::size_t depth() const { return digits.size(); }

  /// sum_{k < j} a_k p^k.
  mpz_class partial_sum(std::size_t j) const {
    mpz_class acc = 0;
    for (std::size_t k = j; k-- > 0;) acc = acc * p + digits[k];
    return acc;
  }
};

/// All r in [0, p) with f(r) = 0 mod p, by exhaustive scan.
inline std::vector<long> roots_mod_p(const IntPoly& f, long p) {
  if (p < 2) throw DomainError("roots_mod_p: p must be at least 2");
  std::vector<long> reduced;
  for (const auto& c : f.coeffs()) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
    reduced.push_back(r.get_si());
  }
  std::vector<long> out;
  for (long x = 0; x < p; ++x) {
    __int128 acc = 0;
    for (std::size_t i = reduced.size(); i-- > 0;) acc = (acc * x + reduced[i]) % p;
    if (acc == 0) out.push_back(x);
  }
  return out;
}

/// Base-p digits of the canonical representative of x mod p^depth.
inline std::vector<long> padic_digits(mpz_class x, long p, std::size_t depth) {
  mpz_class mod = ipow(mpz_class(p), static_cast<unsigned long>(depth));
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  std::vector<long> out(depth);
  for (std::size_t k = 0; k < depth; ++k) {
    out[k] = static_cast<long>(mpz_fdiv_q_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p)));
  }
  return out;
}

/// Newton iteration with precision doubling: lifts a simple root r0 of f
/// mod p to a root mod p^depth and returns its first `depth` digits.
inline PAdicRoot hensel_lift(const IntPoly& f, long p, long r0, std::size_t depth) {
  if (depth == 0) throw DomainError("hensel_lift: depth must be positive");
  const IntPoly df = poly_derivative(f);
  const mpz_class P(p);
  mpz_class x = r0;
  if (poly_eval(f, x) % P != 0) throw DomainError("hensel_lift: r0 is not a root mod p");
  {
    mpz_class d = poly_eval(df, x);
    mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
    if (d == 0) throw DomainError("hensel_lift: root is not simple (f'(r0) = 0 mod p)");
  }
  std::size_t prec = 1;
  while (prec < depth) {
    prec = std::min(2 * prec, depth);
    mpz_class mod = ipow(P, static_cast<unsigned long>(prec));
    mpz_class fx = poly_eval(f, x);
    mpz_class dfx = poly_eval(df, x);
    mpz_class inv;
    mpz_fdiv_r(dfx.get_mpz_t(), dfx.get_mpz_t(), mod.get_mpz_t());
    if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw ArithmeticError("hensel_lift: f'(x) not invertible");
    x = x - fx * inv;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  }
  return PAdicRoot{p, padic_digits(x, p, depth)};
}

/// Lower bound d (k0 - 1) - 1 on n, where k0 >= 1 is the first index with
/// digit 0 or p - 1, or the number of digits when no such index exists.
inline long digit_scan_bound(const PAdicRoot& root, int d) {
  if (root.depth() < 2) throw DomainError("digit_scan_bound: need at least two digits");
  std::size_t k0 = root.depth();
  for (std::size_t k = 1; k < root.depth(); ++k) {
    if (root.digits[k] == 0 || root.digits[k] == root.p - 1) {
      k0 = k;
      break;
    }
  }
  return static_cast<long>(d) * (static_cast<long>(k0) - 1) - 1;
}

struct LowerBoundResult {
  long bound = 0;
  std::vector<PAdicRoot> roots;
  std::vector<long> per_root_bounds;
};

/// Minimum digit-scan bound over all p-adic roots of cfg.f, examining digit
/// indices 0..depth.
inline LowerBoundResult combined_lower_bound(const CaseConfig& cfg, std::size_t depth) {
  LowerBoundResult out;
  out.bound = std::numeric_limits<long>::max();
  for (long r : roots_mod_p(cfg.f, cfg.p)) {
    PAdicRoot root = hensel_lift(cfg.f, cfg.p, r, depth + 1);
    long b = digit_scan_bound(root, cfg.d);
    out.per_root_bounds.push_back(b);
    out.bound = std::min(out.bound, b);
    out.roots.push_back(std::move(root));
  }
  if (out.roots.empty()) throw PreconditionError("combined_lower_bound: f has no roots mod p");
  return out;
}

/// 1 / (p^(1 - 1/d) - 1), the expected number of solutions under the
/// uniform-digit heuristic. Commentary only.
inline Ball heuristic_expected_solutions(long p, int d, mpfr_prec_t prec = 128) {
  if (p < 2 || d < 2) throw DomainError("heuristic_expected_solutions: need p >= 2, d >= 2");
  Ball t = pow_rational(Ball(p, prec), d - 1, d);
  return Ball(1L, prec) / (t - Ball(1L, prec));
}

}  // namespace cyclodio
