#pragma once

// Reduction of the absolute bound: the scaled logarithms of the S-unit
// inequality form an integer lattice, and an LLL-reduced basis gives a lower
// bound for the distance from a target vector to that lattice. A large
// distance forces a small n.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cyclodio/ball.hpp"
#include "cyclodio/error.hpp"
#include "cyclodio/lll.hpp"
#include "cyclodio/numberfield.hpp"
#include "cyclodio/realalg.hpp"

namespace cyclodio {

struct LatticeProblem {
  std::string case_label;
  std::size_t delta_index = 0;
  std::size_t gamma_index = 0;
  std::vector<int> conjugates;  ///< 1-based pair indices, one per row
  mpz_class K;
  /// Basis vectors (the columns of Gamma): one per unit exponent, then the
  /// one for n, whose last entry is 1.
  IntMatrix basis;
  std::vector<mpz_class> y;
  /// |K lambda - theta| <= 1/2 + rho for every entry.
  mpq_class rho;
  mpfr_prec_t prec = kPrecisionFloor;
};

struct ReductionOutcome {
  LatticeProblem problem;
  LllResult lll;
  Ball c1_norm;
  std::vector<mpq_class> s;
  mpq_class s_last_dist;
  Ball distance;
  std::optional<Ball> c;
  std::optional<mpz_class> bound;
};

/// All increasing choices of k pair indices (1-based) out of `pairs`.
inline std::vector<std::vector<int>> conjugate_choices(int pairs, int k) {
  std::vector<std::vector<int>> out;
  if (k < 1 || k > pairs) return out;
  std::vector<bool> pick(static_cast<std::size_t>(pairs), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<int> c;
    for (int i = 0; i < pairs; ++i)
      if (pick[static_cast<std::size_t>(i)]) c.push_back(i + 1);
    out.push_back(std::move(c));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

namespace detail {

inline mpfr_prec_t lattice_precision(const mpz_class& K, mpfr_prec_t floor_bits) {
  const auto kbits = static_cast<mpfr_prec_t>(mpz_sizeinbase(K.get_mpz_t(), 2));
  return std::max(floor_bits, kbits + 96);
}

}  // namespace detail

/// Builds Gamma and y for one exponent case and one choice of r - 2
/// conjugates, with
///   lambda_1 = log 2 - d log|delta|,  lambda_2 = log p - d log|gamma|,
///   lambda_{2+k} = -d log|beta_k|,
/// and theta = nearest integer to K lambda.
inline LatticeProblem build_lattice(const CaseConfig& cfg, const ExponentCase& ec, const ConjugateData& conj,
                                    const mpz_class& K, const std::vector<int>& choice) {
  const auto t = static_cast<int>(cfg.units.size());
  const int rows = t;  // r - 2
  if (rows < 1) throw PreconditionError("build_lattice: the lattice method needs at least one unit");
  if (static_cast<int>(choice.size()) != rows)
    throw DomainError("build_lattice: need " + std::to_string(rows) + " conjugate indices");
  for (int c : choice)
    if (c < 1 || c > conj.pairs()) throw DomainError("build_lattice: conjugate index out of range");
  if (K < 1) throw DomainError("build_lattice: K must be positive");

  mpfr_prec_t prec = detail::lattice_precision(K, conj.prec);
  for (int attempt = 0; attempt < 4; ++attempt, prec *= 2) {
    const ConjugateData local = prec <= conj.prec ? conj : conjugate_data(cfg.f, prec);
    const Ball D(static_cast<long>(cfg.d), prec);
    const Ball KB(K, prec);
    LatticeProblem lp;
    lp.case_label = ec.label();
    lp.delta_index = ec.delta_index;
    lp.gamma_index = ec.gamma_index;
    lp.conjugates = choice;
    lp.K = K;
    lp.prec = prec;
    lp.basis.assign(static_cast<std::size_t>(rows + 1), std::vector<mpz_class>(static_cast<std::size_t>(rows + 1), 0));
    lp.y.assign(static_cast<std::size_t>(rows + 1), 0);
    Mpfr worst(Ball::kRadPrec);

    auto theta = [&](const Ball& lambda) {
      Ball v = KB * lambda;
      Mpfr r(prec);
      mpfr_round(r.get(), v.mid().get());
      mpz_class z;
      mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDN);
      mpfr_max(worst.get(), worst.get(), v.rad().get(), MPFR_RNDU);
      return z;
    };

    const std::vector<Ball> adelta = embed_abs(ec.delta, local);
    const std::vector<Ball> agamma = embed_abs(ec.gamma, local);
    std::vector<std::vector<Ball>> abeta;
    for (const auto& u : cfg.units) abeta.push_back(embed_abs(u, local));
    const Ball log2 = log(Ball(2L, prec));
    const Ball logp = log(Ball(cfg.p, prec));

    try {
      for (int row = 0; row < rows; ++row) {
        const auto j = static_cast<std::size_t>(choice[static_cast<std::size_t>(row)] - 1);
        const auto R = static_cast<std::size_t>(row);
        lp.y[R] = -theta(log2 - D * log(adelta[j]));
        for (int k = 0; k < t; ++k) lp.basis[static_cast<std::size_t>(k)][R] = theta(-(D * log(abeta[static_cast<std::size_t>(k)][j])));
        lp.basis[static_cast<std::size_t>(rows)][R] = theta(logp - D * log(agamma[j]));
      }
    } catch (const PrecisionError&) {
      continue;
    }
    lp.basis[static_cast<std::size_t>(rows)][static_cast<std::size_t>(rows)] = 1;
    lp.rho = worst.to_q();
    if (lp.rho <= mpq_class(1, 1000)) return lp;
  }
  throw PrecisionError("build_lattice: could not certify theta to within 1/2 + 1e-3");
}

/// 2^(-(n-1)/2) * ||s_n|| * |c_1|, a lower bound for the distance from y to
/// the lattice when c_1..c_n is LLL-reduced and y = sum s_i c_i.
inline Ball distance_lower_bound(const IntMatrix& reduced, const std::vector<mpz_class>& y, std::vector<mpq_class>* s_out = nullptr,
                                 mpfr_prec_t prec = kPrecisionFloor) {
  const std::vector<mpq_class> s = solve_coordinates(reduced, y);
  const Ball c1 = sqrt(Ball(dot(reduced[0], reduced[0]), prec));
  const Ball sigma(dist_to_int(s.back()), prec);
  const auto n = static_cast<long>(reduced.size());
  Ball scale = sqrt(mul_2si(Ball(1L, prec), -(n - 1)));
  if (s_out) *s_out = s;
  return scale * sigma * c1;
}

inline ReductionOutcome reduce_lattice(const LatticeProblem& lp) {
  ReductionOutcome out;
  out.problem = lp;
  out.lll = lll_reduce(lp.basis);
  if (!is_lll_reduced(out.lll.basis) || !transform_consistent(lp.basis, out.lll))
    throw ArithmeticError("reduce_lattice: LLL postconditions failed");
  out.c1_norm = sqrt(Ball(dot(out.lll.basis[0], out.lll.basis[0]), lp.prec));
  out.distance = distance_lower_bound(out.lll.basis, lp.y, &out.s, lp.prec);
  out.s_last_dist = dist_to_int(out.s.back());
  return out;
}

/// Rounding-error coefficients: |K Lambda - (theta . b)| <= C10 n + C11.
inline std::pair<mpq_class, mpq_class> rounding_coefficients(const ConstantSet& cs, const mpq_class& rho) {
  const mpq_class h = mpq_class(1, 2) + rho;
  const mpq_class t = cs.r - 2;
  return {h * (1 + t * cs.C7), h * (1 + t * cs.C8)};
}

/// Fills in c and the reduced bound
///   N1 = floor((d / log p) (log C3 - log c + log N / (r - 2)))
/// when c is certified positive.
inline std::optional<mpz_class> reduce_bound(ReductionOutcome& out, const mpz_class& N, const ConstantSet& cs) {
  if (N < 1) throw DomainError("reduce_bound: N must be positive");
  const LatticeProblem& lp = out.problem;
  const mpfr_prec_t prec = lp.prec;
  const long k = cs.r - 2;
  auto [c10, c11] = rounding_coefficients(cs, lp.rho);
  const Ball NB(N, prec);
  const Ball dlow = Ball::exact(out.distance.lower());
  const Ball gap = dlow * dlow - NB * NB;
  out.c.reset();
  out.bound.reset();
  if (!gap.is_positive()) return std::nullopt;
  const Ball inner = sqrt(gap / Ball(k, prec)) - (Ball(c10, prec) * NB + Ball(c11, prec));
  const Ball c = pow_rational(NB, 1, k) / Ball(lp.K, prec) * inner;
  out.c = c;
  if (!c.is_positive()) return std::nullopt;
  const Ball n1 = Ball(static_cast<long>(cs.d), prec) / log(Ball(cs.p, prec)) *
                  (log(Ball(cs.C3, prec)) - log(c) + log(NB) / Ball(k, prec));
  mpz_class b;
  mpfr_get_z(b.get_mpz_t(), n1.upper().get(), MPFR_RNDD);
  out.bound = b;
  return b;
}

// ---------------------------------------------------------------------------

enum class ChoiceMode { Preferred, All };

struct ReductionOptions {
  std::optional<mpz_class> K;  ///< first-round K; default cfg.default_K
  int max_retries = 3;
  long escalation = 100;
  int max_rounds = 10;
  ChoiceMode choices = ChoiceMode::All;
  mpz_class target_floor = 0;  ///< stop once the bound drops below this
};

struct CaseResult {
  std::string case_label;
  mpz_class K;                        ///< K at which the case succeeded
  std::vector<ReductionOutcome> tried;  ///< every choice at every K tried
  std::optional<std::size_t> best;    ///< index into tried
  std::optional<mpz_class> bound;
};

struct ReductionRound {
  int round = 0;
  mpz_class N_in;
  mpz_class K;
  std::vector<CaseResult> cases;
  std::optional<mpz_class> bound;
};

struct ReductionTrace {
  std::vector<ReductionRound> rounds;
  mpz_class final_bound;
  bool succeeded = false;
  std::string failure;
};

/// Smallest power of ten >= 100 N^((r-1)/(r-2)).
inline mpz_class next_round_K(const mpz_class& N, int r) {
  const double e = std::log10(N.get_d()) * (r - 1) / (r - 2) + 2.0;
  return ipow(mpz_class(10), static_cast<unsigned long>(std::ceil(e)));
}

inline std::vector<std::vector<int>> choices_for(const CaseConfig& cfg, const ExponentCase& ec, const ConjugateData& conj,
                                                 ChoiceMode mode) {
  const int k = static_cast<int>(cfg.units.size());
  const auto& preferred = cfg.gammas[ec.gamma_index].conjugates;
  if (mode == ChoiceMode::Preferred && static_cast<int>(preferred.size()) == k) return {preferred};
  return conjugate_choices(conj.pairs(), k);
}

inline CaseResult reduce_case(const CaseConfig& cfg, const ExponentCase& ec, const ConjugateData& conj, const ConstantSet& cs,
                              const mpz_class& N, const mpz_class& K0, const ReductionOptions& opt) {
  CaseResult res;
  res.case_label = ec.label();
  mpz_class K = K0;
  for (int attempt = 0; attempt <= opt.max_retries; ++attempt, K *= opt.escalation) {
    for (const auto& choice : choices_for(cfg, ec, conj, opt.choices)) {
      ReductionOutcome o = reduce_lattice(build_lattice(cfg, ec, conj, K, choice));
      std::optional<mpz_class> b = reduce_bound(o, N, cs);
      res.tried.push_back(std::move(o));
      if (b && (!res.bound || *b < *res.bound)) {
        res.bound = *b;
        res.best = res.tried.size() - 1;
      }
    }
    if (res.bound) {
      res.K = K;
      return res;
    }
  }
  return res;
}

/// Iterates the reduction from N0 until the bound stops improving or falls
/// below opt.target_floor.
inline ReductionTrace reduction_loop(const CaseConfig& cfg, const ConjugateData& conj, const ConstantSet& cs, const mpz_class& N0,
                                     const ReductionOptions& opt = {}) {
  ReductionTrace trace;
  const auto cases = enumerate_exponent_cases(cfg);
  if (cases.empty()) throw PreconditionError("reduction_loop: no exponent cases");
  mpz_class N = N0;
  mpz_class K = opt.K ? *opt.K : cfg.default_K;
  if (K < 1) K = next_round_K(N, cs.r);
  trace.final_bound = N0;
  for (int round = 1; round <= opt.max_rounds; ++round) {
    ReductionRound rr;
    rr.round = round;
    rr.N_in = N;
    rr.K = K;
    mpz_class worst = 0;
    bool ok = true;
    for (const auto& ec : cases) {
      CaseResult cr = reduce_case(cfg, ec, conj, cs, N, K, opt);
      if (!cr.bound) {
        ok = false;
        trace.failure = "case " + cr.case_label + ": c not certified positive after " + std::to_string(opt.max_retries) +
                        " K escalations in round " + std::to_string(round);
      } else if (*cr.bound > worst) {
        worst = *cr.bound;
      }
      rr.cases.push_back(std::move(cr));
    }
    if (ok) rr.bound = worst;
    trace.rounds.push_back(std::move(rr));
    if (!ok) break;
    if (worst >= N) break;
    N = worst;
    trace.final_bound = N;
    trace.succeeded = true;
    if (N < opt.target_floor || N < 1) break;
    K = next_round_K(N, cs.r);
  }
  return trace;
}

}  // namespace cyclodio
