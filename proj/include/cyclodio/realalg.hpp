#pragma once

// Certified numerics over the complex embeddings of K = Q(alpha): roots of f
// with proven enclosures, absolute values of conjugates, logarithmic
// heights, regulators, and the explicit constants of the S-unit inequality.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cyclodio/ball.hpp"
#include "cyclodio/error.hpp"
#include "cyclodio/numberfield.hpp"
#include "cyclodio/poly.hpp"

namespace cyclodio {

inline constexpr mpfr_prec_t kPrecisionFloor = 192;
inline constexpr int kConstantDigits = 4;

inline ComplexBall complex_from(const Ball& re) { return {re, Ball(re.prec())}; }

/// Drops the radius: the midpoint as an exact ball.
inline ComplexBall midpoint(const ComplexBall& z) { return {Ball::exact(z.re.mid()), Ball::exact(z.im.mid())}; }

inline ComplexBall eval_complex(const IntPoly& f, const ComplexBall& z) {
  const mpfr_prec_t prec = z.prec();
  ComplexBall acc(prec);
  for (int i = f.degree(); i >= 0; --i)
    acc = acc * z + complex_from(Ball(f.coeff(static_cast<std::size_t>(i)), prec));
  return acc;
}

inline ComplexBall eval_complex(const FieldElement& a, const ComplexBall& z) {
  ComplexBall v = eval_complex(a.numerator(), z);
  if (a.denominator() == 1) return v;
  Ball den(a.denominator(), z.prec());
  return {v.re / den, v.im / den};
}

namespace detail {

using cld = std::complex<long double>;

inline std::vector<cld> aberth_seed(const IntPoly& f) {
  const int d = f.degree();
  std::vector<long double> a;
  for (const auto& c : f.coeffs()) a.push_back(static_cast<long double>(c.get_d()));
  auto horner = [&](const std::vector<long double>& cs, cld z) {
    cld acc = 0;
    for (std::size_t i = cs.size(); i-- > 0;) acc = acc * z + cs[i];
    return acc;
  };
  std::vector<long double> da;
  for (std::size_t i = 1; i < a.size(); ++i) da.push_back(static_cast<long double>(i) * a[i]);
  long double bound = 0;
  for (int i = 0; i < d; ++i) bound = std::max(bound, std::fabs(a[static_cast<std::size_t>(i)] / a.back()));
  const long double radius = 0.5L * (1.0L + bound);
  std::vector<cld> z(static_cast<std::size_t>(d));
  const long double two_pi = 6.283185307179586476925286766559L;
  for (int k = 0; k < d; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, two_pi * k / d + 0.4L);
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      cld w = horner(a, z[k]) / horner(da, z[k]);
      cld s = 0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      cld step = w / (1.0L - w * s);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

inline std::vector<ComplexBall> certified_roots_at(const IntPoly& f, mpfr_prec_t prec) {
  const int d = f.degree();
  const IntPoly df = poly_derivative(f);
  std::vector<ComplexBall> mids;
  for (const auto& s : aberth_seed(f)) {
    Mpfr re(prec), im(prec);
    mpfr_set_ld(re.get(), s.real(), MPFR_RNDN);
    mpfr_set_ld(im.get(), s.imag(), MPFR_RNDN);
    ComplexBall z{Ball::exact(re), Ball::exact(im)};
    for (int iter = 0; iter < 200; ++iter) {
      ComplexBall fz = eval_complex(f, z);
      ComplexBall dz = eval_complex(df, z);
      if (abs(dz).contains_zero()) break;
      ComplexBall step = midpoint(fz / dz);
      z = midpoint(z - step);
      // Stop once the Newton step is below the working precision.
      double sr = std::fabs(step.re.mid_d()) + std::fabs(step.im.mid_d());
      double zr = std::max(1.0, std::fabs(z.re.mid_d()) + std::fabs(z.im.mid_d()));
      if (sr == 0.0 || std::log2(sr / zr) < -static_cast<double>(prec) + 8) break;
    }
    mids.push_back(z);
  }
  // A disc of radius d |f(z)| / |f'(z)| around z contains a root of f; if the
  // d discs are pairwise disjoint they isolate all d roots.
  std::vector<Mpfr> radii;
  for (const auto& z : mids) {
    Ball fz = abs(eval_complex(f, z));
    Ball dz = abs(eval_complex(df, z));
    if (!dz.is_positive()) throw PrecisionError("complex_roots: f'(z) not certified nonzero");
    Ball r = Ball(static_cast<long>(d), prec) * Ball::exact(fz.upper()) / Ball::exact(dz.lower());
    radii.push_back(r.upper());
  }
  for (std::size_t i = 0; i < mids.size(); ++i)
    for (std::size_t j = i + 1; j < mids.size(); ++j) {
      Ball sep = abs(mids[i] - mids[j]);
      Mpfr sum(Ball::kRadPrec);
      mpfr_add(sum.get(), radii[i].get(), radii[j].get(), MPFR_RNDU);
      if (mpfr_cmp(sep.lower().get(), sum.get()) <= 0) throw PrecisionError("complex_roots: root discs overlap");
    }
  std::vector<ComplexBall> out;
  for (std::size_t i = 0; i < mids.size(); ++i) {
    ComplexBall z = mids[i];
    z.re.add_radius(radii[i]);
    z.im.add_radius(radii[i]);
    out.push_back(z);
  }
  return out;
}

}  // namespace detail

/// All complex roots of the squarefree polynomial f, each enclosed in a
/// certified ball. The working precision is doubled (up to 16x) when the
/// enclosures cannot be separated.
inline std::vector<ComplexBall> complex_roots(const IntPoly& f, mpfr_prec_t prec) {
  if (f.degree() < 1) throw DomainError("complex_roots: degree must be positive");
  for (mpfr_prec_t p = prec; p <= 16 * prec; p *= 2) {
    try {
      return detail::certified_roots_at(f, p);
    } catch (const PrecisionError&) {
    }
  }
  throw PrecisionError("complex_roots: no convergence at maximum precision");
}

/// The d embeddings of K, ordered: roots in the upper half plane by
/// increasing argument, followed by their complex conjugates in the same
/// order, so roots[j + d/2] = conj(roots[j]).
struct ConjugateData {
  IntPoly f;
  mpfr_prec_t prec = kPrecisionFloor;
  std::vector<ComplexBall> roots;

  int degree() const { return f.degree(); }
  int pairs() const { return f.degree() / 2; }
};

inline ConjugateData conjugate_data(const IntPoly& f, mpfr_prec_t prec = kPrecisionFloor) {
  std::vector<ComplexBall> all = complex_roots(f, prec);
  std::vector<ComplexBall> upper;
  for (const auto& z : all) {
    if (z.im.is_positive())
      upper.push_back(z);
    else if (!z.im.is_negative())
      throw DomainError("conjugate_data: f has a real root (only totally complex fields are supported)");
  }
  if (2 * upper.size() != all.size()) throw DomainError("conjugate_data: roots do not pair up");
  auto arg = [](const ComplexBall& z) { return std::atan2(z.im.mid_d(), z.re.mid_d()); };
  std::stable_sort(upper.begin(), upper.end(), [&](const ComplexBall& a, const ComplexBall& b) { return arg(a) < arg(b); });
  ConjugateData out{f, prec, upper};
  for (const auto& z : upper) out.roots.push_back(conj(z));
  return out;
}

inline std::vector<ComplexBall> embed(const FieldElement& a, const ConjugateData& conj) {
  std::vector<ComplexBall> out;
  for (const auto& z : conj.roots) out.push_back(eval_complex(a, z));
  return out;
}

/// |a^(j)| for every embedding j.
inline std::vector<Ball> embed_abs(const FieldElement& a, const ConjugateData& conj) {
  std::vector<Ball> out;
  for (const auto& v : embed(a, conj)) out.push_back(abs(v));
  return out;
}

/// |Log z| for the principal branch: sqrt(log|z|^2 + arg(z)^2).
inline Ball principal_log_abs(const ComplexBall& z) {
  Ball lr = log(abs(z));
  Ball th = arg_abs(z);
  return sqrt(lr * lr + th * th);
}

struct HeightData {
  IntPoly charpoly;  ///< primitive integer characteristic polynomial
  mpz_class a0;      ///< its leading coefficient
  Ball d_height;     ///< d h(a) = log a0 + sum_j log max(|a^(j)|, 1)
  Ball max_log;      ///< max_j |Log a^(j)|

  /// max(d h, max |Log|, 0.16), the Matveev-admissible A for this number.
  Ball admissible() const {
    Ball floor_val(mpq_class(4, 25), d_height.prec());
    return ball_max(ball_max(d_height, max_log), floor_val);
  }
};

inline HeightData height_data(const FieldElement& a, const ConjugateData& conj) {
  if (a.is_zero()) throw DomainError("log_height: zero element");
  HeightData h;
  h.charpoly = nf_charpoly(a, conj.f);
  h.a0 = h.charpoly.leading();
  const mpfr_prec_t prec = conj.prec;
  Ball sum = log(Ball(h.a0, prec));
  Ball one(1L, prec);
  std::optional<Ball> worst;
  for (const auto& v : embed(a, conj)) {
    sum += log(ball_max(abs(v), one));
    Ball l = principal_log_abs(v);
    worst = worst ? ball_max(*worst, l) : l;
  }
  h.d_height = sum;
  h.max_log = *worst;
  return h;
}

/// Absolute logarithmic height h(a).
inline Ball log_height(const FieldElement& a, const IntPoly& f, const ConjugateData& conj) {
  if (!(f == conj.f)) throw DomainError("log_height: conjugate data belongs to a different polynomial");
  HeightData h = height_data(a, conj);
  return h.d_height / Ball(static_cast<long>(f.degree()), conj.prec);
}

// ---------------------------------------------------------------------------
// Unit logarithm matrices

using BallMatrix = std::vector<std::vector<Ball>>;

inline Ball ball_det(const BallMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Ball(1L, kPrecisionFloor);
  if (n == 1) return m[0][0];
  Ball acc(m[0][0].prec());
  for (std::size_t c = 0; c < n; ++c) {
    BallMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Ball> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Ball term = m[0][c] * ball_det(minor);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

/// logs[i][k] = log |beta_k^(i)| for the pair representatives i = 0..d/2-1.
inline BallMatrix unit_log_matrix(const std::vector<FieldElement>& units, const ConjugateData& conj) {
  BallMatrix out(static_cast<std::size_t>(conj.pairs()));
  for (const auto& u : units) {
    std::vector<Ball> a = embed_abs(u, conj);
    for (int i = 0; i < conj.pairs(); ++i) out[static_cast<std::size_t>(i)].push_back(log(a[static_cast<std::size_t>(i)]));
  }
  return out;
}

inline BallMatrix select_rows(const BallMatrix& m, const std::vector<int>& rows) {
  BallMatrix out;
  for (int r : rows) out.push_back(m[static_cast<std::size_t>(r)]);
  return out;
}

/// |det(log|beta_k^(i)|)| over the first (rank) pair representatives. The
/// rows over all pairs sum to zero, so any choice of rows gives the same
/// value.
inline Ball regulator(const std::vector<FieldElement>& units, const ConjugateData& conj) {
  const auto t = static_cast<int>(units.size());
  if (t != conj.pairs() - 1)
    throw DomainError("regulator: expected " + std::to_string(conj.pairs() - 1) + " units, got " + std::to_string(t));
  if (t == 0) return Ball(1L, conj.prec);
  BallMatrix m = unit_log_matrix(units, conj);
  std::vector<int> rows(static_cast<std::size_t>(t));
  std::iota(rows.begin(), rows.end(), 0);
  Ball det = abs(ball_det(select_rows(m, rows)));
  if (det.contains_zero()) throw DomainError("regulator: singular unit log matrix (not independent units)");
  return det;
}

/// Regulator in the convention that weights each complex place by 2.
inline Ball regulator_doubled_log(const Ball& reg, std::size_t rank) { return mul_2si(reg, static_cast<long>(rank)); }

struct CramerData {
  std::vector<int> rows;  ///< 0-based pair indices of the chosen equations
  Ball det_abs;           ///< |det| of the chosen t x t block (= regulator)
  Ball max_minor;         ///< max |(t-1) x (t-1) minor| of that block
};

/// Picks the t conjugate rows minimizing max|minor| / |det| (lexicographic
/// tie-break). Cramer's rule then bounds every exponent by
/// t * max|u_i| * max|minor| / |det|.
inline CramerData cramer_rows(const std::vector<FieldElement>& units, const ConjugateData& conj) {
  const auto t = static_cast<int>(units.size());
  if (t == 0) throw DomainError("cramer_rows: no units");
  const BallMatrix m = unit_log_matrix(units, conj);
  std::optional<CramerData> best;
  std::vector<int> rows(static_cast<std::size_t>(t));
  std::vector<bool> pick(static_cast<std::size_t>(conj.pairs()), false);
  std::fill(pick.begin(), pick.begin() + t, true);
  do {
    rows.clear();
    for (int i = 0; i < conj.pairs(); ++i)
      if (pick[static_cast<std::size_t>(i)]) rows.push_back(i);
    BallMatrix block = select_rows(m, rows);
    Ball det = abs(ball_det(block));
    if (det.contains_zero()) continue;
    Ball worst(1L, conj.prec);
    if (t > 1) {
      std::optional<Ball> w;
      for (int a = 0; a < t; ++a)
        for (int b = 0; b < t; ++b) {
          BallMatrix minor;
          for (int r = 0; r < t; ++r) {
            if (r == a) continue;
            std::vector<Ball> row;
            for (int c = 0; c < t; ++c)
              if (c != b) row.push_back(block[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
            minor.push_back(std::move(row));
          }
          Ball v = abs(ball_det(minor));
          w = w ? ball_max(*w, v) : v;
        }
      worst = *w;
    }
    const double score = worst.mid_d() / det.mid_d();
    if (!best || score < best->max_minor.mid_d() / best->det_abs.mid_d()) best = CramerData{rows, det, worst};
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (!best) throw DomainError("cramer_rows: every unit log block is singular");
  return *best;
}

// ---------------------------------------------------------------------------
// Constants of the S-unit inequality

/// Lower bound for |y| = |x - alpha| once p^n > (2 * 10^10)^d.
inline mpz_class y_floor() { return mpz_class(20000000000L); }

struct ElementHeight {
  std::string label;
  HeightData data;
};

struct ConstantSet {
  int d = 0;
  int r = 0;
  long p = 0;
  long n_lower = 0;
  mpq_class root_shift;
  /// max_j |f^(i)(alpha^(j))| / i! for i = 1..d-1, rounded up.
  std::vector<mpq_class> derivative_bounds;
  mpq_class delta_min, delta_max, gamma_min, gamma_max;
  mpq_class C1, C2, C3, C4, C5, C6, C7, C8;
  /// Certified derivative sum behind C2 before rounding; C3 >= c2_sum / C1.
  Ball c2_sum;
  Ball regulator;
  mpq_class regulator_low;
  mpq_class R2 = 1;
  std::vector<int> cramer_rows;  ///< 1-based
  /// A_1..A_r (rounded up), pooled over all exponent cases.
  std::vector<mpq_class> A;
  std::vector<ElementHeight> heights;
};

namespace detail {

inline mpq_class round4(const Ball& b, Round dir) {
  if (b.rel_radius() > 1e-12) throw PrecisionError("constant not certified to 4 significant digits: " + b.to_string(6));
  return round_sig(b, kConstantDigits, dir);
}

}  // namespace detail

/// Outward-rounded 1 + max|alpha^(j)|.
inline mpq_class root_shift_for(const ConjugateData& conj) {
  std::optional<Ball> m;
  for (const auto& z : conj.roots) m = m ? ball_max(*m, abs(z)) : abs(z);
  return detail::round4(*m + Ball(1L, conj.prec), Round::Up);
}

/// All constants C1..C8 and A_1..A_r for a configuration. Every constant is
/// rounded outward to 4 significant digits and the rounded value is what
/// later constants (and later stages) consume.
inline ConstantSet compute_constants(const CaseConfig& cfg, const ConjugateData& conj, long n_lower) {
  using detail::round4;
  const int d = cfg.d;
  const mpfr_prec_t prec = conj.prec;
  if (!(cfg.f == conj.f)) throw DomainError("compute_constants: conjugate data belongs to a different polynomial");
  if (n_lower < 1 || ipow(mpz_class(cfg.p), static_cast<unsigned long>(n_lower)) <=
                         ipow(y_floor(), static_cast<unsigned long>(d)))
    throw PreconditionError("compute_constants: need p^n_lower > (2*10^10)^d, n_lower = " + std::to_string(n_lower));

  const auto cases = enumerate_exponent_cases(cfg);
  if (cases.empty()) throw PreconditionError("compute_constants: no exponent cases");

  ConstantSet cs;
  cs.d = d;
  cs.p = cfg.p;
  cs.n_lower = n_lower;
  cs.r = 2 + static_cast<int>(cfg.units.size());
  cs.root_shift = cfg.root_shift != 0 ? cfg.root_shift : root_shift_for(conj);

  const Ball P(cfg.p, prec);
  const Ball dB(static_cast<long>(d), prec);
  const Ball p_root = pow_rational(P, 1, d);
  const Ball two_root = pow_rational(Ball(2L, prec), 1, d);
  const Ball eps = Ball(cs.root_shift, prec) * exp(-Ball(n_lower, prec) * log(P) / dB);
  cs.C1 = round4(two_root - eps, Round::Down);
  cs.C4 = round4(two_root + eps, Round::Up);

  // |z - y^(d-1)| < |y|^(d-2) sum_i (|f^(i)(alpha)|/i!) / |y|^(d-1-i)
  const Ball Y(y_floor(), prec);
  Ball sum(prec);
  mpq_class sum_rounded = 0;
  for (int i = 1; i <= d - 1; ++i) {
    IntPoly t = taylor_coefficient(cfg.f, static_cast<unsigned>(i));
    std::optional<Ball> worst;
    for (const auto& z : conj.roots) {
      Ball v = abs(eval_complex(t, z));
      worst = worst ? ball_max(*worst, v) : v;
    }
    mpq_class rounded = round4(*worst, Round::Up);
    cs.derivative_bounds.push_back(rounded);
    const auto e = static_cast<unsigned long>(d - 1 - i);
    sum += *worst / pow_ui(Y, e);
    sum_rounded += rounded / mpq_class(ipow(y_floor(), e));
  }
  cs.c2_sum = sum;
  cs.C2 = round4(Ball(sum_rounded, prec), Round::Up);
  cs.C3 = round4(Ball::exact(sum.upper()) / Ball(cs.C1, prec), Round::Up);

  // Ranges of |delta^(i)| and |gamma^(i)| over all cases, rounded outward.
  auto range = [&](const std::vector<FieldElement>& elems) {
    std::optional<Ball> lo, hi;
    for (const auto& e : elems)
      for (const auto& v : embed_abs(e, conj)) {
        lo = lo ? ball_min(*lo, v) : v;
        hi = hi ? ball_max(*hi, v) : v;
      }
    return std::pair{round4(*lo, Round::Down), round4(*hi, Round::Up)};
  };
  std::vector<FieldElement> gammas;
  for (const auto& g : cfg.gammas)
    if (g.norm_exponent == 1) gammas.push_back(g.element);
  std::tie(cs.delta_min, cs.delta_max) = range(cfg.deltas);
  std::tie(cs.gamma_min, cs.gamma_max) = range(gammas);

  cs.C5 = round4(ball_max(log(p_root / Ball(cs.gamma_min, prec)), log(Ball(cs.gamma_max, prec) / p_root)), Round::Up);
  cs.C6 = round4(ball_max(log(Ball(cs.C4, prec) / Ball(cs.delta_min, prec)), log(Ball(cs.delta_max, prec) / Ball(cs.C1, prec))),
                 Round::Up);

  const auto t = static_cast<long>(cfg.units.size());
  if (t > 0) {
    cs.regulator = regulator(cfg.units, conj);
    CramerData cd = cramer_rows(cfg.units, conj);
    for (int r : cd.rows) cs.cramer_rows.push_back(r + 1);
    cs.R2 = t > 1 ? round4(cd.max_minor, Round::Up) : mpq_class(1);
    cs.regulator_low = round4(cd.det_abs, Round::Down);
    const mpq_class ratio = mpq_class(t) * cs.R2 / cs.regulator_low;
    cs.C7 = round4(Ball(mpq_class(ratio * cs.C5), prec), Round::Up);
    cs.C8 = round4(Ball(mpq_class(ratio * cs.C6), prec), Round::Up);
  } else {
    cs.regulator = Ball(1L, prec);
    cs.regulator_low = 1;
  }

  // A_j: eta_1 = 2/delta^d, eta_2 = p/gamma^d, eta_{2+k} = beta_k.
  auto admissible_max = [&](const std::vector<std::pair<std::string, FieldElement>>& etas) {
    std::optional<Ball> best;
    for (const auto& [label, eta] : etas) {
      HeightData h = height_data(eta, conj);
      Ball a = h.admissible();
      best = best ? ball_max(*best, a) : a;
      cs.heights.push_back({label, std::move(h)});
    }
    return round4(*best, Round::Up);
  };
  std::vector<std::pair<std::string, FieldElement>> eta1, eta2;
  for (std::size_t k = 0; k < cfg.deltas.size(); ++k)
    eta1.emplace_back("2/delta_" + std::to_string(k + 1) + "^d",
                      nf_mul(FieldElement::integer(2), nf_pow(cfg.deltas[k], -d, cfg.f), cfg.f));
  for (std::size_t g = 0; g < cfg.gammas.size(); ++g) {
    if (cfg.gammas[g].norm_exponent != 1) continue;
    eta2.emplace_back("p/gamma_" + std::to_string(g + 1) + "^d",
                      nf_mul(FieldElement::integer(cfg.p), nf_pow(cfg.gammas[g].element, -d, cfg.f), cfg.f));
  }
  cs.A.push_back(admissible_max(eta1));
  cs.A.push_back(admissible_max(eta2));
  for (std::size_t k = 0; k < cfg.units.size(); ++k)
    cs.A.push_back(admissible_max({{"beta_" + std::to_string(k + 1), cfg.units[k]}}));
  return cs;
}

}  // namespace cyclodio
