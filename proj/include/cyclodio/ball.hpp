#pragma once

// Midpoint-radius ("ball") arithmetic over MPFR. A Ball [m +/- r] stands for
// an unknown real number x with |x - m| <= r. Midpoints are rounded to
// nearest; every rounding that actually happened (MPFR's ternary flag) is
// added to the radius, and radii are always computed with upward rounding.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cyclodio/error.hpp"

namespace cyclodio {

/// RAII owner of an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  mpq_class to_q() const {
    if (!mpfr_number_p(v_)) throw PrecisionError("non-finite MPFR value");
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

 private:
  mpfr_t v_;
};

enum class Round { Down, Up };

class Ball {
 public:
  static constexpr mpfr_prec_t kRadPrec = 64;

  explicit Ball(mpfr_prec_t prec = 192) : mid_(prec), rad_(kRadPrec) {}

  Ball(long v, mpfr_prec_t prec) : mid_(prec), rad_(kRadPrec) {
    note_rounding(mpfr_set_si(mid_.get(), v, MPFR_RNDN));
  }
  Ball(const mpz_class& v, mpfr_prec_t prec) : mid_(prec), rad_(kRadPrec) {
    note_rounding(mpfr_set_z(mid_.get(), v.get_mpz_t(), MPFR_RNDN));
  }
  Ball(const mpq_class& v, mpfr_prec_t prec) : mid_(prec), rad_(kRadPrec) {
    note_rounding(mpfr_set_q(mid_.get(), v.get_mpq_t(), MPFR_RNDN));
  }

  /// Exact copy of an MPFR value as a zero-radius ball.
  static Ball exact(const Mpfr& v) {
    Ball b(v.prec());
    mpfr_set(b.mid_.get(), v.get(), MPFR_RNDN);
    return b;
  }

  /// Smallest ball (up to rounding) containing [lo, hi].
  static Ball from_interval(const Mpfr& lo, const Mpfr& hi, mpfr_prec_t prec) {
    if (mpfr_cmp(lo.get(), hi.get()) > 0) throw DomainError("from_interval: lo > hi");
    Ball b(prec);
    mpfr_add(b.mid_.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(b.mid_.get(), b.mid_.get(), 1, MPFR_RNDN);
    Mpfr a(kRadPrec), c(kRadPrec);
    mpfr_sub(a.get(), hi.get(), b.mid_.get(), MPFR_RNDU);
    mpfr_sub(c.get(), b.mid_.get(), lo.get(), MPFR_RNDU);
    mpfr_max(b.rad_.get(), a.get(), c.get(), MPFR_RNDU);
    return b;
  }

  static Ball pi(mpfr_prec_t prec) {
    Ball b(prec);
    b.note_rounding(mpfr_const_pi(b.mid_.get(), MPFR_RNDN));
    return b;
  }

  mpfr_prec_t prec() const { return mid_.prec(); }
  const Mpfr& mid() const { return mid_; }
  const Mpfr& rad() const { return rad_; }
  double mid_d() const { return mid_.to_double(); }
  double rad_d() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

  Mpfr lower() const {
    Mpfr r(prec());
    mpfr_sub(r.get(), mid_.get(), rad_.get(), MPFR_RNDD);
    return r;
  }
  Mpfr upper() const {
    Mpfr r(prec());
    mpfr_add(r.get(), mid_.get(), rad_.get(), MPFR_RNDU);
    return r;
  }
  mpq_class lower_q() const { return lower().to_q(); }
  mpq_class upper_q() const { return upper().to_q(); }

  bool is_exact() const { return mpfr_zero_p(rad_.get()) != 0; }
  bool is_positive() const { return mpfr_sgn(lower().get()) > 0; }
  bool is_negative() const { return mpfr_sgn(upper().get()) < 0; }
  bool contains_zero() const { return !is_positive() && !is_negative(); }

  bool contains(const mpq_class& x) const {
    return mpq_class(lower_q() - x) <= 0 && mpq_class(upper_q() - x) >= 0;
  }

  /// Radius relative to |mid|; +inf when the ball contains zero.
  double rel_radius() const {
    if (mpfr_zero_p(mid_.get())) return is_exact() ? 0.0 : HUGE_VAL;
    Mpfr q(kRadPrec);
    mpfr_div(q.get(), rad_.get(), mid_.get(), MPFR_RNDU);
    return std::fabs(mpfr_get_d(q.get(), MPFR_RNDU));
  }

  /// Number of decimal significant digits of mid guaranteed by the radius.
  int certified_digits() const {
    if (is_exact()) return static_cast<int>(static_cast<double>(prec()) * 0.30103);
    double rr = rel_radius();
    if (!(rr > 0) || std::isinf(rr)) return 0;
    int d = static_cast<int>(std::floor(-std::log10(rr)));
    return std::max(0, d);
  }

  /// "m +/- r" with m printed to `digits` significant digits.
  std::string to_string(int digits = 20) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re +/- %.2Re", std::max(0, digits - 1), mid_.get(), rad_.get());
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  std::string mid_string(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", std::max(0, digits - 1), mid_.get());
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  // Access for the arithmetic below.
  Mpfr& mid_mut() { return mid_; }
  Mpfr& rad_mut() { return rad_; }

  /// Adds the bound |mid| 2^(1-prec) on a nearest rounding of mid to the radius.
  void note_rounding(int ternary) {
    if (ternary == 0) return;
    Mpfr e(kRadPrec);
    mpfr_abs(e.get(), mid_.get(), MPFR_RNDU);
    mpfr_mul_2si(e.get(), e.get(), 1 - static_cast<long>(prec()), MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), e.get(), MPFR_RNDU);
  }

  void add_radius(const Mpfr& extra) { mpfr_add(rad_.get(), rad_.get(), extra.get(), MPFR_RNDU); }

 private:
  Mpfr mid_;
  Mpfr rad_;
};

namespace detail {

inline Mpfr abs_up(const Mpfr& x) {
  Mpfr r(Ball::kRadPrec);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  return r;
}
inline Mpfr abs_down(const Mpfr& x, mpfr_prec_t prec = Ball::kRadPrec) {
  Mpfr r(prec);
  mpfr_abs(r.get(), x.get(), MPFR_RNDD);
  return r;
}
inline Mpfr add_up(const Mpfr& a, const Mpfr& b) {
  Mpfr r(Ball::kRadPrec);
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}
inline Mpfr mul_up(const Mpfr& a, const Mpfr& b) {
  Mpfr r(Ball::kRadPrec);
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}
inline Mpfr div_up(const Mpfr& a, const Mpfr& b) {
  Mpfr r(Ball::kRadPrec);
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

}  // namespace detail

inline Ball operator-(const Ball& a) {
  Ball r = a;
  mpfr_neg(r.mid_mut().get(), a.mid().get(), MPFR_RNDN);
  return r;
}

inline Ball operator+(const Ball& a, const Ball& b) {
  Ball r(std::max(a.prec(), b.prec()));
  mpfr_set(r.rad_mut().get(), detail::add_up(a.rad(), b.rad()).get(), MPFR_RNDU);
  r.note_rounding(mpfr_add(r.mid_mut().get(), a.mid().get(), b.mid().get(), MPFR_RNDN));
  return r;
}

inline Ball operator-(const Ball& a, const Ball& b) {
  Ball r(std::max(a.prec(), b.prec()));
  mpfr_set(r.rad_mut().get(), detail::add_up(a.rad(), b.rad()).get(), MPFR_RNDU);
  r.note_rounding(mpfr_sub(r.mid_mut().get(), a.mid().get(), b.mid().get(), MPFR_RNDN));
  return r;
}

inline Ball operator*(const Ball& a, const Ball& b) {
  using namespace detail;
  Ball r(std::max(a.prec(), b.prec()));
  Mpfr t = add_up(mul_up(abs_up(a.mid()), b.rad()), mul_up(abs_up(b.mid()), a.rad()));
  t = add_up(t, mul_up(a.rad(), b.rad()));
  mpfr_set(r.rad_mut().get(), t.get(), MPFR_RNDU);
  r.note_rounding(mpfr_mul(r.mid_mut().get(), a.mid().get(), b.mid().get(), MPFR_RNDN));
  return r;
}

inline Ball operator/(const Ball& a, const Ball& b) {
  using namespace detail;
  if (b.contains_zero()) throw PrecisionError("division by a ball containing zero");
  Ball r(std::max(a.prec(), b.prec()));
  Mpfr bm = abs_down(b.mid());
  Mpfr gap(Ball::kRadPrec);
  mpfr_sub(gap.get(), bm.get(), b.rad().get(), MPFR_RNDD);
  Mpfr den(Ball::kRadPrec);
  mpfr_mul(den.get(), bm.get(), gap.get(), MPFR_RNDD);
  Mpfr num = add_up(mul_up(abs_up(a.mid()), b.rad()), mul_up(abs_up(b.mid()), a.rad()));
  mpfr_set(r.rad_mut().get(), div_up(num, den).get(), MPFR_RNDU);
  r.note_rounding(mpfr_div(r.mid_mut().get(), a.mid().get(), b.mid().get(), MPFR_RNDN));
  return r;
}

inline Ball& operator+=(Ball& a, const Ball& b) { return a = a + b; }
inline Ball& operator-=(Ball& a, const Ball& b) { return a = a - b; }
inline Ball& operator*=(Ball& a, const Ball& b) { return a = a * b; }
inline Ball& operator/=(Ball& a, const Ball& b) { return a = a / b; }

inline Ball operator*(long s, const Ball& a) { return Ball(s, a.prec()) * a; }
inline Ball operator/(const Ball& a, long s) { return a / Ball(s, a.prec()); }

/// Exact scaling by 2^e.
inline Ball mul_2si(const Ball& a, long e) {
  Ball r = a;
  mpfr_mul_2si(r.mid_mut().get(), a.mid().get(), e, MPFR_RNDN);
  mpfr_mul_2si(r.rad_mut().get(), a.rad().get(), e, MPFR_RNDU);
  return r;
}

inline Ball pow_ui(const Ball& a, unsigned long n) {
  Ball r(1L, a.prec());
  Ball base = a;
  while (n) {
    if (n & 1UL) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

inline Ball abs(const Ball& a) {
  if (!a.contains_zero()) return a.is_negative() ? -a : a;
  Mpfr lo(a.prec()), hi(a.prec());
  Mpfr l = a.lower(), u = a.upper();
  mpfr_abs(l.get(), l.get(), MPFR_RNDU);
  mpfr_max(hi.get(), l.get(), u.get(), MPFR_RNDU);
  return Ball::from_interval(lo, hi, a.prec());
}

inline Ball ball_max(const Ball& a, const Ball& b) {
  const mpfr_prec_t prec = std::max(a.prec(), b.prec());
  Mpfr lo(prec), hi(prec);
  mpfr_max(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return Ball::from_interval(lo, hi, prec);
}

inline Ball ball_min(const Ball& a, const Ball& b) {
  const mpfr_prec_t prec = std::max(a.prec(), b.prec());
  Mpfr lo(prec), hi(prec);
  mpfr_min(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_min(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return Ball::from_interval(lo, hi, prec);
}

/// a < b for every pair of represented values.
inline bool certainly_less(const Ball& a, const Ball& b) {
  return mpfr_cmp(a.upper().get(), b.lower().get()) < 0;
}

inline Ball sqrt(const Ball& a) {
  using namespace detail;
  if (a.is_negative()) throw DomainError("sqrt of a negative ball");
  Mpfr lo = a.lower();
  if (mpfr_sgn(lo.get()) <= 0) {
    Mpfr hi(a.prec()), zero(a.prec());
    mpfr_sqrt(hi.get(), a.upper().get(), MPFR_RNDU);
    return Ball::from_interval(zero, hi, a.prec());
  }
  Ball r(a.prec());
  // |sqrt(x) - sqrt(m)| <= r / (2 sqrt(m - r))
  Mpfr s(Ball::kRadPrec);
  mpfr_sqrt(s.get(), lo.get(), MPFR_RNDD);
  mpfr_mul_2ui(s.get(), s.get(), 1, MPFR_RNDD);
  mpfr_set(r.rad_mut().get(), div_up(a.rad(), s).get(), MPFR_RNDU);
  r.note_rounding(mpfr_sqrt(r.mid_mut().get(), a.mid().get(), MPFR_RNDN));
  return r;
}

inline Ball log(const Ball& a) {
  using namespace detail;
  if (!a.is_positive()) throw PrecisionError("log of a ball that is not certainly positive");
  Ball r(a.prec());
  // |log x - log m| <= r / (m - r)
  Mpfr lo(Ball::kRadPrec);
  mpfr_set(lo.get(), a.lower().get(), MPFR_RNDD);
  mpfr_set(r.rad_mut().get(), div_up(a.rad(), lo).get(), MPFR_RNDU);
  r.note_rounding(mpfr_log(r.mid_mut().get(), a.mid().get(), MPFR_RNDN));
  return r;
}

inline Ball exp(const Ball& a) {
  using namespace detail;
  Ball r(a.prec());
  // |e^x - e^m| <= e^(m + r) r
  Mpfr e(Ball::kRadPrec);
  mpfr_exp(e.get(), a.upper().get(), MPFR_RNDU);
  mpfr_set(r.rad_mut().get(), mul_up(e, a.rad()).get(), MPFR_RNDU);
  r.note_rounding(mpfr_exp(r.mid_mut().get(), a.mid().get(), MPFR_RNDN));
  return r;
}

/// x^(num/den) for x > 0.
inline Ball pow_rational(const Ball& x, long num, long den) {
  return exp(Ball(num, x.prec()) * log(x) / Ball(den, x.prec()));
}

/// Round the ball outward to `digits` significant decimal digits: the result
/// is an exact decimal rational >= every represented value (Round::Up) or
/// <= every represented value (Round::Down).
inline mpq_class round_sig(const Ball& b, int digits, Round dir) {
  const mpq_class v = dir == Round::Up ? b.upper_q() : b.lower_q();
  if (v == 0) return v;
  const mpq_class mag = abs(v);
  // Decimal exponent e with 10^e <= |v| < 10^(e+1).
  long e = static_cast<long>(std::floor(std::log10(std::fabs(mag.get_d()))));
  auto pow10 = [](long k) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? mpq_class(1, t) : mpq_class(t);
  };
  while (mpq_class(pow10(e) - mag) > 0) --e;
  while (mpq_class(pow10(e + 1) - mag) <= 0) ++e;
  const mpq_class quantum = pow10(e - digits + 1);
  const mpq_class scaled = v / quantum;
  mpz_class n;
  if (dir == Round::Up)
    mpz_cdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  else
    mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  mpq_class out = mpq_class(n) * quantum;
  out.canonicalize();
  return out;
}

/// Decimal rendering of an exact rational with `digits` significant digits
/// (truncating), e.g. "8.706", "0.4970", "1.465e+25".
inline std::string format_sig(const mpq_class& v, int digits) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  const mpq_class mag = neg ? mpq_class(-v) : v;
  long e = static_cast<long>(std::floor(std::log10(mag.get_d())));
  auto pow10 = [](long k) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? mpq_class(1, t) : mpq_class(t);
  };
  while (mpq_class(pow10(e) - mag) > 0) --e;
  while (mpq_class(pow10(e + 1) - mag) <= 0) ++e;
  const mpq_class scaled = mag / pow10(e - digits + 1);
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  std::string m = n.get_str();
  std::string out = neg ? "-" : "";
  if (e >= 6 || e < -4) {
    out += m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
  } else if (e >= 0) {
    const auto ip = static_cast<std::size_t>(e + 1);
    if (m.size() <= ip) {
      out += m + std::string(ip - m.size(), '0');
    } else {
      out += m.substr(0, ip) + "." + m.substr(ip);
    }
  } else {
    out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + m;
  }
  return out;
}

/// Complex ball as a rectangle of two real balls.
struct ComplexBall {
  Ball re;
  Ball im;

  explicit ComplexBall(mpfr_prec_t prec = 192) : re(prec), im(prec) {}
  ComplexBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
};

inline ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) { return {a.re + b.re, a.im + b.im}; }
inline ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) { return {a.re - b.re, a.im - b.im}; }
inline ComplexBall operator-(const ComplexBall& a) { return {-a.re, -a.im}; }
inline ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexBall operator*(const Ball& s, const ComplexBall& a) { return {s * a.re, s * a.im}; }
inline ComplexBall conj(const ComplexBall& a) { return {a.re, -a.im}; }

inline Ball norm_sq(const ComplexBall& a) { return a.re * a.re + a.im * a.im; }
inline Ball abs(const ComplexBall& a) { return sqrt(norm_sq(a)); }

inline ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  Ball n = norm_sq(b);
  ComplexBall t = a * conj(b);
  return {t.re / n, t.im / n};
}

/// |arg z| in [0, pi], as atan2(|Im z|, Re z); z must be certainly nonzero.
inline Ball arg_abs(const ComplexBall& z) {
  using namespace detail;
  const mpfr_prec_t prec = z.prec();
  Ball y = abs(z.im);
  Ball r = abs(z);
  if (!r.is_positive()) throw PrecisionError("arg of a ball containing zero");
  Ball out(prec);
  out.note_rounding(mpfr_atan2(out.mid_mut().get(), y.mid().get(), z.re.mid().get(), MPFR_RNDN));
  // Moving the point by at most rho changes the angle by at most
  // asin(rho / |z|) <= (pi/2) rho / |z|.
  Mpfr rho = add_up(y.rad(), z.re.rad());
  Mpfr rlo(Ball::kRadPrec);
  mpfr_set(rlo.get(), r.lower().get(), MPFR_RNDD);
  if (mpfr_cmp(rho.get(), rlo.get()) >= 0) {
    Mpfr zero(prec), pi(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDU);
    return Ball::from_interval(zero, pi, prec);
  }
  Mpfr t = div_up(rho, rlo);
  mpfr_mul_2ui(t.get(), t.get(), 1, MPFR_RNDU);
  out.add_radius(t);
  return out;
}

}  // namespace cyclodio
