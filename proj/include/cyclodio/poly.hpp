#pragma once

// Dense univariate polynomials over Z and Q, with the exact operations the
// rest of the library needs: Horner evaluation, derivatives, pseudo-division,
// subresultant resultants, discriminants and cyclotomic polynomials.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyclodio/error.hpp"

namespace cyclodio {

/// Dense polynomial, coefficient i multiplies x^i. The zero polynomial has
/// an empty coefficient vector and degree -1.
template <typename Coeff>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static Poly constant(const Coeff& v) { return Poly(std::vector<Coeff>{v}); }
  static Poly monomial(const Coeff& v, std::size_t deg) {
    std::vector<Coeff> c(deg + 1, Coeff(0));
    c[deg] = v;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(Coeff(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }
  const Coeff& leading() const { return c_.back(); }
  const std::vector<Coeff>& coeffs() const { return c_; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly operator-() const {
    std::vector<Coeff> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return Poly(std::move(r));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Coeff> r(std::max(a.c_.size(), b.c_.size()), Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Coeff> r(a.c_.size() + b.c_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(const Coeff& s, const Poly& a) {
    std::vector<Coeff> r(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = s * a.c_[i];
    return Poly(std::move(r));
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
      const Coeff& c = p.c_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      Coeff mag = c < 0 ? Coeff(-c) : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (mag != 1 || i == 0) os << mag;
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
      first = false;
    }
    return os;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Coeff> c_;
};

using IntPoly = Poly<mpz_class>;
using RatPoly = Poly<mpq_class>;

inline IntPoly int_poly(std::initializer_list<long> coeffs) { return IntPoly(coeffs); }

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<mpq_class> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return RatPoly(std::move(c));
}

/// Horner evaluation at an integer point.
inline mpz_class poly_eval(const IntPoly& f, const mpz_class& x) {
  mpz_class acc = 0;
  for (int i = f.degree(); i >= 0; --i) acc = acc * x + f.coeff(static_cast<std::size_t>(i));
  return acc;
}

inline mpq_class poly_eval(const RatPoly& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (int i = f.degree(); i >= 0; --i) acc = acc * x + f.coeff(static_cast<std::size_t>(i));
  return acc;
}

template <typename Coeff>
Poly<Coeff> poly_derivative(const Poly<Coeff>& f) {
  if (f.degree() < 1) return Poly<Coeff>();
  std::vector<Coeff> r(static_cast<std::size_t>(f.degree()));
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) r[i - 1] = Coeff(static_cast<long>(i)) * f.coeffs()[i];
  return Poly<Coeff>(std::move(r));
}

/// f^(i)/i!, which stays integral: coefficient of x^(k-i) is binom(k, i) a_k.
inline IntPoly taylor_coefficient(const IntPoly& f, unsigned i) {
  if (f.degree() < static_cast<int>(i)) return IntPoly();
  std::vector<mpz_class> r(static_cast<std::size_t>(f.degree()) - i + 1);
  for (std::size_t k = i; k < f.coeffs().size(); ++k) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), k, i);
    r[k - i] = binom * f.coeffs()[k];
  }
  return IntPoly(std::move(r));
}

/// f(g(x)).
template <typename Coeff>
Poly<Coeff> poly_compose(const Poly<Coeff>& f, const Poly<Coeff>& g) {
  Poly<Coeff> acc;
  for (int i = f.degree(); i >= 0; --i)
    acc = acc * g + Poly<Coeff>::constant(f.coeff(static_cast<std::size_t>(i)));
  return acc;
}

inline mpz_class content(const IntPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f.coeffs()) g = gcd(g, c);
  return g;
}

/// f / content(f), with the sign chosen so the leading coefficient is positive.
inline IntPoly primitive_part(const IntPoly& f) {
  if (f.is_zero()) return f;
  mpz_class g = content(f);
  if (f.leading() < 0) g = -g;
  std::vector<mpz_class> r(f.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.coeffs()[i] / g;
  return IntPoly(std::move(r));
}

inline IntPoly divide_exact(const IntPoly& f, const mpz_class& s) {
  std::vector<mpz_class> r(f.coeffs().size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!mpz_divisible_p(f.coeffs()[i].get_mpz_t(), s.get_mpz_t()))
      throw ArithmeticError("divide_exact: coefficient not divisible");
    mpz_divexact(r[i].get_mpz_t(), f.coeffs()[i].get_mpz_t(), s.get_mpz_t());
  }
  return IntPoly(std::move(r));
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) a = q b + r with deg r < deg b.
inline IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("pseudo_remainder: division by zero polynomial");
  std::vector<mpz_class> r = a.coeffs();
  const int db = b.degree();
  int dr = a.degree();
  if (dr < db) return a;
  int e = dr - db + 1;
  const mpz_class& lb = b.leading();
  while (dr >= db && !r.empty()) {
    mpz_class lr = r[static_cast<std::size_t>(dr)];
    for (auto& c : r) c *= lb;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(dr - db + i)] -= lr * b.coeff(static_cast<std::size_t>(i));
    --e;
    while (!r.empty() && r.back() == 0) r.pop_back();
    dr = static_cast<int>(r.size()) - 1;
  }
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
  for (auto& c : r) c *= scale;
  return IntPoly(std::move(r));
}

/// Exact quotient f / g in Z[x]; throws if g does not divide f.
inline IntPoly poly_divide_exact(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw DomainError("poly_divide_exact: division by zero polynomial");
  std::vector<mpz_class> rem = f.coeffs();
  const int dg = g.degree();
  int dr = f.degree();
  if (dr < dg) {
    if (f.is_zero()) return IntPoly();
    throw ArithmeticError("poly_divide_exact: not divisible");
  }
  std::vector<mpz_class> q(static_cast<std::size_t>(dr - dg + 1), 0);
  for (int k = dr - dg; k >= 0; --k) {
    mpz_class& top = rem[static_cast<std::size_t>(k + dg)];
    if (!mpz_divisible_p(top.get_mpz_t(), g.leading().get_mpz_t()))
      throw ArithmeticError("poly_divide_exact: not divisible");
    mpz_class t = top / g.leading();
    q[static_cast<std::size_t>(k)] = t;
    for (int i = 0; i <= dg; ++i) rem[static_cast<std::size_t>(k + i)] -= t * g.coeff(static_cast<std::size_t>(i));
  }
  for (const auto& c : rem)
    if (c != 0) throw ArithmeticError("poly_divide_exact: not divisible");
  return IntPoly(std::move(q));
}

/// Quotient and remainder over Q.
inline std::pair<RatPoly, RatPoly> div_rem(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw DomainError("div_rem: division by zero polynomial");
  std::vector<mpq_class> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RatPoly(), a};
  std::vector<mpq_class> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (int k = a.degree() - db; k >= 0; --k) {
    mpq_class t = r[static_cast<std::size_t>(k + db)] / b.leading();
    q[static_cast<std::size_t>(k)] = t;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(k + i)] -= t * b.coeff(static_cast<std::size_t>(i));
  }
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

/// Returns (g, u) with g = gcd(a, b) monic and u a = g mod b.
inline std::pair<RatPoly, RatPoly> half_xgcd(const RatPoly& a, const RatPoly& b) {
  RatPoly r0 = a, r1 = b;
  RatPoly s0 = RatPoly::constant(1), s1;
  while (!r1.is_zero()) {
    auto [q, r] = div_rem(r0, r1);
    RatPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {r0, s0};
  mpq_class inv = 1 / r0.leading();
  return {inv * r0, inv * s0};
}

/// Res(f, g) by the subresultant polynomial remainder sequence.
inline mpz_class resultant(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() && g.is_zero()) throw DomainError("resultant: both polynomials are zero");
  if (f.is_zero() || g.is_zero()) return 0;
  if (f.degree() == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), f.leading().get_mpz_t(), static_cast<unsigned long>(g.degree()));
    return r;
  }
  if (g.degree() == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), g.leading().get_mpz_t(), static_cast<unsigned long>(f.degree()));
    return r;
  }

  IntPoly a = f, b = g;
  long sign = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
  }
  const mpz_class ca = content(a), cb = content(b);
  a = divide_exact(a, ca);
  b = divide_exact(b, cb);
  mpz_class t, tmp;
  mpz_pow_ui(t.get_mpz_t(), ca.get_mpz_t(), static_cast<unsigned long>(b.degree()));
  mpz_pow_ui(tmp.get_mpz_t(), cb.get_mpz_t(), static_cast<unsigned long>(a.degree()));
  t *= tmp;

  mpz_class gg = 1, h = 1;
  for (;;) {
    const int delta = a.degree() - b.degree();
    if ((a.degree() % 2 == 1) && (b.degree() % 2 == 1)) sign = -sign;
    IntPoly r = pseudo_remainder(a, b);
    a = b;
    mpz_class hd;
    mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
    if (r.is_zero()) return 0;
    b = divide_exact(r, gg * hd);
    gg = a.leading();
    // h <- g^delta / h^(delta - 1)
    mpz_class gd, hd1;
    mpz_pow_ui(gd.get_mpz_t(), gg.get_mpz_t(), static_cast<unsigned long>(delta));
    mpz_pow_ui(hd1.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
    mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd1.get_mpz_t());
    if (b.degree() == 0) {
      // h <- lc(b)^deg(a) / h^(deg(a) - 1)
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), b.leading().get_mpz_t(), static_cast<unsigned long>(a.degree()));
      mpz_pow_ui(den.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(a.degree() - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return sign * t * h;
    }
  }
}

/// (-1)^(d(d-1)/2) Res(f, f') / lc(f).
inline mpz_class discriminant(const IntPoly& f) {
  const int d = f.degree();
  if (d < 2) throw DomainError("discriminant: degree must be at least 2");
  mpz_class r = resultant(f, poly_derivative(f));
  if (!mpz_divisible_p(r.get_mpz_t(), f.leading().get_mpz_t()))
    throw ArithmeticError("discriminant: Res(f, f') not divisible by lc(f)");
  r /= f.leading();
  if ((static_cast<long>(d) * (d - 1) / 2) % 2 == 1) r = -r;
  if (r == 0) throw NotSquarefreeError("discriminant: polynomial is not squarefree");
  return r;
}

/// Phi_m, by dividing x^m - 1 by Phi_k for every proper divisor k of m.
inline IntPoly cyclotomic(unsigned long m) {
  if (m == 0) throw DomainError("cyclotomic: m must be positive");
  IntPoly r = IntPoly::monomial(1, m) - IntPoly::constant(1);
  for (unsigned long k = 1; k < m; ++k)
    if (m % k == 0) r = poly_divide_exact(r, cyclotomic(k));
  return r;
}

}  // namespace cyclodio
