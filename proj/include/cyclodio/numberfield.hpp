#pragma once

// Arithmetic in K = Q(alpha) = Q[x]/(f) for a monic irreducible f, with
// elements stored as an integer polynomial over a single positive integer
// denominator.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cyclodio/error.hpp"
#include "cyclodio/poly.hpp"

namespace cyclodio {

class FieldElement {
 public:
  FieldElement() : den_(1) {}
  explicit FieldElement(IntPoly num, mpz_class den = 1) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  FieldElement(std::initializer_list<long> coeffs) : num_(coeffs), den_(1) {}

  static FieldElement integer(const mpz_class& v) { return FieldElement(IntPoly::constant(v)); }

  const IntPoly& numerator() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const {
    if (den_ == 1) return num_.to_string();
    return "(" + num_.to_string() + ")/" + den_.get_str();
  }

 private:
  void normalize() {
    if (den_ == 0) throw DomainError("FieldElement: zero denominator");
    if (den_ < 0) {
      den_ = -den_;
      num_ = -num_;
    }
    mpz_class g = gcd(content(num_), den_);
    if (num_.is_zero()) g = den_;
    if (g != 1) {
      num_ = divide_exact(num_, g);
      den_ /= g;
    }
  }

  IntPoly num_;
  mpz_class den_;
};

inline void require_monic(const IntPoly& f) {
  if (!f.is_monic() || f.degree() < 1) throw DomainError("number field polynomial must be monic of degree >= 1");
}

/// Remainder of g modulo the monic polynomial f.
inline IntPoly reduce_mod(const IntPoly& g, const IntPoly& f) {
  require_monic(f);
  std::vector<mpz_class> r = g.coeffs();
  const int df = f.degree();
  for (int k = static_cast<int>(r.size()) - 1; k >= df; --k) {
    const mpz_class t = r[static_cast<std::size_t>(k)];
    if (t == 0) continue;
    for (int i = 0; i <= df; ++i) r[static_cast<std::size_t>(k - df + i)] -= t * f.coeff(static_cast<std::size_t>(i));
  }
  if (r.size() > static_cast<std::size_t>(df)) r.resize(static_cast<std::size_t>(df));
  return IntPoly(std::move(r));
}

inline FieldElement nf_reduce(const FieldElement& a, const IntPoly& f) {
  return FieldElement(reduce_mod(a.numerator(), f), a.denominator());
}

inline FieldElement nf_add(const FieldElement& a, const FieldElement& b) {
  return FieldElement(b.denominator() * a.numerator() + a.denominator() * b.numerator(), a.denominator() * b.denominator());
}

inline FieldElement nf_neg(const FieldElement& a) { return FieldElement(-a.numerator(), a.denominator()); }

inline FieldElement nf_sub(const FieldElement& a, const FieldElement& b) { return nf_add(a, nf_neg(b)); }

inline FieldElement nf_mul(const FieldElement& a, const FieldElement& b, const IntPoly& f) {
  return FieldElement(reduce_mod(a.numerator() * b.numerator(), f), a.denominator() * b.denominator());
}

/// Inverse via the extended Euclidean algorithm in Q[x].
inline FieldElement nf_inverse(const FieldElement& a, const IntPoly& f) {
  require_monic(f);
  FieldElement r = nf_reduce(a, f);
  if (r.is_zero()) throw DomainError("nf_inverse: zero element");
  auto [g, u] = half_xgcd(to_rational(r.numerator()), to_rational(f));
  if (g.degree() != 0) throw DomainError("nf_inverse: element is not invertible (f reducible?)");
  // u * num = 1 mod f, so a^-1 = den * u.
  mpz_class lcm_den = 1;
  for (const auto& c : u.coeffs()) lcm_den = lcm(lcm_den, mpz_class(c.get_den()));
  std::vector<mpz_class> num;
  for (const auto& c : u.coeffs()) num.push_back(mpz_class(c * lcm_den) * r.denominator());
  return FieldElement(IntPoly(std::move(num)), lcm_den);
}

inline FieldElement nf_pow(const FieldElement& a, long e, const IntPoly& f) {
  FieldElement base = e < 0 ? nf_inverse(a, f) : nf_reduce(a, f);
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  FieldElement r = FieldElement::integer(1);
  while (n) {
    if (n & 1UL) r = nf_mul(r, base, f);
    n >>= 1;
    if (n) base = nf_mul(base, base, f);
  }
  return r;
}

/// N(a) = Res(f, num) / den^d for monic f.
inline mpq_class nf_norm(const FieldElement& a, const IntPoly& f) {
  require_monic(f);
  mpz_class r = resultant(f, reduce_mod(a.numerator(), f));
  mpz_class dd;
  mpz_pow_ui(dd.get_mpz_t(), a.denominator().get_mpz_t(), static_cast<unsigned long>(f.degree()));
  mpq_class q(r, dd);
  q.canonicalize();
  return q;
}

/// Characteristic polynomial of a over Q, scaled to a primitive integer
/// polynomial with positive leading coefficient. Computed as
/// Res_x(f(x), den*T - num(x)) by evaluation at T = 0..d and interpolation.
inline IntPoly nf_charpoly(const FieldElement& a, const IntPoly& f) {
  require_monic(f);
  const FieldElement r = nf_reduce(a, f);
  const int d = f.degree();
  std::vector<mpq_class> xs, ys;
  for (int t = 0; t <= d; ++t) {
    IntPoly g = IntPoly::constant(r.denominator() * t) - r.numerator();
    xs.emplace_back(t);
    ys.emplace_back(resultant(f, g));
  }
  // Newton divided differences, then expansion into the monomial basis.
  std::vector<mpq_class> dd = ys;
  for (int j = 1; j <= d; ++j)
    for (int i = d; i >= j; --i)
      dd[static_cast<std::size_t>(i)] = (dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i - 1)]) /
                                        (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - j)]);
  RatPoly acc = RatPoly::constant(dd[static_cast<std::size_t>(d)]);
  for (int i = d - 1; i >= 0; --i)
    acc = acc * RatPoly(std::vector<mpq_class>{-xs[static_cast<std::size_t>(i)], 1}) +
          RatPoly::constant(dd[static_cast<std::size_t>(i)]);
  std::vector<mpz_class> coeffs;
  for (const auto& c : acc.coeffs()) {
    if (c.get_den() != 1) throw ArithmeticError("nf_charpoly: non-integral interpolation");
    coeffs.emplace_back(c.get_num());
  }
  return primitive_part(IntPoly(std::move(coeffs)));
}

// ---------------------------------------------------------------------------
// Case configuration

struct GammaFactor {
  FieldElement element;
  int norm_exponent = 1;
  /// Preferred conjugate choice for the lattice step (1-based pair indices);
  /// empty means "search all".
  std::vector<int> conjugates;
};

struct WitnessFactor {
  FieldElement element;
  long exponent = 1;
};

/// One instance f(x) = 2 p^n with the field data needed by every stage.
struct CaseConfig {
  std::string id;
  long m = 0;
  long p = 0;
  int d = 0;
  IntPoly f;
  std::vector<FieldElement> units;
  std::vector<GammaFactor> gammas;
  std::vector<FieldElement> deltas;
  /// Factorization of 2 in K, as a product of powers.
  std::vector<WitnessFactor> two_decomposition;
  /// Default lattice scaling K for the first reduction round.
  mpz_class default_K = 0;
  /// Upper bound for 1 + max |alpha^(j)| used in the |y| estimates; 0 means
  /// "compute from the roots".
  mpq_class root_shift = 0;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  mpz_class discriminant = 0;
  std::vector<mpq_class> unit_norms;
  std::vector<mpq_class> gamma_norms;
  std::vector<mpq_class> delta_norms;
  std::vector<std::string> trusted{"fundamentality of the units", "class number one"};

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c.name + ": " + c.detail);
    return out;
  }
};

inline mpz_class ipow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline FieldElement multiply_witness(const std::vector<WitnessFactor>& w, const IntPoly& f) {
  FieldElement acc = FieldElement::integer(1);
  for (const auto& factor : w) acc = nf_mul(acc, nf_pow(factor.element, factor.exponent, f), f);
  return acc;
}

/// Re-checks the configured field data with exact arithmetic.
inline VerificationReport verify_case_data(const CaseConfig& cfg) {
  VerificationReport rep;
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  if (!cfg.f.is_monic() || cfg.f.degree() != cfg.d) {
    add("polynomial", false, "f must be monic of degree d = " + std::to_string(cfg.d));
    return rep;
  }

  for (std::size_t i = 0; i < cfg.units.size(); ++i) {
    mpq_class n = nf_norm(cfg.units[i], cfg.f);
    rep.unit_norms.push_back(n);
    add("unit beta_" + std::to_string(i + 1), abs(n) == 1, "N = " + n.get_str());
  }

  for (std::size_t i = 0; i < cfg.gammas.size(); ++i) {
    mpq_class n = nf_norm(cfg.gammas[i].element, cfg.f);
    rep.gamma_norms.push_back(n);
    mpz_class want = ipow(mpz_class(cfg.p), static_cast<unsigned long>(cfg.gammas[i].norm_exponent));
    add("gamma_" + std::to_string(i + 1), abs(n) == mpq_class(want),
        "N = " + n.get_str() + ", expected +/-" + std::to_string(cfg.p) + "^" + std::to_string(cfg.gammas[i].norm_exponent));
  }

  {
    FieldElement prod = multiply_witness(cfg.two_decomposition, cfg.f);
    add("decomposition of 2", prod == FieldElement::integer(2), "product = " + prod.to_string());
  }

  for (std::size_t i = 0; i < cfg.deltas.size(); ++i) {
    mpq_class n = nf_norm(cfg.deltas[i], cfg.f);
    rep.delta_norms.push_back(n);
    add("delta_" + std::to_string(i + 1), abs(n) == 2, "N = " + n.get_str());
  }

  try {
    rep.discriminant = discriminant(cfg.f);
    const bool ok = !mpz_divisible_ui_p(rep.discriminant.get_mpz_t(), static_cast<unsigned long>(cfg.p));
    add("p does not divide disc(f)", ok, "disc = " + rep.discriminant.get_str());
  } catch (const NotSquarefreeError&) {
    add("p does not divide disc(f)", false, "f is not squarefree");
  }
  return rep;
}

struct ExponentCase {
  std::size_t delta_index = 0;
  std::size_t gamma_index = 0;
  FieldElement delta;
  FieldElement gamma;

  std::string label() const {
    return "delta_" + std::to_string(delta_index + 1) + "=" + delta.to_string() + ", gamma_" +
           std::to_string(gamma_index + 1);
  }
};

/// All (delta, gamma_i) with c_i = 1: the solutions of n = sum c_i n_i once
/// every n_i is 0 or n.
inline std::vector<ExponentCase> enumerate_exponent_cases(const CaseConfig& cfg) {
  std::vector<ExponentCase> out;
  for (std::size_t g = 0; g < cfg.gammas.size(); ++g) {
    if (cfg.gammas[g].norm_exponent != 1) continue;
    for (std::size_t k = 0; k < cfg.deltas.size(); ++k) out.push_back({k, g, cfg.deltas[k], cfg.gammas[g].element});
  }
  return out;
}

}  // namespace cyclodio
