#pragma once

// Exact rational LLL for small integer lattices. Basis vectors are stored as
// rows: basis[i] is the i-th generator.

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "cyclodio/error.hpp"

namespace cyclodio {

using IntMatrix = std::vector<std::vector<mpz_class>>;
using RatMatrix = std::vector<std::vector<mpq_class>>;

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t(m[0].size(), std::vector<mpz_class>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

/// a * b for row-major integer matrices.
inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty() || b.empty()) return {};
  if (a[0].size() != b.size()) throw DomainError("mat_mul: shape mismatch");
  IntMatrix c(a.size(), std::vector<mpz_class>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

template <typename T>
inline T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline mpz_class determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = v;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

struct GramSchmidt {
  RatMatrix mu;                    ///< mu[i][j] for j < i
  std::vector<mpq_class> norm_sq;  ///< |b*_i|^2
};

inline GramSchmidt gram_schmidt(const IntMatrix& basis) {
  const std::size_t n = basis.size();
  GramSchmidt gs;
  gs.mu.assign(n, std::vector<mpq_class>(n, 0));
  gs.norm_sq.assign(n, 0);
  RatMatrix star(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<mpq_class> v(basis[i].begin(), basis[i].end());
    std::vector<mpq_class> bi = v;
    for (std::size_t j = 0; j < i; ++j) {
      if (gs.norm_sq[j] == 0) throw DomainError("gram_schmidt: linearly dependent basis");
      gs.mu[i][j] = dot(bi, star[j]) / gs.norm_sq[j];
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= gs.mu[i][j] * star[j][k];
    }
    gs.norm_sq[i] = dot(v, v);
    if (gs.norm_sq[i] == 0) throw DomainError("gram_schmidt: linearly dependent basis");
    star[i] = std::move(v);
  }
  return gs;
}

struct LllResult {
  IntMatrix basis;
  /// basis = transform * input (rows as vectors).
  IntMatrix transform;
  long swaps = 0;
};

inline mpz_class round_nearest(const mpq_class& q) {
  mpq_class t = q + mpq_class(1, 2);
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
  return r;
}

/// LLL with exact rational Gram-Schmidt data and Lovasz parameter delta.
inline LllResult lll_reduce(const IntMatrix& input, const mpq_class& delta = mpq_class(3, 4)) {
  const std::size_t n = input.size();
  if (delta <= mpq_class(1, 4) || delta > 1) throw DomainError("lll_reduce: delta must lie in (1/4, 1]");
  for (const auto& row : input)
    if (row.size() != input[0].size()) throw DomainError("lll_reduce: ragged basis");
  LllResult out{input, identity_matrix(n), 0};
  if (n <= 1) {
    if (n == 1) gram_schmidt(input);
    return out;
  }
  IntMatrix& b = out.basis;
  IntMatrix& u = out.transform;
  GramSchmidt gs = gram_schmidt(b);
  auto size_reduce = [&](std::size_t k, std::size_t j) {
    mpz_class q = round_nearest(gs.mu[k][j]);
    if (q == 0) return;
    for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[j][c];
    for (std::size_t c = 0; c < n; ++c) u[k][c] -= q * u[j][c];
    for (std::size_t i = 0; i < j; ++i) gs.mu[k][i] -= q * gs.mu[j][i];
    gs.mu[k][j] -= q;
  };
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) size_reduce(k, j);
    const mpq_class m = gs.mu[k][k - 1];
    if (gs.norm_sq[k] >= (delta - m * m) * gs.norm_sq[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      ++out.swaps;
      gs = gram_schmidt(b);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return out;
}

/// Recomputes the Gram-Schmidt data and checks size reduction and the
/// Lovasz condition.
inline bool is_lll_reduced(const IntMatrix& basis, const mpq_class& delta = mpq_class(3, 4)) {
  GramSchmidt gs = gram_schmidt(basis);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (abs(gs.mu[i][j]) > mpq_class(1, 2)) return false;
  for (std::size_t k = 1; k < basis.size(); ++k) {
    const mpq_class& m = gs.mu[k][k - 1];
    if (gs.norm_sq[k] < (delta - m * m) * gs.norm_sq[k - 1]) return false;
  }
  return true;
}

/// Checks that result.transform is unimodular and maps input onto
/// result.basis exactly.
inline bool transform_consistent(const IntMatrix& input, const LllResult& result) {
  const mpz_class det = determinant(result.transform);
  if (det != 1 && det != -1) return false;
  return mat_mul(result.transform, input) == result.basis;
}

/// Coordinates s with sum_i s_i basis[i] = y, by exact Gaussian elimination
/// on the transposed system.
inline std::vector<mpq_class> solve_coordinates(const IntMatrix& basis, const std::vector<mpz_class>& y) {
  const std::size_t n = basis.size();
  if (n == 0 || basis[0].size() != n || y.size() != n) throw DomainError("solve_coordinates: need a square basis");
  RatMatrix a(n, std::vector<mpq_class>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = basis[c][r];
    a[r][n] = y[r];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw DomainError("solve_coordinates: singular basis");
    std::swap(a[c], a[p]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<mpq_class> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = a[i][n] / a[i][i];
  return s;
}

/// Distance from q to the nearest integer.
inline mpq_class dist_to_int(const mpq_class& q) {
  mpq_class d = q - mpq_class(round_nearest(q));
  return abs(d);
}

}  // namespace cyclodio
