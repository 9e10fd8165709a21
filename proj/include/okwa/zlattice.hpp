#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "okwa/bigint.hpp"
#include "okwa/errors.hpp"
#include "okwa/matrix.hpp"

namespace okwa {

using IntMatrix = Matrix<mpz_class>;
using RatMatrix = Matrix<mpq_class>;
using IntVector = std::vector<mpz_class>;
using RatVector = std::vector<mpq_class>;

// Column HNF of a lattice: H is rows x rank, pivot_rows strictly increasing,
// H(pivot_rows[j], j) >= 1, zero below the pivot, entries right of a pivot in
// its row reduced into [0, pivot). transform U satisfies A*U = [0 | H].
struct HnfResult {
  IntMatrix h;
  std::vector<std::size_t> pivot_rows;
  std::optional<IntMatrix> transform;

  std::size_t rank() const { return h.cols(); }
};

namespace detail {

// col_k <- s*col_k + t*col_j, col_j <- (a/g)*col_j - (b/g)*col_k where a, b are
// the row entries of columns k, j. Unimodular.
inline void gcd_combine(IntMatrix& m, std::size_t row, std::size_t k, std::size_t j,
                        IntMatrix* u) {
  mpz_class a = m(row, k), b = m(row, j);
  auto [g, s, t] = ext_gcd(a, b);
  mpz_class ag = a / g, bg = b / g;
  auto apply = [&](IntMatrix& x) {
    for (std::size_t r = 0; r < x.rows(); ++r) {
      mpz_class xk = x(r, k), xj = x(r, j);
      x(r, k) = s * xk + t * xj;
      x(r, j) = ag * xj - bg * xk;
    }
  };
  apply(m);
  if (u) apply(*u);
}

inline void axpy_column(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= q * m(r, src);
}

inline void negate_column(IntMatrix& m, std::size_t j) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, j) = -m(r, j);
}

inline void mod_centered(mpz_class& x, const mpz_class& r) {
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), r.get_mpz_t());
  if (2 * x > r) x -= r;
}

}  // namespace detail

inline HnfResult hnf(const IntMatrix& a, bool want_transform = false) {
  IntMatrix m = a;
  const std::size_t n = m.rows(), cols = m.cols();
  std::optional<IntMatrix> u;
  if (want_transform) u = IntMatrix::identity(cols);
  IntMatrix* up = u ? &*u : nullptr;

  std::size_t k = cols;  // columns [k, cols) hold finished pivots
  std::vector<std::size_t> pivots_rev;
  for (std::size_t ii = n; ii-- > 0 && k > 0;) {
    std::size_t p = k - 1;
    for (std::size_t j = 0; j < p; ++j)
      if (m(ii, j) != 0) detail::gcd_combine(m, ii, p, j, up);
    if (m(ii, p) == 0) continue;
    if (m(ii, p) < 0) {
      detail::negate_column(m, p);
      if (up) detail::negate_column(*up, p);
    }
    for (std::size_t j = p + 1; j < cols; ++j) {
      mpz_class q = floor_div(m(ii, j), m(ii, p));
      if (q == 0) continue;
      detail::axpy_column(m, j, p, q);
      if (up) detail::axpy_column(*up, j, p, q);
    }
    pivots_rev.push_back(ii);
    k = p;
  }

  HnfResult res;
  res.h = m.columns(k, cols - k);
  res.pivot_rows.assign(pivots_rev.rbegin(), pivots_rev.rend());
  res.transform = std::move(u);
  return res;
}

// HNF modulo D (Cohen, Alg. 2.4.8). a must have full row rank and D must be a
// positive multiple of the index of its column lattice. Returns the square HNF.
inline IntMatrix hnf_modular(const IntMatrix& a, const mpz_class& d) {
  const std::size_t n = a.rows(), m = a.cols();
  require(m >= n, ErrorKind::NotFullRank, "hnf_modular needs at least as many columns as rows");
  require(d > 0, ErrorKind::DimensionMismatch, "hnf_modular modulus must be positive");
  IntMatrix x = a;
  IntMatrix w(n, n, mpz_class(0));
  mpz_class r = d;
  std::size_t k = m;
  auto reduce_col = [&](std::size_t j) {
    for (std::size_t row = 0; row < n; ++row) detail::mod_centered(x(row, j), r);
  };
  for (std::size_t j = 0; j < m; ++j) reduce_col(j);
  for (std::size_t ii = n; ii-- > 0;) {
    std::size_t p = k - 1;
    for (std::size_t j = p; j-- > 0;) {
      if (x(ii, j) == 0) continue;
      detail::gcd_combine(x, ii, p, j, nullptr);
      reduce_col(j);
      reduce_col(p);
    }
    auto [g, s, t] = ext_gcd(x(ii, p), r);
    for (std::size_t row = 0; row < n; ++row) {
      mpz_class v = s * x(row, p);
      detail::mod_centered(v, r);
      w(row, ii) = v;
    }
    if (w(ii, ii) == 0) w(ii, ii) = r;
    if (w(ii, ii) < 0) detail::negate_column(w, ii);
    for (std::size_t j = ii + 1; j < n; ++j) {
      mpz_class q = floor_div(w(ii, j), w(ii, ii));
      if (q != 0) detail::axpy_column(w, j, ii, q);
    }
    r /= g;
    k = p;
  }
  return w;
}

// Coefficients c with H*c = v, or nullopt when v is outside the lattice.
inline std::optional<IntVector> lattice_coordinates(const HnfResult& h, const IntVector& v) {
  require(v.size() == h.h.rows(), ErrorKind::DimensionMismatch, "vector length vs lattice rows");
  IntVector res = v;
  IntVector c(h.rank());
  for (std::size_t j = h.rank(); j-- > 0;) {
    std::size_t p = h.pivot_rows[j];
    const mpz_class& piv = h.h(p, j);
    if (!mpz_divisible_p(res[p].get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
    c[j] = res[p] / piv;
    if (c[j] == 0) continue;
    for (std::size_t r = 0; r <= p; ++r) res[r] -= c[j] * h.h(r, j);
  }
  for (const auto& x : res)
    if (x != 0) return std::nullopt;
  return c;
}

inline bool lattice_contains(const HnfResult& h, const IntVector& v) {
  return lattice_coordinates(h, v).has_value();
}

// Fraction-free (Bareiss) determinant.
inline mpz_class determinant(const IntMatrix& a) {
  require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && m(s, k) == 0) ++s;
      if (s == n) return 0;
      m.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline mpz_class lattice_index(const IntMatrix& a) {
  HnfResult h = hnf(a);
  require(h.rank() == a.rows(), ErrorKind::NotFullRank, "lattice is not of full rank");
  mpz_class det = 1;
  for (std::size_t j = 0; j < h.rank(); ++j) det *= h.h(j, j);
  return det;
}

struct Rref {
  RatMatrix m;
  std::vector<std::size_t> pivots;
};

inline Rref rref(const RatMatrix& a) {
  Rref r{a, {}};
  RatMatrix& m = r.m;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t s = row;
    while (s < m.rows() && m(s, col) == 0) ++s;
    if (s == m.rows()) continue;
    m.swap_rows(row, s);
    mpq_class inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      mpq_class f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    r.pivots.push_back(col);
    ++row;
  }
  return r;
}

inline std::size_t rank(const RatMatrix& a) { return rref(a).pivots.size(); }

inline mpq_class determinant(const RatMatrix& a) {
  require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  RatMatrix m = a;
  mpq_class det = 1;
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t s = k;
    while (s < n && m(s, k) == 0) ++s;
    if (s == n) return 0;
    if (s != k) {
      m.swap_rows(k, s);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      mpq_class f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

struct RationalSolution {
  RatMatrix x;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;  // columns of a forming a column-space basis
};

// Solves a*X = b; free variables are set to zero.
inline RationalSolution solve_rational(const RatMatrix& a, const RatMatrix& b) {
  require(a.rows() == b.rows(), ErrorKind::DimensionMismatch, "solve_rational row mismatch");
  Rref r = rref(hconcat(a, b));
  RationalSolution sol;
  for (std::size_t p : r.pivots) {
    if (p >= a.cols()) fail(ErrorKind::NoSolution, "inconsistent linear system");
    sol.pivot_columns.push_back(p);
  }
  sol.rank = sol.pivot_columns.size();
  sol.x = RatMatrix(a.cols(), b.cols(), mpq_class(0));
  for (std::size_t i = 0; i < sol.rank; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) sol.x(sol.pivot_columns[i], j) = r.m(i, a.cols() + j);
  return sol;
}

inline RatMatrix column_space_basis(const RatMatrix& a) {
  Rref r = rref(a);
  RatMatrix basis(a.rows(), r.pivots.size());
  for (std::size_t j = 0; j < r.pivots.size(); ++j) basis.set_column(j, a.column(r.pivots[j]));
  return basis;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
  require(a.rows() == a.cols(), ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  Rref r = rref(hconcat(a, RatMatrix::identity(a.rows())));
  if (r.pivots.size() < a.rows() || (a.rows() > 0 && r.pivots.back() >= a.cols()))
    return std::nullopt;
  return r.m.columns(a.cols(), a.cols());
}

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = mpq_class(a(i, j));
  return r;
}

}  // namespace okwa
