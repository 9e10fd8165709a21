#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "okwa/bigint.hpp"
#include "okwa/zlattice.hpp"

namespace okwa {

// Dense polynomials over Q, coefficients from the constant term upward.
using RatPoly = std::vector<mpq_class>;

inline void poly_trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

// Returns remainder; quotient stored in *q when requested. b must be nonzero.
inline RatPoly poly_divmod(RatPoly a, RatPoly b, RatPoly* q = nullptr) {
  poly_trim(a);
  poly_trim(b);
  require(!b.empty(), ErrorKind::DivisionByZero, "polynomial division by zero");
  RatPoly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  while (a.size() >= b.size()) {
    mpq_class f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    quot[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    poly_trim(a);
  }
  if (q) *q = quot;
  return a;
}

inline mpq_class poly_eval(const RatPoly& p, const mpq_class& x) {
  mpq_class r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

inline RatPoly to_rat_poly(const IntVector& p) {
  RatPoly r(p.begin(), p.end());
  poly_trim(r);
  return r;
}

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class i = 1; i * i <= n; ++i) {
    if (n % i != 0) continue;
    small.push_back(i);
    if (i * i != n) large.push_back(n / i);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Lagrange interpolation through (xs[t], ys[t]).
inline RatPoly interpolate(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys) {
  RatPoly acc;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    RatPoly basis{mpq_class(1)};
    mpq_class denom = 1;
    for (std::size_t s = 0; s < xs.size(); ++s) {
      if (s == t) continue;
      basis = poly_mul(basis, RatPoly{mpq_class(-xs[s]), mpq_class(1)});
      denom *= mpq_class(xs[t] - xs[s]);
    }
    mpq_class f = mpq_class(ys[t]) / denom;
    if (acc.size() < basis.size()) acc.resize(basis.size(), mpq_class(0));
    for (std::size_t i = 0; i < basis.size(); ++i) acc[i] += f * basis[i];
  }
  poly_trim(acc);
  return acc;
}

inline bool has_factor_of_degree(const RatPoly& f, std::size_t k, std::size_t max_tuples) {
  std::vector<mpz_class> xs, vals;
  for (long x = 0; xs.size() < k + 1; x = x > 0 ? -x : -x + 1) {
    mpq_class v = poly_eval(f, mpq_class(x));
    if (v == 0) return true;
    xs.push_back(mpz_class(x));
    vals.push_back(v.get_num());
  }
  std::vector<std::vector<mpz_class>> choices;
  std::size_t tuples = 1;
  for (const auto& v : vals) {
    std::vector<mpz_class> c;
    for (const auto& dv : positive_divisors(v)) {
      c.push_back(dv);
      c.push_back(-dv);
    }
    tuples *= c.size();
    if (tuples > max_tuples) return false;
    choices.push_back(std::move(c));
  }
  std::vector<std::size_t> idx(choices.size(), 0);
  std::vector<mpz_class> ys(choices.size());
  while (true) {
    for (std::size_t t = 0; t < idx.size(); ++t) ys[t] = choices[t][idx[t]];
    RatPoly g = interpolate(xs, ys);
    if (g.size() == k + 1 && g.back() == 1) {
      bool integral = true;
      for (const auto& c : g) integral = integral && is_integer(c);
      if (integral && poly_divmod(f, g).empty()) return true;
    }
    std::size_t t = 0;
    while (t < idx.size() && ++idx[t] == choices[t].size()) idx[t++] = 0;
    if (t == idx.size()) break;
  }
  return false;
}

}  // namespace detail

// Kronecker's method restricted to monic integer polynomials. Searches beyond
// max_tuples candidate interpolations per degree are skipped.
inline bool is_irreducible(const IntVector& monic, std::size_t max_tuples = 2000000) {
  RatPoly f = to_rat_poly(monic);
  std::size_t d = f.size() - 1;
  if (d <= 1) return d == 1;
  for (std::size_t k = 1; k <= d / 2; ++k)
    if (detail::has_factor_of_degree(f, k, max_tuples)) return false;
  return true;
}

}  // namespace okwa
