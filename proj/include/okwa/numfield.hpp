#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "okwa/bigint.hpp"
#include "okwa/errors.hpp"
#include "okwa/polynomial.hpp"
#include "okwa/zlattice.hpp"

namespace okwa {

// Element of K as rational coordinates over the integral basis.
struct AlgNum {
  RatVector c;

  AlgNum() = default;
  explicit AlgNum(RatVector coords) : c(std::move(coords)) {}

  std::size_t size() const { return c.size(); }
  const mpq_class& operator[](std::size_t i) const { return c[i]; }
  mpq_class& operator[](std::size_t i) { return c[i]; }

  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const mpq_class& x) { return x == 0; });
  }
  bool is_integral() const {
    return std::all_of(c.begin(), c.end(), [](const mpq_class& x) { return is_integer(x); });
  }
  // Least positive integer m with m*x integral.
  mpz_class denominator() const {
    mpz_class l = 1;
    for (const auto& x : c) l = lcm(l, x.get_den());
    return l;
  }
  IntVector scaled_integral(const mpz_class& m) const {
    IntVector v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      mpq_class t = c[i] * m;
      v[i] = t.get_num();
    }
    return v;
  }

  friend bool operator==(const AlgNum& a, const AlgNum& b) { return a.c == b.c; }
  friend bool operator!=(const AlgNum& a, const AlgNum& b) { return !(a == b); }
  friend bool operator<(const AlgNum& a, const AlgNum& b) { return a.c < b.c; }
};

inline std::ostream& operator<<(std::ostream& os, const AlgNum& a) {
  os << '[';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? ", " : "") << a[i].get_str();
  return os << ']';
}

inline bool is_integral(const AlgNum& a) { return a.is_integral(); }

// S(a): each coordinate contributes max(1, bitlen num) + max(1, bitlen den).
inline std::size_t bit_size(const AlgNum& a) {
  std::size_t s = 0;
  for (const auto& x : a.c)
    s += std::max<std::size_t>(1, bit_length(x.get_num())) +
         std::max<std::size_t>(1, bit_length(x.get_den()));
  return s;
}

inline AlgNum from_integers(const IntVector& v) {
  RatVector r(v.begin(), v.end());
  return AlgNum(std::move(r));
}

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
 public:
  // min_poly: c_0..c_d with c_d = 1. basis_over_power: row i = omega_i over 1, theta, ...
  static FieldPtr create(const IntVector& min_poly, const RatMatrix& basis_over_power) {
    return std::shared_ptr<const NumberField>(new NumberField(min_poly, basis_over_power));
  }

  std::size_t degree() const { return d_; }
  const IntVector& min_poly() const { return min_poly_; }
  const RatMatrix& basis_over_power() const { return basis_; }
  const IntMatrix& mult_table(std::size_t i) const { return mult_[i]; }
  const mpz_class& discriminant() const { return disc_; }
  double complexity_measure() const { return ck_; }

  bool same_as(const NumberField& o) const {
    return this == &o || (min_poly_ == o.min_poly_ && basis_ == o.basis_);
  }

  AlgNum zero() const { return AlgNum(RatVector(d_, mpq_class(0))); }
  AlgNum one() const { return from_rational(1); }
  AlgNum from_rational(const mpq_class& q) const {
    AlgNum a = zero();
    a[0] = q;
    return a;
  }
  AlgNum basis_element(std::size_t i) const {
    AlgNum a = zero();
    a[i] = 1;
    return a;
  }

  void check(const AlgNum& a) const {
    require(a.size() == d_, ErrorKind::DimensionMismatch,
            "element has " + std::to_string(a.size()) + " coordinates, field degree " +
                std::to_string(d_));
  }

  AlgNum add(const AlgNum& a, const AlgNum& b) const {
    check(a), check(b);
    AlgNum r = a;
    for (std::size_t i = 0; i < d_; ++i) r[i] += b[i];
    return r;
  }
  AlgNum sub(const AlgNum& a, const AlgNum& b) const {
    check(a), check(b);
    AlgNum r = a;
    for (std::size_t i = 0; i < d_; ++i) r[i] -= b[i];
    return r;
  }
  AlgNum neg(const AlgNum& a) const {
    check(a);
    AlgNum r = a;
    for (auto& x : r.c) x = -x;
    return r;
  }
  AlgNum scale(const AlgNum& a, const mpq_class& q) const {
    check(a);
    AlgNum r = a;
    for (auto& x : r.c) x *= q;
    return r;
  }

  // a*b = sum_i a_i (M_i b)
  AlgNum mul(const AlgNum& a, const AlgNum& b) const {
    check(a), check(b);
    AlgNum r = zero();
    for (std::size_t i = 0; i < d_; ++i) {
      if (a[i] == 0) continue;
      const IntMatrix& m = mult_[i];
      for (std::size_t s = 0; s < d_; ++s) {
        if (b[s] == 0) continue;
        mpq_class t = a[i] * b[s];
        for (std::size_t row = 0; row < d_; ++row)
          if (m(row, s) != 0) r[row] += t * m(row, s);
      }
    }
    return r;
  }

  // Multiplication-by-a matrix over the integral basis.
  RatMatrix regular_rep(const AlgNum& a) const {
    check(a);
    RatMatrix r(d_, d_, mpq_class(0));
    for (std::size_t i = 0; i < d_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t row = 0; row < d_; ++row)
        for (std::size_t col = 0; col < d_; ++col) r(row, col) += a[i] * mult_[i](row, col);
    }
    return r;
  }

  AlgNum inv(const AlgNum& a) const {
    check(a);
    require(!a.is_zero(), ErrorKind::DivisionByZero, "inverse of zero");
    RatMatrix e(d_, 1, mpq_class(0));
    e(0, 0) = 1;
    RationalSolution s = solve_rational(regular_rep(a), e);
    return AlgNum(s.x.column(0));
  }

  AlgNum div(const AlgNum& a, const AlgNum& b) const { return mul(a, inv(b)); }

  mpq_class norm(const AlgNum& a) const { return determinant(regular_rep(a)); }

  mpq_class trace(const AlgNum& a) const {
    RatMatrix r = regular_rep(a);
    mpq_class t = 0;
    for (std::size_t i = 0; i < d_; ++i) t += r(i, i);
    return t;
  }

  // Coefficients of a in 1, theta, ..., theta^{d-1}.
  RatVector to_power_basis(const AlgNum& a) const {
    check(a);
    RatVector p(d_, mpq_class(0));
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) p[j] += a[i] * basis_(i, j);
    return p;
  }

  AlgNum from_power_basis(const RatVector& p) const {
    require(p.size() == d_, ErrorKind::DimensionMismatch, "power-basis vector length");
    RatVector c(d_, mpq_class(0));
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) c[i] += power_to_basis_(i, j) * p[j];
    return AlgNum(std::move(c));
  }

 private:
  NumberField(const IntVector& min_poly, const RatMatrix& basis) : min_poly_(min_poly), basis_(basis) {
    require(min_poly_.size() >= 2, ErrorKind::NonMonicPolynomial, "minimal polynomial must have degree >= 1");
    require(min_poly_.back() == 1, ErrorKind::NonMonicPolynomial, "minimal polynomial must be monic");
    d_ = min_poly_.size() - 1;
    require(basis_.rows() == d_ && basis_.cols() == d_, ErrorKind::DimensionMismatch,
            "integral basis must be a d x d matrix");
    auto pt_inv = inverse(basis_.transpose());
    require(pt_inv.has_value(), ErrorKind::SingularBasis, "integral basis is singular");
    power_to_basis_ = *pt_inv;
    for (std::size_t j = 0; j < d_; ++j)
      require(basis_(0, j) == (j == 0 ? 1 : 0), ErrorKind::InvalidBasis, "first basis element must be 1");
    require(is_irreducible(min_poly_), ErrorKind::ReduciblePolynomial, "minimal polynomial is reducible");

    RatPoly m = to_rat_poly(min_poly_);
    mult_.assign(d_, IntMatrix(d_, d_, mpz_class(0)));
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) {
        RatPoly prod = poly_mul(to_rat_poly_row(i), to_rat_poly_row(j));
        RatPoly rem = poly_divmod(prod, m);
        rem.resize(d_, mpq_class(0));
        AlgNum c = from_power_basis(rem);
        for (std::size_t r = 0; r < d_; ++r) {
          require(is_integer(c[r]), ErrorKind::NonIntegralMultTable,
                  "basis is not closed under multiplication");
          mult_[i](r, j) = c[r].get_num();
        }
      }

    IntMatrix tr(d_, d_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) {
        IntMatrix p = mult_[i] * mult_[j];
        mpz_class t = 0;
        for (std::size_t k = 0; k < d_; ++k) t += p(k, k);
        tr(i, j) = t;
      }
    disc_ = determinant(tr);
    require(disc_ != 0, ErrorKind::ReduciblePolynomial, "zero discriminant");
    double logd = std::log2(static_cast<double>(d_));
    double logdisc = static_cast<double>(bit_length(abs(disc_))) - 1.0;
    if (abs(disc_) < mpz_class(1) << 52) logdisc = std::log2(std::abs(disc_.get_d()));
    ck_ = std::max(1.0, std::pow(static_cast<double>(d_), 4) * (logd + logdisc));
  }

  RatPoly to_rat_poly_row(std::size_t i) const {
    RatPoly p = basis_.row(i);
    poly_trim(p);
    return p;
  }

  IntVector min_poly_;
  RatMatrix basis_;
  RatMatrix power_to_basis_;
  std::size_t d_ = 0;
  std::vector<IntMatrix> mult_;
  mpz_class disc_;
  double ck_ = 1.0;
};

inline void require_same_field(const NumberField& a, const NumberField& b) {
  require(a.same_as(b), ErrorKind::FieldMismatch, "operands belong to different fields");
}

// Convenience constructors for the fields used throughout the tests and CLI.
inline FieldPtr rationals() {
  return NumberField::create({mpz_class(-1), mpz_class(1)}, RatMatrix::identity(1));
}

inline FieldPtr quadratic_field(long a, long b) {  // power basis of x^2 + a x + b
  return NumberField::create({mpz_class(b), mpz_class(a), mpz_class(1)}, RatMatrix::identity(2));
}

inline FieldPtr gaussian_rationals() { return quadratic_field(0, 1); }
inline FieldPtr q_sqrt_minus5() { return quadratic_field(0, 5); }

}  // namespace okwa
