#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "okwa/numfield.hpp"
#include "okwa/zlattice.hpp"

namespace okwa {

using KVector = std::vector<AlgNum>;
using KMatrix = Matrix<AlgNum>;

inline KVector kzero_vector(const NumberField& k, std::size_t n) { return KVector(n, k.zero()); }

inline KMatrix kzero_matrix(const NumberField& k, std::size_t r, std::size_t c) { return KMatrix(r, c, k.zero()); }

inline KMatrix kidentity(const NumberField& k, std::size_t n) {
  KMatrix m = kzero_matrix(k, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
  return m;
}

inline bool kis_zero(const KVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

inline bool kis_integral(const KVector& v) {
  for (const auto& x : v)
    if (!x.is_integral()) return false;
  return true;
}

inline KVector kadd(const NumberField& k, const KVector& a, const KVector& b) {
  require(a.size() == b.size(), ErrorKind::DimensionMismatch, "vector length mismatch");
  KVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.add(a[i], b[i]);
  return r;
}

inline KVector ksub(const NumberField& k, const KVector& a, const KVector& b) {
  require(a.size() == b.size(), ErrorKind::DimensionMismatch, "vector length mismatch");
  KVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k.sub(a[i], b[i]);
  return r;
}

inline KVector kscale(const NumberField& k, const KVector& v, const AlgNum& s) {
  KVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = k.mul(s, v[i]);
  return r;
}

// a += s * b
inline void kaxpy(const NumberField& k, KVector& a, const AlgNum& s, const KVector& b) {
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] = k.add(a[i], k.mul(s, b[i]));
}

inline AlgNum kdot(const NumberField& k, const KVector& a, const KVector& b) {
  require(a.size() == b.size(), ErrorKind::DimensionMismatch, "dot product length mismatch");
  AlgNum s = k.zero();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s = k.add(s, k.mul(a[i], b[i]));
  return s;
}

// row * m
inline KVector krow_times(const NumberField& k, const KVector& row, const KMatrix& m) {
  require(row.size() == m.rows(), ErrorKind::DimensionMismatch, "row-matrix product shape");
  KVector r = kzero_vector(k, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (row[i].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) r[j] = k.add(r[j], k.mul(row[i], m(i, j)));
  }
  return r;
}

// m * col
inline KVector kmat_times(const NumberField& k, const KMatrix& m, const KVector& col) {
  require(col.size() == m.cols(), ErrorKind::DimensionMismatch, "matrix-column product shape");
  KVector r = kzero_vector(k, m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) r[i] = kdot(k, m.row(i), col);
  return r;
}

inline KMatrix kmul(const NumberField& k, const KMatrix& a, const KMatrix& b) {
  require(a.cols() == b.rows(), ErrorKind::DimensionMismatch, "matrix product shape");
  KMatrix c = kzero_matrix(k, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    KVector row = krow_times(k, a.row(i), b);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = row[j];
  }
  return c;
}

inline KMatrix kfrom_rows(const NumberField& k, const std::vector<KVector>& rows, std::size_t cols) {
  KMatrix m = kzero_matrix(k, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == cols, ErrorKind::DimensionMismatch, "row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

// Each K-entry becomes its d x d regular representation; a K-matrix acting on
// coordinate vectors of K-vectors.
inline RatMatrix lift(const NumberField& k, const KMatrix& a) {
  const std::size_t d = k.degree();
  RatMatrix r(a.rows() * d, a.cols() * d, mpq_class(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      RatMatrix rep = k.regular_rep(a(i, j));
      for (std::size_t s = 0; s < d; ++s)
        for (std::size_t t = 0; t < d; ++t) r(i * d + s, j * d + t) = rep(s, t);
    }
  return r;
}

// Stacks K-matrix columns as rational coordinate columns.
inline RatMatrix lift_columns(const NumberField& k, const KMatrix& b) {
  const std::size_t d = k.degree();
  RatMatrix r(b.rows() * d, b.cols(), mpq_class(0));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t s = 0; s < d; ++s) r(i * d + s, j) = b(i, j)[s];
  return r;
}

inline KMatrix unlift_columns(const NumberField& k, const RatMatrix& x) {
  const std::size_t d = k.degree();
  KMatrix r = kzero_matrix(k, x.rows() / d, x.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      RatVector c(d);
      for (std::size_t s = 0; s < d; ++s) c[s] = x(i * d + s, j);
      r(i, j) = AlgNum(std::move(c));
    }
  return r;
}

// Some X with a * X = b over K, or nullopt when inconsistent.
inline std::optional<KMatrix> ksolve(const NumberField& k, const KMatrix& a, const KMatrix& b) {
  require(a.rows() == b.rows(), ErrorKind::DimensionMismatch, "ksolve row mismatch");
  if (a.cols() == 0) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(i, j).is_zero()) return std::nullopt;
    return kzero_matrix(k, 0, b.cols());
  }
  try {
    RationalSolution s = solve_rational(lift(k, a), lift_columns(k, b));
    return unlift_columns(k, s.x);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NoSolution) return std::nullopt;
    throw;
  }
}

inline AlgNum kdeterminant(const NumberField& k, KMatrix m) {
  require(m.rows() == m.cols(), ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  AlgNum det = k.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return k.zero();
    if (p != c) {
      m.swap_rows(p, c);
      det = k.neg(det);
    }
    det = k.mul(det, m(c, c));
    AlgNum inv = k.inv(m(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      AlgNum f = k.mul(m(r, c), inv);
      for (std::size_t j = c; j < n; ++j) m(r, j) = k.sub(m(r, j), k.mul(f, m(c, j)));
    }
  }
  return det;
}

// Incrementally built K-span with coordinates relative to the inserted vectors.
class KBasis {
 public:
  KBasis(const NumberField& k, std::size_t n) : k_(&k), n_(n) {}

  std::size_t size() const { return count_; }

  // Inserts v if it is independent of the current span; returns whether it was.
  bool add(const KVector& v) {
    auto [res, comb] = reduce(v);
    std::size_t p = 0;
    while (p < n_ && res[p].is_zero()) ++p;
    if (p == n_) return false;
    AlgNum inv = k_->inv(res[p]);
    for (auto& x : res) x = k_->mul(x, inv);
    KVector c = kzero_vector(*k_, count_ + 1);
    for (std::size_t t = 0; t < count_; ++t) c[t] = k_->neg(k_->mul(comb[t], inv));
    c[count_] = inv;
    for (auto& old : combs_) old.push_back(k_->zero());
    rows_.push_back(std::move(res));
    pivots_.push_back(p);
    combs_.push_back(std::move(c));
    ++count_;
    return true;
  }

  bool contains(const KVector& v) const { return kis_zero(reduce(v).first); }

  // Coefficients c with v = sum_t c_t * inserted_t.
  std::optional<KVector> coordinates(const KVector& v) const {
    auto [res, comb] = reduce(v);
    if (!kis_zero(res)) return std::nullopt;
    return comb;
  }

 private:
  std::pair<KVector, KVector> reduce(const KVector& v) const {
    require(v.size() == n_, ErrorKind::DimensionMismatch, "vector length vs span dimension");
    KVector res = v;
    KVector comb = kzero_vector(*k_, count_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      AlgNum f = res[pivots_[i]];
      if (f.is_zero()) continue;
      kaxpy(*k_, res, k_->neg(f), rows_[i]);
      kaxpy(*k_, comb, f, combs_[i]);
    }
    return {res, comb};
  }

  const NumberField* k_;
  std::size_t n_;
  std::size_t count_ = 0;
  std::vector<KVector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<KVector> combs_;
};

}  // namespace okwa
