#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "okwa/embeddings.hpp"
#include "okwa/errors.hpp"
#include "okwa/lll.hpp"
#include "okwa/numfield.hpp"
#include "okwa/zlattice.hpp"

namespace okwa {

// Fractional ideal (1/den) * L where L is the column lattice of the square HNF
// matrix mat. Normalized so that gcd(den, content(mat)) = 1; equal ideals have
// equal representations.
class Ideal {
 public:
  // cols: integer generators (over the integral basis) of den * ideal as a Z-lattice,
  // already closed under multiplication by O_K. modulus, when nonzero, is a positive
  // multiple of the lattice index.
  static Ideal from_lattice(FieldPtr f, mpz_class den, const IntMatrix& cols,
                            const mpz_class& modulus = 0) {
    require(den > 0, ErrorKind::DivisionByZero, "ideal denominator must be positive");
    const std::size_t d = f->degree();
    require(cols.rows() == d, ErrorKind::DimensionMismatch, "ideal generator length");
    IntMatrix h;
    if (modulus != 0) {
      h = hnf_modular(cols, modulus);
    } else {
      HnfResult r = hnf(cols);
      require(r.rank() != 0, ErrorKind::ZeroIdeal, "zero ideal");
      require(r.rank() == d, ErrorKind::InternalInconsistency, "ideal lattice not of full rank");
      h = r.h;
    }
    mpz_class g = den;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g = gcd(g, h(i, j));
    if (g != 1) {
      den /= g;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) h(i, j) /= g;
    }
    return Ideal(std::move(f), std::move(den), std::move(h));
  }

  static Ideal unit(FieldPtr f) {
    std::size_t d = f->degree();
    return Ideal(std::move(f), 1, IntMatrix::identity(d));
  }

  const FieldPtr& field() const { return field_; }
  const NumberField& k() const { return *field_; }
  const mpz_class& den() const { return den_; }
  const IntMatrix& basis() const { return mat_; }
  std::size_t degree() const { return mat_.rows(); }

  bool is_integral() const { return den_ == 1; }
  bool is_unit() const { return den_ == 1 && mat_ == IntMatrix::identity(mat_.rows()); }

  // |det(mat)|, the index of den * ideal in O_K.
  mpz_class lattice_det() const {
    mpz_class p = 1;
    for (std::size_t i = 0; i < mat_.rows(); ++i) p *= mat_(i, i);
    return p;
  }

  AlgNum z_basis_element(std::size_t j) const {
    RatVector c(mat_.rows());
    for (std::size_t i = 0; i < mat_.rows(); ++i) {
      c[i] = mpq_class(mat_(i, j), den_);
      c[i].canonicalize();
    }
    return AlgNum(std::move(c));
  }

  std::vector<AlgNum> z_basis() const {
    std::vector<AlgNum> v;
    for (std::size_t j = 0; j < mat_.cols(); ++j) v.push_back(z_basis_element(j));
    return v;
  }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.field_->same_as(*b.field_) && a.den_ == b.den_ && a.mat_ == b.mat_;
  }
  friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }

 private:
  Ideal(FieldPtr f, mpz_class den, IntMatrix mat)
      : field_(std::move(f)), den_(std::move(den)), mat_(std::move(mat)) {}

  FieldPtr field_;
  mpz_class den_;
  IntMatrix mat_;
};

inline void require_same_field(const Ideal& a, const Ideal& b) {
  require_same_field(a.k(), b.k());
}

inline Ideal ideal_from_generators(const FieldPtr& f, const std::vector<AlgNum>& gens) {
  const NumberField& k = *f;
  const std::size_t d = k.degree();
  mpz_class l = 1;
  bool nonzero = false;
  for (const auto& g : gens) {
    k.check(g);
    l = lcm(l, g.denominator());
    nonzero = nonzero || !g.is_zero();
  }
  require(nonzero, ErrorKind::ZeroIdeal, "all generators are zero");
  IntMatrix cols(d, d * gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    AlgNum scaled = k.scale(gens[i], mpq_class(l));
    for (std::size_t j = 0; j < d; ++j) {
      AlgNum p = k.mul(k.basis_element(j), scaled);
      for (std::size_t r = 0; r < d; ++r) cols(r, i * d + j) = p[r].get_num();
    }
  }
  return Ideal::from_lattice(f, l, cols);
}

inline Ideal principal_ideal(const FieldPtr& f, const AlgNum& x) { return ideal_from_generators(f, {x}); }

inline Ideal ideal_add(const Ideal& a, const Ideal& b) {
  require_same_field(a, b);
  const std::size_t d = a.degree();
  mpz_class l = lcm(a.den(), b.den());
  mpz_class sa = l / a.den(), sb = l / b.den();
  IntMatrix cols(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      cols(i, j) = a.basis()(i, j) * sa;
      cols(i, d + j) = b.basis()(i, j) * sb;
    }
  mpz_class da = a.lattice_det(), db = b.lattice_det();
  for (std::size_t i = 0; i < d; ++i) {
    da *= sa;
    db *= sb;
  }
  return Ideal::from_lattice(a.field(), l, cols, gcd(da, db));
}

inline Ideal ideal_mul(const Ideal& a, const Ideal& b) {
  require_same_field(a, b);
  const NumberField& k = a.k();
  const std::size_t d = a.degree();
  IntMatrix cols(d, d * d);
  for (std::size_t i = 0; i < d; ++i) {
    AlgNum x = from_integers(a.basis().column(i));
    for (std::size_t j = 0; j < d; ++j) {
      AlgNum p = k.mul(x, from_integers(b.basis().column(j)));
      for (std::size_t r = 0; r < d; ++r) cols(r, i * d + j) = p[r].get_num();
    }
  }
  return Ideal::from_lattice(a.field(), a.den() * b.den(), cols, a.lattice_det() * b.lattice_det());
}

// x * a
inline Ideal ideal_scale(const Ideal& a, const AlgNum& x) {
  const NumberField& k = a.k();
  require(!x.is_zero(), ErrorKind::ZeroIdeal, "scaling an ideal by zero");
  const std::size_t d = a.degree();
  mpz_class l = x.denominator();
  AlgNum xs = k.scale(x, mpq_class(l));
  IntMatrix cols(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    AlgNum p = k.mul(xs, from_integers(a.basis().column(j)));
    for (std::size_t r = 0; r < d; ++r) cols(r, j) = p[r].get_num();
  }
  return Ideal::from_lattice(a.field(), a.den() * l, cols);
}

inline Ideal ideal_scale(const Ideal& a, const mpq_class& q) {
  return ideal_scale(a, a.k().from_rational(q));
}

namespace detail {

// Basis of {c in Z^k : t . c = 0 mod n}, as the columns of a k x k matrix.
inline IntMatrix congruence_kernel(const IntVector& t, const mpz_class& n) {
  const std::size_t k = t.size();
  IntMatrix row(1, k + 1);
  for (std::size_t j = 0; j < k; ++j) row(0, j) = t[j];
  row(0, k) = n;
  HnfResult h = hnf(row, true);
  IntMatrix out(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) out(i, j) = (*h.transform)(i, j);
  return out;
}

}  // namespace detail

inline Ideal ideal_inverse(const Ideal& a) {
  const NumberField& k = a.k();
  const std::size_t d = a.degree();
  mpz_class n = a.lattice_det();
  if (n == 1) {
    IntMatrix id = IntMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) id(i, i) = a.den();
    return Ideal::from_lattice(a.field(), 1, id);
  }
  mpz_class mod_d = 1;
  for (std::size_t i = 0; i < d; ++i) mod_d *= n;
  // Lattice of y in O_K with y * (each column of mat) in n O_K.
  IntMatrix lat = IntMatrix::identity(d);
  for (std::size_t j = 0; j < d; ++j) {
    RatMatrix rep = k.regular_rep(from_integers(a.basis().column(j)));
    for (std::size_t r = 0; r < d; ++r) {
      IntVector t(d);
      for (std::size_t c = 0; c < d; ++c) {
        mpz_class s = 0;
        for (std::size_t m = 0; m < d; ++m) s += rep(r, m).get_num() * lat(m, c);
        t[c] = s;
      }
      bool trivial = std::all_of(t.begin(), t.end(), [&](const mpz_class& x) {
        return mpz_divisible_p(x.get_mpz_t(), n.get_mpz_t()) != 0;
      });
      if (trivial) continue;
      lat = hnf_modular(lat * detail::congruence_kernel(t, n), mod_d);
    }
  }
  IntMatrix cols = lat;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) cols(i, j) *= a.den();
  return Ideal::from_lattice(a.field(), n, cols);
}

inline Ideal ideal_pow(const Ideal& a, unsigned e) {
  Ideal r = Ideal::unit(a.field());
  for (unsigned i = 0; i < e; ++i) r = ideal_mul(r, a);
  return r;
}

inline mpq_class ideal_norm(const Ideal& a) {
  mpz_class dd = 1;
  for (std::size_t i = 0; i < a.degree(); ++i) dd *= a.den();
  mpq_class q(a.lattice_det(), dd);
  q.canonicalize();
  return q;
}

// Coordinates of x against the Z-basis of a, or nullopt when x is not in a.
inline std::optional<IntVector> ideal_coordinates(const Ideal& a, const AlgNum& x) {
  a.k().check(x);
  const std::size_t d = a.degree();
  AlgNum y = a.k().scale(x, mpq_class(a.den()));
  if (!y.is_integral()) return std::nullopt;
  IntVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = y[i].get_num();
  IntVector c(d);
  for (std::size_t j = d; j-- > 0;) {
    const mpz_class& piv = a.basis()(j, j);
    if (!mpz_divisible_p(v[j].get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
    c[j] = v[j] / piv;
    if (c[j] != 0)
      for (std::size_t r = 0; r <= j; ++r) v[r] -= c[j] * a.basis()(r, j);
  }
  return c;
}

inline bool ideal_contains(const Ideal& a, const AlgNum& x) { return ideal_coordinates(a, x).has_value(); }

// Integral ideals: a is contained in b.
inline bool ideal_subset(const Ideal& a, const Ideal& b) {
  require_same_field(a, b);
  for (const auto& x : a.z_basis())
    if (!ideal_contains(b, x)) return false;
  return true;
}

// Exact quotient a * b^{-1}, asserted integral.
inline Ideal ideal_divide_exact(const Ideal& a, const Ideal& b) {
  Ideal q = ideal_mul(a, ideal_inverse(b));
  require(q.is_integral(), ErrorKind::InternalInconsistency, "ideal quotient is not integral");
  return q;
}

// Canonical representative of x modulo the lattice of b.
inline AlgNum reduce_mod(const Ideal& b, const AlgNum& x) {
  const NumberField& k = b.k();
  k.check(x);
  const std::size_t d = b.degree();
  RatVector y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = x[i] * b.den();
  for (std::size_t j = d; j-- > 0;) {
    mpz_class q = floor_of(y[j] / mpq_class(b.basis()(j, j)));
    if (q == 0) continue;
    for (std::size_t r = 0; r <= j; ++r) y[r] -= q * b.basis()(r, j);
  }
  for (auto& v : y) v /= b.den();
  return AlgNum(std::move(y));
}

// For coprime integral ideals, e in i1 and f in i2 with e + f = 1; e is reduced
// modulo i1 * i2, and e = 1 when i1 = O_K.
inline std::pair<AlgNum, AlgNum> split_unit(const Ideal& i1, const Ideal& i2) {
  require_same_field(i1, i2);
  require(i1.is_integral() && i2.is_integral(), ErrorKind::NonIntegralInput, "split_unit needs integral ideals");
  const NumberField& k = i1.k();
  if (i1.is_unit()) return {k.one(), k.zero()};
  const std::size_t d = i1.degree();
  HnfResult h = hnf(hconcat(i1.basis(), i2.basis()), true);
  require(h.h == IntMatrix::identity(d), ErrorKind::NotCoprime, "ideals are not coprime");
  IntVector c = h.transform->column(d);
  IntVector e(d, mpz_class(0));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t j = 0; j < d; ++j) e[r] += i1.basis()(r, j) * c[j];
  AlgNum er = reduce_mod(ideal_mul(i1, i2), from_integers(e));
  return {er, k.sub(k.one(), er)};
}

struct Refinement {
  std::vector<Ideal> basis;
  std::vector<std::vector<unsigned>> exponents;  // exponents[i][j]: power of basis[j] in input i
};

inline unsigned ideal_valuation(Ideal x, const Ideal& m, Ideal* rest = nullptr) {
  unsigned e = 0;
  if (!m.is_unit()) {
    Ideal minv = ideal_inverse(m);
    while (ideal_subset(x, m)) {
      x = ideal_mul(x, minv);
      ++e;
    }
  }
  if (rest) *rest = x;
  return e;
}

// Coprime basis of the inputs; pairs are examined in list order and the first
// pair with a nontrivial sum is split.
inline Refinement factor_refine(const std::vector<Ideal>& ideals) {
  std::vector<Ideal> basis;
  auto push_unique = [](std::vector<Ideal>& v, const Ideal& x) {
    if (x.is_unit()) return;
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  };
  for (const auto& i : ideals) {
    require(i.is_integral(), ErrorKind::NonIntegralInput, "factor_refine needs integral ideals");
    push_unique(basis, i);
  }
  while (true) {
    bool split = false;
    for (std::size_t i = 0; i < basis.size() && !split; ++i)
      for (std::size_t j = i + 1; j < basis.size() && !split; ++j) {
        Ideal g = ideal_add(basis[i], basis[j]);
        if (g.is_unit()) continue;
        Ideal gi = ideal_inverse(g);
        Ideal qi = ideal_mul(basis[i], gi), qj = ideal_mul(basis[j], gi);
        require(qi.is_integral() && qj.is_integral(), ErrorKind::InternalInconsistency,
                "refinement quotient is not integral");
        std::vector<Ideal> next;
        for (std::size_t t = 0; t < basis.size(); ++t)
          if (t != i && t != j) push_unique(next, basis[t]);
        push_unique(next, qi);
        push_unique(next, g);
        push_unique(next, qj);
        basis = std::move(next);
        split = true;
      }
    if (!split) break;
  }
  Refinement r;
  r.basis = basis;
  for (const auto& in : ideals) {
    std::vector<unsigned> row;
    Ideal rest = in;
    for (const auto& m : basis) row.push_back(ideal_valuation(rest, m, &rest));
    require(rest.is_unit(), ErrorKind::InternalInconsistency, "refinement does not reconstruct input");
    r.exponents.push_back(std::move(row));
  }
  return r;
}

inline AlgNum ideal_crt(const std::vector<Ideal>& moduli, const std::vector<AlgNum>& residues) {
  require(moduli.size() == residues.size(), ErrorKind::LengthMismatch, "moduli and residues differ in length");
  require(!moduli.empty(), ErrorKind::LengthMismatch, "no congruences given");
  const FieldPtr& f = moduli[0].field();
  const NumberField& k = *f;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    require_same_field(moduli[i], moduli[0]);
    require(moduli[i].is_integral(), ErrorKind::NonIntegralInput, "CRT moduli must be integral");
    require(residues[i].is_integral(), ErrorKind::NonIntegralInput, "CRT residues must be integral");
    for (std::size_t j = i + 1; j < moduli.size(); ++j)
      require(ideal_add(moduli[i], moduli[j]).is_unit(), ErrorKind::NotCoprime, "CRT moduli are not coprime");
  }
  AlgNum x = k.zero();
  Ideal all = Ideal::unit(f);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    Ideal rest = Ideal::unit(f);
    for (std::size_t j = 0; j < moduli.size(); ++j)
      if (j != i) rest = ideal_mul(rest, moduli[j]);
    auto [u, v] = split_unit(moduli[i], rest);
    x = k.add(x, k.mul(residues[i], v));
    all = ideal_mul(all, moduli[i]);
  }
  return reduce_mod(all, x);
}

namespace detail {

// Candidates for a_j in m^e \ m^{e+1}: the HNF columns, then pairwise sums.
inline std::vector<AlgNum> coset_candidates(const Ideal& me) {
  const NumberField& k = me.k();
  std::vector<AlgNum> c = me.z_basis();
  std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      c.push_back(k.add(c[i], c[j]));
      c.push_back(k.sub(c[i], c[j]));
    }
  return c;
}

}  // namespace detail

// x in a with x * a^{-1} integral and coprime to b.
inline AlgNum coprime_representative(const Ideal& a, const Ideal& b) {
  require_same_field(a, b);
  require(a.is_integral() && b.is_integral(), ErrorKind::NonIntegralInput,
          "coprime_representative needs integral ideals");
  const FieldPtr& f = a.field();
  const NumberField& k = *f;
  if (a.is_unit()) return k.one();
  Ideal ainv = ideal_inverse(a);
  std::vector<Ideal> inputs{a, b};
  std::optional<AlgNum> result;
  while (!result) {
    Refinement r = factor_refine(inputs);
    std::vector<Ideal> moduli;
    std::vector<AlgNum> residues;
    std::optional<Ideal> extra;
    for (std::size_t j = 0; j < r.basis.size() && !extra; ++j) {
      const Ideal& m = r.basis[j];
      unsigned e = r.exponents[0][j], fb = r.exponents[1][j];
      Ideal me = ideal_pow(m, e);
      if (fb == 0) {
        if (e > 0) {
          moduli.push_back(me);
          residues.push_back(k.zero());
        }
        continue;
      }
      Ideal me1 = ideal_mul(me, m);
      Ideal meinv = ideal_inverse(me);
      std::optional<AlgNum> good;
      std::optional<Ideal> splitter;
      for (const auto& c : detail::coset_candidates(me)) {
        if (ideal_contains(me1, c)) continue;
        Ideal s = ideal_add(ideal_scale(meinv, c), m);
        if (s.is_unit()) {
          good = c;
          break;
        }
        if (!splitter) splitter = s;
      }
      if (good) {
        moduli.push_back(me1);
        residues.push_back(*good);
      } else {
        require(splitter.has_value(), ErrorKind::InternalInconsistency, "m^e equals m^(e+1)");
        extra = *splitter;
      }
    }
    if (extra) {
      inputs.push_back(*extra);
      continue;
    }
    AlgNum x = moduli.empty() ? k.zero() : ideal_crt(moduli, residues);
    if (x.is_zero()) x = a.z_basis_element(0);
    result = x;
  }
  AlgNum x = *result;
  require(ideal_contains(a, x), ErrorKind::InternalInconsistency, "coprime representative not in ideal");
  Ideal q = ideal_scale(ainv, x);
  require(q.is_integral() && ideal_add(q, b).is_unit(), ErrorKind::InternalInconsistency,
          "coprime representative fails its postcondition");
  return x;
}

// Short nonzero elements of an integral ideal: HNF columns, an LLL-reduced
// basis under T2, and its {-1, 0, 1} combinations.
inline std::vector<AlgNum> short_candidates(const Ideal& a) {
  const NumberField& k = a.k();
  const std::size_t d = a.degree();
  std::vector<AlgNum> out = a.z_basis();
  if (d == 1) return out;
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < d; ++j) cols.push_back(a.basis().column(j));
  auto red = lll_reduce(cols, t2_embedding_vectors(k));
  std::vector<int> e(d, -1);
  while (true) {
    IntVector v(d, mpz_class(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t r = 0; r < d; ++r) v[r] += e[i] * red[i][r];
    AlgNum x = k.scale(from_integers(v), mpq_class(1, a.den()));
    if (!x.is_zero()) out.push_back(x);
    std::size_t i = 0;
    while (i < d && ++e[i] > 1) e[i++] = -1;
    if (i == d) break;
  }
  return out;
}

struct TwoElement {
  AlgNum x1, x2;
  bool x1_generates = false;  // (x1) already equals the ideal
};

inline TwoElement two_element(const Ideal& a) {
  require(a.is_integral(), ErrorKind::NonIntegralInput, "two_element needs an integral ideal");
  const NumberField& k = a.k();
  std::optional<AlgNum> best;
  mpq_class best_norm;
  for (auto c : short_candidates(a)) {
    auto lead = std::find_if(c.c.begin(), c.c.end(), [](const mpq_class& v) { return v != 0; });
    if (lead != c.c.end() && *lead < 0) c = k.neg(c);
    mpq_class n = abs(k.norm(c));
    if (!best || n < best_norm || (n == best_norm && c < *best)) {
      best = c;
      best_norm = n;
    }
  }
  TwoElement t;
  t.x1 = *best;
  t.x1_generates = best_norm == ideal_norm(a);
  t.x2 = coprime_representative(a, principal_ideal(a.field(), t.x1));
  return t;
}

// Elements beta_i in O_K with sum beta_i gens_i = x, or nullopt if x is not in
// the ideal generated by gens.
inline std::optional<std::vector<AlgNum>> ideal_combination(const FieldPtr& f, const std::vector<AlgNum>& gens,
                                                            const AlgNum& x) {
  const NumberField& k = *f;
  const std::size_t d = k.degree();
  mpz_class l = x.denominator();
  for (const auto& g : gens) l = lcm(l, g.denominator());
  IntMatrix cols(d, d * gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) {
      AlgNum p = k.scale(k.mul(k.basis_element(j), gens[i]), mpq_class(l));
      for (std::size_t r = 0; r < d; ++r) cols(r, i * d + j) = p[r].get_num();
    }
  HnfResult h = hnf(cols, true);
  auto c = lattice_coordinates(h, k.scale(x, mpq_class(l)).scaled_integral(1));
  if (!c) return std::nullopt;
  std::size_t zeros = cols.cols() - h.rank();
  IntVector full(cols.cols(), mpz_class(0));
  for (std::size_t t = 0; t < cols.cols(); ++t)
    for (std::size_t j = 0; j < h.rank(); ++j) full[t] += (*h.transform)(t, zeros + j) * (*c)[j];
  std::vector<AlgNum> beta;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    IntVector v(full.begin() + i * d, full.begin() + (i + 1) * d);
    beta.push_back(from_integers(v));
  }
  return beta;
}

}  // namespace okwa
