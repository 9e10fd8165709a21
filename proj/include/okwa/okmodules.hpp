#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "okwa/ideals.hpp"
#include "okwa/klinear.hpp"

namespace okwa {

// The module coeff * vec.
struct PseudoElement {
  Ideal coeff;
  KVector vec;
};

enum class PseudoShape { Generating, PseudoBasis };

// Module sum_i coeff_i * vec_i inside K^dim.
struct PseudoMatrix {
  FieldPtr field;
  std::size_t dim = 0;
  std::vector<PseudoElement> elems;
  PseudoShape shape = PseudoShape::Generating;
};

inline PseudoMatrix free_module(const FieldPtr& f, std::size_t dim, const std::vector<KVector>& vecs) {
  PseudoMatrix m{f, dim, {}, PseudoShape::Generating};
  for (const auto& v : vecs) m.elems.push_back({Ideal::unit(f), v});
  return m;
}

// Canonical pseudo-basis: h[i] has 1 at position i and zeros below; entries
// above the diagonal are reduced modulo ideals[r] * ideals[i]^{-1}.
struct PseudoHnf {
  std::vector<KVector> h;
  std::vector<Ideal> ideals;

  PseudoMatrix as_matrix(const FieldPtr& f) const {
    PseudoMatrix m{f, h.size(), {}, PseudoShape::PseudoBasis};
    for (std::size_t i = 0; i < h.size(); ++i) m.elems.push_back({ideals[i], h[i]});
    return m;
  }

  friend bool operator==(const PseudoHnf& a, const PseudoHnf& b) { return a.h == b.h && a.ideals == b.ideals; }
};

inline PseudoHnf pseudo_hnf(const PseudoMatrix& m) {
  const NumberField& k = *m.field;
  const std::size_t n = m.dim;
  std::vector<Ideal> ids;
  std::vector<KVector> cols;
  for (const auto& e : m.elems) {
    require(e.vec.size() == n, ErrorKind::DimensionMismatch, "pseudo-element length vs module dimension");
    if (kis_zero(e.vec)) continue;
    ids.push_back(e.coeff);
    cols.push_back(e.vec);
  }
  require(cols.size() >= n, ErrorKind::NotFullRank, "pseudo-matrix is not of full rank");
  std::size_t kk = cols.size();
  for (std::size_t i = n; i-- > 0;) {
    std::size_t piv = kk;
    for (std::size_t j = kk; j-- > 0;)
      if (!cols[j][i].is_zero()) {
        piv = j;
        break;
      }
    require(piv != kk, ErrorKind::NotFullRank, "pseudo-matrix is not of full rank");
    const std::size_t p = kk - 1;
    std::swap(cols[piv], cols[p]);
    std::swap(ids[piv], ids[p]);
    AlgNum a = cols[p][i];
    cols[p] = kscale(k, cols[p], k.inv(a));
    ids[p] = ideal_scale(ids[p], a);
    for (std::size_t j = p; j-- > 0;) {
      if (cols[j][i].is_zero()) continue;
      AlgNum aj = cols[j][i];
      Ideal aaj = ideal_scale(ids[j], aj);
      Ideal dd = ideal_add(aaj, ids[p]);
      Ideal dinv = ideal_inverse(dd);
      auto [e, f] = split_unit(ideal_mul(aaj, dinv), ideal_mul(ids[p], dinv));
      AlgNum u = k.div(e, aj);
      KVector new_p = kadd(k, kscale(k, cols[j], u), kscale(k, cols[p], f));
      KVector new_j = ksub(k, cols[j], kscale(k, cols[p], aj));
      Ideal new_jd = ideal_mul(ideal_mul(ids[j], ids[p]), dinv);
      cols[p] = std::move(new_p);
      cols[j] = std::move(new_j);
      ids[p] = dd;
      ids[j] = new_jd;
    }
    kk = p;
  }
  PseudoHnf res;
  res.h.assign(cols.begin() + kk, cols.begin() + kk + n);
  res.ideals.assign(ids.begin() + kk, ids.begin() + kk + n);
  for (std::size_t i = 0; i < n; ++i) {
    Ideal ci_inv = ideal_inverse(res.ideals[i]);
    for (std::size_t r = i; r-- > 0;) {
      const AlgNum& x = res.h[i][r];
      if (x.is_zero()) continue;
      Ideal b = ideal_mul(res.ideals[r], ci_inv);
      AlgNum q = k.sub(x, reduce_mod(b, x));
      if (!q.is_zero()) kaxpy(k, res.h[i], k.neg(q), res.h[r]);
    }
  }
  return res;
}

// Coefficients c_i in ideals[i] with v = sum c_i h[i], or nullopt.
inline std::optional<KVector> module_coordinates(const PseudoHnf& p, const KVector& v) {
  require(v.size() == p.h.size(), ErrorKind::DimensionMismatch, "vector length vs module dimension");
  if (p.h.empty()) return KVector{};
  const NumberField& k = p.ideals[0].k();
  KVector res = v;
  KVector c(p.h.size());
  for (std::size_t i = p.h.size(); i-- > 0;) {
    c[i] = res[i];
    if (!ideal_contains(p.ideals[i], c[i])) return std::nullopt;
    kaxpy(k, res, k.neg(c[i]), p.h[i]);
  }
  return c;
}

inline bool module_contains(const PseudoHnf& p, const KVector& v) { return module_coordinates(p, v).has_value(); }

inline bool module_contains(const PseudoMatrix& m, const KVector& v) {
  require(v.size() == m.dim, ErrorKind::DimensionMismatch, "vector length vs module dimension");
  return module_contains(pseudo_hnf(m), v);
}

// Every element of m lies in p (checked on Z-generators coeff basis * vec).
inline bool module_subset(const PseudoMatrix& m, const PseudoHnf& p) {
  const NumberField& k = *m.field;
  for (const auto& e : m.elems)
    for (const auto& x : e.coeff.z_basis())
      if (!module_contains(p, kscale(k, e.vec, x))) return false;
  return true;
}

inline bool module_equals(const PseudoMatrix& a, const PseudoMatrix& b) {
  require(a.dim == b.dim, ErrorKind::DimensionMismatch, "modules live in different dimensions");
  PseudoHnf pa = pseudo_hnf(a), pb = pseudo_hnf(b);
  bool canonical = pa == pb;
  bool mutual = module_subset(a, pb) && module_subset(b, pa);
  require(canonical == mutual, ErrorKind::InternalInconsistency,
          "pseudo-HNF comparison disagrees with mutual containment");
  return canonical;
}

inline Ideal determinantal_ideal(const PseudoMatrix& m) {
  const NumberField& k = *m.field;
  const std::size_t n = m.dim, cnt = m.elems.size();
  require(cnt >= n, ErrorKind::NotFullRank, "pseudo-matrix is not of full rank");
  if (n == 0) return Ideal::unit(m.field);
  std::optional<Ideal> acc;
  std::vector<std::size_t> sel(n);
  for (std::size_t i = 0; i < n; ++i) sel[i] = i;
  while (true) {
    KMatrix a = kzero_matrix(k, n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r) a(r, j) = m.elems[sel[j]].vec[r];
    AlgNum det = kdeterminant(k, a);
    if (!det.is_zero()) {
      Ideal term = m.elems[sel[0]].coeff;
      for (std::size_t j = 1; j < n; ++j) term = ideal_mul(term, m.elems[sel[j]].coeff);
      term = ideal_scale(term, det);
      acc = acc ? ideal_add(*acc, term) : term;
    }
    std::size_t t = n;
    while (t > 0 && sel[t - 1] == cnt - n + t - 1) --t;
    if (t == 0) break;
    ++sel[t - 1];
    for (std::size_t s = t; s < n; ++s) sel[s] = sel[s - 1] + 1;
  }
  require(acc.has_value(), ErrorKind::NotFullRank, "pseudo-matrix is not of full rank");
  return *acc;
}

inline bool module_is_integral(const PseudoMatrix& m) {
  const NumberField& k = *m.field;
  for (const auto& e : m.elems)
    for (const auto& x : e.coeff.z_basis())
      if (!kis_integral(kscale(k, e.vec, x))) return false;
  return true;
}

// floor(log2 N(d)): bounds the length of strict chains from m up to O_K^n.
inline std::size_t chain_bound(const PseudoMatrix& m) {
  require(module_is_integral(m), ErrorKind::NotIntegral, "module is not contained in O_K^n");
  mpq_class norm = ideal_norm(determinantal_ideal(m));
  return bit_length(norm.get_num()) - 1;
}

struct SplitPair {
  PseudoElement first;   // coefficient O_K
  PseudoElement second;  // coefficient a * b
  AlgNum a, b, c, d;     // (x', y') = (a x + b y, c x + d y), ad - bc = 1
};

inline SplitPair split_pair(const PseudoElement& p, const PseudoElement& q) {
  require(p.vec.size() == q.vec.size(), ErrorKind::DimensionMismatch, "split_pair vector lengths differ");
  const FieldPtr& f = p.coeff.field();
  const NumberField& k = *f;
  const mpz_class& r = p.coeff.den();
  const mpz_class& s = q.coeff.den();
  Ideal ra = ideal_scale(p.coeff, mpq_class(r));
  Ideal sb = ideal_scale(q.coeff, mpq_class(s));
  AlgNum alpha = coprime_representative(ra, sb);
  Ideal quotient = ideal_scale(ideal_inverse(ra), alpha);
  auto [e, fe] = split_unit(quotient, sb);
  SplitPair out{{Ideal::unit(f), {}}, {ideal_mul(p.coeff, q.coeff), {}}, k.zero(), k.zero(), k.zero(), k.zero()};
  out.a = k.scale(alpha, mpq_class(1) / mpq_class(r));
  out.b = k.scale(fe, mpq_class(1) / mpq_class(s));
  out.c = fe.is_zero() ? k.zero() : k.from_rational(mpq_class(-s));
  out.d = k.mul(e, k.scale(k.inv(alpha), mpq_class(r)));
  out.first.vec = kadd(k, kscale(k, p.vec, out.a), kscale(k, q.vec, out.b));
  out.second.vec = kadd(k, kscale(k, p.vec, out.c), kscale(k, q.vec, out.d));
  return out;
}

// {(O_K, y_1), ..., (O_K, y_{l-1}), (prod a_i, z)} by a left fold of split_pair.
inline PseudoMatrix steinitz_form(const PseudoMatrix& m) {
  PseudoMatrix out{m.field, m.dim, {}, PseudoShape::PseudoBasis};
  if (m.elems.empty()) return out;
  PseudoElement acc = m.elems[0];
  for (std::size_t i = 1; i < m.elems.size(); ++i) {
    SplitPair sp = split_pair(acc, m.elems[i]);
    out.elems.push_back(std::move(sp.first));
    acc = std::move(sp.second);
  }
  out.elems.push_back(std::move(acc));
  return out;
}

struct GeneratingSet {
  std::vector<KVector> vectors;  // y_1..y_{l-1}, then g z or x1 z, x2 z
  std::vector<KVector> free_part;
  KVector z;
  std::optional<Ideal> residual;
  std::vector<AlgNum> residual_gens;  // generators of the residual ideal
  bool principal = true;

  // O_K-coefficients of v on vectors, or nullopt when v is outside the module.
  std::optional<KVector> express(const NumberField& k, const KVector& v) const {
    const std::size_t l = free_part.size() + (residual ? 1 : 0);
    if (l == 0) return kis_zero(v) ? std::optional<KVector>(KVector{}) : std::nullopt;
    KMatrix basis = kzero_matrix(k, v.size(), l);
    for (std::size_t i = 0; i < free_part.size(); ++i)
      for (std::size_t r = 0; r < v.size(); ++r) basis(r, i) = free_part[i][r];
    for (std::size_t r = 0; r < v.size(); ++r) basis(r, l - 1) = z[r];
    KMatrix rhs = kzero_matrix(k, v.size(), 1);
    for (std::size_t r = 0; r < v.size(); ++r) rhs(r, 0) = v[r];
    auto sol = ksolve(k, basis, rhs);
    if (!sol) return std::nullopt;
    KVector out;
    for (std::size_t i = 0; i + 1 < l; ++i) {
      if (!(*sol)(i, 0).is_integral()) return std::nullopt;
      out.push_back((*sol)(i, 0));
    }
    auto beta = ideal_combination(residual->field(), residual_gens, (*sol)(l - 1, 0));
    if (!beta) return std::nullopt;
    for (const auto& b : *beta) out.push_back(b);
    return out;
  }
};

inline GeneratingSet generating_set(const PseudoMatrix& m) {
  const FieldPtr& f = m.field;
  const NumberField& k = *f;
  GeneratingSet g;
  PseudoMatrix st = steinitz_form(m);
  if (st.elems.empty()) return g;
  for (std::size_t i = 0; i + 1 < st.elems.size(); ++i) {
    g.free_part.push_back(st.elems[i].vec);
    g.vectors.push_back(st.elems[i].vec);
  }
  const PseudoElement& last = st.elems.back();
  g.z = last.vec;
  g.residual = last.coeff;
  mpq_class inv_r = mpq_class(1) / mpq_class(last.coeff.den());
  TwoElement te = two_element(ideal_scale(last.coeff, mpq_class(last.coeff.den())));
  AlgNum x1 = k.scale(te.x1, inv_r), x2 = k.scale(te.x2, inv_r);
  g.principal = te.x1_generates;
  g.residual_gens.push_back(x1);
  g.vectors.push_back(kscale(k, g.z, x1));
  if (!g.principal) {
    g.residual_gens.push_back(x2);
    g.vectors.push_back(kscale(k, g.z, x2));
  }
  return g;
}

}  // namespace okwa
