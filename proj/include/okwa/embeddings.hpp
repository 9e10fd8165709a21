#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "okwa/numfield.hpp"

namespace okwa {

// Complex disk {z : |z - (re + i im)| <= rad} with arbitrary-precision fields.
struct ComplexBall {
  mpf_class re, im, rad;

  explicit ComplexBall(mp_bitcnt_t prec) : re(0, prec), im(0, prec), rad(0, prec) {}
};

namespace detail {

inline mpf_class ulp_factor(mp_bitcnt_t prec) {
  mpf_class e(1, prec);
  mpf_div_2exp(e.get_mpf_t(), e.get_mpf_t(), prec - 4);
  return e;
}

// Upper bound on |re + i im|.
inline mpf_class abs_upper(const mpf_class& re, const mpf_class& im, mp_bitcnt_t prec) {
  mpf_class s(re * re + im * im, prec);
  mpf_class r(sqrt(s), prec);
  return mpf_class(r * (1 + ulp_factor(prec)), prec);
}

struct Cx {
  mpf_class re, im;
};

inline Cx cx_mul(const Cx& a, const Cx& b, mp_bitcnt_t p) {
  return {mpf_class(a.re * b.re - a.im * b.im, p), mpf_class(a.re * b.im + a.im * b.re, p)};
}

inline Cx cx_div(const Cx& a, const Cx& b, mp_bitcnt_t p) {
  mpf_class den(b.re * b.re + b.im * b.im, p);
  return {mpf_class((a.re * b.re + a.im * b.im) / den, p), mpf_class((a.im * b.re - a.re * b.im) / den, p)};
}

inline Cx poly_eval_cx(const IntVector& f, const Cx& z, mp_bitcnt_t p) {
  Cx r{mpf_class(0, p), mpf_class(0, p)};
  for (std::size_t i = f.size(); i-- > 0;) {
    r = cx_mul(r, z, p);
    r.re += mpf_class(f[i], p);
  }
  return r;
}

inline ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b, mp_bitcnt_t p) {
  ComplexBall r(p);
  r.re = a.re + b.re;
  r.im = a.im + b.im;
  r.rad = a.rad + b.rad + abs_upper(r.re, r.im, p) * ulp_factor(p);
  return r;
}

inline ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b, mp_bitcnt_t p) {
  ComplexBall r(p);
  r.re = a.re * b.re - a.im * b.im;
  r.im = a.re * b.im + a.im * b.re;
  mpf_class na = abs_upper(a.re, a.im, p), nb = abs_upper(b.re, b.im, p);
  r.rad = na * b.rad + nb * a.rad + a.rad * b.rad + (na * nb + abs_upper(r.re, r.im, p)) * ulp_factor(p);
  return r;
}

inline ComplexBall ball_from_rational(const mpq_class& q, mp_bitcnt_t p) {
  ComplexBall r(p);
  r.re = mpf_class(q, p);
  r.rad = abs(r.re) * ulp_factor(p);
  return r;
}

}  // namespace detail

// Enclosures of the d roots of the minimal polynomial (Durand-Kerner iterates,
// radii from the Braess-Hadeler inclusion bound d |f(z_i)| / prod |z_i - z_j|).
inline std::vector<ComplexBall> root_enclosures(const NumberField& k, mp_bitcnt_t prec = 128) {
  const IntVector& f = k.min_poly();
  const std::size_t d = k.degree();
  const mp_bitcnt_t wp = prec + 32;
  std::vector<detail::Cx> z(d);
  mpf_class bound(1, wp);
  for (const auto& c : f) bound = std::max(bound, mpf_class(mpf_class(abs(c), wp) + 1, wp));
  detail::Cx seed{mpf_class(0.4, wp), mpf_class(0.9, wp)};
  detail::Cx pw{mpf_class(1, wp), mpf_class(0, wp)};
  for (std::size_t i = 0; i < d; ++i) {
    pw = detail::cx_mul(pw, seed, wp);
    z[i] = {mpf_class(pw.re * bound, wp), mpf_class(pw.im * bound, wp)};
  }
  mpf_class tol(1, wp);
  mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec + 8);
  for (int iter = 0; iter < 5000 && d > 1; ++iter) {
    mpf_class worst(0, wp);
    for (std::size_t i = 0; i < d; ++i) {
      detail::Cx num = detail::poly_eval_cx(f, z[i], wp);
      detail::Cx den{mpf_class(1, wp), mpf_class(0, wp)};
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) den = detail::cx_mul(den, {mpf_class(z[i].re - z[j].re, wp), mpf_class(z[i].im - z[j].im, wp)}, wp);
      detail::Cx step = detail::cx_div(num, den, wp);
      z[i].re -= step.re;
      z[i].im -= step.im;
      worst = std::max(worst, mpf_class(abs(step.re) + abs(step.im), wp));
    }
    if (worst < tol) break;
  }
  if (d == 1) z[0] = {mpf_class(-f[0], wp), mpf_class(0, wp)};

  std::vector<ComplexBall> out;
  for (std::size_t i = 0; i < d; ++i) {
    ComplexBall b(wp);
    b.re = z[i].re;
    b.im = z[i].im;
    detail::Cx val = detail::poly_eval_cx(f, z[i], wp);
    mpf_class zabs = detail::abs_upper(z[i].re, z[i].im, wp);
    mpf_class scale(0, wp), pw_abs(1, wp);
    for (const auto& c : f) {
      scale += mpf_class(abs(c), wp) * pw_abs;
      pw_abs *= zabs;
    }
    mpf_class fabs = detail::abs_upper(val.re, val.im, wp) +
                     scale * detail::ulp_factor(wp) * mpf_class(4 * (d + 1), wp);
    mpf_class prod(1, wp);
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) {
        mpf_class dr(z[i].re - z[j].re, wp), di(z[i].im - z[j].im, wp);
        mpf_class m(sqrt(mpf_class(dr * dr + di * di, wp)), wp);
        prod *= m * (1 - detail::ulp_factor(wp) * 4);
      }
    b.rad = (d == 1) ? mpf_class(0, wp) : mpf_class(fabs * mpf_class(d, wp) / prod, wp);
    b.rad += zabs * detail::ulp_factor(wp);
    out.push_back(b);
  }
  return out;
}

// Enclosure of sigma(a) where sigma maps theta into the given root ball.
inline ComplexBall embed(const NumberField& k, const ComplexBall& root, const AlgNum& a) {
  mp_bitcnt_t p = root.re.get_prec();
  RatVector pw = k.to_power_basis(a);
  ComplexBall acc = detail::ball_from_rational(pw.back(), p);
  for (std::size_t i = pw.size() - 1; i-- > 0;)
    acc = detail::ball_add(detail::ball_mul(acc, root, p), detail::ball_from_rational(pw[i], p), p);
  return acc;
}

// Product of all embeddings: an enclosure of the field norm.
inline ComplexBall norm_enclosure(const NumberField& k, const AlgNum& a, mp_bitcnt_t prec = 128) {
  auto roots = root_enclosures(k, prec);
  mp_bitcnt_t p = roots[0].re.get_prec();
  ComplexBall acc = detail::ball_from_rational(1, p);
  for (const auto& r : roots) acc = detail::ball_mul(acc, embed(k, r, a), p);
  return acc;
}

inline bool ball_contains(const ComplexBall& b, const mpq_class& q) {
  mp_bitcnt_t p = b.re.get_prec();
  mpf_class dr(b.re - mpf_class(q, p), p);
  mpf_class dist = detail::abs_upper(dr, b.im, p);
  return dist <= b.rad;
}

// Coordinates of each basis element under all d complex embeddings, as real
// vectors (Re s_1, Im s_1, ..., Re s_d, Im s_d); their dot products give T2.
inline std::vector<std::vector<double>> t2_embedding_vectors(const NumberField& k) {
  auto roots = root_enclosures(k, 96);
  std::vector<std::vector<double>> out(k.degree());
  for (std::size_t i = 0; i < k.degree(); ++i)
    for (const auto& r : roots) {
      ComplexBall e = embed(k, r, k.basis_element(i));
      out[i].push_back(e.re.get_d());
      out[i].push_back(e.im.get_d());
    }
  return out;
}

}  // namespace okwa
