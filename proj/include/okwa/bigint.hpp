#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <tuple>

#include "okwa/errors.hpp"

namespace okwa {

inline std::size_t bit_length(const mpz_class& z) {
  if (z == 0) return 0;
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

// g = s*a + t*b with g = gcd(a, b) >= 0.
inline std::tuple<mpz_class, mpz_class, mpz_class> ext_gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {g, s, t};
}

inline mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline mpz_class floor_of(const mpq_class& q) {
  return floor_div(q.get_num(), q.get_den());
}

inline bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

inline mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline mpz_class parse_integer(const std::string& s) {
  mpz_class z;
  std::string t = (!s.empty() && s[0] == '+') ? s.substr(1) : s;
  if (t.empty() || z.set_str(t, 10) != 0) fail(ErrorKind::Parse, "not an integer: '" + s + "'");
  return z;
}

// Accepts "n" or "n/m" with m != 0.
inline mpq_class parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return mpq_class(parse_integer(s));
  mpz_class num = parse_integer(s.substr(0, slash));
  mpz_class den = parse_integer(s.substr(slash + 1));
  if (den == 0) fail(ErrorKind::Parse, "zero denominator: '" + s + "'");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const mpz_class& z) { return z.get_str(); }
inline std::string to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace okwa
