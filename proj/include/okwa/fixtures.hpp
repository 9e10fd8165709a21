#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "okwa/ideals.hpp"
#include "okwa/okmodules.hpp"
#include "okwa/wautomata.hpp"

namespace okwa {

// Three states over {a, b}: q0 -a-> (0, x1, x2), q0 -b-> (0, y1, y2), q1 -a-> q0,
// q2 -b-> q0, init = final = e0. The rows (x1, x2) and (y1, y2) are the images of
// the generators x, y of a under an isomorphism a + a^{-1} = O_K^2, so the
// forward module is O_K + a and the language is
//   L(eps) = 1, L(aa) = x1, L(ab) = x2, L(ba) = y1, L(bb) = y2, zero on odd lengths.
inline WeightedAutomaton pip_automaton(const Ideal& a) {
  require(a.is_integral(), ErrorKind::NonIntegralInput, "pip_automaton needs an integral ideal");
  const FieldPtr& f = a.field();
  const NumberField& k = *f;
  TwoElement te = two_element(a);

  KVector e1{k.one(), k.zero()}, e2{k.zero(), k.one()};
  SplitPair sp = split_pair({a, e1}, {ideal_inverse(a), e2});
  KMatrix uv = kzero_matrix(k, 2, 2);  // columns u, v
  for (std::size_t i = 0; i < 2; ++i) {
    uv(i, 0) = sp.first.vec[i];
    uv(i, 1) = sp.second.vec[i];
  }
  auto image = [&](const AlgNum& t) {
    KMatrix rhs = kzero_matrix(k, 2, 1);
    rhs(0, 0) = t;
    auto c = ksolve(k, uv, rhs);
    require(c.has_value(), ErrorKind::InternalInconsistency, "split basis does not span");
    KVector out{(*c)(0, 0), (*c)(1, 0)};
    require(kis_integral(out), ErrorKind::InternalInconsistency, "split image not integral");
    return out;
  };
  KVector x = image(te.x1), y = image(te.x2);

  WeightedAutomaton w;
  w.field = f;
  w.alphabet = {"a", "b"};
  w.n = 3;
  w.init = {k.one(), k.zero(), k.zero()};
  w.final = {k.one(), k.zero(), k.zero()};
  KMatrix ta = kzero_matrix(k, 3, 3), tb = kzero_matrix(k, 3, 3);
  ta(0, 1) = x[0];
  ta(0, 2) = x[1];
  ta(1, 0) = k.one();
  tb(0, 1) = y[0];
  tb(0, 2) = y[1];
  tb(2, 0) = k.one();
  w.trans = {ta, tb};
  return w;
}

inline Ideal example1_ideal() {
  FieldPtr f = q_sqrt_minus5();
  return ideal_from_generators(f, {f->from_rational(3), AlgNum(RatVector{mpq_class(2), mpq_class(-1)})});
}

inline WeightedAutomaton example1_automaton() { return pip_automaton(example1_ideal()); }

// Exhaustive search over integral elements with coordinates in [-bound, bound];
// returns the lexicographically greatest generator. Test and fixture use only.
inline std::optional<AlgNum> principal_bruteforce(const Ideal& a, unsigned long bound) {
  require(a.is_integral(), ErrorKind::NonIntegralInput, "principal_bruteforce needs an integral ideal");
  const NumberField& k = a.k();
  const std::size_t d = k.degree();
  const mpq_class target = ideal_norm(a);
  const long b = static_cast<long>(bound);
  std::optional<AlgNum> best;
  std::vector<long> c(d, -b);
  while (true) {
    AlgNum x{RatVector(d)};
    for (std::size_t i = 0; i < d; ++i) x.c[i] = c[i];
    if (!x.is_zero() && ideal_contains(a, x) && abs(k.norm(x)) == target)
      if (!best || *best < x) best = x;
    std::size_t i = 0;
    while (i < d && c[i] == b) c[i++] = -b;
    if (i == d) break;
    ++c[i];
  }
  return best;
}

struct RandomAutomatonSpec {
  std::uint64_t seed = 0;
  std::size_t states = 3;
  std::size_t alphabet = 2;
  long coeff_bound = 2;
  unsigned zero_weight = 1;  // an entry is zero with probability zero_weight / (zero_weight + 2)
};

inline std::vector<std::string> default_alphabet(std::size_t size) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

// Integral entries with coordinates in [-coeff_bound, coeff_bound]; reproducible from the spec.
inline WeightedAutomaton random_automaton(const FieldPtr& f, const RandomAutomatonSpec& spec) {
  require(spec.alphabet >= 1 && spec.alphabet <= 26, ErrorKind::DimensionMismatch, "alphabet size must be in 1..26");
  const NumberField& k = *f;
  std::mt19937_64 g(spec.seed);
  std::uniform_int_distribution<long> coeff(-spec.coeff_bound, spec.coeff_bound);
  std::uniform_int_distribution<unsigned> zero(0, spec.zero_weight + 1);
  auto entry = [&]() {
    AlgNum x = k.zero();
    if (zero(g) < spec.zero_weight) return x;
    for (std::size_t i = 0; i < k.degree(); ++i) x.c[i] = coeff(g);
    return x;
  };
  WeightedAutomaton a;
  a.field = f;
  a.alphabet = default_alphabet(spec.alphabet);
  a.n = spec.states;
  for (std::size_t i = 0; i < a.n; ++i) a.init.push_back(entry());
  for (std::size_t s = 0; s < spec.alphabet; ++s) {
    KMatrix m = kzero_matrix(k, a.n, a.n);
    for (std::size_t i = 0; i < a.n; ++i)
      for (std::size_t j = 0; j < a.n; ++j) m(i, j) = entry();
    a.trans.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < a.n; ++i) a.final.push_back(entry());
  return a;
}

// Adds 1/p to one entry chosen by the seed (init, a transition, or final).
inline WeightedAutomaton perturb_entry(const WeightedAutomaton& a, std::uint64_t seed, long p) {
  require(a.n > 0, ErrorKind::DimensionMismatch, "cannot perturb a 0-state automaton");
  const NumberField& k = a.k();
  std::mt19937_64 g(seed);
  WeightedAutomaton out = a;
  const std::size_t slots = a.n * (2 + a.n * a.alphabet.size());
  std::size_t pick = std::uniform_int_distribution<std::size_t>(0, slots - 1)(g);
  AlgNum delta = k.from_rational(mpq_class(1, p));
  if (pick < a.n) {
    out.init[pick] = k.add(out.init[pick], delta);
  } else if (pick < 2 * a.n) {
    out.final[pick - a.n] = k.add(out.final[pick - a.n], delta);
  } else {
    pick -= 2 * a.n;
    std::size_t s = pick / (a.n * a.n), r = pick % (a.n * a.n);
    out.trans[s](r / a.n, r % a.n) = k.add(out.trans[s](r / a.n, r % a.n), delta);
  }
  return out;
}

}  // namespace okwa
