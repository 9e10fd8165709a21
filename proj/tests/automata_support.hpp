#pragma once

#include <optional>
#include <vector>

#include "ideal_support.hpp"
#include "okwa/fixtures.hpp"
#include "okwa/wautomata.hpp"

namespace okwa::testing {

// All words of length <= max_len in length-lex order.
inline std::vector<Word> all_words(std::size_t sigma, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t s = 0; s < sigma; ++s) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

// Explicit product of transition matrices; independent of the configuration routine.
inline AlgNum eval_by_matrices(const WeightedAutomaton& a, const Word& w) {
  const NumberField& k = a.k();
  KMatrix m = kidentity(k, a.n);
  for (std::size_t s : w) m = kmul(k, m, a.trans[s]);
  return kdot(k, a.init, kmat_times(k, m, a.final));
}

inline std::optional<Word> brute_difference(const WeightedAutomaton& a, const WeightedAutomaton& b,
                                            std::size_t max_len) {
  for (const auto& w : all_words(a.alphabet.size(), max_len))
    if (!(eval(a, w) == eval(b, w))) return w;
  return std::nullopt;
}

inline bool agree_up_to(const WeightedAutomaton& a, const WeightedAutomaton& b, std::size_t max_len) {
  return !brute_difference(a, b, max_len).has_value();
}

// Rank over K of the Hankel block on words of length <= max_len.
inline std::size_t hankel_rank(const WeightedAutomaton& a, std::size_t max_len) {
  auto words = all_words(a.alphabet.size(), max_len);
  KBasis rows(a.k(), words.size());
  std::size_t r = 0;
  for (const auto& p : words) {
    KVector row;
    for (const auto& s : words) row.push_back(eval(a, concat(p, s)));
    if (rows.add(row)) ++r;
  }
  return r;
}

inline RandomAutomatonSpec small_spec(std::mt19937_64& g, std::size_t max_states = 3) {
  RandomAutomatonSpec s;
  s.seed = g();
  s.states = uniform(g, 1, max_states);
  s.alphabet = uniform(g, 1, 2);
  s.coeff_bound = 2;
  s.zero_weight = static_cast<unsigned>(uniform(g, 0, 3));
  return s;
}

inline AlgNum q_(long p, long q = 1) { return AlgNum(RatVector{mpq_class(p, q)}); }

// 1-state automaton over Q with the given scalar weights.
inline WeightedAutomaton scalar_automaton(mpq_class init, mpq_class trans, mpq_class fin,
                                          std::size_t sigma = 1) {
  FieldPtr q = rationals();
  WeightedAutomaton a;
  a.field = q;
  a.alphabet = default_alphabet(sigma);
  a.n = 1;
  a.init = {AlgNum(RatVector{init})};
  a.final = {AlgNum(RatVector{fin})};
  for (std::size_t s = 0; s < sigma; ++s) a.trans.push_back(KMatrix(1, 1, AlgNum(RatVector{trans})));
  return a;
}

}  // namespace okwa::testing
