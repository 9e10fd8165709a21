#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "okwa/okmodules.hpp"
#include "okwa/wautomata.hpp"

namespace okwa {

struct GeneratorsResult {
  std::optional<Word> counterexample;
  std::vector<Word> words;     // prefix-closed; phase-1 words first
  std::vector<KVector> configs;  // A(>w) for w in words
  std::size_t rank = 0;          // number of phase-1 words
  std::vector<std::size_t> pivots;  // coordinates on which the forward space projects injectively
  std::size_t phase2_iters = 0;
  std::size_t chain_bound = 0;  // of the phase-1 module, restricted to pivots
};

inline KVector restrict_to(const KVector& v, const std::vector<std::size_t>& pivots) {
  KVector out;
  for (std::size_t p : pivots) out.push_back(v[p]);
  return out;
}

namespace detail {

// Length-lex least word among w and w.s (s in probes) with a non-integral value.
inline std::optional<Word> nonintegral_witness(const WeightedAutomaton& a, const Word& w, const KVector& config,
                                               const std::vector<Word>& probes) {
  std::optional<Word> best;
  auto consider = [&](const Word& cand, const AlgNum& value) {
    if (!value.is_integral() && (!best || length_lex_less(cand, *best))) best = cand;
  };
  consider(w, kdot(a.k(), config, a.final));
  for (const auto& s : probes)
    if (!s.empty()) consider(concat(w, s), kdot(a.k(), config, observation(a, s)));
  return best;
}

inline std::vector<std::size_t> pivot_coordinates(const NumberField& k, const std::vector<KVector>& rows,
                                                  std::size_t n) {
  // A column of the row matrix joins when it is independent of the earlier chosen ones.
  KBasis span(k, rows.size());
  std::vector<std::size_t> piv;
  for (std::size_t j = 0; j < n; ++j) {
    KVector col;
    for (const auto& r : rows) col.push_back(r[j]);
    if (span.add(col)) piv.push_back(j);
  }
  return piv;
}

}  // namespace detail

// Words whose configurations O_K-generate the forward module, or a word with a
// non-integral value. probes are suffixes tried after every new word, so a
// non-integral configuration whose coordinates are values (as after backward
// conjugation) is reported as a value-level counterexample.
inline GeneratorsResult ok_generators(const WeightedAutomaton& a, const std::vector<Word>& probes = {}) {
  const NumberField& k = a.k();
  GeneratorsResult res;
  auto accept = [&](const Word& w, const KVector& v) {
    res.counterexample = detail::nonintegral_witness(a, w, v, probes);
    if (res.counterexample) return false;
    res.words.push_back(w);
    res.configs.push_back(v);
    return true;
  };

  // Phase 1: words that increase the K-rank.
  KBasis span(k, a.n);
  if (!span.add(a.init)) return res;
  if (!accept({}, a.init)) return res;
  for (std::size_t i = 0; i < res.words.size(); ++i)
    for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
      KVector v = krow_times(k, res.configs[i], a.trans[s]);
      if (!span.add(v)) continue;
      if (!accept(concat(res.words[i], {s}), v)) return res;
    }
  res.rank = res.words.size();
  res.pivots = detail::pivot_coordinates(k, res.configs, a.n);

  // Phase 2: words that enlarge the O_K-module, in coordinates restricted to the pivots.
  auto module_of = [&]() {
    std::vector<KVector> vs;
    for (const auto& c : res.configs) vs.push_back(restrict_to(c, res.pivots));
    return free_module(a.field, res.rank, vs);
  };
  PseudoMatrix m = module_of();
  res.chain_bound = chain_bound(m);
  PseudoHnf h = pseudo_hnf(m);
  for (std::size_t i = 0; i < res.words.size(); ++i)
    for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
      KVector v = krow_times(k, res.configs[i], a.trans[s]);
      if (module_contains(h, restrict_to(v, res.pivots))) continue;
      if (!accept(concat(res.words[i], {s}), v)) return res;
      ++res.phase2_iters;
      h = pseudo_hnf(module_of());
    }
  return res;
}

struct TransformStats {
  std::size_t rank = 0;
  std::size_t phase2_iters = 0;
  std::size_t chain_bound = 0;
  bool extra_state = false;
};

struct TransformOutcome {
  std::optional<Word> counterexample;
  std::optional<WeightedAutomaton> automaton;
  TransformStats stats;
};

// K-WA to an equivalent O_K-WA with at most rank + 1 states, or a word with a non-integral value.
inline TransformOutcome transform(const WeightedAutomaton& a) {
  const NumberField& k = a.k();
  TransformOutcome out;
  SpanBasis back = backward_basis(a);
  if (back.rank() == 0) {
    out.automaton = zero_automaton(a.field, a.alphabet);
    return out;
  }
  // Coordinate j of A'(>w) is the value of w.back.words[j]; back.words[0] is eps.
  WeightedAutomaton ap = conjugate(a, columns_matrix(k, back.vectors, a.n), Side::Right);
  GeneratorsResult gen = ok_generators(ap, back.words);
  out.stats.rank = gen.rank;
  out.stats.phase2_iters = gen.phase2_iters;
  out.stats.chain_bound = gen.chain_bound;
  if (gen.counterexample) {
    out.counterexample = gen.counterexample;
    return out;
  }
  if (gen.rank == 0) {
    out.automaton = zero_automaton(a.field, a.alphabet);
    return out;
  }

  // Pseudo-basis and generating set in pivot coordinates.
  std::vector<KVector> proj;
  for (const auto& c : gen.configs) proj.push_back(restrict_to(c, gen.pivots));
  PseudoHnf h = pseudo_hnf(free_module(a.field, gen.rank, proj));
  GeneratingSet gs = generating_set(h.as_matrix(a.field));
  out.stats.extra_state = gs.vectors.size() > gen.rank;

  // Lift generators back to the full coordinates of A': v = p * Cp^{-1} * C on the forward space.
  std::vector<KVector> basis_rows(gen.configs.begin(), gen.configs.begin() + gen.rank);
  KMatrix c = kfrom_rows(k, basis_rows, ap.n);
  std::vector<KVector> cp_rows;
  for (const auto& r : basis_rows) cp_rows.push_back(restrict_to(r, gen.pivots));
  KMatrix cp = kfrom_rows(k, cp_rows, gen.rank);
  auto lift_map = ksolve(k, cp, c);
  require(lift_map.has_value(), ErrorKind::InternalInconsistency, "pivot restriction is not injective");
  std::vector<KVector> f_rows;
  for (const auto& y : gs.vectors) f_rows.push_back(krow_times(k, y, *lift_map));
  KMatrix f = kfrom_rows(k, f_rows, ap.n);

  // Conjugate by F with O_K coefficients: A''(>) F = A'(>), F A'(s) = A''(s) F, A''(<) = F A'(<).
  auto express = [&](const KVector& v) {
    auto coef = gs.express(k, restrict_to(v, gen.pivots));
    require(coef.has_value(), ErrorKind::InternalInconsistency, "vector outside the forward module");
    return *coef;
  };
  const std::size_t m = gs.vectors.size();
  WeightedAutomaton res;
  res.field = a.field;
  res.alphabet = a.alphabet;
  res.n = m;
  res.init = express(ap.init);
  for (const auto& t : ap.trans) {
    KMatrix x = kzero_matrix(k, m, m);
    for (std::size_t i = 0; i < m; ++i) {
      KVector row = express(krow_times(k, f_rows[i], t));
      for (std::size_t j = 0; j < m; ++j) x(i, j) = row[j];
    }
    res.trans.push_back(std::move(x));
  }
  res.final = kmat_times(k, f, ap.final);
  require(res.integral(), ErrorKind::InternalInconsistency, "transform produced non-integral weights");
  out.automaton = std::move(res);
  return out;
}

}  // namespace okwa
