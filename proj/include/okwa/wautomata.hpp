#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "okwa/klinear.hpp"
#include "okwa/numfield.hpp"

namespace okwa {

// Letters are indices into the automaton's alphabet.
using Word = std::vector<std::size_t>;

// Length first, then letter order.
inline bool length_lex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// Row-vector convention: value(w) = init * trans[w_1] * ... * trans[w_k] * final.
struct WeightedAutomaton {
  FieldPtr field;
  std::vector<std::string> alphabet;
  std::size_t n = 0;
  KVector init;
  std::vector<KMatrix> trans;  // one n x n matrix per letter
  KVector final;

  const NumberField& k() const { return *field; }

  bool integral() const {
    if (!kis_integral(init) || !kis_integral(final)) return false;
    for (const auto& m : trans)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!m(i, j).is_integral()) return false;
    return true;
  }

  void validate() const {
    require(field != nullptr, ErrorKind::DimensionMismatch, "automaton without field");
    require(!alphabet.empty(), ErrorKind::DimensionMismatch, "empty alphabet");
    std::set<std::string> seen(alphabet.begin(), alphabet.end());
    require(seen.size() == alphabet.size(), ErrorKind::DimensionMismatch, "duplicate alphabet symbol");
    require(init.size() == n && final.size() == n, ErrorKind::DimensionMismatch, "init/final length differs from n");
    require(trans.size() == alphabet.size(), ErrorKind::DimensionMismatch, "one transition matrix per letter");
    for (const auto& m : trans)
      require(m.rows() == n && m.cols() == n, ErrorKind::DimensionMismatch, "transition matrix shape");
    auto chk = [&](const AlgNum& a) {
      require(a.size() == field->degree(), ErrorKind::DimensionMismatch, "entry has wrong degree");
    };
    for (const auto& a : init) chk(a);
    for (const auto& a : final) chk(a);
    for (const auto& m : trans)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) chk(m(i, j));
  }
};

inline WeightedAutomaton zero_automaton(const FieldPtr& f, std::vector<std::string> alphabet) {
  WeightedAutomaton a;
  a.field = f;
  a.alphabet = std::move(alphabet);
  a.trans.assign(a.alphabet.size(), kzero_matrix(*f, 0, 0));
  return a;
}

inline std::size_t letter_index(const WeightedAutomaton& a, const std::string& s) {
  auto it = std::find(a.alphabet.begin(), a.alphabet.end(), s);
  if (it == a.alphabet.end()) fail(ErrorKind::UnknownSymbol, "symbol '" + s + "' not in alphabet");
  return static_cast<std::size_t>(it - a.alphabet.begin());
}

// Single-character alphabets read words character by character; otherwise
// symbols are separated by spaces or commas.
inline Word parse_word(const WeightedAutomaton& a, const std::string& text) {
  bool single = std::all_of(a.alphabet.begin(), a.alphabet.end(), [](const std::string& s) { return s.size() == 1; });
  Word w;
  if (single) {
    for (char c : text) w.push_back(letter_index(a, std::string(1, c)));
    return w;
  }
  std::string cur;
  for (char c : text + " ") {
    if (c == ' ' || c == ',') {
      if (!cur.empty()) w.push_back(letter_index(a, cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return w;
}

inline std::string word_to_string(const WeightedAutomaton& a, const Word& w) {
  bool single = std::all_of(a.alphabet.begin(), a.alphabet.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i > 0) out += ' ';
    out += a.alphabet.at(w[i]);
  }
  return out;
}

inline void check_word(const WeightedAutomaton& a, const Word& w) {
  for (std::size_t s : w)
    require(s < a.alphabet.size(), ErrorKind::UnknownSymbol, "letter index outside alphabet");
}

// A(>w)
inline KVector configuration(const WeightedAutomaton& a, const Word& w) {
  check_word(a, w);
  KVector v = a.init;
  for (std::size_t s : w) v = krow_times(a.k(), v, a.trans[s]);
  return v;
}

// A(w<)
inline KVector observation(const WeightedAutomaton& a, const Word& w) {
  check_word(a, w);
  KVector v = a.final;
  for (std::size_t i = w.size(); i-- > 0;) v = kmat_times(a.k(), a.trans[w[i]], v);
  return v;
}

inline AlgNum eval(const WeightedAutomaton& a, const Word& w) { return kdot(a.k(), configuration(a, w), a.final); }

inline AlgNum eval(const WeightedAutomaton& a, const std::string& w) { return eval(a, parse_word(a, w)); }

// Words whose vectors form a K-basis of the forward (or backward) space, in
// discovery order; vectors[i] belongs to words[i].
struct SpanBasis {
  std::vector<Word> words;
  std::vector<KVector> vectors;
  std::size_t rank() const { return words.size(); }
};

inline SpanBasis forward_basis(const WeightedAutomaton& a) {
  SpanBasis b;
  KBasis span(a.k(), a.n);
  if (!span.add(a.init)) return b;
  b.words.push_back({});
  b.vectors.push_back(a.init);
  for (std::size_t i = 0; i < b.words.size(); ++i)
    for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
      KVector v = krow_times(a.k(), b.vectors[i], a.trans[s]);
      if (!span.add(v)) continue;
      Word w = b.words[i];
      w.push_back(s);
      b.words.push_back(std::move(w));
      b.vectors.push_back(std::move(v));
    }
  return b;
}

// Words grow on the left, so the list is suffix-closed.
inline SpanBasis backward_basis(const WeightedAutomaton& a) {
  SpanBasis b;
  KBasis span(a.k(), a.n);
  if (!span.add(a.final)) return b;
  b.words.push_back({});
  b.vectors.push_back(a.final);
  for (std::size_t i = 0; i < b.words.size(); ++i)
    for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
      KVector v = kmat_times(a.k(), a.trans[s], b.vectors[i]);
      if (!span.add(v)) continue;
      Word w{s};
      w.insert(w.end(), b.words[i].begin(), b.words[i].end());
      b.words.push_back(std::move(w));
      b.vectors.push_back(std::move(v));
    }
  return b;
}

// A zero space is still reported as {eps}.
inline std::vector<Word> forward_words(const WeightedAutomaton& a) {
  auto w = forward_basis(a).words;
  return w.empty() ? std::vector<Word>{Word{}} : w;
}

inline std::vector<Word> backward_words(const WeightedAutomaton& a) {
  auto w = backward_basis(a).words;
  return w.empty() ? std::vector<Word>{Word{}} : w;
}

enum class Side { Left, Right };

// Right, with m (n x p): the p-state A' with A'(>) = A(>) m, A(s) m = m A'(s), m A'(<) = A(<).
// Left, with m (p x n): the p-state A' with A'(>) m = A(>), m A(s) = A'(s) m, A'(<) = m A(<).
inline WeightedAutomaton conjugate(const WeightedAutomaton& a, const KMatrix& m, Side side) {
  const NumberField& k = a.k();
  WeightedAutomaton out;
  out.field = a.field;
  out.alphabet = a.alphabet;
  auto col = [&](const KVector& v) {
    KMatrix c = kzero_matrix(k, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) c(i, 0) = v[i];
    return c;
  };
  if (side == Side::Right) {
    require(m.rows() == a.n, ErrorKind::DimensionMismatch, "right conjugation matrix must have n rows");
    out.n = m.cols();
    out.init = krow_times(k, a.init, m);
    for (const auto& t : a.trans) {
      auto x = ksolve(k, m, kmul(k, t, m));
      if (!x) fail(ErrorKind::NoConjugate, "transition system has no solution");
      out.trans.push_back(*x);
    }
    auto y = ksolve(k, m, col(a.final));
    if (!y) fail(ErrorKind::NoConjugate, "final system has no solution");
    out.final = y->column(0);
  } else {
    require(m.cols() == a.n, ErrorKind::DimensionMismatch, "left conjugation matrix must have n columns");
    out.n = m.rows();
    KMatrix mt = m.transpose();
    auto x = ksolve(k, mt, col(a.init));
    if (!x) fail(ErrorKind::NoConjugate, "initial system has no solution");
    out.init = x->column(0);
    for (const auto& t : a.trans) {
      auto y = ksolve(k, mt, kmul(k, m, t).transpose());
      if (!y) fail(ErrorKind::NoConjugate, "transition system has no solution");
      out.trans.push_back(y->transpose());
    }
    out.final = kmat_times(k, m, a.final);
  }
  return out;
}

inline KMatrix columns_matrix(const NumberField& k, const std::vector<KVector>& cols, std::size_t rows) {
  KMatrix m = kzero_matrix(k, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

// Backward conjugation, then restriction to the forward basis.
inline WeightedAutomaton minimize_K(const WeightedAutomaton& a) {
  SpanBasis back = backward_basis(a);
  if (back.rank() == 0) return zero_automaton(a.field, a.alphabet);
  WeightedAutomaton b = conjugate(a, columns_matrix(a.k(), back.vectors, a.n), Side::Right);
  SpanBasis fwd = forward_basis(b);
  if (fwd.rank() == 0) return zero_automaton(a.field, a.alphabet);
  return conjugate(b, kfrom_rows(a.k(), fwd.vectors, b.n), Side::Left);
}

inline WeightedAutomaton difference_automaton(const WeightedAutomaton& a, const WeightedAutomaton& b) {
  require_same_field(a.k(), b.k());
  require(a.alphabet == b.alphabet, ErrorKind::AlphabetMismatch, "automata have different alphabets");
  const NumberField& k = a.k();
  WeightedAutomaton d;
  d.field = a.field;
  d.alphabet = a.alphabet;
  d.n = a.n + b.n;
  d.init = a.init;
  for (const auto& x : b.init) d.init.push_back(k.neg(x));
  d.final = a.final;
  d.final.insert(d.final.end(), b.final.begin(), b.final.end());
  for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
    KMatrix m = kzero_matrix(k, d.n, d.n);
    for (std::size_t i = 0; i < a.n; ++i)
      for (std::size_t j = 0; j < a.n; ++j) m(i, j) = a.trans[s](i, j);
    for (std::size_t i = 0; i < b.n; ++i)
      for (std::size_t j = 0; j < b.n; ++j) m(a.n + i, a.n + j) = b.trans[s](i, j);
    d.trans.push_back(std::move(m));
  }
  return d;
}

// Length-lex least w with eval(a, w) != eval(b, w), or nullopt when equivalent.
inline std::optional<Word> equiv_counterexample(const WeightedAutomaton& a, const WeightedAutomaton& b) {
  WeightedAutomaton d = difference_automaton(a, b);
  const NumberField& k = d.k();
  SpanBasis fwd = forward_basis(d);
  bool differ = false;
  for (const auto& v : fwd.vectors)
    if (!kdot(k, v, d.final).is_zero()) differ = true;
  if (!differ) return std::nullopt;

  // back[j] spans { A(s<) : |s| = j }; the least length L is the first j with init . back[j] != 0.
  auto basis_of = [&](const std::vector<KVector>& vs) {
    KBasis span(k, d.n);
    std::vector<KVector> out;
    for (const auto& v : vs)
      if (span.add(v)) out.push_back(v);
    return out;
  };
  auto pairs_nonzero = [&](const KVector& row, const std::vector<KVector>& cols) {
    for (const auto& c : cols)
      if (!kdot(k, row, c).is_zero()) return true;
    return false;
  };
  std::vector<std::vector<KVector>> back{basis_of({d.final})};
  std::size_t len = 0;
  while (!pairs_nonzero(d.init, back[len])) {
    require(len <= d.n, ErrorKind::InternalInconsistency, "no differing word within the length bound");
    std::vector<KVector> next;
    for (const auto& c : back[len])
      for (const auto& t : d.trans) next.push_back(kmat_times(k, t, c));
    back.push_back(basis_of(next));
    ++len;
  }
  // Greedy: extend by the first letter that still admits a completing suffix.
  Word w;
  KVector cfg = d.init;
  for (std::size_t pos = 0; pos < len; ++pos) {
    bool found = false;
    for (std::size_t s = 0; s < d.alphabet.size() && !found; ++s) {
      KVector next = krow_times(k, cfg, d.trans[s]);
      if (pairs_nonzero(next, back[len - pos - 1])) {
        w.push_back(s);
        cfg = std::move(next);
        found = true;
      }
    }
    require(found, ErrorKind::InternalInconsistency, "greedy counterexample search stalled");
  }
  return w;
}

}  // namespace okwa
