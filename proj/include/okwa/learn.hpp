#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "okwa/transform.hpp"
#include "okwa/wautomata.hpp"

namespace okwa {

class Teacher {
 public:
  virtual ~Teacher() = default;
  virtual const FieldPtr& field() const = 0;
  virtual const std::vector<std::string>& alphabet() const = 0;
  virtual AlgNum value(const Word& w) = 0;
  // nullopt when h is correct, otherwise a word on which h is wrong.
  virtual std::optional<Word> equivalence(const WeightedAutomaton& h) = 0;

  std::size_t value_queries = 0;
  std::size_t equivalence_queries = 0;
};

// Answers from a hidden target automaton.
class SimulatedTeacher : public Teacher {
 public:
  explicit SimulatedTeacher(WeightedAutomaton target) : target_(std::move(target)) {}
  const FieldPtr& field() const override { return target_.field; }
  const std::vector<std::string>& alphabet() const override { return target_.alphabet; }
  AlgNum value(const Word& w) override {
    ++value_queries;
    return eval(target_, w);
  }
  std::optional<Word> equivalence(const WeightedAutomaton& h) override {
    ++equivalence_queries;
    return equiv_counterexample(target_, h);
  }
  const WeightedAutomaton& target() const { return target_; }

 private:
  WeightedAutomaton target_;
};

struct LearnOptions {
  std::size_t max_dim = 64;
};

struct LearnStats {
  std::size_t value_queries = 0;
  std::size_t equivalence_queries = 0;        // answered by the outer teacher
  std::size_t internal_counterexamples = 0;   // produced by transform on a hypothesis
  std::vector<std::size_t> counterexample_lengths;
  std::vector<std::size_t> hypothesis_dims;
  std::size_t phase2_iters = 0;       // summed over transform calls
  std::size_t chain_bound_total = 0;  // summed over transform calls
  std::size_t rank = 0;
  bool extra_state = false;
};

struct LearnResult {
  WeightedAutomaton automaton;
  LearnStats stats;
};

namespace detail {

// Hankel block over prefixes P (row-independent, prefix-closed) and suffixes S (suffix-closed).
class Hankel {
 public:
  explicit Hankel(Teacher& t) : t_(t) { suffixes_.push_back({}); }

  const std::vector<Word>& prefixes() const { return prefixes_; }

  AlgNum value(const Word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    AlgNum v = t_.value(w);
    t_.field()->check(v);
    cache_.emplace(w, v);
    return v;
  }

  std::optional<AlgNum> cached(const Word& w) const {
    auto it = cache_.find(w);
    return it == cache_.end() ? std::nullopt : std::optional<AlgNum>(it->second);
  }

  KVector row(const Word& p) {
    KVector r;
    for (const auto& s : suffixes_) r.push_back(value(concat(p, s)));
    return r;
  }

  void add_suffixes_of(const Word& c) {
    for (std::size_t i = 0; i <= c.size(); ++i) {
      Word s(c.begin() + static_cast<std::ptrdiff_t>(i), c.end());
      if (std::find(suffixes_.begin(), suffixes_.end(), s) == suffixes_.end()) suffixes_.push_back(std::move(s));
    }
  }

  // Promotes rows of P.Sigma (and eps) outside the span of P's rows until closed.
  void close(std::size_t max_dim) {
    const NumberField& k = *t_.field();
    basis_ = KBasis(k, suffixes_.size());
    for (const auto& p : prefixes_)
      require(basis_.add(row(p)), ErrorKind::TeacherInconsistent, "prefix rows became dependent");
    if (prefixes_.empty() && basis_.add(row({}))) prefixes_.push_back({});
    for (std::size_t i = 0; i < prefixes_.size(); ++i)
      for (std::size_t s = 0; s < t_.alphabet().size(); ++s) {
        Word w = concat(prefixes_[i], {s});
        if (!basis_.add(row(w))) continue;
        prefixes_.push_back(std::move(w));
        if (prefixes_.size() > max_dim)
          fail(ErrorKind::DimensionLimitExceeded, "hypothesis dimension exceeds " + std::to_string(max_dim));
      }
  }

  WeightedAutomaton hypothesis() {
    const NumberField& k = *t_.field();
    WeightedAutomaton h;
    h.field = t_.field();
    h.alphabet = t_.alphabet();
    h.n = prefixes_.size();
    h.init = kzero_vector(k, h.n);
    if (h.n > 0) h.init[0] = k.one();
    for (std::size_t s = 0; s < h.alphabet.size(); ++s) {
      KMatrix m = kzero_matrix(k, h.n, h.n);
      for (std::size_t i = 0; i < h.n; ++i) {
        auto c = basis_.coordinates(row(concat(prefixes_[i], {s})));
        require(c.has_value(), ErrorKind::InternalInconsistency, "Hankel block not closed");
        for (std::size_t j = 0; j < h.n; ++j) m(i, j) = (*c)[j];
      }
      h.trans.push_back(std::move(m));
    }
    for (const auto& p : prefixes_) h.final.push_back(value(p));
    return h;
  }

 private:
  Teacher& t_;
  std::vector<Word> prefixes_;
  std::vector<Word> suffixes_;
  std::map<Word, AlgNum> cache_;
  KBasis basis_{*t_.field(), 1};
};

}  // namespace detail

// Weighted L* over K; counterexamples contribute all their suffixes as columns.
inline LearnResult learn_K(Teacher& t, const LearnOptions& opt = {}) {
  LearnResult res;
  detail::Hankel table(t);
  table.close(opt.max_dim);
  while (true) {
    WeightedAutomaton h = table.hypothesis();
    res.stats.hypothesis_dims.push_back(h.n);
    auto c = t.equivalence(h);
    if (!c) {
      res.automaton = std::move(h);
      break;
    }
    auto known = table.cached(*c);
    if (known && *known == eval(h, *c))
      fail(ErrorKind::TeacherInconsistent, "counterexample agrees with an earlier value query");
    res.stats.counterexample_lengths.push_back(c->size());
    table.add_suffixes_of(*c);
    table.close(opt.max_dim);
    if (table.prefixes().size() <= h.n)
      fail(ErrorKind::TeacherInconsistent, "counterexample did not increase the hypothesis rank");
  }
  res.stats.rank = res.automaton.n;
  res.stats.value_queries = t.value_queries;
  res.stats.equivalence_queries = t.equivalence_queries;
  return res;
}

namespace detail {

// Runs transform before every equivalence query; non-integral hypotheses are
// refuted without asking the outer teacher.
class IntegralizingTeacher : public Teacher {
 public:
  IntegralizingTeacher(Teacher& outer, LearnStats& stats) : outer_(outer), stats_(stats) {}
  const FieldPtr& field() const override { return outer_.field(); }
  const std::vector<std::string>& alphabet() const override { return outer_.alphabet(); }

  AlgNum value(const Word& w) override {
    ++value_queries;
    AlgNum v = outer_.value(w);
    ++stats_.value_queries;
    if (!v.is_integral()) fail(ErrorKind::NonIntegralTeacher, "teacher returned a non-integral value");
    return v;
  }

  std::optional<Word> equivalence(const WeightedAutomaton& h) override {
    ++equivalence_queries;
    TransformOutcome out = transform(h);
    stats_.phase2_iters += out.stats.phase2_iters;
    stats_.chain_bound_total += out.stats.chain_bound;
    if (out.counterexample) {
      ++stats_.internal_counterexamples;
      return out.counterexample;
    }
    ++stats_.equivalence_queries;
    auto c = outer_.equivalence(*out.automaton);
    if (!c) {
      last_ = std::move(out);
      return std::nullopt;
    }
    if (eval(h, *c) == eval(*out.automaton, *c)) return c;
    fail(ErrorKind::InternalInconsistency, "transform changed the hypothesis language");
  }

  const TransformOutcome& accepted() const { return *last_; }

 private:
  Teacher& outer_;
  LearnStats& stats_;
  std::optional<TransformOutcome> last_;
};

}  // namespace detail

// Learns an O_K-WA with at most rank + 1 states for an integral language.
inline LearnResult learn_OK(Teacher& t, const LearnOptions& opt = {}) {
  LearnResult res;
  detail::IntegralizingTeacher inner(t, res.stats);
  LearnResult k = learn_K(inner, opt);
  res.stats.counterexample_lengths = k.stats.counterexample_lengths;
  res.stats.hypothesis_dims = k.stats.hypothesis_dims;
  res.stats.rank = k.stats.rank;
  const TransformOutcome& fin = inner.accepted();
  res.stats.extra_state = fin.stats.extra_state;
  res.automaton = *fin.automaton;
  return res;
}

}  // namespace okwa
