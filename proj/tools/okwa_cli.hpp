#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11/CLI11.hpp>

#include "okwa/fixtures.hpp"
#include "okwa/learn.hpp"
#include "okwa/serialize.hpp"
#include "okwa/transform.hpp"

namespace okwa::cli {

// Exit codes: 0 success, 1 domain error, 2 usage or input-format error.
constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct Io {
  std::ostream& out;
  std::ostream& err;
  void emit(const json& j) { out << j.dump(2) << '\n'; }
};

inline std::string word_json(const WeightedAutomaton& a, const Word& w) { return word_to_string(a, w); }

inline json transform_stats_json(const TransformStats& s) {
  return json{{"schema", kStatsSchema},
              {"rank", std::to_string(s.rank)},
              {"phase2_iters", std::to_string(s.phase2_iters)},
              {"chain_bound", std::to_string(s.chain_bound)},
              {"extra_state", s.extra_state}};
}

inline json learn_stats_json(const LearnStats& s, std::size_t states) {
  json lens = json::array();
  for (auto l : s.counterexample_lengths) lens.push_back(std::to_string(l));
  json dims = json::array();
  for (auto d : s.hypothesis_dims) dims.push_back(std::to_string(d));
  return json{{"schema", kStatsSchema},
              {"value_queries", std::to_string(s.value_queries)},
              {"equivalence_queries", std::to_string(s.equivalence_queries)},
              {"internal_counterexamples", std::to_string(s.internal_counterexamples)},
              {"counterexample_lengths", lens},
              {"hypothesis_dims", dims},
              {"phase2_iters", std::to_string(s.phase2_iters)},
              {"chain_bound_total", std::to_string(s.chain_bound_total)},
              {"rank", std::to_string(s.rank)},
              {"states", std::to_string(states)},
              {"extra_state", s.extra_state}};
}

inline int run_ideal(Io& io, const std::string& op, const FieldPtr& f, const std::vector<std::string>& args) {
  auto ideal_arg = [&](std::size_t i) { return ideal_from_json(f, read_json_arg(args.at(i))); };
  auto need = [&](std::size_t n, bool at_least = false) {
    if (at_least ? args.size() < n : args.size() != n)
      throw CLI::ValidationError("ideal " + op, "expects " + std::string(at_least ? "at least " : "") +
                                                    std::to_string(n) + " argument(s)");
  };
  if (op == "add" || op == "mul") {
    need(2);
    Ideal r = op == "add" ? ideal_add(ideal_arg(0), ideal_arg(1)) : ideal_mul(ideal_arg(0), ideal_arg(1));
    io.emit(to_json(r));
    io.err << op << ": ideal of norm " << ideal_norm(r) << '\n';
  } else if (op == "inv") {
    need(1);
    Ideal r = ideal_inverse(ideal_arg(0));
    io.emit(to_json(r));
    io.err << "inverse: ideal of norm " << ideal_norm(r) << '\n';
  } else if (op == "norm") {
    need(1);
    mpq_class n = ideal_norm(ideal_arg(0));
    io.emit(json{{"norm", to_json(n)}});
    io.err << "norm " << n << '\n';
  } else if (op == "contains") {
    need(2);
    bool c = ideal_contains(ideal_arg(0), algnum_from_arg(*f, args[1]));
    io.emit(json{{"contains", c}});
    io.err << (c ? "element lies in the ideal" : "element is not in the ideal") << '\n';
  } else if (op == "refine") {
    need(1, true);
    std::vector<Ideal> in;
    for (std::size_t i = 0; i < args.size(); ++i) in.push_back(ideal_arg(i));
    Refinement r = factor_refine(in);
    json basis = json::array(), exps = json::array();
    for (const auto& b : r.basis) basis.push_back(to_json(b));
    for (const auto& row : r.exponents) {
      json e = json::array();
      for (auto x : row) e.push_back(std::to_string(x));
      exps.push_back(e);
    }
    io.emit(json{{"basis", basis}, {"exponents", exps}});
    io.err << "refinement with " << r.basis.size() << " coprime factor(s)\n";
  } else if (op == "two-element") {
    need(1);
    TwoElement t = two_element(ideal_arg(0));
    io.emit(json{{"x1", to_json(t.x1)}, {"x2", to_json(t.x2)}, {"x1_generates", t.x1_generates}});
    io.err << (t.x1_generates ? "principal, generated by x1" : "two generators") << '\n';
  } else if (op == "crt") {
    if (args.empty() || args.size() % 2 != 0)
      throw CLI::ValidationError("ideal crt", "expects pairs <ideal> <residue>");
    std::vector<Ideal> mods;
    std::vector<AlgNum> res;
    for (std::size_t i = 0; i < args.size(); i += 2) {
      mods.push_back(ideal_arg(i));
      res.push_back(algnum_from_arg(*f, args[i + 1]));
    }
    AlgNum x = ideal_crt(mods, res);
    io.emit(json{{"x", to_json(x)}});
    io.err << "solution " << x << '\n';
  } else {
    throw CLI::ValidationError("ideal", "unknown operation '" + op + "'");
  }
  return kOk;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Io io{out, err};
  CLI::App app{"Weighted automata over rings of integers of number fields"};
  app.require_subcommand(1);

  std::string matrix_arg;
  bool want_transform = false;
  auto* hnf_cmd = app.add_subcommand("hnf", "Hermite normal form of an integer matrix");
  hnf_cmd->add_option("matrix", matrix_arg, "matrix JSON (inline or path)")->required();
  hnf_cmd->add_flag("--transform", want_transform, "also print the unimodular transform U");

  std::string op, field_arg;
  auto* ideal_cmd = app.add_subcommand("ideal", "ideal arithmetic");
  ideal_cmd->add_option("op", op, "add|mul|inv|norm|contains|refine|two-element|crt")->required();
  ideal_cmd->add_option("field", field_arg, "field JSON")->required();
  // Taken verbatim: CLI11 would otherwise read "[...]" JSON arrays as option lists.
  ideal_cmd->allow_extras();
  ideal_cmd->footer("Remaining arguments: ideals and elements as inline JSON or paths.");

  std::string pm_arg;
  auto* phnf_cmd = app.add_subcommand("phnf", "pseudo-Hermite normal form of a pseudo-matrix");
  phnf_cmd->add_option("field", field_arg, "field JSON")->required();
  phnf_cmd->add_option("pseudo_matrix", pm_arg, "pseudo-matrix JSON")->required();

  std::string aut_arg, aut2_arg, opt_field;
  std::vector<std::string> words;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an automaton on words");
  eval_cmd->add_option("automaton", aut_arg, "automaton JSON")->required();
  eval_cmd->add_option("words", words, "words (letters concatenated, or space separated)")->required();
  eval_cmd->add_option("--field", opt_field, "field JSON when the automaton omits it");

  auto* min_cmd = app.add_subcommand("minimize", "minimal automaton over the field K");
  min_cmd->add_option("automaton", aut_arg, "automaton JSON")->required();
  min_cmd->add_option("--field", opt_field, "field JSON when the automaton omits it");

  auto* equiv_cmd = app.add_subcommand("equiv", "equivalence check with least counterexample");
  equiv_cmd->add_option("a", aut_arg, "automaton JSON")->required();
  equiv_cmd->add_option("b", aut2_arg, "automaton JSON")->required();
  equiv_cmd->add_option("--field", opt_field, "field JSON when the automata omit it");

  auto* tr_cmd = app.add_subcommand("transform", "K-automaton to an O_K-automaton, or a non-integral word");
  tr_cmd->add_option("field", field_arg, "field JSON")->required();
  tr_cmd->add_option("automaton", aut_arg, "automaton JSON")->required();

  std::size_t max_dim = 64;
  std::string stats_path;
  auto* learn_cmd = app.add_subcommand("learn", "learn an O_K-automaton from a simulated teacher");
  learn_cmd->add_option("field", field_arg, "field JSON")->required();
  learn_cmd->add_option("--target", aut_arg, "target automaton JSON")->required();
  learn_cmd->add_option("--max-dim", max_dim, "hypothesis dimension ceiling")->check(CLI::PositiveNumber);
  learn_cmd->add_option("--stats", stats_path, "write statistics JSON to this path");

  std::string kind, ideal_arg;
  RandomAutomatonSpec spec;
  long perturb = 0;
  auto* fix_cmd = app.add_subcommand("fixture", "generate a fixture automaton");
  fix_cmd->add_option("kind", kind, "example1|pip-ideal|random")
      ->required()
      ->check(CLI::IsMember({"example1", "pip-ideal", "random"}));
  fix_cmd->add_option("--field", opt_field, "field JSON (pip-ideal, random; default Q)");
  fix_cmd->add_option("--ideal", ideal_arg, "ideal JSON (pip-ideal)");
  fix_cmd->add_option("--seed", spec.seed, "random seed");
  fix_cmd->add_option("--states", spec.states, "number of states")->check(CLI::Range(1, 64));
  fix_cmd->add_option("--alphabet", spec.alphabet, "alphabet size")->check(CLI::Range(1, 26));
  fix_cmd->add_option("--coeff-bound", spec.coeff_bound, "coordinate bound")->check(CLI::NonNegativeNumber);
  fix_cmd->add_option("--perturb", perturb, "add 1/p to one entry chosen by the seed")->check(CLI::Range(2L, 1000000L));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  auto opt_field_ptr = [&]() -> FieldPtr { return opt_field.empty() ? nullptr : field_from_arg(opt_field); };

  try {
    if (*hnf_cmd) {
      HnfResult r = hnf(int_matrix_from_json(read_json_arg(matrix_arg)), want_transform);
      io.emit(to_json(r));
      io.err << "hnf: rank " << r.rank() << '\n';
    } else if (*ideal_cmd) {
      return run_ideal(io, op, field_from_arg(field_arg), ideal_cmd->remaining());
    } else if (*phnf_cmd) {
      FieldPtr f = field_from_arg(field_arg);
      PseudoMatrix m = pseudo_matrix_from_json(f, read_json_arg(pm_arg));
      PseudoHnf p = pseudo_hnf(m);
      json ideals = json::array();
      for (const auto& c : p.ideals) ideals.push_back(to_json(c));
      io.emit(json{{"basis", to_json(p, f)}, {"ideals", ideals}, {"determinantal_ideal", to_json(determinantal_ideal(m))}});
      io.err << "pseudo-hnf: rank " << p.h.size() << '\n';
    } else if (*eval_cmd) {
      WeightedAutomaton a = automaton_from_arg(aut_arg, opt_field_ptr());
      json vals = json::array();
      for (const auto& w : words) {
        std::string text = w == "eps" ? std::string() : w;
        AlgNum v = eval(a, text);
        vals.push_back(json{{"word", text}, {"value", to_json(v)}});
        io.err << (text.empty() ? "eps" : text) << " -> " << v << '\n';
      }
      io.emit(vals);
    } else if (*min_cmd) {
      WeightedAutomaton a = automaton_from_arg(aut_arg, opt_field_ptr());
      WeightedAutomaton m = minimize_K(a);
      io.emit(to_json(m));
      io.err << "minimize: " << a.n << " -> " << m.n << " states\n";
    } else if (*equiv_cmd) {
      FieldPtr f = opt_field_ptr();
      WeightedAutomaton a = automaton_from_arg(aut_arg, f), b = automaton_from_arg(aut2_arg, f);
      auto c = equiv_counterexample(a, b);
      io.emit(json{{"equivalent", !c.has_value()}, {"counterexample", c ? json(word_json(a, *c)) : json(nullptr)}});
      io.err << (c ? "not equivalent, differ on '" + word_json(a, *c) + "'" : std::string("equivalent")) << '\n';
    } else if (*tr_cmd) {
      WeightedAutomaton a = automaton_from_arg(aut_arg, field_from_arg(field_arg));
      TransformOutcome t = transform(a);
      if (t.counterexample) {
        io.emit(json{{"counterexample", word_json(a, *t.counterexample)}});
        io.err << "transform: non-integral value on '" << word_json(a, *t.counterexample) << "'\n";
      } else {
        io.emit(json{{"automaton", to_json(*t.automaton)}, {"stats", transform_stats_json(t.stats)}});
        io.err << "transform: " << t.automaton->n << " states (rank " << t.stats.rank
               << (t.stats.extra_state ? ", one extra state" : "") << ")\n";
      }
    } else if (*learn_cmd) {
      WeightedAutomaton target = automaton_from_arg(aut_arg, field_from_arg(field_arg));
      SimulatedTeacher teacher(target);
      LearnResult r = learn_OK(teacher, {max_dim});
      json stats = learn_stats_json(r.stats, r.automaton.n);
      if (!stats_path.empty()) {
        std::ofstream s(stats_path);
        if (!s) fail(ErrorKind::Parse, "cannot write '" + stats_path + "'");
        s << stats.dump(2) << '\n';
      }
      io.emit(json{{"automaton", to_json(r.automaton)}, {"stats", stats}});
      io.err << "learn: " << r.automaton.n << " states, " << r.stats.value_queries << " value and "
             << r.stats.equivalence_queries << " equivalence queries\n";
    } else if (*fix_cmd) {
      WeightedAutomaton a;
      if (kind == "example1") {
        a = example1_automaton();
      } else if (kind == "pip-ideal") {
        if (opt_field.empty() || ideal_arg.empty())
          throw CLI::ValidationError("fixture pip-ideal", "needs --field and --ideal");
        FieldPtr f = field_from_arg(opt_field);
        a = pip_automaton(ideal_from_json(f, read_json_arg(ideal_arg)));
      } else {
        FieldPtr f = opt_field.empty() ? rationals() : field_from_arg(opt_field);
        a = random_automaton(f, spec);
        if (perturb != 0) a = perturb_entry(a, spec.seed, perturb);
      }
      io.emit(to_json(a));
      io.err << "fixture " << kind << ": " << a.n << " states\n";
    }
  } catch (const CLI::Error& e) {
    io.err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Parse ? kUsageError : kDomainError;
  }
  return kOk;
}

}  // namespace okwa::cli
