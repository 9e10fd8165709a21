#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "automata_support.hpp"
#include "okwa_cli.hpp"

using namespace okwa;
using namespace okwa::testing;

namespace {

const std::string kData = OKWA_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

struct CliRun {
  int code;
  std::string out, err;
  json parsed() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "okwa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, FixtureExampleOneRoundTrips) {
  CliRun r = run({"fixture", "example1"});
  ASSERT_EQ(r.code, 0) << r.err;
  WeightedAutomaton a = automaton_from_json(r.parsed());
  WeightedAutomaton b = example1_automaton();
  EXPECT_EQ(a.n, 3u);
  EXPECT_FALSE(equiv_counterexample(a, b).has_value());
  EXPECT_EQ(to_json(a), to_json(b));
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, TransformExampleOne) {
  CliRun r = run({"transform", data("field_sqrt_minus5.json"), data("example1_minimal.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.parsed();
  EXPECT_EQ(j["automaton"]["n"], "3");
  EXPECT_EQ(j["stats"]["rank"], "2");
  EXPECT_EQ(j["stats"]["extra_state"], true);
  EXPECT_EQ(j["stats"]["schema"], 1);
  WeightedAutomaton out = automaton_from_json(j["automaton"]);
  EXPECT_TRUE(out.integral());
  EXPECT_FALSE(equiv_counterexample(out, example1_automaton()).has_value());
}

TEST(Cli, TransformCounterexample) {
  CliRun r = run({"transform", data("field_q.json"), data("half.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.parsed()["counterexample"], "a");
}

TEST(Cli, LearnWritesStats) {
  std::string stats = (std::filesystem::temp_directory_path() / "okwa_cli_learn_stats.json").string();
  CliRun r = run({"learn", data("field_sqrt_minus5.json"), "--target", data("example1.json"), "--stats", stats});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.parsed();
  EXPECT_EQ(j["stats"]["states"], "3");
  std::ifstream in(stats);
  json s = json::parse(in);
  EXPECT_EQ(s["schema"], 1);
  EXPECT_EQ(s, j["stats"]);
  std::remove(stats.c_str());
}

TEST(Cli, IdealOperations) {
  std::string f = data("field_sqrt_minus5.json");
  CliRun mul = run({"ideal", "mul", f, data("ideal_3_2minus_omega.json"), data("ideal_3_2plus_omega.json")});
  ASSERT_EQ(mul.code, 0) << mul.err;
  FieldPtr k = q_sqrt_minus5();
  EXPECT_EQ(ideal_from_json(k, mul.parsed()), principal_ideal(k, num({3, 0})));

  CliRun norm = run({"ideal", "norm", f, data("ideal_3_2minus_omega.json")});
  EXPECT_EQ(norm.parsed()["norm"], "3");
  CliRun inv = run({"ideal", "inv", f, data("ideal_3_2minus_omega.json")});
  EXPECT_EQ(ideal_from_json(k, inv.parsed()), ideal_inverse(example1_ideal()));
  CliRun add = run({"ideal", "add", f, data("ideal_3_2minus_omega.json"), data("ideal_3_2plus_omega.json")});
  EXPECT_TRUE(ideal_from_json(k, add.parsed()).is_unit());
  CliRun in = run({"ideal", "contains", f, data("ideal_3_2minus_omega.json"), R"(["2","-1"])"});
  EXPECT_EQ(in.parsed()["contains"], true);
  CliRun out = run({"ideal", "contains", f, data("ideal_3_2minus_omega.json"), "[\"1\",\"0\"]"});
  EXPECT_EQ(out.parsed()["contains"], false);
  CliRun te = run({"ideal", "two-element", f, data("ideal_3_2minus_omega.json")});
  EXPECT_EQ(te.parsed()["x1_generates"], false);
  CliRun ref = run({"ideal", "refine", data("field_q.json"), R"({"gens":["12"]})", R"({"gens":["18"]})"});
  ASSERT_EQ(ref.code, 0) << ref.err;
  EXPECT_EQ(ref.parsed()["basis"].size(), 2u);
  CliRun crt = run({"ideal", "crt", data("field_q.json"), R"({"gens":["3"]})", "2", R"({"gens":["5"]})", "4"});
  ASSERT_EQ(crt.code, 0) << crt.err;
  mpq_class x = parse_rational(crt.parsed()["x"][0].get<std::string>());
  EXPECT_EQ(x, 14);
}

TEST(Cli, HnfAndPhnf) {
  CliRun h = run({"hnf", data("matrix.json"), "--transform"});
  ASSERT_EQ(h.code, 0) << h.err;
  json j = h.parsed();
  IntMatrix hm = int_matrix_from_json(j["h"]);
  EXPECT_EQ(hm, int_matrix({{2, 1}, {0, 4}}));
  EXPECT_TRUE(j.contains("u"));
  CliRun p = run({"phnf", data("field_sqrt_minus5.json"), data("pseudo_matrix.json")});
  ASSERT_EQ(p.code, 0) << p.err;
  FieldPtr k = q_sqrt_minus5();
  EXPECT_EQ(ideal_norm(ideal_from_json(k, p.parsed()["determinantal_ideal"])), 9);
}

TEST(Cli, EvalMinimizeEquiv) {
  CliRun e = run({"eval", data("example1.json"), "eps", "ab", "b"});
  ASSERT_EQ(e.code, 0) << e.err;
  json j = e.parsed();
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["value"], to_json(q_sqrt_minus5()->one()));
  EXPECT_EQ(j[2]["value"], to_json(q_sqrt_minus5()->zero()));
  CliRun m = run({"minimize", data("example1.json")});
  EXPECT_EQ(m.parsed()["n"], "2");
  CliRun q = run({"equiv", data("example1.json"), data("example1_minimal.json")});
  EXPECT_EQ(q.parsed()["equivalent"], true);
}

TEST(Cli, RandomFixtureIsDeterministic) {
  std::vector<std::string> args{"fixture", "random", "--field", data("field_gaussian.json"), "--seed", "9",
                                "--states", "3", "--alphabet", "2", "--coeff-bound", "2"};
  CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  args.push_back("--perturb");
  args.push_back("5");
  CliRun c = run(args);
  EXPECT_EQ(automaton_from_json(c.parsed()).integral(), false);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"fixture", "nonsense"}).code, 2);
  EXPECT_EQ(run({"ideal", "frobnicate", data("field_q.json")}).code, 2);
  EXPECT_EQ(run({"ideal", "norm", data("field_q.json"), "{\"gens\": "}).code, 2);
  EXPECT_EQ(run({"eval", data("example1.json"), "abc"}).code, 1);
  EXPECT_EQ(run({"ideal", "norm", data("field_q.json"), R"({"gens":["0"]})"}).code, 1);
  EXPECT_EQ(run({"transform", data("field_q.json"), data("example1.json")}).code, 1);
  CliRun help = run({"--help"});
  EXPECT_EQ(help.code, 0);
}

TEST(Serialize, RoundTrips) {
  auto g = rng(100);
  for (const auto& f : {rationals(), gaussian_rationals(), q_sqrt_minus5()}) {
    FieldPtr back = field_from_json(to_json(*f));
    EXPECT_TRUE(back->same_as(*f));
    for (int t = 0; t < 5; ++t) {
      Ideal a = random_fractional_ideal(g, f, 5);
      EXPECT_EQ(ideal_from_json(f, to_json(a)), a);
      WeightedAutomaton w = perturb_entry(random_automaton(f, small_spec(g)), g(), 7);
      WeightedAutomaton w2 = automaton_from_json(to_json(w));
      EXPECT_EQ(to_json(w2), to_json(w));
      PseudoMatrix m{f, 2, {{a, {random_element(g, f->degree(), 3), f->one()}}, {Ideal::unit(f), {f->one(), f->zero()}}}};
      EXPECT_EQ(to_json(pseudo_matrix_from_json(f, to_json(m))), to_json(m));
    }
  }
  FieldPtr f11 = field_from_json(read_json_file(data("field_sqrt_minus11.json")));
  EXPECT_EQ(f11->discriminant(), -11);
}

TEST(Serialize, RejectsBadInput) {
  FieldPtr k = q_sqrt_minus5();
  EXPECT_THROW(ideal_from_json(k, json::parse(R"({"den":"1","basis":[["1","0"],["0","3"]]})")), Error);
  EXPECT_THROW(field_from_json(json::parse(R"({"min_poly":["5","0","2"]})")), Error);
  EXPECT_THROW(algnum_from_json(*k, json::parse(R"(["1/0","1"])")), Error);
  EXPECT_THROW(algnum_from_json(*k, json::parse(R"(["1","2","3"])")), Error);
  json a = to_json(example1_automaton());
  a["trans"].erase("b");
  EXPECT_THROW(automaton_from_json(a), Error);
  a = to_json(example1_automaton());
  a["integral"] = false;
  EXPECT_THROW(automaton_from_json(a), Error);
}
