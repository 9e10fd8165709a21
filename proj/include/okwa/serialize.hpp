#pragma once

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "okwa/ideals.hpp"
#include "okwa/okmodules.hpp"
#include "okwa/wautomata.hpp"
#include "okwa/zlattice.hpp"

// JSON encodings. Every number is written as a decimal string; readers also
// accept plain JSON integers.
namespace okwa {

using json = nlohmann::json;

constexpr int kStatsSchema = 1;

inline std::string text_of(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  fail(ErrorKind::Parse, std::string("expected a decimal string for ") + what);
}

inline const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline const json& array_of(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::Parse, std::string("expected an array for ") + what);
  return j;
}

inline json read_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
}

inline json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) fail(ErrorKind::Parse, "cannot read '" + p.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return read_json_text(ss.str());
}

// Inline JSON when the argument starts with '{' or '[', otherwise a path.
inline json read_json_arg(const std::string& arg) {
  std::size_t i = arg.find_first_not_of(" \t\n");
  if (i != std::string::npos && (arg[i] == '{' || arg[i] == '[')) return read_json_text(arg);
  return read_json_file(arg);
}

inline json to_json(const mpz_class& z) { return z.get_str(); }
inline json to_json(const mpq_class& q) { return q.get_str(); }

inline json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline IntMatrix int_matrix_from_json(const json& j) {
  array_of(j, "matrix");
  const std::size_t r = j.size();
  const std::size_t c = r == 0 ? 0 : array_of(j[0], "matrix row").size();
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require(array_of(j[i], "matrix row").size() == c, ErrorKind::Parse, "ragged matrix rows");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = parse_integer(text_of(j[i][k], "matrix entry"));
  }
  return m;
}

inline json to_json(const HnfResult& r) {
  json out{{"h", to_json(r.h)}, {"rank", std::to_string(r.rank())}};
  json piv = json::array();
  for (std::size_t p : r.pivot_rows) piv.push_back(std::to_string(p));
  out["pivots"] = piv;
  if (r.transform) out["u"] = to_json(*r.transform);
  return out;
}

inline json to_json(const NumberField& k) {
  json poly = json::array();
  for (const auto& c : k.min_poly()) poly.push_back(to_json(c));
  json basis = json::array();
  for (std::size_t i = 0; i < k.degree(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < k.degree(); ++j) row.push_back(to_json(k.basis_over_power()(i, j)));
    basis.push_back(std::move(row));
  }
  return json{{"min_poly", poly}, {"integral_basis", basis}};
}

inline FieldPtr field_from_json(const json& j) {
  const json& poly = array_of(member(j, "min_poly"), "min_poly");
  IntVector p;
  for (const auto& c : poly) p.push_back(parse_integer(text_of(c, "min_poly coefficient")));
  require(p.size() >= 2, ErrorKind::Parse, "min_poly needs at least two coefficients");
  const std::size_t d = p.size() - 1;
  RatMatrix basis = RatMatrix::identity(d);
  if (j.contains("integral_basis")) {
    const json& rows = array_of(j.at("integral_basis"), "integral_basis");
    require(rows.size() == d, ErrorKind::DimensionMismatch, "integral_basis must have d rows");
    for (std::size_t i = 0; i < d; ++i) {
      require(array_of(rows[i], "integral_basis row").size() == d, ErrorKind::DimensionMismatch,
              "integral_basis rows must have d entries");
      for (std::size_t k = 0; k < d; ++k) basis(i, k) = parse_rational(text_of(rows[i][k], "basis entry"));
    }
  }
  return NumberField::create(p, basis);
}

// A field given inline or as a path.
inline FieldPtr field_from_arg(const std::string& arg) { return field_from_json(read_json_arg(arg)); }

inline json to_json(const AlgNum& a) {
  json out = json::array();
  for (const auto& c : a.c) out.push_back(to_json(c));
  return out;
}

// An array of d rational strings, or a single rational meaning that multiple of 1.
inline AlgNum algnum_from_json(const NumberField& k, const json& j) {
  if (!j.is_array()) return k.from_rational(parse_rational(text_of(j, "element")));
  require(j.size() == k.degree(), ErrorKind::DimensionMismatch, "element must have d coordinates");
  RatVector c;
  for (const auto& x : j) c.push_back(parse_rational(text_of(x, "element coordinate")));
  return AlgNum(std::move(c));
}

// An element given as a bare rational ("3", "-1/2"), inline JSON, or a path.
inline AlgNum algnum_from_arg(const NumberField& k, const std::string& arg) {
  static const std::regex rational(R"(\s*[+-]?\d+(/\d+)?\s*)");
  if (std::regex_match(arg, rational)) return k.from_rational(parse_rational(std::regex_replace(arg, std::regex(R"(\s)"), "")));
  return algnum_from_json(k, read_json_arg(arg));
}

inline json to_json(const KVector& v) {
  json out = json::array();
  for (const auto& a : v) out.push_back(to_json(a));
  return out;
}

inline KVector kvector_from_json(const NumberField& k, const json& j) {
  KVector v;
  for (const auto& x : array_of(j, "vector")) v.push_back(algnum_from_json(k, x));
  return v;
}

inline json to_json(const Ideal& a) {
  json cols = json::array();
  for (std::size_t j = 0; j < a.degree(); ++j) {
    json c = json::array();
    for (std::size_t i = 0; i < a.degree(); ++i) c.push_back(to_json(a.basis()(i, j)));
    cols.push_back(std::move(c));
  }
  return json{{"den", to_json(a.den())}, {"basis", cols}};
}

inline Ideal ideal_from_json(const FieldPtr& f, const json& j) {
  if (j.is_object() && j.contains("gens")) {
    std::vector<AlgNum> gens;
    for (const auto& g : array_of(j.at("gens"), "gens")) gens.push_back(algnum_from_json(*f, g));
    require(!gens.empty(), ErrorKind::ZeroIdeal, "empty generator list");
    return ideal_from_generators(f, gens);
  }
  const std::size_t d = f->degree();
  mpz_class den = parse_integer(text_of(member(j, "den"), "den"));
  require(den > 0, ErrorKind::Parse, "den must be positive");
  const json& cols = array_of(member(j, "basis"), "basis");
  require(cols.size() == d, ErrorKind::DimensionMismatch, "basis must have d columns");
  IntMatrix m(d, d);
  std::vector<AlgNum> gens;
  for (std::size_t c = 0; c < d; ++c) {
    require(array_of(cols[c], "basis column").size() == d, ErrorKind::DimensionMismatch, "basis column length");
    RatVector g(d);
    for (std::size_t r = 0; r < d; ++r) {
      m(r, c) = parse_integer(text_of(cols[c][r], "basis entry"));
      g[r] = mpq_class(m(r, c), den);
    }
    gens.push_back(AlgNum(std::move(g)));
  }
  Ideal a = Ideal::from_lattice(f, den, m);
  require(a == ideal_from_generators(f, gens), ErrorKind::Parse, "basis does not span an O_K-ideal");
  return a;
}

inline json to_json(const PseudoMatrix& m) {
  json elems = json::array();
  for (const auto& e : m.elems) elems.push_back(json{{"ideal", to_json(e.coeff)}, {"vec", to_json(e.vec)}});
  return json{{"dim", std::to_string(m.dim)}, {"elems", elems}};
}

inline json to_json(const PseudoHnf& p, const FieldPtr& f) { return to_json(p.as_matrix(f)); }

inline PseudoMatrix pseudo_matrix_from_json(const FieldPtr& f, const json& j) {
  PseudoMatrix m{f, static_cast<std::size_t>(parse_integer(text_of(member(j, "dim"), "dim")).get_ui()), {}};
  for (const auto& e : array_of(member(j, "elems"), "elems")) {
    KVector v = kvector_from_json(*f, member(e, "vec"));
    require(v.size() == m.dim, ErrorKind::DimensionMismatch, "pseudo-element vector length differs from dim");
    Ideal c = e.contains("ideal") ? ideal_from_json(f, e.at("ideal")) : Ideal::unit(f);
    m.elems.push_back({c, v});
  }
  return m;
}

inline json matrix_to_json(const KMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return rows;
}

inline json to_json(const WeightedAutomaton& a) {
  json trans = json::object();
  for (std::size_t s = 0; s < a.alphabet.size(); ++s) trans[a.alphabet[s]] = matrix_to_json(a.trans[s]);
  return json{{"field", to_json(a.k())},
              {"alphabet", a.alphabet},
              {"n", std::to_string(a.n)},
              {"init", to_json(a.init)},
              {"final", to_json(a.final)},
              {"trans", trans},
              {"integral", a.integral()}};
}

// The "field" member may be inline JSON, a path (relative to base_dir), or
// absent when a field is supplied; a supplied field must agree with it.
inline WeightedAutomaton automaton_from_json(const json& j, FieldPtr field = nullptr,
                                             const std::filesystem::path& base_dir = {}) {
  if (j.is_object() && j.contains("field")) {
    const json& fj = j.at("field");
    FieldPtr own;
    if (fj.is_string()) {
      std::filesystem::path p = fj.get<std::string>();
      own = field_from_json(read_json_file(p.is_absolute() ? p : base_dir / p));
    } else {
      own = field_from_json(fj);
    }
    if (field) require_same_field(*field, *own);
    field = own;
  }
  require(field != nullptr, ErrorKind::Parse, "automaton has no field");
  const NumberField& k = *field;
  WeightedAutomaton a;
  a.field = field;
  for (const auto& s : array_of(member(j, "alphabet"), "alphabet")) {
    require(s.is_string(), ErrorKind::Parse, "alphabet symbols must be strings");
    a.alphabet.push_back(s.get<std::string>());
  }
  a.n = parse_integer(text_of(member(j, "n"), "n")).get_ui();
  a.init = kvector_from_json(k, member(j, "init"));
  a.final = kvector_from_json(k, member(j, "final"));
  const json& trans = member(j, "trans");
  require(trans.is_object(), ErrorKind::Parse, "trans must map symbols to matrices");
  for (const auto& s : a.alphabet) {
    if (!trans.contains(s)) fail(ErrorKind::Parse, "no transition matrix for symbol '" + s + "'");
    const json& rows = array_of(trans.at(s), "transition matrix");
    require(rows.size() == a.n, ErrorKind::DimensionMismatch, "transition matrix must have n rows");
    KMatrix m = kzero_matrix(k, a.n, a.n);
    for (std::size_t i = 0; i < a.n; ++i) {
      KVector row = kvector_from_json(k, rows[i]);
      require(row.size() == a.n, ErrorKind::DimensionMismatch, "transition matrix must have n columns");
      for (std::size_t c = 0; c < a.n; ++c) m(i, c) = row[c];
    }
    a.trans.push_back(std::move(m));
  }
  for (auto it = trans.begin(); it != trans.end(); ++it)
    letter_index(a, it.key());
  a.validate();
  if (j.contains("integral") && j.at("integral").is_boolean())
    require(j.at("integral").get<bool>() == a.integral(), ErrorKind::Parse, "integral flag does not match the weights");
  return a;
}

inline WeightedAutomaton automaton_from_arg(const std::string& arg, FieldPtr field = nullptr) {
  std::size_t i = arg.find_first_not_of(" \t\n");
  bool inline_json = i != std::string::npos && arg[i] == '{';
  std::filesystem::path base = inline_json ? std::filesystem::path{} : std::filesystem::path(arg).parent_path();
  return automaton_from_json(read_json_arg(arg), std::move(field), base);
}

}  // namespace okwa
