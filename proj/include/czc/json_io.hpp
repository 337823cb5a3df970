#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "czc/catalog.hpp"

// JSON interchange for everything that crosses the CLI boundary: exact
// numbers, orbits, datasets, prequantization specs, jump certificates and
// census reports.  Decoding validates shape and domain invariants and
// canonicalizes values; encoding always emits canonical forms, so
// encode(decode(x)) is a fixed point.  The JSON library keeps object keys
// sorted, which makes every dump byte-deterministic.

namespace czc::io {

using json = nlohmann::json;

namespace detail {

inline void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected a JSON object");
}

inline void require_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        known = true;
        break;
      }
    if (!known) throw InputError(where + ": unknown field '" + it.key() + "'");
  }
}

inline const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::string string_from_json(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

}  // namespace detail

// Integers ride as JSON numbers while they fit the double-exact window
// (|v| <= 2^53) and as decimal strings beyond it, so consumers that parse
// every number through a double never see a rounded value.
inline json int_to_json(const Int& v) {
  static const Int window = Int(1) << 53;
  if (v >= -window && v <= window) return json(v.convert_to<std::int64_t>());
  return json(v.str());
}

inline Int int_from_json(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_float())
    throw InputError(where + ": floating point is not exact; write the value as an integer or decimal string");
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t at = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (at == s.size())
      throw InputError(where + ": '" + s + "' is not a decimal integer");
    for (std::size_t i = at; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw InputError(where + ": '" + s + "' is not a decimal integer");
    Int v(s.substr(at));
    return s[0] == '-' ? -v : v;
  }
  throw InputError(where + ": expected an integer");
}

inline long long small_int_from_json(const json& j, const std::string& where) {
  Int v = int_from_json(j, where);
  if (v < std::numeric_limits<long long>::min() || v > std::numeric_limits<long long>::max())
    throw InputError(where + ": value out of range");
  return v.convert_to<long long>();
}

namespace detail {

// (a + b*sqrt(root)) / den over the least common denominator of the two
// rational coefficients.
inline json surd_obj(const Rational& rat_part, long long root, const Rational& coef) {
  Int g = gcd(rat_part.den, coef.den);
  Int den = rat_part.den / g * coef.den;
  Int a = rat_part.num * (den / rat_part.den);
  Int b = coef.num * (den / coef.den);
  return json{{"type", "surd"},
              {"a", int_to_json(a)},
              {"b", int_to_json(b)},
              {"root", root},
              {"den", int_to_json(den)}};
}

inline json rat_obj(const Rational& r) {
  return json{{"type", "rat"}, {"num", int_to_json(r.num)}, {"den", int_to_json(r.den)}};
}

}  // namespace detail

// Canonical forms: "rat" for rational values, "surd" when exactly one
// irrational summand is present, "sum" of those two shapes otherwise.
inline json exact_to_json(const ExactReal& x) {
  if (x.is_rational()) return detail::rat_obj(*x.as_rational());
  Rational rat_part(0);
  std::vector<const ExactReal::Term*> irrational;
  for (const ExactReal::Term& t : x.terms()) {
    if (t.root == 1)
      rat_part = t.coef;
    else
      irrational.push_back(&t);
  }
  if (irrational.size() == 1)
    return detail::surd_obj(rat_part, irrational[0]->root, irrational[0]->coef);
  json terms = json::array();
  if (!rat_part.is_zero()) terms.push_back(detail::rat_obj(rat_part));
  for (const ExactReal::Term* t : irrational)
    terms.push_back(detail::surd_obj(Rational(0), t->root, t->coef));
  return json{{"type", "sum"}, {"terms", terms}};
}

// Accepts bare integers, the three object forms, and non-canonical content
// inside them (unreduced fractions, b = 0 surds, root = 1).  Non-squarefree
// roots and floating-point numbers are rejected.
inline ExactReal exact_from_json(const json& j, const std::string& where) {
  if (j.is_number_unsigned() || j.is_number_integer()) return ExactReal(int_from_json(j, where));
  if (j.is_number_float())
    throw InputError(where + ": floating point is not exact; use the rat or surd form");
  detail::require_object(j, where);
  const std::string type = detail::string_from_json(detail::field(j, "type", where), where + ".type");
  if (type == "rat") {
    detail::require_keys(j, {"type", "num", "den"}, where);
    return ExactReal::rational(int_from_json(detail::field(j, "num", where), where + ".num"),
                               int_from_json(detail::field(j, "den", where), where + ".den"));
  }
  if (type == "surd") {
    detail::require_keys(j, {"type", "a", "b", "root", "den"}, where);
    Int a = int_from_json(detail::field(j, "a", where), where + ".a");
    Int b = int_from_json(detail::field(j, "b", where), where + ".b");
    long long root = small_int_from_json(detail::field(j, "root", where), where + ".root");
    Int den = int_from_json(detail::field(j, "den", where), where + ".den");
    return ExactReal::surd(a, b, root, den);
  }
  if (type == "sum") {
    detail::require_keys(j, {"type", "terms"}, where);
    const json& terms = detail::field(j, "terms", where);
    if (!terms.is_array()) throw InputError(where + ".terms: expected an array");
    ExactReal acc;
    for (std::size_t i = 0; i < terms.size(); ++i)
      acc = acc + exact_from_json(terms[i], where + ".terms[" + std::to_string(i) + "]");
    return acc;
  }
  throw InputError(where + ": unknown exact-number type '" + type + "'");
}

inline json orbit_to_json(const OrbitModel& o) {
  json rotations = json::array();
  for (const ExactReal& r : o.rotations) rotations.push_back(exact_to_json(r));
  return json{{"name", o.name},
              {"rotations", rotations},
              {"linear_even", o.linear_even},
              {"odd_linear", o.odd_linear},
              {"torsion_order", o.torsion_order}};
}

// name and rotations are required; the linear data defaults to the empty
// contribution and torsion_order to 1.
inline OrbitModel orbit_from_json(const json& j) {
  detail::require_object(j, "orbit");
  detail::require_keys(j, {"name", "rotations", "linear_even", "odd_linear", "torsion_order"},
                       "orbit");
  OrbitModel o;
  o.name = detail::string_from_json(detail::field(j, "name", "orbit"), "orbit.name");
  const std::string where = "orbit '" + o.name + "'";
  const json& rotations = detail::field(j, "rotations", where);
  if (!rotations.is_array()) throw InputError(where + ".rotations: expected an array");
  for (std::size_t i = 0; i < rotations.size(); ++i)
    o.rotations.push_back(
        exact_from_json(rotations[i], where + ".rotations[" + std::to_string(i) + "]"));
  if (auto it = j.find("linear_even"); it != j.end())
    o.linear_even = small_int_from_json(*it, where + ".linear_even");
  if (auto it = j.find("odd_linear"); it != j.end()) {
    if (!it->is_array()) throw InputError(where + ".odd_linear: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      o.odd_linear.push_back(
          small_int_from_json((*it)[i], where + ".odd_linear[" + std::to_string(i) + "]"));
  }
  if (auto it = j.find("torsion_order"); it != j.end())
    o.torsion_order = small_int_from_json(*it, where + ".torsion_order");
  validate_orbit(o);
  return o;
}

inline json dataset_to_json(const OrbitDataset& ds) {
  json orbits = json::array();
  for (const OrbitModel& o : ds.orbits) orbits.push_back(orbit_to_json(o));
  return json{{"n", ds.n}, {"orbits", orbits}};
}

inline OrbitDataset dataset_from_json(const json& j) {
  detail::require_object(j, "dataset");
  detail::require_keys(j, {"n", "orbits"}, "dataset");
  OrbitDataset ds;
  ds.n = small_int_from_json(detail::field(j, "n", "dataset"), "dataset.n");
  const json& orbits = detail::field(j, "orbits", "dataset");
  if (!orbits.is_array()) throw InputError("dataset.orbits: expected an array");
  for (const json& o : orbits) ds.orbits.push_back(orbit_from_json(o));
  validate_dataset(ds);
  return ds;
}

inline json spec_to_json(const PrequantSpec& s) {
  return json{{"n", s.n},
              {"c_B", s.c_B},
              {"sign", s.sign == Monotone::positive ? "positive" : "negative"},
              {"betti", s.betti},
              {"lacunary_base", s.lacunary_base}};
}

// n, c_B and betti are required; sign defaults to positive and lacunary_base
// to true.
inline PrequantSpec spec_from_json(const json& j) {
  detail::require_object(j, "spec");
  detail::require_keys(j, {"n", "c_B", "sign", "betti", "lacunary_base"}, "spec");
  PrequantSpec s;
  s.n = small_int_from_json(detail::field(j, "n", "spec"), "spec.n");
  s.c_B = small_int_from_json(detail::field(j, "c_B", "spec"), "spec.c_B");
  if (auto it = j.find("sign"); it != j.end()) {
    const std::string sign = detail::string_from_json(*it, "spec.sign");
    if (sign == "positive")
      s.sign = Monotone::positive;
    else if (sign == "negative")
      s.sign = Monotone::negative;
    else
      throw InputError("spec.sign: expected 'positive' or 'negative', got '" + sign + "'");
  }
  const json& betti = detail::field(j, "betti", "spec");
  if (!betti.is_array()) throw InputError("spec.betti: expected an array");
  for (std::size_t i = 0; i < betti.size(); ++i)
    s.betti.push_back(small_int_from_json(betti[i], "spec.betti[" + std::to_string(i) + "]"));
  if (auto it = j.find("lacunary_base"); it != j.end()) {
    if (!it->is_boolean()) throw InputError("spec.lacunary_base: expected a boolean");
    s.lacunary_base = it->get<bool>();
  }
  validate_spec(s);
  return s;
}

inline json certificate_to_json(const JumpCertificate& c) {
  json k = json::array();
  for (const Int& v : c.k) k.push_back(int_to_json(v));
  return json{{"side", c.side == Side::plus ? "plus" : "minus"}, {"d", int_to_json(c.d)}, {"k", k}};
}

inline JumpCertificate certificate_from_json(const json& j) {
  detail::require_object(j, "certificate");
  detail::require_keys(j, {"side", "d", "k"}, "certificate");
  JumpCertificate c;
  const std::string side =
      detail::string_from_json(detail::field(j, "side", "certificate"), "certificate.side");
  if (side == "plus")
    c.side = Side::plus;
  else if (side == "minus")
    c.side = Side::minus;
  else
    throw InputError("certificate.side: expected 'plus' or 'minus', got '" + side + "'");
  c.d = int_from_json(detail::field(j, "d", "certificate"), "certificate.d");
  const json& k = detail::field(j, "k", "certificate");
  if (!k.is_array()) throw InputError("certificate.k: expected an array");
  for (std::size_t i = 0; i < k.size(); ++i)
    c.k.push_back(int_from_json(k[i], "certificate.k[" + std::to_string(i) + "]"));
  return c;
}

inline json rational_to_json(const Rational& r) { return detail::rat_obj(r); }

// Reports are outputs only; there is no decoder.
inline json census_to_json(const CensusReport& rep) {
  json checks = json::array();
  for (const CensusCheck& c : rep.checks)
    checks.push_back(json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  const char* verdict = rep.verdict == Verdict::certified   ? "certified"
                        : rep.verdict == Verdict::refuted   ? "refuted"
                                                            : "inconclusive";
  return json{{"verdict", verdict},
              {"mode", rep.mode == CensusMode::exact ? "exact" : "lower_bound"},
              {"detail", rep.detail},
              {"r", rep.r},
              {"r_B", rep.r_B},
              {"r_plus", rep.r_plus},
              {"r_minus", rep.r_minus},
              {"b0_correction", rep.b0_correction},
              {"ell0", rep.ell0},
              {"N", rep.N_used},
              {"eta", rational_to_json(rep.eta_used)},
              {"max_degree", int_to_json(rep.max_degree_used)},
              {"finiteness", rep.finiteness},
              {"checks", checks},
              {"plus", rep.plus ? certificate_to_json(*rep.plus) : json(nullptr)},
              {"minus", rep.minus ? certificate_to_json(*rep.minus) : json(nullptr)}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("parse error in " + path + ": " + e.what());
  }
}

// Two-space indentation plus a trailing newline; with sorted keys this is
// the single canonical rendering used everywhere.
inline std::string dump_pretty(const json& j) { return j.dump(2) + "\n"; }

}  // namespace czc::io
