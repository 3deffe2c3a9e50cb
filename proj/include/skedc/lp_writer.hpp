#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skedc/milp.hpp"

namespace skedc {

// Thrown when a hand-built model carries a coefficient that has no exact
// text form (LP numerals are decimal). Builder models are always integral.
class UnrepresentableCoefficient : public std::runtime_error {
 public:
  explicit UnrepresentableCoefficient(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Exact decimal numeral for |v|, or throw. Integral values print without a
// point; denominators of the form 2^a 5^b get their finite expansion.
inline std::string lp_magnitude(const Rational& v) {
  long long num = v.num < 0 ? -v.num : v.num;
  long long den = v.den;
  if (den == 1) return std::to_string(num);
  long long d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1)
    throw UnrepresentableCoefficient("coefficient " + v.str() +
                                     " has no finite decimal form");
  int scale = twos > fives ? twos : fives;
  __int128 scaled = num;
  for (int i = 0; i < scale; ++i) scaled *= 10;
  scaled /= den;
  std::string digits;
  if (scaled == 0) digits = "0";
  while (scaled > 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  }
  while (static_cast<int>(digits.size()) <= scale) digits.insert(digits.begin(), '0');
  digits.insert(digits.size() - scale, ".");
  return digits;
}

inline const char* sense_text(Sense s) {
  switch (s) {
    case Sense::Le: return "<=";
    case Sense::Eq: return "=";
    case Sense::Ge: return ">=";
  }
  return "?";
}

}  // namespace detail

// Row names: lowercase family label plus a 1-based ordinal within that
// family, in model row order (assignment_1, disjunctivea_3, ...).
inline std::vector<std::string> row_names(const MilpModel& m) {
  std::vector<std::string> names;
  std::map<RowFamily, int> counters;
  for (const auto& c : m.constraints)
    names.push_back(std::string(family_label(c.family)) + "_" +
                    std::to_string(++counters[c.family]));
  return names;
}

inline std::string write_lp(const MilpModel& m) {
  std::string out = "Minimize\n obj: Cmax\nSubject To\n";
  std::vector<std::string> names = row_names(m);
  for (size_t r = 0; r < m.constraints.size(); ++r) {
    const LinearConstraint& c = m.constraints[r];
    out += names[r] + ":";
    if (c.terms.empty()) out += " 0";
    bool first = true;
    for (const Term& t : c.terms) {
      bool negative = t.coef.num < 0;
      out += negative ? " - " : (first ? " " : " + ");
      Rational mag = negative ? -t.coef : t.coef;
      if (!(mag == Rational(1))) out += detail::lp_magnitude(mag) + " ";
      out += m.vars[t.var].name;
      first = false;
    }
    out += std::string(" ") + detail::sense_text(c.sense) + " ";
    if (c.rhs.num < 0) out += "-";
    out += detail::lp_magnitude(c.rhs) + "\n";
  }
  out += "Bounds\n";
  out += "Binaries\n";
  for (const Var& v : m.vars)
    if (v.kind == VarKind::Binary) out += v.name + "\n";
  out += "End\n";
  return out;
}

// Exact JSON value for a rational: integer when integral and small enough
// for a double-safe JSON number, the "p/q" string form otherwise.
inline nlohmann::ordered_json json_number(const Rational& v) {
  constexpr long long kSafe = 9007199254740992LL;  // 2^53
  if (v.den == 1 && v.num < kSafe && v.num > -kSafe) return v.num;
  return v.str();
}

inline std::string write_json(const MilpModel& m) {
  nlohmann::ordered_json doc;
  doc["vars"] = nlohmann::ordered_json::array();
  for (const Var& v : m.vars) {
    nlohmann::ordered_json jv;
    jv["name"] = v.name;
    jv["kind"] = v.kind == VarKind::Binary ? "binary" : "continuous";
    jv["lb"] = 0;
    doc["vars"].push_back(std::move(jv));
  }
  doc["constraints"] = nlohmann::ordered_json::array();
  std::vector<std::string> names = row_names(m);
  for (size_t r = 0; r < m.constraints.size(); ++r) {
    const LinearConstraint& c = m.constraints[r];
    nlohmann::ordered_json jc;
    jc["name"] = names[r];
    jc["terms"] = nlohmann::ordered_json::array();
    for (const Term& t : c.terms)
      jc["terms"].push_back({json_number(t.coef), m.vars[t.var].name});
    jc["sense"] = detail::sense_text(c.sense);
    jc["rhs"] = json_number(c.rhs);
    doc["constraints"].push_back(std::move(jc));
  }
  doc["objective"] = "Cmax";
  doc["big_m"] = m.big_m;
  return doc.dump(2) + "\n";
}

}  // namespace skedc
