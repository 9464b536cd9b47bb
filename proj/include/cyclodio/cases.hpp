#pragma once

// Built-in problem instances and the JSON case-file format.

#include <gmpxx.h>

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cyclodio/error.hpp"
#include "cyclodio/numberfield.hpp"
#include "cyclodio/poly.hpp"

namespace cyclodio {

using nlohmann::ordered_json;

/// Phi_m + 1.
inline IntPoly equation_poly(long m) { return cyclotomic(m) + IntPoly::constant(1); }

inline CaseConfig case_15_41() {
  CaseConfig c;
  c.id = "15-41";
  c.m = 15;
  c.p = 41;
  c.d = 8;
  c.f = equation_poly(15);
  const FieldElement b1{-1, 1, 1, 0, 1, 0, 0, 1}, b2{-1, 1, 0, 0, 1, -1, 1}, b3{1, -1, 1};
  c.units = {b1, b2, b3};
  c.gammas = {{FieldElement{1, -1, 1, 1, -2, 1, 1, -1}, 1, {1, 3, 4}},
              {FieldElement{1, 15, 7, -14, 8, -19, 13, -4}, 7, {}}};
  c.deltas = {FieldElement{0, 1}, FieldElement{1, 1}};
  // 2 = alpha (alpha+1)^4 (alpha^3 - alpha^2 + 1) beta_1^-2 beta_2
  c.two_decomposition = {{FieldElement{0, 1}, 1}, {FieldElement{1, 1}, 4}, {FieldElement{1, 0, -1, 1}, 1}, {b1, -2}, {b2, 1}};
  c.default_K = ipow(10, 39);
  c.root_shift = mpq_class(563, 250);
  return c;
}

inline CaseConfig case_15_5581() {
  CaseConfig c = case_15_41();
  c.id = "15-5581";
  c.p = 5581;
  c.gammas = {{FieldElement{1, -2, 0, 0, 0, -1, 1}, 1, {2, 3, 4}},
              {FieldElement{1, 1, 1, 0, 0, 2}, 1, {1, 3, 4}},
              {FieldElement{1, 1, 7, -5, -4, 7, -1, -3}, 2, {}},
              {FieldElement{-135, 92, 134, -21, 55, -112, -41, 85}, 4, {}}};
  return c;
}

inline CaseConfig case_10_271() {
  CaseConfig c;
  c.id = "10-271";
  c.m = 10;
  c.p = 271;
  c.d = 4;
  c.f = equation_poly(10);
  const FieldElement b1{1, 0, -1, 1};
  c.units = {b1};
  c.gammas = {{FieldElement{3, -4, 4, -2}, 1, {2}}, {FieldElement{53, 44, 16, -18}, 3, {}}};
  c.deltas = {FieldElement{0, 1}, FieldElement{-1, 1}};
  // 2 = -alpha (alpha-1)^3 beta_1^-1
  c.two_decomposition = {{FieldElement{-1}, 1}, {FieldElement{0, 1}, 1}, {FieldElement{-1, 1}, 3}, {b1, -1}};
  c.default_K = ipow(10, 41);
  c.root_shift = mpq_class(563, 250);
  return c;
}

/// x^2 + x + 2 = 2 * 7^n has the solution (n, x) = (1, 3); used as a
/// positive control for the direct search.
inline CaseConfig toy_case() {
  CaseConfig c;
  c.id = "toy-3-7";
  c.m = 3;
  c.p = 7;
  c.d = 2;
  c.f = equation_poly(3);
  return c;
}

inline std::vector<std::string> builtin_case_ids() { return {"15-41", "15-5581", "10-271"}; }

inline CaseConfig builtin_case(const std::string& id) {
  if (id == "15-41") return case_15_41();
  if (id == "15-5581") return case_15_5581();
  if (id == "10-271") return case_10_271();
  if (id == "toy-3-7") return toy_case();
  throw ConfigError("unknown case '" + id + "' (known: 15-41, 15-5581, 10-271, toy-3-7)");
}

// ---------------------------------------------------------------------------
// JSON case files

/// Decimal rational from "123", "-2.252", "1e39", "10^39" or "3/4".
inline mpq_class parse_decimal(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  auto bad = [&]() { return ConfigError("not a number: '" + text + "'"); };
  if (s.empty()) throw bad();
  try {
    if (auto caret = s.find('^'); caret != std::string::npos) {
      mpz_class base(s.substr(0, caret));
      long e = std::stol(s.substr(caret + 1));
      if (e < 0) throw bad();
      return mpq_class(ipow(base, static_cast<unsigned long>(e)));
    }
    if (s.find('/') != std::string::npos) {
      mpq_class q(s);
      if (q.get_den() == 0) throw bad();
      q.canonicalize();
      return q;
    }
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      exp10 = std::stol(s.substr(e + 1));
      s = s.substr(0, e);
    }
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
      neg = s[0] == '-';
      s = s.substr(1);
    }
    std::string digits;
    long frac = 0;
    bool dot = false;
    for (char ch : s) {
      if (ch == '.') {
        if (dot) throw bad();
        dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        digits += ch;
        if (dot) ++frac;
      } else {
        throw bad();
      }
    }
    if (digits.empty()) throw bad();
    mpq_class q{mpz_class(digits)};
    const long shift = exp10 - frac;
    const mpz_class scale = ipow(mpz_class(10), static_cast<unsigned long>(shift < 0 ? -shift : shift));
    q = shift < 0 ? mpq_class(q / scale) : mpq_class(q * scale);
    return neg ? mpq_class(-q) : q;
  } catch (const std::invalid_argument&) {
    throw bad();
  } catch (const std::out_of_range&) {
    throw bad();
  }
}

inline mpz_class json_integer(const ordered_json& j, const std::string& what) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpq_class q = parse_decimal(j.get<std::string>());
    if (q.get_den() != 1) throw ConfigError(what + ": expected an integer");
    return q.get_num();
  }
  throw ConfigError(what + ": expected an integer (number or decimal string)");
}

inline mpq_class json_rational(const ordered_json& j, const std::string& what) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (j.is_string()) return parse_decimal(j.get<std::string>());
  if (j.is_number_float()) return parse_decimal(j.dump());
  throw ConfigError(what + ": expected a number");
}

inline IntPoly json_poly(const ordered_json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + ": expected a coefficient list (lowest degree first)");
  std::vector<mpz_class> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(json_integer(j[i], what + "[" + std::to_string(i) + "]"));
  return IntPoly(std::move(c));
}

inline FieldElement json_element(const ordered_json& j, const std::string& what) {
  if (j.is_array()) return FieldElement(json_poly(j, what));
  if (j.is_object() && j.contains("num")) {
    mpz_class den = j.contains("den") ? json_integer(j["den"], what + ".den") : mpz_class(1);
    if (den <= 0) throw ConfigError(what + ".den must be positive");
    return FieldElement(json_poly(j["num"], what + ".num"), den);
  }
  throw ConfigError(what + ": expected a coefficient list or {\"num\": [...], \"den\": n}");
}

inline ordered_json poly_to_json(const IntPoly& p) {
  ordered_json a = ordered_json::array();
  for (const auto& c : p.coeffs()) {
    if (c.fits_slong_p())
      a.push_back(c.get_si());
    else
      a.push_back(c.get_str());
  }
  return a;
}

inline ordered_json element_to_json(const FieldElement& e) {
  if (e.denominator() == 1) return poly_to_json(e.numerator());
  return ordered_json{{"num", poly_to_json(e.numerator())}, {"den", e.denominator().get_str()}};
}

inline CaseConfig case_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ConfigError("case file: top level must be an object");
  for (const char* key : {"id", "p"})
    if (!j.contains(key)) throw ConfigError(std::string("case file: missing '") + key + "'");
  CaseConfig c;
  c.id = j["id"].get<std::string>();
  c.p = json_integer(j["p"], "p").get_si();
  if (c.p < 2) throw ConfigError("p must be at least 2");
  c.m = j.contains("m") ? json_integer(j["m"], "m").get_si() : 0;
  if (j.contains("f")) {
    c.f = json_poly(j["f"], "f");
    if (c.m > 0 && !(c.f == equation_poly(c.m))) throw ConfigError("f does not equal Phi_m + 1 for m = " + std::to_string(c.m));
  } else if (c.m > 0) {
    c.f = equation_poly(c.m);
  } else {
    throw ConfigError("case file: need 'm' or 'f'");
  }
  if (!c.f.is_monic() || c.f.degree() < 1) throw ConfigError("f must be monic of positive degree");
  c.d = c.f.degree();
  auto list = [&](const char* key) {
    if (!j.contains(key)) return ordered_json::array();
    if (!j[key].is_array()) throw ConfigError(std::string(key) + " must be a list");
    return j[key];
  };
  const auto units = list("units");
  for (std::size_t i = 0; i < units.size(); ++i) c.units.push_back(json_element(units[i], "units[" + std::to_string(i) + "]"));
  const auto gammas = list("gammas");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const std::string w = "gammas[" + std::to_string(i) + "]";
    const auto& g = gammas[i];
    if (!g.is_object() || !g.contains("element")) throw ConfigError(w + ": expected {\"element\": ..., \"norm_exponent\": c}");
    GammaFactor gf;
    gf.element = json_element(g["element"], w + ".element");
    gf.norm_exponent = g.contains("norm_exponent") ? static_cast<int>(json_integer(g["norm_exponent"], w).get_si()) : 1;
    if (gf.norm_exponent < 1) throw ConfigError(w + ".norm_exponent must be positive");
    if (g.contains("conjugates"))
      for (const auto& k : g["conjugates"]) gf.conjugates.push_back(static_cast<int>(json_integer(k, w + ".conjugates").get_si()));
    c.gammas.push_back(std::move(gf));
  }
  const auto deltas = list("deltas");
  for (std::size_t i = 0; i < deltas.size(); ++i) c.deltas.push_back(json_element(deltas[i], "deltas[" + std::to_string(i) + "]"));
  const auto two = list("two_decomposition");
  for (std::size_t i = 0; i < two.size(); ++i) {
    const std::string w = "two_decomposition[" + std::to_string(i) + "]";
    if (!two[i].is_object() || !two[i].contains("element")) throw ConfigError(w + ": expected {\"element\": ..., \"exponent\": e}");
    WitnessFactor wf;
    wf.element = json_element(two[i]["element"], w + ".element");
    wf.exponent = two[i].contains("exponent") ? json_integer(two[i]["exponent"], w).get_si() : 1;
    c.two_decomposition.push_back(std::move(wf));
  }
  if (j.contains("default_K")) c.default_K = json_integer(j["default_K"], "default_K");
  if (j.contains("root_shift")) c.root_shift = json_rational(j["root_shift"], "root_shift");
  return c;
}

inline ordered_json case_to_json(const CaseConfig& c) {
  ordered_json j;
  j["id"] = c.id;
  if (c.m > 0) j["m"] = c.m;
  j["p"] = c.p;
  j["f"] = poly_to_json(c.f);
  j["units"] = ordered_json::array();
  for (const auto& u : c.units) j["units"].push_back(element_to_json(u));
  j["gammas"] = ordered_json::array();
  for (const auto& g : c.gammas) {
    ordered_json gj{{"element", element_to_json(g.element)}, {"norm_exponent", g.norm_exponent}};
    if (!g.conjugates.empty()) gj["conjugates"] = g.conjugates;
    j["gammas"].push_back(std::move(gj));
  }
  j["deltas"] = ordered_json::array();
  for (const auto& d : c.deltas) j["deltas"].push_back(element_to_json(d));
  j["two_decomposition"] = ordered_json::array();
  for (const auto& w : c.two_decomposition)
    j["two_decomposition"].push_back(ordered_json{{"element", element_to_json(w.element)}, {"exponent", w.exponent}});
  if (c.default_K > 0) j["default_K"] = c.default_K.get_str();
  if (c.root_shift != 0) j["root_shift"] = c.root_shift.get_str();
  return j;
}

inline CaseConfig load_case_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open case file '" + path + "'");
  try {
    return case_from_json(ordered_json::parse(in));
  } catch (const ordered_json::exception& e) {
    throw ConfigError("case file '" + path + "': " + e.what());
  }
}

}  // namespace cyclodio
