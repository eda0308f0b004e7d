#pragma once

#include <complex>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "streamzero/automorphisms.hpp"
#include "streamzero/inverse.hpp"
#include "streamzero/structure.hpp"

namespace streamzero {

using json = nlohmann::ordered_json;

/// Integers fitting in 64 bits become JSON numbers, others decimal strings.
inline json to_json(const Integer& n) {
  if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
    return json(n.convert_to<long long>());
  return json(n.str());
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw ParseError("expected an integer", 0, j.dump());
}

/// "num/den" (or "num" for integers).
inline json to_json(const Rational& q) { return json(to_string(q)); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational string", 0, j.dump());
}

inline json to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

/// {exponent: coefficient}, exponents as strings in descending order.
inline json to_json(const LaurentPoly& p) {
  json j = json::object();
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) j[std::to_string(it->first)] = to_json(it->second);
  return j;
}

inline LaurentPoly poly_from_json(const json& j) {
  if (j.is_string()) return parse_poly(j.get<std::string>());
  if (!j.is_object()) throw ParseError("expected an {exponent: coefficient} object", 0, j.dump());
  LaurentPoly p;
  for (const auto& [k, v] : j.items()) p += LaurentPoly::monomial(integer_from_json(v), std::stol(k));
  return p;
}

inline json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

inline IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rows", 0, j.dump());
  IntMatrix m(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j.size()) throw ParseError("matrix must be square", 0, j.dump());
    for (std::size_t k = 0; k < j.size(); ++k) m(i, k) = integer_from_json(j[i][k]);
  }
  return m;
}

inline json to_json(const CodeWord& w) { return json{{"start", w.start}, {"letters", w.letters}, {"periodic", w.periodic}}; }

inline CodeWord word_from_json(const json& j) {
  return CodeWord{j.value("start", 0L), j.at("letters").get<std::vector<long>>(), j.value("periodic", false)};
}

inline json to_json(const TorusSeq& x) {
  json vals = json::array();
  for (const auto& v : x.values) vals.push_back(to_json(v));
  return json{{"start", x.start}, {"values", vals}, {"periodic", x.periodic}};
}

inline json to_json(const TorusSeqF& x) { return json{{"start", x.start}, {"values", x.values}, {"periodic", x.periodic}}; }

inline TorusSeq torus_from_json(const json& j) {
  TorusSeq x{j.value("start", 0L), {}, j.value("periodic", false)};
  for (const auto& v : j.at("values")) x.values.push_back(rational_from_json(v));
  return x;
}

inline json to_json(const Tail& t) {
  return json{{"side", t.side == TailSide::causal ? "causal" : "anticausal"},
              {"root", to_json(t.root)},
              {"coeff", to_json(t.coeff)},
              {"start", t.start},
              {"order", t.order},
              {"ratio_modulus", static_cast<double>(t.modulus())}};
}

inline json to_json(const FiniteSupport& f) {
  json j = json::object();
  for (const auto& [n, v] : f.entries()) j[std::to_string(n)] = to_json(v);
  return j;
}

inline json to_json(const Window& w) {
  return json{{"lo", w.lo}, {"hi", w.hi()}, {"values", w.values}, {"tail_bound", w.tail_bound}, {"error", w.error}};
}

/// Symbolic description plus the window [lo, hi].
inline json to_json(const Stream& s, long lo, long hi, double precision = 1e-12) {
  json j{{"kind", kind_name(s)}};
  if (const auto* f = std::get_if<FiniteSupport>(&s)) j["entries"] = to_json(*f);
  if (const auto* g = std::get_if<GeometricTails>(&s)) {
    j["finite"] = to_json(g->finite);
    json tails = json::array();
    for (const auto& t : g->tails) tails.push_back(to_json(t));
    j["tails"] = tails;
  }
  j["window"] = to_json(window_of(s, lo, hi, precision));
  return j;
}

inline json to_json(const ContinuedFraction& cf) {
  json pre = json::array(), per = json::array();
  for (const auto& c : cf.preperiod) pre.push_back(to_json(c));
  for (const auto& c : cf.period) per.push_back(to_json(c));
  return json{{"preperiod", pre}, {"period", per}, {"text", cf.to_string()}};
}

inline json to_json(const PellSolution& s) {
  return json{{"w", to_json(s.w)}, {"v", to_json(s.v)}, {"sign", s.sign}, {"minimality_certified", s.minimality_certified}};
}

/// Comma-separated rationals, e.g. "0,1/2,1/2".
inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(parse_rational(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

/// Comma-separated integers, e.g. "-1,-1,1".
inline std::vector<long> parse_long_list(std::string_view text) {
  std::vector<long> out;
  for (const auto& q : parse_rational_list(text)) {
    if (den(q) != 1) throw ParseError("expected an integer", 0, std::string(text));
    out.push_back(to_long(num(q)));
  }
  return out;
}

/// "lo..hi".
inline std::pair<long, long> parse_range(std::string_view text) {
  std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) throw ParseError("expected lo..hi", 0, std::string(text));
  long lo = to_long(parse_integer(text.substr(0, dots)));
  long hi = to_long(parse_integer(text.substr(dots + 2)));
  if (lo > hi) throw ParseError("empty range", dots, std::string(text));
  return {lo, hi};
}

}  // namespace streamzero
