#ifndef TUBES_INTERCHANGE_HPP
#define TUBES_INTERCHANGE_HPP

#include "tubes/rational_function.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace tubes {

using json = nlohmann::ordered_json;

// Polynomial interchange document:
//   {"vars": [names...], "terms": [{"c": "p/q", "e": [..]} | {"re": "p/q", "im": "p/q", "e": [..]}]}
// Rationals are always decimal strings "p/q" (or "p").

template <class K>
json poly_to_json(const Polynomial<K>& p) {
  json doc;
  doc["vars"] = p.var_names();
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json t;
    if constexpr (scalar_traits<K>::is_complex) {
      if (c.is_real()) {
        t["c"] = to_string(c.re);
      } else {
        t["re"] = to_string(c.re);
        t["im"] = to_string(c.im);
      }
    } else {
      t["c"] = to_string(c);
    }
    std::vector<int> e(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) e[i] = m[i];
    t["e"] = e;
    terms.push_back(std::move(t));
  }
  doc["terms"] = std::move(terms);
  return doc;
}

inline CPoly poly_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("vars") || !doc.contains("terms"))
    throw std::invalid_argument("polynomial document needs 'vars' and 'terms'");
  VarList vars = make_vars(doc.at("vars").get<std::vector<std::string>>());
  std::vector<CPoly::Term> terms;
  for (const auto& t : doc.at("terms")) {
    auto e = t.at("e").get<std::vector<int>>();
    if (e.size() != vars->size()) throw std::invalid_argument("exponent vector length differs from variable count");
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0) throw std::invalid_argument("negative exponent");
      m.set(i, static_cast<unsigned>(e[i]));
    }
    Gaussian c;
    if (t.contains("c")) {
      c = Gaussian(parse_rational(t.at("c").get<std::string>()));
    } else {
      c = Gaussian(parse_rational(t.at("re").get<std::string>()), parse_rational(t.at("im").get<std::string>()));
    }
    if (c.is_zero()) throw std::invalid_argument("zero coefficient stored in polynomial document");
    terms.emplace_back(m, c);
  }
  return CPoly::from_terms(vars, std::move(terms));
}

inline QPoly real_poly_from_json(const json& doc) { return to_real(poly_from_json(doc)); }

template <class K>
json rational_to_json(const RationalFunction<K>& f) {
  if (f.is_polynomial()) return json{{"num", poly_to_json(f.num())}};
  return json{{"num", poly_to_json(f.num())}, {"den", poly_to_json(f.den())}};
}

inline CRational rational_from_json(const json& doc) {
  CPoly num = poly_from_json(doc.at("num"));
  if (!doc.contains("den")) return CRational(num);
  return CRational(num, poly_from_json(doc.at("den")));
}

inline json point_to_json(const std::vector<Gaussian>& p) {
  json a = json::array();
  for (const auto& x : p) {
    if (x.is_real())
      a.push_back(to_string(x.re));
    else
      a.push_back(json{{"re", to_string(x.re)}, {"im", to_string(x.im)}});
  }
  return a;
}

inline std::vector<Gaussian> point_from_json(const json& a) {
  std::vector<Gaussian> p;
  for (const auto& x : a) {
    if (x.is_string())
      p.emplace_back(parse_rational(x.get<std::string>()));
    else
      p.emplace_back(parse_rational(x.at("re").get<std::string>()), parse_rational(x.at("im").get<std::string>()));
  }
  return p;
}

inline json rational_vector_to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline std::vector<Rational> rational_vector_from_json(const json& a) {
  std::vector<Rational> v;
  for (const auto& x : a) v.push_back(parse_rational(x.get<std::string>()));
  return v;
}

}  // namespace tubes

#endif
