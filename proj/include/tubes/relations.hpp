#ifndef TUBES_RELATIONS_HPP
#define TUBES_RELATIONS_HPP

#include "tubes/rational_function.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubes {

/// Adjoined symbols with defining relations of two shapes:
///   radical   s^2 = d   (d free of every relation symbol)
///   unit pair c*cb = 1
/// Reduction keeps radicals to degree <= 1 and cancels c*cb.
class RelationContext {
 public:
  struct Radical {
    std::string symbol;
    CPoly radicand;
  };
  struct UnitPair {
    std::string c, cbar;
  };

  RelationContext& add_radical(const std::string& symbol, const CPoly& radicand) {
    check_fresh(symbol);
    if (radicand.uses(symbol)) throw std::invalid_argument("radicand of " + symbol + " contains the symbol");
    for (const auto& s : symbols())
      if (radicand.uses(s)) throw std::invalid_argument("radicand of " + symbol + " contains relation symbol " + s);
    radicals_.push_back({symbol, radicand});
    return *this;
  }

  RelationContext& add_unit_pair(const std::string& c, const std::string& cbar) {
    check_fresh(c);
    check_fresh(cbar);
    units_.push_back({c, cbar});
    return *this;
  }

  /// Accepts `relation` = 0 if it has one of the two supported shapes.
  RelationContext& add_relation(const CPoly& relation) {
    auto used = relation.used_vars();
    // c*cb - 1
    if (relation.size() == 2 && relation.total_degree() == 2 && relation.constant_term() == Gaussian(-1)) {
      const auto& [m, coef] = relation.leading_term();
      std::vector<std::string> names;
      for (std::size_t i = 0; i < relation.nvars(); ++i)
        if (m[i] == 1) names.push_back(relation.var_names()[i]);
      if (names.size() == 2 && coef == Gaussian(1)) return add_unit_pair(names[0], names[1]);
    }
    // s^2 - d
    for (const auto& s : used) {
      if (relation.degree_in(s) != 2) continue;
      auto parts = relation.collect({s});
      if (parts.count({1})) continue;
      auto lead = parts.find({2});
      if (lead == parts.end() || !lead->second.is_constant() || lead->second.constant_term() != Gaussian(1)) continue;
      CPoly d = parts.count({0}) ? -parts.at({0}) : CPoly(relation.vars());
      return add_radical(s, d);
    }
    throw std::invalid_argument("unsupported relation shape: " + relation.to_string());
  }

  bool empty() const { return radicals_.empty() && units_.empty(); }
  const std::vector<Radical>& radicals() const { return radicals_; }
  const std::vector<UnitPair>& unit_pairs() const { return units_; }

  std::vector<std::string> symbols() const {
    std::vector<std::string> out;
    for (const auto& r : radicals_) out.push_back(r.symbol);
    for (const auto& u : units_) {
      out.push_back(u.c);
      out.push_back(u.cbar);
    }
    return out;
  }

  CPoly reduce(const CPoly& p) const {
    if (empty()) return p;
    CPoly cur = p;
    for (const auto& u : units_) cur = cancel_unit(cur, u);
    for (const auto& r : radicals_) cur = reduce_radical(cur, r);
    return cur;
  }

  CRational reduce(const CRational& f) const { return CRational(reduce(f.num()), reduce(f.den())); }

  bool is_zero_mod(const CPoly& p) const { return reduce(p).is_zero(); }

  /// Moves radicals out of the denominator: (A + B s) -> multiply by (A - B s).
  CRational rationalize(const CRational& f) const {
    CRational g = reduce(f);
    for (const auto& r : radicals_) {
      if (!g.den().uses(r.symbol)) continue;
      auto parts = g.den().collect({r.symbol});
      CPoly a = parts.count({0}) ? parts.at({0}) : CPoly(g.vars());
      CPoly b = parts.count({1}) ? parts.at({1}) : CPoly(g.vars());
      CPoly s = CPoly::variable(g.vars(), *g.num().var_index(r.symbol));
      CPoly conj = a - b * s;
      g = CRational(reduce(g.num() * conj), reduce(g.den() * conj));
    }
    return g;
  }

 private:
  void check_fresh(const std::string& s) const {
    auto syms = symbols();
    if (std::find(syms.begin(), syms.end(), s) != syms.end()) throw std::invalid_argument("symbol " + s + " already related");
  }

  static CPoly cancel_unit(const CPoly& p, const UnitPair& u) {
    auto ic = p.var_index(u.c);
    auto ib = p.var_index(u.cbar);
    if (!ic || !ib) return p;
    std::vector<CPoly::Term> out;
    out.reserve(p.size());
    for (const auto& [m, c] : p.terms()) {
      Monomial n = m;
      unsigned k = std::min(m[*ic], m[*ib]);
      n.set(*ic, m[*ic] - k);
      n.set(*ib, m[*ib] - k);
      out.emplace_back(n, c);
    }
    return CPoly::from_terms(p.vars(), std::move(out));
  }

  static CPoly reduce_radical(const CPoly& p, const Radical& r) {
    auto is = p.var_index(r.symbol);
    if (!is || p.degree_in(*is) < 2) return p;
    VarList vars = union_vars(p.vars(), r.radicand.vars());
    CPoly d = r.radicand.with_vars(vars);
    std::vector<CPoly> dpow{CPoly(vars, Gaussian(1))};
    std::vector<CPoly::Term> acc;
    std::size_t s = *index_of(*vars, r.symbol);
    const CPoly src = p.with_vars(vars);
    for (const auto& [m, c] : src.terms()) {
      unsigned k = m[s];
      Monomial n = m;
      n.set(s, k % 2);
      if (k < 2) {
        acc.emplace_back(n, c);
        continue;
      }
      while (dpow.size() <= k / 2) dpow.push_back(dpow.back() * d);
      for (const auto& [dm, dc] : dpow[k / 2].terms()) acc.emplace_back(n * dm, c * dc);
    }
    return CPoly::from_terms(vars, std::move(acc));
  }

  std::vector<Radical> radicals_;
  std::vector<UnitPair> units_;
};

}  // namespace tubes

#endif
