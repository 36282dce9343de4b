#ifndef TUBES_GRASSMANNIAN_HPP
#define TUBES_GRASSMANNIAN_HPP

#include "tubes/lie_algebra.hpp"
#include "tubes/rational_function.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace tubes {

/// A family of k-dimensional subalgebras over one Schubert cell: row r is
/// e_{pivots[r]} plus polynomial entries in the free chart parameters.
struct SubalgebraFamily {
  std::vector<std::size_t> pivots;
  std::vector<std::string> params;
  std::vector<std::vector<QPoly>> rows;  // k x dim, over the chart variables
  std::vector<std::string> constraints;  // branch choices, e.g. "a1_3 = 0"
  bool verified_symbolic = false;
  bool verified_numeric = false;

  bool verified() const { return verified_symbolic && verified_numeric; }

  /// Subspace at concrete parameter values.
  Subspace at(const std::map<std::string, Rational>& values) const {
    const std::size_t m = rows.empty() ? 0 : rows[0].size();
    std::vector<QVector> gens;
    for (const auto& r : rows) {
      QVector v(m);
      for (std::size_t j = 0; j < m; ++j) {
        QPoly e = r[j].evaluate_partial(values);
        if (!e.is_constant()) throw std::invalid_argument("family parameter left unassigned");
        v[j] = e.constant_term();
      }
      gens.push_back(std::move(v));
    }
    return Subspace(m, gens);
  }

  /// Whether the subspace s is a member of this family.
  bool contains(const Subspace& s) const {
    if (s.dim() != pivots.size() || s.pivots() != pivots) return false;
    std::map<std::string, Rational> values;
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t j = 0; j < rows[r].size(); ++j) {
        std::string name = chart_var(r, j);
        for (const auto& p : params)
          if (p == name) values[p] = s.basis()[r][j];
      }
    return at(values) == s;
  }

  static std::string chart_var(std::size_t r, std::size_t j) {
    return "a" + std::to_string(r + 1) + "_" + std::to_string(j + 1);
  }
};

struct UnresolvedChart {
  std::vector<std::size_t> pivots;
  std::vector<std::string> constraints;
  std::vector<QPoly> residual;
};

struct ScanResult {
  std::size_t dim = 0, k = 0, charts = 0, empty_branches = 0;
  std::vector<SubalgebraFamily> families;
  std::vector<UnresolvedChart> unresolved;
};

namespace detail {

struct ScanBranch {
  std::vector<QPoly> eqs;
  std::map<std::string, QPoly> solved;  // variable -> value in remaining variables
  std::vector<std::string> constraints;
  std::set<std::string> nonzero;
};

inline QPoly subst_var(const QPoly& p, const std::string& v, const QPoly& value) {
  if (!p.uses(v)) return p;
  Assignment<Rational> a{{v, QRational(value)}};
  return substitute_partial(p, a).as_polynomial().with_vars(p.vars());
}

inline void apply_solution(ScanBranch& b, const std::string& v, const QPoly& value, const std::string& note) {
  for (auto& e : b.eqs) e = subst_var(e, v, value);
  for (auto& [k, s] : b.solved) s = subst_var(s, v, value);
  b.solved[v] = value;
  b.constraints.push_back(note);
}

/// Drops zero equations; false if a nonzero constant appears.
inline bool prune(ScanBranch& b) {
  std::vector<QPoly> keep;
  for (auto& e : b.eqs) {
    if (e.is_zero()) continue;
    if (e.is_constant()) return false;
    bool dup = false;
    for (const auto& k : keep)
      if (k == e || k == -e) dup = true;
    if (!dup) keep.push_back(std::move(e));
  }
  b.eqs = std::move(keep);
  return true;
}

/// Variable v with eq = c v + rest, c a nonzero constant and rest free of v.
inline std::optional<std::pair<std::string, QPoly>> linear_pivot(const QPoly& eq) {
  std::vector<std::string> candidates;
  for (const auto& v : eq.used_vars())
    if (eq.degree_in(v) == 1) candidates.push_back(v);
  for (const auto& v : candidates) {
    QPoly d = eq.derivative(v);
    if (!d.is_constant()) continue;
    Rational c = d.constant_term();
    QPoly rest = eq - QPoly::variable(eq.vars(), *eq.var_index(v)) * c;
    return std::make_pair(v, rest * Rational(-1 / c));
  }
  return std::nullopt;
}

/// Variable dividing every term of eq.
inline std::optional<std::string> common_factor(const QPoly& eq) {
  for (const auto& v : eq.used_vars()) {
    std::size_t idx = *eq.var_index(v);
    bool all = true;
    for (const auto& [m, c] : eq.terms())
      if (m[idx] == 0) all = false;
    if (all) return v;
  }
  return std::nullopt;
}

/// Divides out powers of variables known to be nonzero; true if anything changed.
inline bool strip_nonzero(ScanBranch& b) {
  bool changed = false;
  for (auto& e : b.eqs) {
    for (const auto& v : b.nonzero) {
      auto idx = e.var_index(v);
      if (!idx || e.is_zero()) continue;
      int low = 255;
      for (const auto& [m, c] : e.terms()) low = std::min<int>(low, m[*idx]);
      if (low == 0) continue;
      e = e.divide_exact(QPoly::variable(e.vars(), *idx, static_cast<unsigned>(low)));
      changed = true;
    }
  }
  return changed;
}

/// Row reduction of the system with monomials as unknowns. Returns false if
/// the system is inconsistent.
inline bool monomial_reduce(ScanBranch& b, bool& changed) {
  changed = false;
  if (b.eqs.empty()) return true;
  VarList vars = b.eqs[0].vars();
  for (const auto& e : b.eqs) vars = union_vars(vars, e.vars());
  std::vector<QPoly> eqs;
  for (const auto& e : b.eqs) eqs.push_back(e.with_vars(vars));
  std::vector<Monomial> monos;
  for (const auto& e : eqs)
    for (const auto& [m, c] : e.terms()) monos.push_back(m);
  std::sort(monos.begin(), monos.end(), [](const Monomial& x, const Monomial& y) { return compare(x, y) > 0; });
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
  auto col = [&](const Monomial& m) {
    return static_cast<std::size_t>(std::lower_bound(monos.begin(), monos.end(), m, [](const Monomial& x, const Monomial& y) {
                                      return compare(x, y) > 0;
                                    }) -
                                    monos.begin());
  };
  QMatrix a(eqs.size(), monos.size(), Rational(0));
  for (std::size_t r = 0; r < eqs.size(); ++r)
    for (const auto& [m, c] : eqs[r].terms()) a(r, col(m)) = c;
  auto piv = rref(a);
  std::vector<QPoly> out;
  for (std::size_t r = 0; r < piv.size(); ++r) {
    std::vector<QPoly::Term> terms;
    for (std::size_t j = 0; j < monos.size(); ++j)
      if (sgn(a(r, j)) != 0) terms.emplace_back(monos[j], a(r, j));
    QPoly q = QPoly::from_terms(vars, std::move(terms));
    if (q.is_constant()) return false;
    out.push_back(std::move(q));
  }
  changed = out.size() != b.eqs.size();
  for (std::size_t i = 0; !changed && i < out.size(); ++i)
    if (out[i] != eqs[i]) changed = true;
  b.eqs = std::move(out);
  return true;
}

/// Real roots of a univariate quadratic equation when they are rational.
struct QuadraticSplit {
  std::string var;
  std::vector<Rational> roots;  // empty: no real root
};

inline std::optional<QuadraticSplit> univariate_quadratic(const QPoly& eq) {
  auto used = eq.used_vars();
  if (used.size() != 1 || eq.total_degree() != 2) return std::nullopt;
  std::size_t idx = *eq.var_index(used[0]);
  Rational a = 0, b = 0, c = 0;
  for (const auto& [m, co] : eq.terms()) (m[idx] == 2 ? a : m[idx] == 1 ? b : c) = co;
  Rational disc = b * b - 4 * a * c;
  QuadraticSplit out{used[0], {}};
  if (sgn(disc) < 0) return out;
  Integer n = disc.get_num(), d = disc.get_den();
  Integer rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  Rational r(rn, rd);
  out.roots.push_back((-b + r) / (2 * a));
  if (sgn(r) != 0) out.roots.push_back((-b - r) / (2 * a));
  return out;
}

}  // namespace detail

/// Closure equations for the Schubert cell with the given pivots, over the
/// chart variables a{r}_{j} for j > pivots[r], j not a pivot.
inline std::pair<std::vector<std::vector<QPoly>>, std::vector<QPoly>> chart_equations(const StructureConstants& sc,
                                                                                      const std::vector<std::size_t>& piv) {
  const std::size_t m = sc.dim(), k = piv.size();
  std::vector<bool> is_piv(m, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::string> names;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = piv[r] + 1; j < m; ++j)
      if (!is_piv[j]) names.push_back(SubalgebraFamily::chart_var(r, j));
  VarList vars = make_vars(names);
  std::vector<std::vector<QPoly>> rows(k, std::vector<QPoly>(m, QPoly(vars)));
  std::size_t at = 0;
  for (std::size_t r = 0; r < k; ++r) {
    rows[r][piv[r]] = QPoly(vars, Rational(1));
    for (std::size_t j = piv[r] + 1; j < m; ++j)
      if (!is_piv[j]) rows[r][j] = QPoly::variable(vars, at++);
  }
  std::vector<QPoly> eqs;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      std::vector<QPoly> br(m, QPoly(vars));
      for (std::size_t p = 0; p < m; ++p) {
        if (rows[a][p].is_zero()) continue;
        for (std::size_t q = 0; q < m; ++q) {
          if (rows[b][q].is_zero()) continue;
          QPoly f = rows[a][p] * rows[b][q];
          for (std::size_t t = 0; t < m; ++t)
            if (sgn(sc(p, q, t)) != 0) br[t] += f * sc(p, q, t);
        }
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (is_piv[j]) continue;
        QPoly e = br[j];
        for (std::size_t r = 0; r < k; ++r)
          if (!br[piv[r]].is_zero() && !rows[r][j].is_zero()) e -= br[piv[r]] * rows[r][j];
        if (!e.is_zero()) eqs.push_back(e);
      }
    }
  return {rows, eqs};
}

/// Enumerates all k-dimensional subalgebras chart by chart. Closure systems are
/// solved by successive linear elimination with branching on a variable that
/// divides an equation; anything else is reported unresolved.
inline ScanResult subalgebra_scan(const StructureConstants& sc, std::size_t k, std::uint64_t seed = 1,
                                  std::size_t max_branches = 4096) {
  const std::size_t m = sc.dim();
  if (k == 0 || k >= m) throw std::invalid_argument("scan dimension must satisfy 0 < k < dim");
  ScanResult res;
  res.dim = m;
  res.k = k;
  std::mt19937_64 rng(seed);
  for (const auto& piv : combinations(m, k)) {
    ++res.charts;
    auto [rows, eqs] = chart_equations(sc, piv);
    std::vector<detail::ScanBranch> stack{{eqs, {}, {}}};
    std::size_t branches = 0;
    while (!stack.empty()) {
      detail::ScanBranch b = std::move(stack.back());
      stack.pop_back();
      if (++branches > max_branches) {
        res.unresolved.push_back({piv, {"branch limit reached"}, b.eqs});
        continue;
      }
      bool dead = false;
      while (true) {
        if (!detail::prune(b)) {
          dead = true;
          break;
        }
        // Lowest-degree linearly solvable equation first.
        std::optional<std::pair<std::string, QPoly>> best;
        int best_deg = 1 << 20;
        for (const auto& e : b.eqs) {
          auto lp = detail::linear_pivot(e);
          if (lp && e.total_degree() < best_deg) {
            best = lp;
            best_deg = e.total_degree();
          }
        }
        if (best) {
          detail::apply_solution(b, best->first, best->second, best->first + " = " + best->second.to_string());
          continue;
        }
        if (detail::strip_nonzero(b)) continue;
        bool changed = false;
        if (!detail::monomial_reduce(b, changed)) {
          dead = true;
          break;
        }
        if (!changed) break;
      }
      if (dead) {
        ++res.empty_branches;
        continue;
      }
      if (b.eqs.empty()) {
        SubalgebraFamily fam;
        fam.pivots = piv;
        fam.constraints = b.constraints;
        std::vector<std::string> free;
        VarList chart_vars = rows.empty() ? make_vars({}) : rows[0][0].vars();
        for (const auto& v : *chart_vars)
          if (!b.solved.count(v)) free.push_back(v);
        fam.params = free;
        Assignment<Rational> sol;
        for (const auto& [v, val] : b.solved) sol[v] = QRational(val);
        fam.rows = rows;
        for (auto& r : fam.rows)
          for (auto& e : r)
            if (!sol.empty()) e = substitute_partial(e, sol).as_polynomial().with_vars(chart_vars);
        // Independent closure checks: symbolic on the original equations,
        // then numeric at seeded parameter values.
        fam.verified_symbolic = true;
        for (const auto& e : eqs)
          if (!sol.empty() && !substitute_partial(e, sol).num().is_zero()) fam.verified_symbolic = false;
        fam.verified_numeric = true;
        std::uniform_int_distribution<int> dist(-9, 9);
        for (int trial = 0; trial < 3; ++trial) {
          std::map<std::string, Rational> vals;
          for (const auto& p : fam.params) vals[p] = Rational(dist(rng), 1 + std::abs(dist(rng)));
          Subspace s = fam.at(vals);
          if (s.dim() != k || !is_subalgebra(sc, s)) fam.verified_numeric = false;
        }
        res.families.push_back(std::move(fam));
        continue;
      }
      std::optional<detail::QuadraticSplit> quad;
      for (const auto& e : b.eqs)
        if ((quad = detail::univariate_quadratic(e))) break;
      if (quad) {
        if (quad->roots.empty()) ++res.empty_branches;
        for (const auto& root : quad->roots) {
          detail::ScanBranch nb = b;
          QPoly val(b.eqs[0].vars(), root);
          detail::apply_solution(nb, quad->var, val, quad->var + " = " + to_string(root));
          stack.push_back(std::move(nb));
        }
        continue;
      }
      std::optional<std::pair<QPoly, std::string>> split;
      for (const auto& e : b.eqs)
        if (auto v = detail::common_factor(e)) {
          split = std::make_pair(e, *v);
          break;
        }
      if (!split) {
        res.unresolved.push_back({piv, b.constraints, b.eqs});
        continue;
      }
      const auto& [eq, v] = *split;
      detail::ScanBranch zero = b;
      detail::apply_solution(zero, v, QPoly(eq.vars()), v + " = 0");
      detail::ScanBranch other = b;
      other.nonzero.insert(v);
      other.constraints.push_back(v + " != 0");
      stack.push_back(std::move(other));
      stack.push_back(std::move(zero));
    }
  }
  return res;
}

/// Component fields of a family, polynomial in the chart parameters.
template <class K>
std::vector<VectorField<K>> family_fields(const SubalgebraFamily& fam, const LieAlgebraPresentation<K>& l) {
  std::vector<VectorField<K>> out;
  const auto& base = l.basis;
  for (const auto& row : fam.rows) {
    std::vector<Polynomial<K>> comps;
    for (std::size_t i = 0; i < base[0].dim(); ++i) {
      Polynomial<K> c(base[0].vars());
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j].is_zero() || base[j][i].is_zero()) continue;
        Polynomial<K> coef = row[j].map_coefficients([](const Rational& q) { return scalar_traits<K>::from_rational(q); });
        c += coef * base[j][i];
      }
      comps.push_back(c);
    }
    out.emplace_back(base[0].vars(), std::move(comps));
  }
  return out;
}

}  // namespace tubes

#endif
