#ifndef TUBES_SYMMETRY_HPP
#define TUBES_SYMMETRY_HPP

#include "tubes/lie_algebra.hpp"
#include "tubes/map_family.hpp"
#include "tubes/relations.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubes {

/// {P = 0} in R^n with a basepoint and strict side constraints g > 0.
struct Hypersurface {
  std::vector<std::string> vars;
  QPoly p;
  QVector basepoint;
  std::vector<QPoly> side;
  bool assert_irreducible = true;

  VarList var_list() const { return make_vars(vars); }

  Rational eval(const QPoly& f, const QVector& x) const {
    QPoly g = f.with_vars(var_list());
    return g.evaluate(std::span<const Rational>(x));
  }

  bool on_surface(const QVector& x) const { return sgn(eval(p, x)) == 0; }

  bool side_holds(const QVector& x) const {
    for (const auto& g : side)
      if (sgn(eval(g, x)) <= 0) return false;
    return true;
  }

  void validate() const {
    if (basepoint.size() != vars.size()) throw std::invalid_argument("basepoint has wrong dimension");
    if (!on_surface(basepoint)) throw std::invalid_argument("basepoint is not on the surface");
    if (!side_holds(basepoint)) throw std::invalid_argument("side constraints fail at the basepoint");
  }
};

/// All affine fields X = (Ax + b).d with X(P) = cP for a constant c, as the
/// kernel of a linear system in the n^2 + n + 1 unknowns (A, b, c).
inline LieAlgebraPresentation<Rational> affine_symmetry_algebra(const Hypersurface& s) {
  const std::size_t n = s.vars.size();
  VarList vars = s.var_list();
  QPoly p = s.p.with_vars(vars);
  std::vector<QPoly> contrib;
  std::vector<QPoly> dp(n);
  for (std::size_t i = 0; i < n; ++i) dp[i] = p.derivative(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) contrib.push_back(QPoly::variable(vars, j) * dp[i]);  // A_ij
  for (std::size_t i = 0; i < n; ++i) contrib.push_back(dp[i]);                                   // b_i
  contrib.push_back(-p);                                                                            // c
  std::map<std::vector<uint8_t>, std::size_t> row_of;
  for (const auto& q : contrib)
    for (const auto& [m, c] : q.terms()) row_of.try_emplace(std::vector<uint8_t>(m.e.begin(), m.e.begin() + static_cast<long>(n)), row_of.size());
  QMatrix a(row_of.size(), contrib.size(), Rational(0));
  for (std::size_t k = 0; k < contrib.size(); ++k)
    for (const auto& [m, c] : contrib[k].terms())
      a(row_of.at(std::vector<uint8_t>(m.e.begin(), m.e.begin() + static_cast<long>(n))), k) += c;
  std::vector<QField> basis;
  for (const auto& v : kernel_basis(a)) {
    std::vector<QPoly> comps;
    for (std::size_t i = 0; i < n; ++i) {
      QPoly ci(vars, v[n * n + i]);
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(v[i * n + j]) != 0) ci += QPoly::variable(vars, j) * v[i * n + j];
      comps.push_back(ci);
    }
    basis.emplace_back(vars, std::move(comps));
  }
  if (basis.empty()) {
    LieAlgebraPresentation<Rational> empty;
    empty.constants = StructureConstants(0);
    return empty;
  }
  auto l = LieAlgebraPresentation<Rational>::from_basis(std::move(basis));
  if (!l.constants.is_antisymmetric() || !l.constants.satisfies_jacobi())
    throw std::logic_error("internal error: structure constants fail antisymmetry or Jacobi");
  return l;
}

struct ProbeResult {
  QVector point;
  bool rejected = false;  // lies on the surface
  std::size_t rank = 0;
  std::string determinant_value;
  bool open = false;
};

struct OrbitReport {
  std::size_t algebra_dim = 0, n = 0;
  std::optional<QPoly> determinant;
  std::size_t minors = 0, nonzero_minors = 0;
  std::vector<ProbeResult> probes;
  bool all_minors_vanish() const { return nonzero_minors == 0; }
};

inline OrbitReport open_orbit_report(const LieAlgebraPresentation<Rational>& l, const Hypersurface& s,
                                     const std::vector<QVector>& probes) {
  OrbitReport rep;
  rep.algebra_dim = l.dim();
  rep.n = s.vars.size();
  if (l.dim() >= rep.n && l.dim() > 0) {
    auto minors = minors_scan(l.basis);
    rep.minors = minors.size();
    for (const auto& m : minors)
      if (!m.value.is_zero()) ++rep.nonzero_minors;
    if (l.dim() == rep.n) rep.determinant = minors.front().value;
  }
  for (const auto& p : probes) {
    ProbeResult pr;
    pr.point = p;
    if (p.size() != rep.n) throw std::invalid_argument("probe has wrong dimension");
    if (s.on_surface(p)) {
      pr.rejected = true;
    } else {
      pr.rank = l.dim() ? rank_at(l.basis, p) : 0;
      pr.open = pr.rank == rep.n;
      if (rep.determinant) pr.determinant_value = to_string(rep.determinant->evaluate(std::span<const Rational>(p)));
    }
    rep.probes.push_back(std::move(pr));
  }
  return rep;
}

/// Family parameters as rational functions of target symbols, possibly
/// involving adjoined radicals.
struct TransitivityWitness {
  std::vector<std::string> targets;  // x1_0, ..., xn_0
  Assignment<Gaussian> params;
  RelationContext relations;
};

struct WitnessResult {
  bool holds = false;
  std::vector<std::string> residuals;  // per coordinate, reduced numerator
  std::vector<std::string> samples;    // numeric spot checks
};

namespace detail {
inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  Integer n = q.get_num(), d = q.get_den();
  Integer rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}
}  // namespace detail

/// family(params(x0)) applied to base equals x0, modulo the relations.
inline WitnessResult verify_transitivity_witness(const MapFamily& fam, const TransitivityWitness& w, const QVector& base,
                                                 const std::vector<QVector>& samples = {}) {
  if (base.size() != fam.dim() || w.targets.size() != fam.dim()) throw std::invalid_argument("witness dimension mismatch");
  WitnessResult res;
  res.holds = true;
  std::map<std::string, Gaussian> at;
  for (std::size_t i = 0; i < fam.dim(); ++i) at[fam.coords()[i]] = Gaussian(base[i]);
  for (const auto& [k, f] : w.params)
    if (w.relations.reduce(f.den()).is_zero()) throw std::domain_error("parameter " + k + " has a vanishing denominator");
  std::vector<CRational> images;
  for (std::size_t i = 0; i < fam.dim(); ++i) {
    CRational img = substitute_partial(fam.components()[i].evaluate_partial(at), w.params);
    images.push_back(img);
    CRational diff = img - CRational(CPoly::variable(w.targets[i]));
    CPoly r = w.relations.reduce(diff.num());
    res.residuals.push_back(r.to_string());
    if (!r.is_zero()) res.holds = false;
  }
  // Numeric spot checks where every radical is rational.
  for (const auto& x : samples) {
    std::map<std::string, Gaussian> vals;
    for (std::size_t i = 0; i < fam.dim(); ++i) vals[w.targets[i]] = Gaussian(x[i]);
    bool ok = true;
    for (const auto& rad : w.relations.radicals()) {
      CPoly d = rad.radicand.evaluate_partial(vals);
      auto root = d.is_constant() ? detail::rational_sqrt(d.constant_term().re) : std::nullopt;
      if (!root || !d.constant_term().is_real()) {
        ok = false;
        break;
      }
      vals[rad.symbol] = Gaussian(*root);
    }
    if (!ok) {
      res.samples.push_back("skipped (irrational radical)");
      continue;
    }
    bool match = true;
    for (std::size_t i = 0; i < fam.dim(); ++i) {
      CRational v = images[i].evaluate_partial(vals);
      if (!v.is_polynomial() || v.num() != CPoly(v.vars(), Gaussian(x[i]))) match = false;
    }
    std::string pt;
    for (const auto& c : x) pt += (pt.empty() ? "" : ",") + to_string(c);
    res.samples.push_back("(" + pt + "): " + (match ? "reached" : "MISSED"));
    if (!match) res.holds = false;
  }
  return res;
}

struct SimplyTransitiveResult {
  bool tangent = false, count_ok = false, rank_ok = false;
  std::size_t count = 0, rank = 0, expected = 0;
  bool holds() const { return tangent && count_ok && rank_ok; }
};

/// Realified holomorphic fields are tangent to the real surface {P = 0} in
/// R^{2n}, number 2n - 1, and have full rank 2n - 1 at p.
inline SimplyTransitiveResult simply_transitive_check(const std::vector<HoloField>& fields, const QPoly& p,
                                                      const QVector& point) {
  if (fields.empty()) throw std::invalid_argument("no fields");
  SimplyTransitiveResult res;
  std::vector<QField> real;
  for (const auto& f : fields) real.push_back(realify(f));
  VarList rv = real[0].vars();
  QPoly pp = p.with_vars(rv);
  if (point.size() != rv->size()) throw std::invalid_argument("point has wrong dimension");
  if (sgn(pp.evaluate(std::span<const Rational>(point))) != 0) throw std::invalid_argument("point is off the surface");
  res.expected = rv->size() - 1;
  res.count = fields.size();
  res.count_ok = res.count == res.expected;
  res.tangent = true;
  for (const auto& f : real)
    if (!tangency_multiplier(f, pp)) res.tangent = false;
  res.rank = rank_at(real, point);
  res.rank_ok = res.rank == res.expected;
  return res;
}

/// Affine complex line {a + tau b} and a domain {E > 0, g_k > 0} in the real
/// parts x_j = Re z_j.
struct ComplexLine {
  std::vector<Gaussian> point, direction;
};

struct DomainInequality {
  std::vector<std::string> vars;  // x1..xn
  QPoly expr;                     // E > 0 inside
  std::vector<QPoly> side;        // g > 0
};

enum class LineVerdict { Contained, NotContained, Unresolved };

inline const char* to_string(LineVerdict v) {
  switch (v) {
    case LineVerdict::Contained: return "contained";
    case LineVerdict::NotContained: return "not contained";
    default: return "unresolved";
  }
}

struct LineResult {
  LineVerdict verdict = LineVerdict::Unresolved;
  std::string detail;
};

/// Substitutes x_j = Re(a_j + tau b_j) with tau = sigma + i eta and decides by
/// constant reduction. A non-constant affine side constraint takes
/// non-positive values somewhere, so it also decides.
inline LineResult line_in_domain_check(const ComplexLine& line, const DomainInequality& dom) {
  const std::size_t n = dom.vars.size();
  if (line.point.size() != n || line.direction.size() != n) throw std::invalid_argument("line has wrong dimension");
  VarList tv = make_vars({"sigma", "eta"});
  QPoly sigma = QPoly::variable(tv, 0), eta = QPoly::variable(tv, 1);
  Assignment<Rational> sub;
  for (std::size_t j = 0; j < n; ++j) {
    QPoly xj = QPoly(tv, line.point[j].re) + sigma * line.direction[j].re - eta * line.direction[j].im;
    sub[dom.vars[j]] = QRational(xj);
  }
  auto restrict = [&](const QPoly& f) { return substitute_partial(f, sub).as_polynomial(); };
  LineResult res;
  QPoly e = restrict(dom.expr);
  std::ostringstream os;
  os << "E on line = " << e.to_string();
  bool unresolved = false;
  if (!e.is_constant()) {
    unresolved = true;
  } else if (sgn(e.constant_term()) <= 0) {
    res.verdict = LineVerdict::NotContained;
    res.detail = os.str();
    return res;
  }
  for (const auto& g : dom.side) {
    QPoly gl = restrict(g);
    os << "; side " << g.to_string() << " on line = " << gl.to_string();
    if (gl.is_constant()) {
      if (sgn(gl.constant_term()) <= 0) {
        res.verdict = LineVerdict::NotContained;
        res.detail = os.str();
        return res;
      }
    } else if (gl.total_degree() == 1) {
      res.verdict = LineVerdict::NotContained;
      res.detail = os.str() + " (non-constant affine, changes sign)";
      return res;
    } else {
      unresolved = true;
    }
  }
  res.verdict = unresolved ? LineVerdict::Unresolved : LineVerdict::Contained;
  res.detail = os.str();
  return res;
}

struct LeviSignature {
  std::size_t pos = 0, neg = 0, zero = 0;
  std::string label() const { return std::string(pos, '+') + std::string(neg, '-') + std::string(zero, '0'); }
};

/// Inertia of the Hessian of rho restricted to the kernel of its gradient at
/// a boundary point; for a tube this is the Levi form of rho(Re z).
inline LeviSignature levi_signature(const QPoly& rho, const std::vector<std::string>& vars, const QVector& point) {
  const std::size_t n = vars.size();
  QPoly r = rho.with_vars(make_vars(vars));
  std::span<const Rational> at(point);
  QMatrix g(1, n, Rational(0));
  bool regular = false;
  for (std::size_t i = 0; i < n; ++i) {
    g(0, i) = r.derivative(i).evaluate(at);
    if (sgn(g(0, i)) != 0) regular = true;
  }
  if (!regular) throw std::invalid_argument("defining function is singular at the point");
  QMatrix h(n, n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = r.derivative(i).derivative(j).evaluate(at);
  auto b = kernel_basis(g);
  const std::size_t m = b.size();
  QMatrix a(m, m, Rational(0));
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < m; ++q)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(p, q) += b[p][i] * h(i, j) * b[q][j];
  // Faddeev-LeVerrier: det(t - A) = sum c_k t^k, c_m = 1.
  std::vector<Rational> c(m + 1, Rational(0));
  c[m] = 1;
  QMatrix mk(m, m, Rational(0));
  for (std::size_t k = 1; k <= m; ++k) {
    QMatrix next(m, m, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t t = 0; t < m; ++t) next(i, j) += a(i, t) * mk(t, j);
        if (i == j) next(i, j) += c[m - k + 1];
      }
    mk = next;
    Rational tr = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t t = 0; t < m; ++t) tr += a(i, t) * mk(t, i);
    c[m - k] = -tr / Rational(static_cast<long>(k));
  }
  // Real-rooted polynomial: Descartes' rule counts roots exactly.
  LeviSignature s;
  while (s.zero < m && sgn(c[s.zero]) == 0) ++s.zero;
  auto changes = [&](bool flip) {
    std::size_t n_changes = 0;
    int last = 0;
    for (std::size_t k = s.zero; k <= m; ++k) {
      int v = sgn(c[k]);
      if (v == 0) continue;
      if (flip && (k % 2 == 1)) v = -v;
      if (last != 0 && v != last) ++n_changes;
      last = v;
    }
    return n_changes;
  };
  s.pos = changes(false);
  s.neg = changes(true);
  return s;
}

}  // namespace tubes

#endif
