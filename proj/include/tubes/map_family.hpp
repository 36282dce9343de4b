#ifndef TUBES_MAP_FAMILY_HPP
#define TUBES_MAP_FAMILY_HPP

#include "tubes/parse.hpp"
#include "tubes/relations.hpp"
#include "tubes/series.hpp"
#include "tubes/vector_field.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubes {

/// A real parameter, or an angle theta carried by the unit pair
/// (c, cb) = (e^{i theta}, e^{-i theta}).
struct Parameter {
  enum class Kind { Real, Angle };
  std::string name;
  Kind kind = Kind::Real;
  Rational identity = 0;
  std::string constraint;     // free text, e.g. "q > 0"
  std::string unit, unit_bar;  // Angle only

  static Parameter real(std::string name, Rational identity = 0, std::string constraint = "") {
    Parameter p;
    p.name = std::move(name);
    p.identity = std::move(identity);
    p.constraint = std::move(constraint);
    return p;
  }
  static Parameter angle(std::string name, std::string c, std::string cb) {
    Parameter p;
    p.name = std::move(name);
    p.kind = Kind::Angle;
    p.unit = std::move(c);
    p.unit_bar = std::move(cb);
    return p;
  }
};

/// Holomorphic self-map family z -> f(z; params) with rational components.
class MapFamily {
 public:
  MapFamily() = default;
  MapFamily(std::vector<std::string> coords, std::vector<Parameter> params, std::vector<CRational> comps)
      : coords_(std::move(coords)), params_(std::move(params)), comps_(std::move(comps)) {
    if (comps_.size() != coords_.size()) throw std::invalid_argument("map family needs one component per coordinate");
    std::set<std::string> known(coords_.begin(), coords_.end());
    for (const auto& p : params_) {
      if (p.kind == Parameter::Kind::Real) known.insert(p.name);
      else {
        known.insert(p.unit);
        known.insert(p.unit_bar);
      }
    }
    for (const auto& c : comps_) {
      for (const auto& v : c.num().used_vars())
        if (!known.count(v)) throw std::invalid_argument("map family component uses unknown symbol " + v);
      for (const auto& v : c.den().used_vars())
        if (!known.count(v)) throw std::invalid_argument("map family component uses unknown symbol " + v);
    }
  }

  static MapFamily parse(const std::vector<std::string>& coords, std::vector<Parameter> params,
                         const std::vector<std::string>& comps) {
    std::vector<CRational> out;
    for (const auto& c : comps) out.push_back(parse_rational_function(c, coords));
    return MapFamily(coords, std::move(params), std::move(out));
  }

  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<Parameter>& params() const { return params_; }
  const std::vector<CRational>& components() const { return comps_; }
  std::size_t dim() const { return coords_.size(); }

  /// Composition law: parameter formulas for f(p) o f(p') in terms of the
  /// outer parameters p and the inner parameters p' (named with a trailing ').
  const std::map<std::string, CRational>& composition_law() const { return law_; }
  MapFamily& set_composition_law(std::map<std::string, CRational> law) {
    law_ = std::move(law);
    return *this;
  }
  bool has_composition_law() const { return !law_.empty(); }

  RelationContext relations() const {
    RelationContext ctx;
    for (const auto& p : params_)
      if (p.kind == Parameter::Kind::Angle) ctx.add_unit_pair(p.unit, p.unit_bar);
    return ctx;
  }

  /// Parameter symbols that may appear in components.
  std::vector<std::string> symbols() const {
    std::vector<std::string> out;
    for (const auto& p : params_) {
      if (p.kind == Parameter::Kind::Real) out.push_back(p.name);
      else {
        out.push_back(p.unit);
        out.push_back(p.unit_bar);
      }
    }
    return out;
  }

  /// Values of every symbol at the identity parameters.
  std::map<std::string, Gaussian> identity_values() const {
    std::map<std::string, Gaussian> v;
    for (const auto& p : params_) {
      if (p.kind == Parameter::Kind::Real) v[p.name] = Gaussian(p.identity);
      else {
        v[p.unit] = Gaussian(1);
        v[p.unit_bar] = Gaussian(1);
      }
    }
    return v;
  }

  /// Pairing: coordinates with their bar names, real parameters with
  /// themselves, unit symbols with each other.
  Pairing pairing() const {
    Pairing pr = holomorphic_pairing(coords_);
    for (const auto& p : params_) {
      if (p.kind == Parameter::Kind::Real) pr.self(p.name);
      else pr.pair(p.unit, p.unit_bar);
    }
    return pr;
  }

  /// Components with parameters renamed (used for the inner map of a composition).
  MapFamily renamed(const std::string& suffix) const {
    Assignment<Gaussian> ren;
    std::vector<Parameter> ps;
    for (auto p : params_) {
      if (p.kind == Parameter::Kind::Real) {
        ren[p.name] = CRational(CPoly::variable(p.name + suffix));
        p.name += suffix;
      } else {
        ren[p.unit] = CRational(CPoly::variable(p.unit + suffix));
        ren[p.unit_bar] = CRational(CPoly::variable(p.unit_bar + suffix));
        p.name += suffix;
        p.unit += suffix;
        p.unit_bar += suffix;
      }
      ps.push_back(p);
    }
    std::vector<CRational> comps;
    for (const auto& c : comps_) comps.push_back(substitute_partial(c, ren));
    return MapFamily(coords_, std::move(ps), std::move(comps));
  }

  /// Substitutes parameter symbols (real names or unit symbols).
  MapFamily with_params(const Assignment<Gaussian>& values, std::vector<Parameter> remaining) const {
    std::vector<CRational> comps;
    for (const auto& c : comps_) comps.push_back(substitute_partial(c, values));
    return MapFamily(coords_, std::move(remaining), std::move(comps));
  }

 private:
  std::vector<std::string> coords_;
  std::vector<Parameter> params_;
  std::vector<CRational> comps_;
  std::map<std::string, CRational> law_;
};

inline Assignment<Gaussian> coordinate_assignment(const std::vector<std::string>& coords,
                                                  const std::vector<CRational>& values) {
  Assignment<Gaussian> a;
  for (std::size_t i = 0; i < coords.size(); ++i) a[coords[i]] = values[i];
  return a;
}

/// outer o inner; parameter names must be disjoint.
inline MapFamily compose(const MapFamily& outer, const MapFamily& inner) {
  if (outer.coords() != inner.coords()) throw std::invalid_argument("compose: coordinate lists differ");
  std::set<std::string> seen;
  for (const auto& s : outer.symbols()) seen.insert(s);
  for (const auto& s : inner.symbols())
    if (seen.count(s)) throw std::invalid_argument("compose: parameter " + s + " occurs in both families");
  auto sub = coordinate_assignment(inner.coords(), inner.components());
  std::vector<CRational> comps;
  for (const auto& c : outer.components())
    comps.push_back(substitute_partial(c.num(), sub) / substitute_partial(c.den(), sub));
  std::vector<Parameter> ps = outer.params();
  ps.insert(ps.end(), inner.params().begin(), inner.params().end());
  return MapFamily(outer.coords(), std::move(ps), std::move(comps));
}

/// Components of the conjugate map, in the bar coordinates.
inline std::vector<CRational> conjugate_components(const MapFamily& fam) {
  Pairing pr = fam.pairing();
  std::vector<CRational> out;
  for (const auto& c : fam.components()) out.push_back(conjugate(c, pr));
  return out;
}

/// Real defining function of a tube: rho(z, zb) = P((z + zb)/2).
inline CPoly tube_defining_polynomial(const QPoly& p, const std::vector<std::string>& xs,
                                      const std::vector<std::string>& zs) {
  if (xs.size() != zs.size()) throw std::invalid_argument("tube: coordinate count mismatch");
  std::vector<std::string> names = zs;
  for (const auto& z : zs) names.push_back(bar_name(z));
  VarList vars = make_vars(names);
  Assignment<Gaussian> a;
  for (std::size_t i = 0; i < xs.size(); ++i)
    a[xs[i]] = CRational((CPoly::variable(vars, i) + CPoly::variable(vars, zs.size() + i)) * Gaussian(Rational(1, 2)));
  return substitute_partial(to_complex(p), a).as_polynomial();
}

struct InvarianceResult {
  bool invariant = false;
  bool fixes_point = true;
  std::string multiplier;
  std::string detail;
};

/// rho(f(z), conj f(zb)) = u * rho(z, zb) with u free of coordinates,
/// identically in coordinates and parameters (modulo unit relations).
inline InvarianceResult verify_family_invariance(const MapFamily& fam, const CPoly& rho,
                                                 const std::optional<std::vector<Gaussian>>& fixed_point = std::nullopt) {
  InvarianceResult res;
  RelationContext ctx = fam.relations();
  std::vector<std::string> coord_vars = fam.coords();
  for (const auto& z : fam.coords()) coord_vars.push_back(bar_name(z));

  Assignment<Gaussian> sub = coordinate_assignment(fam.coords(), fam.components());
  auto bars = conjugate_components(fam);
  for (std::size_t i = 0; i < fam.dim(); ++i) sub[bar_name(fam.coords()[i])] = bars[i];
  CRational image = substitute_partial(rho, sub);
  CPoly num = ctx.reduce(image.num());
  CPoly target = ctx.reduce(image.den() * rho);
  if (num.is_zero()) {
    res.invariant = !target.is_zero();
    res.multiplier = "0";
    res.detail = "image of the defining function vanishes identically";
  } else if (target.is_zero()) {
    res.detail = "defining function is zero";
  } else {
    // num = U * target with U free of coordinates: compare one coordinate monomial.
    VarList u = union_vars(num.vars(), target.vars());
    num = num.with_vars(u);
    target = target.with_vars(u);
    auto nparts = num.collect(coord_vars);
    auto tparts = target.collect(coord_vars);
    const auto& [key, tcoef] = *tparts.rbegin();
    auto it = nparts.find(key);
    CPoly ncoef = it == nparts.end() ? CPoly(u) : it->second;
    CPoly lhs = ctx.reduce(num * tcoef);
    CPoly rhs = ctx.reduce(ncoef * target);
    res.invariant = lhs == rhs;
    res.multiplier = CRational(ncoef, tcoef).to_string();
    if (!res.invariant) res.detail = "no coordinate-free multiplier; residual has " + std::to_string((lhs - rhs).size()) + " terms";
  }
  if (fixed_point) {
    if (fixed_point->size() != fam.dim()) throw std::invalid_argument("fixed point has wrong dimension");
    std::map<std::string, Gaussian> at;
    for (std::size_t i = 0; i < fam.dim(); ++i) at[fam.coords()[i]] = (*fixed_point)[i];
    for (std::size_t i = 0; i < fam.dim(); ++i) {
      CRational v = fam.components()[i].evaluate_partial(at);
      CPoly diff = ctx.reduce((v - CRational(CPoly(v.vars(), (*fixed_point)[i]))).num());
      if (!diff.is_zero()) {
        res.fixes_point = false;
        res.detail += (res.detail.empty() ? "" : "; ") + std::string("component ") + std::to_string(i + 1) +
                      " moves the point: " + diff.to_string();
      }
    }
  }
  return res;
}

/// Componentwise equality of rational maps modulo relations.
inline bool same_map(const std::vector<CRational>& a, const std::vector<CRational>& b, const RelationContext& ctx) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CPoly l = ctx.reduce(a[i].num() * b[i].den());
    CPoly r = ctx.reduce(b[i].num() * a[i].den());
    if (l != r) return false;
  }
  return true;
}

struct GroupLawResult {
  enum class Verdict { Holds, Fails, Missing } verdict = Verdict::Missing;
  bool identity_left = false, identity_right = false, composition = false;
  std::string detail;
};

/// f(p) o f(p') = f(p'') with p'' from the stored law; identity parameters
/// act as a two-sided unit.
inline GroupLawResult verify_group_law(const MapFamily& fam) {
  GroupLawResult res;
  RelationContext ctx = fam.relations();
  MapFamily inner = fam.renamed("'");
  ctx = [&] {
    RelationContext c = ctx;
    for (const auto& p : inner.params())
      if (p.kind == Parameter::Kind::Angle) c.add_unit_pair(p.unit, p.unit_bar);
    return c;
  }();

  // Identity on either side.
  Assignment<Gaussian> id;
  for (const auto& [k, v] : fam.identity_values()) id[k] = CRational(CPoly::constant(v));
  MapFamily ident = fam.with_params(id, {});
  std::vector<CRational> coords_map;
  for (const auto& z : fam.coords()) coords_map.push_back(CRational(CPoly::variable(z)));
  res.identity_left = same_map(compose(ident, fam).components(), fam.components(), ctx);
  res.identity_right = same_map(compose(fam, ident).components(), fam.components(), ctx);
  bool identity_map = same_map(ident.components(), coords_map, ctx);
  res.identity_left = res.identity_left && identity_map;
  res.identity_right = res.identity_right && identity_map;

  if (!fam.has_composition_law()) {
    res.verdict = GroupLawResult::Verdict::Missing;
    res.detail = "composition law missing";
    return res;
  }
  MapFamily lhs = compose(fam, inner);
  Assignment<Gaussian> law;
  for (const auto& p : fam.params()) {
    if (p.kind == Parameter::Kind::Real) {
      auto it = fam.composition_law().find(p.name);
      if (it == fam.composition_law().end()) throw std::invalid_argument("composition law lacks parameter " + p.name);
      law[p.name] = it->second;
    } else {
      auto it = fam.composition_law().find(p.unit);
      auto jt = fam.composition_law().find(p.unit_bar);
      if (it == fam.composition_law().end() || jt == fam.composition_law().end())
        throw std::invalid_argument("composition law lacks unit pair " + p.unit);
      law[p.unit] = it->second;
      law[p.unit_bar] = jt->second;
    }
  }
  MapFamily rhs = fam.with_params(law, lhs.params());
  res.composition = same_map(lhs.components(), rhs.components(), ctx);
  res.verdict = (res.composition && res.identity_left && res.identity_right) ? GroupLawResult::Verdict::Holds
                                                                             : GroupLawResult::Verdict::Fails;
  if (!res.composition) res.detail = "f(p) o f(p') differs from f(p'')";
  else if (!identity_map) res.detail = "identity parameters do not give the identity map";
  return res;
}

struct IntertwiningResult {
  bool holds = false;
  std::vector<std::string> residuals;
};

/// F(phi(w)) = phi(I(w)) for a z-family F, a w-family I and a map phi from
/// w- to z-coordinates, identically in coordinates and shared parameters.
inline IntertwiningResult verify_intertwining(const MapFamily& zfam, const MapFamily& wfam, const std::vector<CRational>& phi) {
  if (phi.size() != zfam.dim() || wfam.dim() != zfam.dim()) throw std::invalid_argument("intertwining: dimension mismatch");
  RelationContext ctx = zfam.relations();
  auto known = ctx.symbols();
  for (const auto& p : wfam.params())
    if (p.kind == Parameter::Kind::Angle && std::find(known.begin(), known.end(), p.unit) == known.end())
      ctx.add_unit_pair(p.unit, p.unit_bar);
  auto at_phi = coordinate_assignment(zfam.coords(), phi);
  auto at_i = coordinate_assignment(wfam.coords(), wfam.components());
  IntertwiningResult res;
  res.holds = true;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const CRational& f = zfam.components()[k];
    CRational lhs = substitute_partial(f.num(), at_phi) / substitute_partial(f.den(), at_phi);
    CRational rhs = substitute_partial(phi[k].num(), at_i) / substitute_partial(phi[k].den(), at_i);
    CPoly diff = ctx.reduce(lhs.num() * rhs.den() - rhs.num() * lhs.den());
    res.residuals.push_back(diff.is_zero() ? "0" : std::to_string(diff.size()) + " terms");
    if (!diff.is_zero()) res.holds = false;
  }
  return res;
}

/// One holomorphic field per parameter: d/dparam of the family at the
/// identity. Angles differentiate through c = e^{i theta}.
inline std::vector<CField> infinitesimal_generators(const MapFamily& fam) {
  VarList coords = make_vars(fam.coords());
  auto id = fam.identity_values();
  auto at_identity = [&](const CRational& f) {
    CRational v = f.evaluate_partial(id);
    if (!v.is_polynomial()) throw std::domain_error("generator is not polynomial in the coordinates");
    CPoly p = v.as_polynomial();
    for (const auto& s : p.used_vars())
      if (!index_of(fam.coords(), s)) throw std::domain_error("generator still depends on symbol " + s);
    return p.with_vars(coords);
  };
  std::vector<CField> out;
  for (const auto& p : fam.params()) {
    std::vector<CPoly> comps;
    for (const auto& c : fam.components()) {
      if (p.kind == Parameter::Kind::Real) {
        comps.push_back(at_identity(c.derivative(p.name)));
      } else {
        CPoly dc = at_identity(c.derivative(p.unit));
        CPoly db = at_identity(c.derivative(p.unit_bar));
        comps.push_back((dc - db) * Gaussian::i());
      }
    }
    out.emplace_back(coords, std::move(comps));
  }
  return out;
}

}  // namespace tubes

#endif
