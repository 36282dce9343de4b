#ifndef TUBES_COMMANDS_HPP
#define TUBES_COMMANDS_HPP

#include "tubes/catalog.hpp"
#include "tubes/grassmannian.hpp"
#include "tubes/report.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubes::cli {

/// Bad command line; maps to exit code 64.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string surface, id, case_name, probes, out;
  std::optional<Rational> alpha;
  std::optional<int> cutoff;
  std::size_t dim = 0;
  std::uint64_t seed = 1;
  std::size_t random_probes = 6;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"symmetry", "orbits",  "table", "normal-form", "verify-map",
                                              "isotropy", "group",   "nilpotency", "witness", "lines",
                                              "scan",     "classify", "export-fixtures"};
  return names;
}

namespace detail {

inline std::string prov(const Catalog& c, const std::string& id) {
  const Fixture& f = c.get(id);
  switch (f.tag) {
    case Tag::Paper: return "PAPER " + f.provenance.location + " \"" + f.provenance.quote + "\"";
    case Tag::Derived: return "DERIVED " + f.provenance.oracle;
    default: return "TRIVIAL " + f.provenance.location;
  }
}

inline const std::string kStructural = "TRIVIAL structural invariant";

inline std::string point_string(const QVector& p) {
  std::string s;
  for (const auto& x : p) s += (s.empty() ? "" : ",") + to_string(x);
  return "(" + s + ")";
}

inline std::string point_string(const std::vector<Gaussian>& p) {
  std::string s;
  for (const auto& x : p) s += (s.empty() ? "" : ",") + to_string(x);
  return "(" + s + ")";
}

inline std::string z_string(const QVector& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (sgn(v[k]) == 0) continue;
    if (!s.empty()) s += " + ";
    s += (v[k] == Rational(1) ? "" : to_string(v[k]) + "*") + "Z" + std::to_string(k + 1);
  }
  return s.empty() ? "0" : s;
}

inline std::string two_digits(std::size_t i) { return (i < 10 ? "0" : "") + std::to_string(i); }

inline std::string require_case(const Options& o) {
  if (o.case_name != "D" && o.case_name != "C") throw UsageError("--case must be D or C");
  return o.case_name;
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// "a,b,c,d;e,f,g,h" into points.
inline std::vector<QVector> parse_points(const std::string& text, std::size_t n) {
  std::vector<QVector> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" ") == std::string::npos) continue;
    QVector p;
    std::stringstream ps(item);
    std::string c;
    while (std::getline(ps, c, ',')) {
      try {
        auto b = c.find_first_not_of(" "), e = c.find_last_not_of(" ");
        p.push_back(parse_rational(b == std::string::npos ? "" : c.substr(b, e - b + 1)));
      } catch (const std::exception&) {
        throw UsageError("bad probe coordinate '" + c + "'");
      }
    }
    if (p.size() != n) throw UsageError("probe '" + item + "' needs " + std::to_string(n) + " coordinates");
    out.push_back(std::move(p));
  }
  return out;
}

struct SurfaceInstance {
  std::string fixture, label;
  std::optional<Rational> alpha;
  Hypersurface h;
};

/// --surface accepts a catalog id or a fixture file; file fixtures are added
/// to the catalog.
inline std::string resolve_surface(Catalog& c, const std::string& arg) {
  if (arg.empty()) throw UsageError("--surface is required");
  if (c.contains(arg)) return arg;
  std::filesystem::path p(arg);
  if (std::filesystem::is_regular_file(p)) {
    std::ifstream in(p);
    Fixture f = Fixture::from_json(json::parse(in));
    if (f.kind != "surface") throw UsageError(arg + " is a " + f.kind + " fixture, not a surface");
    if (!c.contains(f.id)) c.add(f);
    return f.id;
  }
  c.get(arg);  // unknown id: throws with suggestions
  return arg;
}

inline std::vector<SurfaceInstance> instances(const Catalog& c, const std::string& id, const std::optional<Rational>& alpha) {
  std::vector<SurfaceInstance> out;
  auto samples = c.surface_samples(id);
  if (samples.empty()) {
    if (alpha) throw UsageError("surface " + id + " has no parameter");
    out.push_back({id, id, std::nullopt, c.surface(id)});
    return out;
  }
  if (alpha) samples = {*alpha};
  for (const auto& a : samples) out.push_back({id, id + "[alpha=" + to_string(a) + "]", a, c.surface(id, a)});
  return out;
}

inline std::optional<std::size_t> stated_dim(const Catalog& c, const std::string& id) {
  const json& p = c.payload(id, "surface");
  if (!p.contains("symmetry_dim")) return std::nullopt;
  return p.at("symmetry_dim").get<std::size_t>();
}

/// Isometries of a quadric sum e_i x_i^2 = 1: x_j d/dx_k - e_j e_k x_k d/dx_j.
inline std::vector<QField> quadric_rotations(const QPoly& p, const VarList& vars) {
  const std::size_t n = vars->size();
  std::vector<Rational> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    Monomial m;
    m.set(i, 2);
    e[i] = p.with_vars(vars).coefficient(m);
  }
  std::vector<QField> out;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      std::vector<QPoly> comps(n, QPoly(vars));
      comps[k] = QPoly::variable(vars, j) * e[j];
      comps[j] = -QPoly::variable(vars, k) * e[k];
      out.emplace_back(vars, std::move(comps));
    }
  return out;
}

inline void symmetry_instance(const Catalog& c, const SurfaceInstance& s, Report& r) {
  const std::string pre = "symmetry." + s.label + ".";
  const std::string pv = prov(c, s.fixture);
  auto l = affine_symmetry_algebra(s.h);
  const std::size_t n = s.h.vars.size();
  std::string basis;
  for (std::size_t i = 0; i < l.dim(); ++i) basis += (i ? "; " : "") + std::string("B") + std::to_string(i + 1) + " = " + l.basis[i].to_string();
  if (auto want = stated_dim(c, s.fixture)) {
    r.add(pre + "dimension", "symmetry algebra has dimension " + std::to_string(*want), l.dim() == *want,
          "dimension " + std::to_string(l.dim()) + "; basis " + basis, pv);
  } else {
    r.add(pre + "dimension", "symmetry algebra dimension reported (no stated value)", true,
          "dimension " + std::to_string(l.dim()) + (basis.empty() ? "" : "; basis " + basis), pv);
  }
  std::string bad;
  for (std::size_t i = 0; i < l.dim(); ++i)
    if (!tangency_multiplier(l.basis[i], s.h.p)) bad += " B" + std::to_string(i + 1);
  r.add(pre + "tangency", "every basis field X satisfies X(P) = c P", bad.empty(), bad.empty() ? "" : "not tangent:" + bad,
        kStructural);
  r.add(pre + "closure", "structure constants are antisymmetric and satisfy Jacobi",
        l.constants.is_antisymmetric() && l.constants.satisfies_jacobi(), "", kStructural);
  std::size_t rk = l.dim() ? rank_at(l.basis, s.h.basepoint) : 0;
  r.add(pre + "basepoint", "fields span the tangent space of the surface at the basepoint (rank n-1)", rk >= n - 1,
        "rank " + std::to_string(rk) + " at " + point_string(s.h.basepoint), pv);
  const json& p = c.payload(s.fixture, "surface");
  if (p.value("variant", std::string()) == "quadric") {
    auto rots = quadric_rotations(s.h.p, s.h.var_list());
    std::string missing;
    for (std::size_t i = 0; i < rots.size(); ++i)
      if (!expand_in_basis(rots[i], l)) missing += " " + rots[i].to_string();
    bool ok = missing.empty() && l.dim() == rots.size();
    r.add(pre + "rotations", "algebra equals the span of the 6 (pseudo-)rotations", ok,
          ok ? "" : "dimension " + std::to_string(l.dim()) + (missing.empty() ? "" : "; outside:" + missing), pv);
  }
}

/// Rank at a point is full exactly when some maximal minor is nonzero there.
inline bool rank_matches_minors(const std::vector<Minor<Rational>>& minors, std::size_t rank, std::size_t n,
                                const QVector& x) {
  bool nonzero = false;
  for (const auto& m : minors)
    if (sgn(m.value.evaluate(std::span<const Rational>(x))) != 0) {
      nonzero = true;
      break;
    }
  return nonzero == (rank == n);
}

inline void orbits_instance(const Catalog& c, const SurfaceInstance& s, const Options& o, Report& r) {
  const std::string pre = "orbits." + s.label + ".";
  const std::string pv = prov(c, s.fixture);
  const std::size_t n = s.h.vars.size();
  auto l = affine_symmetry_algebra(s.h);
  std::vector<std::pair<std::string, QVector>> named;
  for (const auto& id : c.list("domain.*")) {
    auto d = c.domain(id);
    if (d.surface != s.fixture || d.alpha != s.alpha) continue;
    named.emplace_back(id, d.probe);
  }
  auto user = parse_points(o.probes, n);
  std::vector<QVector> all;
  for (const auto& [id, p] : named) all.push_back(p);
  all.insert(all.end(), user.begin(), user.end());
  auto rep = open_orbit_report(l, s.h, all);

  std::ostringstream info;
  info << "algebra dimension " << l.dim() << "; " << rep.nonzero_minors << " of " << rep.minors << " maximal minors nonzero";
  if (rep.determinant) info << "; determinant " << rep.determinant->to_string();
  const json& payload = c.payload(s.fixture, "surface");
  if (payload.value("variant", std::string()) == "quadric") {
    r.add(pre + "minors", "all maximal minors vanish identically (fields nowhere linearly independent)",
          l.dim() >= n && rep.all_minors_vanish(), info.str(), pv);
  } else if (l.dim() < n) {
    r.add(pre + "minors", "algebra dimension below n, so no open orbit", true, info.str(), pv);
  } else {
    r.add(pre + "minors", "determinant/minor report", true, info.str(), kStructural);
  }

  for (std::size_t i = 0; i < named.size(); ++i) {
    const auto& pr = rep.probes[i];
    auto d = c.domain(named[i].first);
    r.add(pre + named[i].first, "open orbit (rank " + std::to_string(n) + ") at the " + d.name + " probe", !pr.rejected && pr.open,
          "rank " + std::to_string(pr.rank) + " at " + point_string(pr.point) +
              (pr.determinant_value.empty() ? "" : ", determinant " + pr.determinant_value),
          prov(c, named[i].first));
  }
  for (std::size_t i = 0; i < user.size(); ++i) {
    const auto& pr = rep.probes[named.size() + i];
    std::string id = pre + "probe" + point_string(pr.point);
    if (pr.rejected) {
      r.add(Check{id, "rank at a user probe", Verdict::Unresolved, "probe lies on the surface; rejected", "TRIVIAL user input"});
      continue;
    }
    r.add(id, "rank at a user probe", true,
          "rank " + std::to_string(pr.rank) + (pr.open ? " (open orbit)" : " (no open orbit)") +
              (pr.determinant_value.empty() ? "" : ", determinant " + pr.determinant_value),
          "TRIVIAL user input");
  }

  if (l.dim() >= n && o.random_probes) {
    std::mt19937_64 rng(o.seed);
    auto minors = minors_scan(l.basis);
    std::vector<QVector> probes;
    for (int tries = 0; probes.size() < o.random_probes && tries < 1000; ++tries) {
      QVector x;
      for (std::size_t i = 0; i < n; ++i) x.push_back(random_rational(rng));
      if (s.h.on_surface(x) || !s.h.side_holds(x)) continue;
      probes.push_back(std::move(x));
    }
    std::string bad, seen;
    for (const auto& x : probes) {
      std::size_t rk = rank_at(l.basis, x);
      seen += " " + point_string(x) + ":" + std::to_string(rk);
      if (!rank_matches_minors(minors, rk, n, x)) bad += " " + point_string(x);
    }
    r.add(pre + "random", "rank at seeded random probes agrees with the maximal minors", bad.empty(),
          bad.empty() ? "seed " + std::to_string(o.seed) + ", ranks" + seen : "disagreement at" + bad, kStructural);

    // Same verdicts in a randomly changed basis.
    std::vector<QField> changed;
    QMatrix m(l.dim(), l.dim(), Rational(0));
    do {
      for (std::size_t i = 0; i < l.dim(); ++i)
        for (std::size_t j = 0; j < l.dim(); ++j) m(i, j) = Rational(std::uniform_int_distribution<int>(-2, 2)(rng));
    } while (rank(m) != l.dim());
    for (std::size_t i = 0; i < l.dim(); ++i) changed.push_back(l.field(m.row(i)));
    auto l2 = LieAlgebraPresentation<Rational>::from_basis(changed);
    std::vector<QVector> check = all;
    check.insert(check.end(), probes.begin(), probes.end());
    auto rep2 = open_orbit_report(l2, s.h, check);
    auto rep1 = open_orbit_report(l, s.h, check);
    bad.clear();
    for (std::size_t i = 0; i < check.size(); ++i)
      if (rep1.probes[i].open != rep2.probes[i].open) bad += " " + point_string(check[i]);
    if ((rep1.nonzero_minors == 0) != (rep2.nonzero_minors == 0)) bad += " minor vanishing differs";
    r.add(pre + "basis_change", "open-orbit verdicts unchanged under a random invertible change of basis", bad.empty(),
          bad.empty() ? std::to_string(check.size()) + " probes compared" : "differs at" + bad, kStructural);
  }
}

inline void symmetry(Catalog& c, const Options& o, Report& r) {
  std::string id = resolve_surface(c, o.surface);
  for (const auto& s : instances(c, id, o.alpha)) symmetry_instance(c, s, r);
}

inline void orbits(Catalog& c, const Options& o, Report& r) {
  std::vector<std::string> ids;
  if (o.surface.empty()) {
    for (const auto& id : c.list("surface.*"))
      if (id != "surface.hyperplane") ids.push_back(id);
  } else {
    ids.push_back(resolve_surface(c, o.surface));
  }
  for (const auto& id : ids) {
    std::vector<SurfaceInstance> ins = instances(c, id, o.alpha);
    if (!o.alpha && !c.surface_samples(id).empty())
      for (const auto& d : c.list("domain.*")) {
        auto dom = c.domain(d);
        if (dom.surface != id || !dom.alpha) continue;
        bool have = false;
        for (const auto& s : ins) have = have || s.alpha == dom.alpha;
        if (!have) ins.push_back({id, id + "[alpha=" + to_string(*dom.alpha) + "]", dom.alpha, c.surface(id, dom.alpha)});
      }
    for (const auto& s : ins) orbits_instance(c, s, o, r);
  }
}

inline std::string case_id(const std::string& cs) { return cs == "D" ? "Dcase" : "Ccase"; }

inline void table(const Catalog& c, const Options& o, Report& r) {
  const std::string cs = require_case(o);
  const std::string tid = "table.golden." + case_id(cs);
  GoldenTable golden = c.table(tid);
  auto l = LieAlgebraPresentation<Gaussian>::from_basis(c.basis(golden.basis));
  StructureConstants want = golden.constants();
  const std::string pv = prov(c, tid);
  std::size_t diffs = 0;
  for (std::size_t i = 0; i < golden.dim; ++i)
    for (std::size_t j = i + 1; j < golden.dim; ++j) {
      QVector got = l.constants.bracket_basis(i, j), exp = want.bracket_basis(i, j);
      bool ok = got == exp;
      if (!ok) ++diffs;
      r.add("table." + cs + "." + two_digits(i + 1) + "-" + two_digits(j + 1),
            "[Z" + std::to_string(i + 1) + ",Z" + std::to_string(j + 1) + "] = " + z_string(exp), ok,
            ok ? "" : "recomputed " + z_string(got), pv);
    }
  r.add("table." + cs + ".summary", "all 45 upper-triangle entries agree", diffs == 0,
        std::to_string(diffs) + " differing entries", pv);
  r.add("table." + cs + ".jacobi", "golden table is antisymmetric and satisfies Jacobi",
        want.is_antisymmetric() && want.satisfies_jacobi(), "", kStructural);
}

inline std::vector<std::string> normal_form_ids(const Catalog& c, const Options& o) {
  if (!o.id.empty()) {
    c.payload(o.id, "normal_form");
    return {o.id};
  }
  if (o.case_name.empty()) return c.list("normalform.*");
  const std::string cs = require_case(o);
  return cs == "D" ? std::vector<std::string>{"normalform.Dcase", "normalform.Dcase.perturbed"}
                   : std::vector<std::string>{"normalform.Ccase", "normalform.Ccase.derived"};
}

inline void normal_form(const Catalog& c, const Options& o, Report& r) {
  for (const auto& id : normal_form_ids(c, o)) {
    NormalFormSpec spec = c.normal_form(id);
    const std::string pre = "normal-form." + id + ".";
    const std::string pv = prov(c, id);
    int cutoff = o.cutoff.value_or(spec.cutoff);
    if (cutoff < 6) throw UsageError("--cutoff must be at least 6");
    GraphSurface g = spec.surface;
    std::string pert;
    if (spec.perturbation) {
      std::mt19937_64 rng(o.seed);
      Rational k;
      do k = random_rational(rng);
      while (sgn(k) == 0);
      CPoly num = g.r.num() + g.r.den() * *spec.perturbation * Gaussian(k);
      g.r = CRational(num, g.r.den());
      pert = "seed " + std::to_string(o.seed) + ", F += " + to_string(k) + "*(" + spec.perturbation->to_string() + ")";
    }
    BidegreeSeries s = defining_series(g, cutoff);
    TraceOperator tr = trace_from_levi(s.part(1, 1), s.holo, s.anti);
    NormalFormReport rep = chern_moser_check(s, tr);
    if (!spec.expect_pass) {
      const NormalFormCheck* f22 = nullptr;
      for (const auto& cnd : rep.conditions)
        if (cnd.name == "tr F22 = 0") f22 = &cnd;
      r.add(pre + "control", "perturbed series fails tr F22 = 0", f22 && !f22->holds,
            pert + (f22 && !f22->detail.empty() ? "; " + f22->detail : "; tr F22 vanished"), pv);
      continue;
    }
    for (std::size_t i = 0; i < rep.conditions.size(); ++i)
      r.add(pre + "condition" + std::to_string(i + 1), rep.conditions[i].name, rep.conditions[i].holds, rep.conditions[i].detail,
            pv);
    r.add(pre + "reality", "F(l,k) is the conjugate of F(k,l)", rep.reality, "", kStructural);
    r.add(pre + "tr3F33", "tr^3 F33 reported separately", true, "tr^3 F33 = " + rep.tr3_f33, kStructural);
    for (const auto& [kl, want] : spec.parts) {
      CPoly got = s.part(kl.first, kl.second);
      bool ok = (got - want).is_zero();
      r.add(pre + "F" + std::to_string(kl.first) + std::to_string(kl.second),
            "F(" + std::to_string(kl.first) + "," + std::to_string(kl.second) + ") = " + want.to_string(), ok,
            ok ? "" : "computed " + got.to_string(), pv);
    }
    if (spec.trace) {
      bool ok = tr.matrix() == *spec.trace;
      r.add(pre + "trace", "trace operator tr = " + TraceOperator(s.holo, s.anti, *spec.trace).to_string(), ok,
            ok ? "" : "computed " + tr.to_string(), pv);
    }
    CPoly total = s.total();
    CPoly back = (total * g.r.den()).truncate(cutoff) - g.r.num().truncate(cutoff);
    bool ok = true;
    for (int d = 0; d <= cutoff; ++d) ok = ok && back.homogeneous_part(d).is_zero();
    r.add(pre + "multiply_back", "series times denominator equals numerator through the cutoff", ok,
          ok ? "" : "residual " + back.to_string(), kStructural);
  }
}

inline void verify_map(const Catalog& c, const Options& o, Report& r) {
  std::vector<std::string> ids = o.id.empty() ? c.list("map.*") : std::vector<std::string>{o.id};
  for (const auto& id : ids) {
    SurfaceMapSpec m = c.surface_map(id);
    const std::string pre = "verify-map." + id + ".";
    const std::string pv = prov(c, id);
    auto res = verify_surface_map(m.source, m.rho, m.target_coords, m.phi);
    r.add(pre + "identity",
          m.expect ? "map carries the source surface into the target surface"
                   : "map as printed does not carry the source surface into the target (misprint)",
          res.identity == m.expect, std::to_string(res.residual_terms) + " residual terms", pv);
    r.add(pre + "origin", "phi(0) = " + point_string(m.origin), res.image_of_origin == m.origin,
          "phi(0) = " + point_string(res.image_of_origin), pv);
    if (!m.expect) continue;
    std::vector<CRational> affine;
    bool nonlinear = false;
    for (const auto& f : m.phi) {
      CPoly a = series_expand(f, 1);
      if (!(CRational(a) == f)) nonlinear = true;
      affine.emplace_back(a);
    }
    if (!nonlinear) continue;
    auto ctl = verify_surface_map(m.source, m.rho, m.target_coords, affine);
    r.add(pre + "affine_control", "affine part of the map alone does not carry the surface", !ctl.identity,
          std::to_string(ctl.residual_terms) + " residual terms", kStructural);
  }
}

inline CPoly tube_rho(const Catalog& c, const std::string& surface) {
  Hypersurface h = c.surface(surface);
  return tube_defining_polynomial(h.p, h.vars, fx::kZ);
}

inline std::vector<Gaussian> complex_point(const QVector& x) {
  std::vector<Gaussian> out;
  for (const auto& v : x) out.emplace_back(v);
  return out;
}

inline void invariance(const Catalog& c, const std::string& pre, const std::string& fam_id, const CPoly& rho,
                       const std::optional<std::vector<Gaussian>>& fixed, Report& r) {
  auto res = verify_family_invariance(c.family(fam_id), rho, fixed);
  r.add(pre + fam_id + ".invariance", "family preserves the surface for all parameter values", res.invariant,
        res.invariant ? "multiplier " + res.multiplier : res.detail, prov(c, fam_id));
  if (fixed)
    r.add(pre + fam_id + ".fixed_point", "family fixes " + point_string(*fixed), res.fixes_point,
          res.fixes_point ? "" : res.detail, prov(c, fam_id));
}

/// Real span of fields inside the span of a basis, as coordinate vectors.
inline std::optional<Subspace> field_span(const std::vector<CField>& fields, const std::vector<CField>& basis) {
  Subspace s(basis.size());
  for (const auto& f : fields) {
    auto v = expand_fields(f, basis);
    if (!v) return std::nullopt;
    s.add(*v);
  }
  return s;
}

inline void isotropy(const Catalog& c, const Options& o, Report& r) {
  const std::string cs = require_case(o);
  const std::string pre = "isotropy." + cs + ".";
  const std::string surf = cs == "D" ? "surface.table.6" : "surface.table.5";
  CPoly rho = tube_rho(c, surf);
  auto p0 = complex_point(c.surface(surf).basepoint);
  std::vector<std::string> fams = cs == "D" ? std::vector<std::string>{"family.iso.D", "family.iso.D.affine", "family.full.D.isotropy"}
                                            : std::vector<std::string>{"family.iso.C.r", "family.iso.C.u", "family.circle.C"};
  for (const auto& f : fams) invariance(c, pre, f, rho, p0, r);

  MapFamily iso = cs == "D" ? c.family("family.iso.D")
                            : compose(c.family("family.iso.C.r"), compose(c.family("family.iso.C.u"), c.family("family.circle.C")));
  const std::string iso_prov = cs == "D" ? prov(c, "family.iso.D") : prov(c, "family.circle.C");
  auto gens = infinitesimal_generators(iso);
  std::size_t rk = real_rank(gens);
  r.add(pre + "dimension", "isotropy has dimension 3", gens.size() == 3 && rk == 3,
        std::to_string(gens.size()) + " generators, rank " + std::to_string(rk), iso_prov);
  const std::string sid = "span.iso." + case_id(cs);
  auto span = field_span(gens, c.basis("basis.Z." + case_id(cs)));
  Subspace want(10, c.span(sid));
  std::string got;
  if (span)
    for (const auto& v : span->basis()) got += (got.empty() ? "" : ", ") + z_string(v);
  r.add(pre + "span", "isotropy generators span the stated subalgebra", span && *span == want,
        span ? "span " + got : "a generator lies outside the algebra", prov(c, sid));

  if (cs == "D") {
    bool same = same_map(c.family("family.full.D.isotropy").components(), c.family("family.iso.D").components(), RelationContext());
    r.add(pre + "restriction", "full family at the isotropy parameters equals the isotropy family", same,
          "", prov(c, "family.full.D.isotropy"));
  } else {
    auto res = verify_family_invariance(c.family("family.circle.C.printed"), rho, p0);
    r.add(pre + "family.circle.C.printed.invariance", "circle action as printed fails to preserve the surface (misprint)",
          !res.invariant, res.invariant ? "printed action preserves the surface" : res.detail, prov(c, "family.circle.C.printed"));
  }

  const std::string nf = cs == "D" ? "normalform.Dcase" : "normalform.Ccase";
  const std::string iw = "family.Iw." + cs;
  CPoly graph = graph_defining_polynomial(c.normal_form(nf).surface);
  auto wres = verify_family_invariance(c.family(iw), graph, std::vector<Gaussian>(4, Gaussian(0)));
  r.add(pre + iw + ".invariance", "linear family preserves the normal-form surface and fixes 0", wres.invariant && wres.fixes_point,
        wres.invariant ? "multiplier " + wres.multiplier : wres.detail, prov(c, iw));

  const std::string bid = "bridge." + case_id(cs);
  BridgeSpec b = c.bridge(bid);
  auto ires = verify_intertwining(c.bridge_z_family(b), c.family(b.w_family), c.surface_map(b.map).phi);
  std::string resid;
  for (const auto& x : ires.residuals)
    if (x != "0") resid += " " + x;
  r.add(pre + "bridge", "linear family corresponds to the isotropy family through the normal-form map", ires.holds,
        resid.empty() ? "" : "residuals" + resid, prov(c, bid));
}

inline void group(const Catalog& c, const Options& o, Report& r) {
  const std::string cs = require_case(o);
  const std::string pre = "group." + cs + ".";
  const std::string surf = cs == "D" ? "surface.table.6" : "surface.table.5";
  CPoly rho = tube_rho(c, surf);
  const std::string full = cs == "D" ? "family.full.D" : "family.full.C";
  std::vector<std::string> fams = cs == "D" ? std::vector<std::string>{full, "family.G.D", "family.H.D"}
                                            : std::vector<std::string>{full, "family.afftrans.C"};
  for (const auto& f : fams) invariance(c, pre, f, rho, std::nullopt, r);
  for (const auto& f : c.list("family.*")) {
    if (!c.payload(f, "family").contains("law")) continue;
    if (std::find(fams.begin(), fams.end(), f) == fams.end()) continue;
    auto g = verify_group_law(c.family(f));
    const std::string lid = "law." + f.substr(std::string("family.").size());
    Check ch{pre + f + ".law", "composition law and identity of the family hold",
             g.verdict == GroupLawResult::Verdict::Holds ? Verdict::Pass : Verdict::Fail, g.detail,
             c.contains(lid) ? prov(c, lid) : prov(c, f)};
    if (ch.verdict != Verdict::Pass && ch.details.empty()) ch.details = "law check failed";
    r.add(ch);
  }
  auto gens = infinitesimal_generators(c.family(full));
  std::size_t rk = real_rank(gens);
  r.add(pre + "generators", "automorphism group has dimension 10", gens.size() == 10 && rk == 10,
        std::to_string(gens.size()) + " generators, rank " + std::to_string(rk), prov(c, full));
  auto basis = c.basis("basis.Z." + case_id(cs));
  auto span = field_span(gens, basis);
  r.add(pre + "span", "generators span the algebra of Z1..Z10", span && span->dim() == 10,
        span ? "span dimension " + std::to_string(span->dim()) : "a generator lies outside the algebra",
        prov(c, "basis.Z." + case_id(cs)));
  if (span) {
    StructureConstants golden = c.table("table.golden." + case_id(cs)).constants();
    std::vector<QVector> coords;
    for (const auto& g : gens) coords.push_back(*expand_fields(g, basis));
    std::string bad;
    for (std::size_t i = 0; i < gens.size() && bad.empty(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        auto v = expand_fields(lie_bracket(gens[i], gens[j]), basis);
        if (!v || *v != golden.bracket(coords[i], coords[j])) {
          bad = "generators " + std::to_string(i + 1) + "," + std::to_string(j + 1);
          break;
        }
      }
    r.add(pre + "structure", "generator brackets agree with the golden table", bad.empty(), bad,
          prov(c, "table.golden." + case_id(cs)));
  }
  if (cs != "D") return;
  Hypersurface h = c.surface(surf);
  auto hgens = infinitesimal_generators(c.family("family.H.D"));
  VarList rv = make_vars(realified_vars(fx::kZ));
  QPoly p = h.p.with_vars(make_vars(h.vars));
  Assignment<Rational> ren;
  for (std::size_t i = 0; i < h.vars.size(); ++i) ren[h.vars[i]] = QRational(QPoly::variable(rv, i));
  QPoly preal = substitute_partial(p, ren).as_polynomial().with_vars(rv);
  QVector pt(8, Rational(0));
  for (std::size_t i = 0; i < 4; ++i) pt[i] = h.basepoint[i];
  auto st = [&](const std::vector<CField>& fs) {
    std::vector<HoloField> hs;
    for (const auto& f : fs) hs.emplace_back(f);
    return simply_transitive_check(hs, preal, pt);
  };
  auto describe = [](const SimplyTransitiveResult& s) {
    return std::to_string(s.count) + " fields, rank " + std::to_string(s.rank) + " of " + std::to_string(s.expected) +
           (s.tangent ? ", tangent" : ", not tangent");
  };
  auto res = st(hgens);
  r.add(pre + "simply_transitive", "affine subgroup acts simply transitively on the tube surface", res.holds(), describe(res),
        prov(c, "family.H.D"));
  std::vector<CField> dropped;
  bool skipped = false;
  for (const auto& g : hgens) {
    bool constant = true;
    for (const auto& comp : g.components()) constant = constant && comp.is_constant();
    if (constant && !skipped) {
      skipped = true;
      continue;
    }
    dropped.push_back(g);
  }
  auto ctl = st(dropped);
  r.add(pre + "simply_transitive.drop_control", "dropping a translation breaks simple transitivity", !ctl.holds(),
        describe(ctl), kStructural);
  std::vector<CField> dup = hgens;
  dup.back() = dup.front();
  auto ctl2 = st(dup);
  r.add(pre + "simply_transitive.duplicate_control", "duplicating a field breaks simple transitivity", !ctl2.holds(),
        describe(ctl2), kStructural);
}

inline void nilpotency(const Catalog& c, const Options& o, Report& r) {
  const std::string cs = require_case(o);
  const std::string pre = "nilpotency." + cs + ".";
  const std::string oid = "obstruction." + case_id(cs);
  ObstructionSpec ob = c.obstruction(oid);
  StructureConstants golden = c.table(ob.table).constants();
  auto iso = c.span(ob.iso);
  const unsigned seed = static_cast<unsigned>(o.seed);
  auto cert = non_nilpotent_transitive_obstruction(golden, iso, ob.z1, ob.z4, ob.s_idx, seed);
  for (const auto& cnd : cert.conditions) {
    std::string key = cnd.name.size() > 2 && cnd.name[0] == '(' ? cnd.name.substr(1, 1) : cnd.name;
    r.add(pre + key, cnd.name, cnd.holds, cnd.detail, prov(c, oid));
  }
  r.add(pre + "certificate", "obstruction certificate on the golden table", cert.passed, cert.summary(), prov(c, oid));
  auto l = LieAlgebraPresentation<Gaussian>::from_basis(c.basis(ob.basis));
  auto rec = non_nilpotent_transitive_obstruction(l.constants, iso, ob.z1, ob.z4, ob.s_idx, seed);
  r.add(pre + "recomputed", "obstruction certificate on the recomputed table", rec.passed, rec.summary(), prov(c, ob.basis));
  StructureConstants bad = golden;
  for (std::size_t k = 0; k < bad.dim(); ++k) {
    bad(ob.z1, ob.z4, k) = 0;
    bad(ob.z4, ob.z1, k) = 0;
  }
  auto ctl = non_nilpotent_transitive_obstruction(bad, iso, ob.z1, ob.z4, ob.s_idx, seed);
  r.add(pre + "control", "table with [Z1,Z4] = 0 fails condition (a)", !ctl.passed, ctl.summary(), kStructural);
  auto nil = is_nilpotent(golden);
  std::string dims;
  for (auto d : nil.series_dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
  r.add(pre + "not_nilpotent", "the algebra is not nilpotent", !nil.nilpotent, "lower central series dimensions " + dims,
        kStructural);
  r.add(pre + "iso_subalgebra", "isotropy span is a subalgebra", is_subalgebra(golden, Subspace(golden.dim(), iso)), "",
        prov(c, ob.iso));
}

inline std::string witness_domain(const std::string& id) {
  auto pos = id.rfind('.');
  pos = id.rfind('.', pos - 1);
  return "domain" + id.substr(pos);
}

inline void witness(const Catalog& c, const Options& o, Report& r) {
  std::vector<std::string> ids = o.id.empty() ? c.list("witness.*") : std::vector<std::string>{o.id};
  for (const auto& id : ids) {
    WitnessSpec w = c.witness(id);
    MapFamily fam = c.family(w.family);
    const std::string pre = "witness." + id.substr(std::string("witness.").size()) + ".";
    const std::string pv = prov(c, id);
    auto res = verify_transitivity_witness(fam, w.witness, w.base, w.samples);
    std::string resid;
    bool symbolic = true;
    for (std::size_t i = 0; i < res.residuals.size(); ++i)
      if (res.residuals[i] != "0") {
        symbolic = false;
        resid += " coordinate " + std::to_string(i + 1) + ": " + res.residuals[i];
      }
    r.add(pre + "identity", "family at the witness parameters maps the base point to an arbitrary target", symbolic,
          resid.empty() ? "" : "residuals" + resid, pv);
    std::string samples;
    bool reached = true;
    for (const auto& s : res.samples) {
      samples += (samples.empty() ? "" : "; ") + s;
      if (s.find("MISSED") != std::string::npos) reached = false;
    }
    r.add(pre + "samples", "sample targets are reached", reached, samples, pv);
    const std::string did = witness_domain(id);
    if (c.contains(did)) {
      auto d = c.domain(did);
      std::string outside;
      for (const auto& x : w.samples) {
        bool in = sgn(d.inequality.evaluate(std::span<const Rational>(x))) > 0;
        for (const auto& g : d.side) in = in && sgn(g.with_vars(make_vars(d.vars)).evaluate(std::span<const Rational>(x))) > 0;
        if (!in) outside += " " + point_string(x);
      }
      r.add(pre + "samples_in_domain", "sample targets lie in " + d.name, outside.empty(),
            outside.empty() ? "" : "outside:" + outside, prov(c, did));
    }
    std::map<std::string, Gaussian> at = fam.identity_values();
    for (std::size_t i = 0; i < fam.dim(); ++i) at[fam.coords()[i]] = Gaussian(w.base[i]);
    bool fixed = true;
    for (std::size_t i = 0; i < fam.dim(); ++i) {
      CRational v = fam.components()[i].evaluate_partial(at);
      fixed = fixed && v == CRational(CPoly::constant(Gaussian(w.base[i])));
    }
    r.add(pre + "identity_params", "identity parameters fix the base point", fixed, "", kStructural);
  }
}

inline void lines(const Catalog& c, const Options&, Report& r) {
  for (const auto& id : c.list("line.*")) {
    LineSpec l = c.line(id);
    auto d = c.domain(l.domain);
    auto res = line_in_domain_check(l.line, d.as_inequality());
    std::string claim = l.expect == LineVerdict::Contained
                            ? "the complex line " + l.equations + " lies in " + d.name
                            : "the complex line " + l.equations + " as printed is not contained in " + d.name + " (misprint)";
    Check ch{"lines." + id.substr(5), claim, res.verdict == l.expect ? Verdict::Pass : Verdict::Fail,
             std::string(to_string(res.verdict)) + ": " + res.detail, prov(c, id)};
    if (res.verdict == LineVerdict::Unresolved) ch.verdict = Verdict::Unresolved;
    r.add(ch);
  }
}

/// Every nonzero minor equals c * P with c free of the coordinates; P must
/// be monic of degree 1 in its last variable.
inline bool minor_is_multiple(const QPoly& minor, const QPoly& p, const std::vector<std::string>& coords) {
  const std::string& last = coords.back();
  QPoly coef = minor.derivative(last);
  for (const auto& v : coef.used_vars())
    if (std::find(coords.begin(), coords.end(), v) != coords.end()) return false;
  return (minor - coef * p).is_zero();
}

inline void scan_instance(const Catalog& c, const SurfaceInstance& s, std::size_t k, const Options& o, Report& r) {
  const std::string pre = "scan." + s.label + ".k" + std::to_string(k) + ".";
  const std::string pv = prov(c, s.fixture);
  auto l = affine_symmetry_algebra(s.h);
  if (k == 0 || k > l.dim()) throw UsageError("--dim must be between 1 and the algebra dimension " + std::to_string(l.dim()));
  ScanResult res = subalgebra_scan(l.constants, k, o.seed);
  std::size_t verified = 0;
  for (const auto& f : res.families) verified += f.verified();
  std::ostringstream info;
  info << "algebra dimension " << res.dim << ", " << res.charts << " charts, " << res.families.size() << " families ("
       << verified << " verified), " << res.empty_branches << " empty branches";
  r.add(pre + "families", "every family found is a verified subalgebra family", verified == res.families.size(), info.str(),
        kStructural);
  if (res.unresolved.empty()) {
    r.add(pre + "unresolved", "no unresolved charts", true, "0 unresolved", kStructural);
  } else {
    std::ostringstream os;
    os << res.unresolved.size() << " unresolved charts";
    for (std::size_t i = 0; i < res.unresolved.size() && i < 3; ++i) {
      os << "; pivots";
      for (auto p : res.unresolved[i].pivots) os << " " << p + 1;
      os << " residual";
      for (const auto& q : res.unresolved[i].residual) os << " " << q.to_string();
    }
    r.add(Check{pre + "unresolved", "no unresolved charts", Verdict::Unresolved, os.str(), kStructural});
  }

  const std::size_t n = s.h.vars.size();
  if (k >= n) {
    std::vector<std::string> open;
    bool multiples = true;
    for (const auto& fam : res.families) {
      auto fields = family_fields(fam, l);
      std::size_t nz = 0;
      std::string sample;
      for (const auto& m : minors_scan(fields)) {
        if (m.value.is_zero()) continue;
        ++nz;
        if (sample.empty()) sample = m.value.to_string();
        multiples = multiples && minor_is_multiple(m.value, s.h.p, s.h.vars);
      }
      if (!nz) continue;
      std::string desc = "pivots";
      for (auto p : fam.pivots) desc += " " + std::to_string(p + 1);
      for (const auto& cn : fam.constraints) desc += ", " + cn;
      open.push_back(desc + ": " + std::to_string(nz) + " nonzero minors, e.g. " + sample);
    }
    std::string list;
    for (const auto& x : open) list += (list.empty() ? "" : "; ") + x;
    if (s.fixture == "surface.table.3" && k == n) {
      r.add(pre + "minors_vanish", "no 4-dimensional subalgebra has a nonvanishing 4x4 minor", open.empty(),
            open.empty() ? "" : std::to_string(open.size()) + " families with nonzero minors: " + list, pv);
      r.add(pre + "minors_on_surface", "every nonvanishing minor is a parameter multiple of P, so vanishes on the surface",
            multiples, multiples ? std::to_string(open.size()) + " families checked" : "a minor is not a multiple of P", kStructural);
    } else {
      r.add(pre + "open_families", "families with a nonvanishing maximal minor", true,
            std::to_string(open.size()) + " of " + std::to_string(res.families.size()) + (list.empty() ? "" : ": " + list),
            kStructural);
    }
  }

  for (const auto& sid : c.list("subalgebra.*")) {
    SubalgebraSpec sub = c.subalgebra(sid);
    if (sub.surface != s.fixture || sub.fields.size() != k) continue;
    Subspace want(l.dim());
    bool inside = true;
    for (const auto& f : sub.fields) {
      auto v = expand_in_basis(f, l);
      if (!v) inside = false;
      else want.add(*v);
    }
    bool found = false;
    for (const auto& fam : res.families) found = found || (inside && fam.contains(want));
    r.add(pre + sid, "scan recovers the known subalgebra " + sid, found,
          found ? "" : inside ? "no family contains it" : "a field lies outside the algebra", prov(c, sid));
  }
}

inline void scan(Catalog& c, const Options& o, Report& r) {
  if (o.dim == 0) throw UsageError("--dim is required");
  std::string id = resolve_surface(c, o.surface);
  for (const auto& s : instances(c, id, o.alpha)) scan_instance(c, s, o.dim, o, r);
}

inline void classify(const Catalog& c, const Options& o, Report& r) {
  for (const auto& id : c.list("surface.table.*")) {
    if (!stated_dim(c, id)) continue;
    for (const auto& s : instances(c, id, std::nullopt)) {
      auto l = affine_symmetry_algebra(s.h);
      std::size_t want = *stated_dim(c, id);
      r.add("classify.symmetry." + s.label, "symmetry algebra has dimension " + std::to_string(want), l.dim() == want,
            "dimension " + std::to_string(l.dim()), prov(c, id));
      if (c.payload(id, "surface").value("variant", std::string()) == "quadric") {
        auto rep = open_orbit_report(l, s.h, {});
        r.add("classify.no_open_orbit." + s.label, "all maximal minors vanish, so the surface bounds no homogeneous tube",
              rep.all_minors_vanish(), std::to_string(rep.nonzero_minors) + " nonzero minors", prov(c, id));
      }
    }
  }

  const json& sigs = c.payload("levi.signatures", "levi").at("signatures");
  std::vector<std::string> domains = c.list("domain.*");
  std::set<std::string> distinct;
  std::string mismatched;
  for (const auto& id : domains) {
    auto d = c.domain(id);
    Hypersurface h = c.surface(d.surface, d.alpha);
    std::vector<std::string> notes;
    bool ok = true;
    auto val = [&](const QPoly& f, const QVector& x) { return f.with_vars(make_vars(d.vars)).evaluate(std::span<const Rational>(x)); };
    bool inside = sgn(val(d.inequality, d.probe)) > 0;
    for (const auto& g : d.side) inside = inside && sgn(val(g, d.probe)) > 0;
    bool boundary = sgn(val(d.inequality, d.boundary_point)) == 0;
    for (const auto& g : d.side) boundary = boundary && sgn(val(g, d.boundary_point)) > 0;
    ok = ok && inside && boundary;
    notes.push_back(std::string("probe ") + point_string(d.probe) + (inside ? " inside" : " NOT inside"));

    std::vector<QField> fields;
    if (d.algebra == "full") {
      fields = affine_symmetry_algebra(h).basis;
    } else {
      auto sub = c.subalgebra(d.algebra);
      fields = sub.fields;
      auto full = affine_symmetry_algebra(h);
      bool sub_ok = sub.fields.size() == 5;
      std::string why;
      try {
        LieAlgebraPresentation<Rational>::from_basis(sub.fields);
      } catch (const std::exception& e) {
        sub_ok = false;
        why = e.what();
      }
      QPoly x1 = QPoly::variable(make_vars(d.vars), 0);
      for (const auto& f : sub.fields) {
        sub_ok = sub_ok && tangency_multiplier(f, h.p).has_value() && tangency_multiplier(f, x1).has_value() &&
                 expand_in_basis(f, full).has_value();
      }
      QVector wall{Rational(0), Rational(0), Rational(0), Rational(1)};
      std::size_t wall_rank = rank_at(sub.fields, wall);
      sub_ok = sub_ok && wall_rank < 4;
      r.add("classify.subalgebra." + id.substr(7),
            "5-dimensional subalgebra tangent to the surface and to x1 = 0, rank below 4 on x1 = 0", sub_ok,
            "rank " + std::to_string(wall_rank) + " at " + point_string(wall) + (why.empty() ? "" : "; " + why), prov(c, d.algebra));
    }
    std::size_t rk = rank_at(fields, d.probe);
    ok = ok && rk == 4;
    notes.push_back("rank " + std::to_string(rk) + " of the " + (d.algebra == "full" ? "full algebra" : d.algebra));

    std::string label;
    try {
      label = levi_signature(-d.inequality, d.vars, d.boundary_point).label();
    } catch (const std::exception& e) {
      label = e.what();
    }
    std::string want = sigs.contains(id) ? sigs.at(id).get<std::string>() : "";
    ok = ok && label == want;
    notes.push_back("Levi signature " + label + " (derived " + want + ")");
    if (label != d.levi_class) mismatched += " " + d.name + ": computed " + label + ", grouped with " + d.levi_class;
    distinct.insert(d.surface + "|" + (d.alpha ? to_string(*d.alpha) : "") + "|" + d.inequality.to_string());

    std::string details;
    for (const auto& n : notes) details += (details.empty() ? "" : "; ") + n;
    r.add("classify.domain." + id.substr(7), d.name + " is an affinely homogeneous tube domain", ok, details, prov(c, id));
  }
  r.add("classify.count", "exactly 14 distinct domains", domains.size() == 14 && distinct.size() == 14,
        std::to_string(distinct.size()) + " distinct domains", kStructural);
  r.add("classify.levi_grouping", "domains fall into the ++- and +-- classes as grouped", mismatched.empty(),
        mismatched.empty() ? "" : "mismatch:" + mismatched, prov(c, "domain.D.gt"));

  auto m = c.surface_map("map.case3.derived");
  auto res = verify_surface_map(m.source, m.rho, m.target_coords, m.phi);
  r.add("classify.case3.quadric", "the surface of row #3 is affinely equivalent to the quadric", res.identity,
        std::to_string(res.residual_terms) + " residual terms", prov(c, "map.case3.derived"));
  (void)o;
}

inline void export_fixtures(const Catalog&, const Options& o, Report& r) {
  if (o.out.empty()) throw UsageError("--out is required");
  Catalog builtin = builtin_catalog();
  builtin.export_to(o.out);
  Catalog back = Catalog::load(o.out);
  r.add("export.count", "fixture tree written", true, std::to_string(builtin.size()) + " fixtures in " + o.out, kStructural);
  r.add("export.roundtrip", "fixture tree loads back unchanged", back == builtin, "", kStructural);
}

}  // namespace detail

/// Runs one subcommand; checks come back sorted by id.
inline Report run_command(const std::string& name, Catalog catalog, const Options& o) {
  Report r(name);
  using namespace detail;
  if (name == "symmetry") symmetry(catalog, o, r);
  else if (name == "orbits") orbits(catalog, o, r);
  else if (name == "table") table(catalog, o, r);
  else if (name == "normal-form") normal_form(catalog, o, r);
  else if (name == "verify-map") verify_map(catalog, o, r);
  else if (name == "isotropy") isotropy(catalog, o, r);
  else if (name == "group") group(catalog, o, r);
  else if (name == "nilpotency") nilpotency(catalog, o, r);
  else if (name == "witness") witness(catalog, o, r);
  else if (name == "lines") lines(catalog, o, r);
  else if (name == "scan") scan(catalog, o, r);
  else if (name == "classify") classify(catalog, o, r);
  else if (name == "export-fixtures") export_fixtures(catalog, o, r);
  else throw UsageError("unknown command '" + name + "'");
  r.sort();
  return r;
}

}  // namespace tubes::cli

#endif
