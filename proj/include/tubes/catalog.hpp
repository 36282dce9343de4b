#ifndef TUBES_CATALOG_HPP
#define TUBES_CATALOG_HPP

#include "tubes/interchange.hpp"
#include "tubes/lie_algebra.hpp"
#include "tubes/map_family.hpp"
#include "tubes/normal_form.hpp"
#include "tubes/parse.hpp"
#include "tubes/symmetry.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef TUBES_DEFAULT_FIXTURES
#define TUBES_DEFAULT_FIXTURES "fixtures"
#endif

namespace tubes {

enum class Tag { Paper, Derived, Trivial };

inline const char* to_string(Tag t) {
  switch (t) {
    case Tag::Paper: return "PAPER";
    case Tag::Derived: return "DERIVED";
    default: return "TRIVIAL";
  }
}

inline Tag tag_from_string(const std::string& s) {
  if (s == "PAPER") return Tag::Paper;
  if (s == "DERIVED") return Tag::Derived;
  if (s == "TRIVIAL") return Tag::Trivial;
  throw std::invalid_argument("unknown fixture tag " + s);
}

struct Provenance {
  std::string location;
  std::string quote;   // verbatim source formula, PAPER only
  std::string oracle;  // DERIVED only
};

struct Fixture {
  std::string id;
  std::string kind;
  Tag tag = Tag::Paper;
  Provenance provenance;
  json payload;

  json to_json() const {
    json j;
    j["id"] = id;
    j["kind"] = kind;
    j["tag"] = to_string(tag);
    json p;
    p["location"] = provenance.location;
    if (!provenance.quote.empty()) p["quote"] = provenance.quote;
    if (!provenance.oracle.empty()) p["oracle"] = provenance.oracle;
    j["provenance"] = p;
    j["payload"] = payload;
    return j;
  }

  static Fixture from_json(const json& j) {
    Fixture f;
    f.id = j.at("id").get<std::string>();
    f.kind = j.at("kind").get<std::string>();
    f.tag = tag_from_string(j.at("tag").get<std::string>());
    const auto& p = j.at("provenance");
    f.provenance.location = p.at("location").get<std::string>();
    if (p.contains("quote")) f.provenance.quote = p.at("quote").get<std::string>();
    if (p.contains("oracle")) f.provenance.oracle = p.at("oracle").get<std::string>();
    f.payload = j.at("payload");
    return f;
  }
};

// Decoded payloads.

struct DomainSpec {
  std::string id, name, surface, levi_class, algebra;
  std::optional<Rational> alpha;
  std::vector<std::string> vars;
  QPoly inequality;  // > 0 inside
  std::vector<QPoly> side;
  QVector probe, boundary_point;

  DomainInequality as_inequality() const { return {vars, inequality, side}; }
};

struct GoldenTable {
  std::string basis;
  std::size_t dim = 0;
  std::map<std::pair<std::size_t, std::size_t>, QVector> entries;  // 0-based, i < j, nonzero only

  StructureConstants constants() const {
    StructureConstants sc(dim);
    for (const auto& [ij, v] : entries)
      for (std::size_t k = 0; k < dim; ++k) {
        sc(ij.first, ij.second, k) = v[k];
        sc(ij.second, ij.first, k) = -v[k];
      }
    return sc;
  }
};

struct ObstructionSpec {
  std::string basis, table, iso;
  std::size_t z1 = 0, z4 = 0;  // 0-based
  std::vector<std::size_t> s_idx;
};

struct SurfaceMapSpec {
  GraphSurface source;
  CPoly rho;
  std::vector<std::string> target_coords;
  std::vector<CRational> phi;
  std::vector<Gaussian> origin;
  bool expect = true;
};

struct NormalFormSpec {
  GraphSurface surface;
  int cutoff = kDefaultSeriesCutoff;
  std::map<Bidegree, CPoly> parts;
  std::optional<Matrix<Gaussian>> trace;
  std::optional<CPoly> perturbation;  // added to the numerator, scaled by a seeded constant
  bool expect_pass = true;
};

struct WitnessSpec {
  std::string family;
  QVector base;
  TransitivityWitness witness;
  std::vector<QVector> samples;
};

struct LineSpec {
  std::string domain, equations;
  ComplexLine line;
  LineVerdict expect = LineVerdict::Contained;
};

struct BridgeSpec {
  std::vector<std::string> z_families;  // composed outer to inner
  std::string w_family, map;
  Assignment<Gaussian> substitution;  // z-family parameters in terms of w-family parameters
};

struct SubalgebraSpec {
  std::string surface;
  std::vector<QField> fields;
};

namespace fx {

inline const std::vector<std::string> kX{"x1", "x2", "x3", "x4"};
inline const std::vector<std::string> kZ{"z1", "z2", "z3", "z4"};
inline const std::vector<std::string> kW{"w1", "w2", "w3", "w4"};

inline json rpoly(const std::string& e, const std::vector<std::string>& order = kX) {
  return poly_to_json(parse_real_polynomial(e, order));
}
inline json cpoly(const std::string& e, const std::vector<std::string>& order) {
  return poly_to_json(parse_polynomial(e, order));
}
inline json rf(const std::string& e, const std::vector<std::string>& order) {
  return rational_to_json(parse_rational_function(e, order));
}
inline json point(const std::vector<std::string>& xs) {
  std::vector<Gaussian> p;
  for (const auto& x : xs) p.push_back(parse_polynomial(x).constant_term());
  return point_to_json(p);
}
inline json rfs(const std::vector<std::string>& es, const std::vector<std::string>& order) {
  json a = json::array();
  for (const auto& e : es) a.push_back(rf(e, order));
  return a;
}
inline json fields(const std::vector<std::vector<std::string>>& fs, const std::vector<std::string>& coords) {
  json a = json::array();
  for (const auto& f : fs) {
    json comps = json::array();
    for (const auto& c : f) comps.push_back(cpoly(c, coords));
    a.push_back(comps);
  }
  return a;
}
inline json param(const std::string& name, const std::string& identity = "0", const std::string& constraint = "") {
  json p{{"name", name}, {"kind", "real"}, {"identity", identity}};
  if (!constraint.empty()) p["constraint"] = constraint;
  return p;
}
inline json angle(const std::string& name, const std::string& c, const std::string& cb) {
  return json{{"name", name}, {"kind", "angle"}, {"unit", c}, {"unit_bar", cb}};
}
inline json graph_im(const CRational& r, const std::vector<std::string>& free, const std::string& solved) {
  return json{{"form", "im"}, {"free", free}, {"solved", solved}, {"slice", "s"}, {"r", rational_to_json(r)}};
}
inline json graph_re_tube(const std::string& f) {
  GraphSurface g = GraphSurface::re_tube(parse_real_polynomial(f, {"x1", "x2", "x3"}), {"x1", "x2", "x3"}, kZ);
  return json{{"form", "re"}, {"free", g.free_vars}, {"solved", g.solved}, {"slice", g.slice}, {"r", rational_to_json(g.r)},
              {"tube_of", f}};
}
inline json tube_rho(const std::string& p) { return poly_to_json(tube_defining_polynomial(parse_real_polynomial(p, kX), kX, kZ)); }

/// Real part sum: 2 Re(e) = e + conj(e) over the holomorphic names.
inline CPoly two_re(const std::string& e, const std::vector<std::string>& holo) {
  CPoly p = parse_polynomial(e, holo);
  return p + conjugate(p, holomorphic_pairing(holo));
}

}  // namespace fx

class Catalog {
 public:
  void add(Fixture f) {
    if (items_.count(f.id)) throw std::invalid_argument("duplicate fixture id " + f.id);
    if (f.tag == Tag::Paper && f.provenance.quote.empty()) throw std::invalid_argument("fixture " + f.id + " needs a quote");
    if (f.tag == Tag::Derived && f.provenance.oracle.empty())
      throw std::invalid_argument("fixture " + f.id + " needs an oracle");
    items_.emplace(f.id, std::move(f));
  }

  std::size_t size() const { return items_.size(); }
  bool contains(const std::string& id) const { return items_.count(id) != 0; }

  const Fixture& get(const std::string& id) const {
    auto it = items_.find(id);
    if (it != items_.end()) return it->second;
    std::string msg = "unknown fixture id '" + id + "'";
    auto near = near_matches(id);
    if (!near.empty()) {
      msg += "; did you mean:";
      for (const auto& n : near) msg += " " + n;
    }
    throw std::out_of_range(msg);
  }

  /// Ids matching a glob with '*' wildcards; empty pattern lists everything.
  std::vector<std::string> list(const std::string& pattern = "") const {
    std::vector<std::string> out;
    for (const auto& [id, f] : items_)
      if (pattern.empty() || glob_match(pattern, id)) out.push_back(id);
    return out;
  }

  std::vector<std::string> near_matches(const std::string& id, std::size_t limit = 5) const {
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (const auto& [k, f] : items_) {
      std::size_t d = edit_distance(id, k);
      if (d <= std::max<std::size_t>(3, id.size() / 4) || k.find(id) != std::string::npos) scored.emplace_back(d, k);
    }
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < scored.size() && i < limit; ++i) out.push_back(scored[i].second);
    return out;
  }

  json index() const {
    json a = json::array();
    for (const auto& [id, f] : items_) {
      json e{{"id", id}, {"kind", f.kind}, {"tag", to_string(f.tag)}, {"file", id + ".json"}};
      if (!f.provenance.quote.empty()) e["quote"] = f.provenance.quote;
      if (!f.provenance.oracle.empty()) e["oracle"] = f.provenance.oracle;
      a.push_back(e);
    }
    return a;
  }

  void export_to(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& [id, f] : items_) {
      std::ofstream out(dir / (id + ".json"));
      if (!out) throw std::runtime_error("cannot write fixture file for " + id);
      out << f.to_json().dump(2) << "\n";
    }
    std::ofstream idx(dir / "index.json");
    idx << index().dump(2) << "\n";
  }

  static Catalog load(const std::filesystem::path& dir) {
    std::ifstream idx(dir / "index.json");
    if (!idx) throw std::runtime_error("no index.json in " + dir.string());
    json index = json::parse(idx);
    Catalog c;
    for (const auto& e : index) {
      std::ifstream in(dir / e.at("file").get<std::string>());
      if (!in) throw std::runtime_error("missing fixture file " + e.at("file").get<std::string>());
      Fixture f = Fixture::from_json(json::parse(in));
      if (f.id != e.at("id").get<std::string>()) throw std::runtime_error("fixture id mismatch in " + f.id);
      c.add(std::move(f));
    }
    return c;
  }

  friend bool operator==(const Catalog& a, const Catalog& b) {
    if (a.items_.size() != b.items_.size()) return false;
    for (const auto& [id, f] : a.items_) {
      auto it = b.items_.find(id);
      if (it == b.items_.end() || it->second.to_json() != f.to_json()) return false;
    }
    return true;
  }

  // Typed access.

  Hypersurface surface(const std::string& id, std::optional<Rational> alpha = std::nullopt) const {
    const json& p = payload(id, "surface");
    Hypersurface h;
    h.vars = p.at("vars").get<std::vector<std::string>>();
    CPoly poly = poly_from_json(p.at("poly"));
    if (p.contains("params")) {
      std::map<std::string, Gaussian> vals;
      for (const auto& [name, spec] : p.at("params").items()) {
        if (!alpha) throw std::invalid_argument("surface " + id + " needs a value for " + name);
        vals[name] = Gaussian(*alpha);
      }
      poly = poly.evaluate_partial(vals);
    }
    h.p = to_real(poly).with_vars(make_vars(h.vars));
    for (const auto& x : point_from_json(p.at("basepoint"))) h.basepoint.push_back(x.re);
    for (const auto& s : p.at("side")) h.side.push_back(to_real(poly_from_json(s)));
    h.assert_irreducible = p.value("irreducible", true);
    return h;
  }

  std::vector<Rational> surface_samples(const std::string& id) const {
    const json& p = payload(id, "surface");
    std::vector<Rational> out;
    if (!p.contains("params")) return out;
    for (const auto& [name, spec] : p.at("params").items()) out = rational_vector_from_json(spec.at("samples"));
    return out;
  }

  DomainSpec domain(const std::string& id) const {
    const json& p = payload(id, "domain");
    DomainSpec d;
    d.id = id;
    d.name = p.at("name").get<std::string>();
    d.surface = p.at("surface").get<std::string>();
    if (p.contains("alpha")) d.alpha = parse_rational(p.at("alpha").get<std::string>());
    d.vars = fx::kX;
    d.inequality = to_real(poly_from_json(p.at("inequality"))).with_vars(make_vars(d.vars));
    for (const auto& s : p.at("side")) d.side.push_back(to_real(poly_from_json(s)));
    for (const auto& x : point_from_json(p.at("probe"))) d.probe.push_back(x.re);
    for (const auto& x : point_from_json(p.at("boundary_point"))) d.boundary_point.push_back(x.re);
    d.levi_class = p.at("levi_class").get<std::string>();
    d.algebra = p.at("algebra").get<std::string>();
    return d;
  }

  MapFamily family(const std::string& id) const {
    const json& p = payload(id, "family");
    if (p.contains("compose")) {
      auto ids = p.at("compose").get<std::vector<std::string>>();
      MapFamily f = family(ids.back());
      for (auto it = ids.rbegin() + 1; it != ids.rend(); ++it) f = compose(family(*it), f);
      return f;
    }
    if (p.contains("restrict")) {
      MapFamily base = family(p.at("restrict").get<std::string>());
      Assignment<Gaussian> fix;
      for (const auto& [k, v] : p.at("fix").items()) fix[k] = rational_from_json(v);
      std::vector<Parameter> keep;
      for (const auto& par : base.params())
        if (!fix.count(par.name)) keep.push_back(par);
      return base.with_params(fix, keep);
    }
    auto coords = p.at("coords").get<std::vector<std::string>>();
    std::vector<Parameter> params;
    for (const auto& q : p.at("params")) {
      if (q.at("kind") == "angle") {
        params.push_back(Parameter::angle(q.at("name"), q.at("unit"), q.at("unit_bar")));
      } else {
        params.push_back(Parameter::real(q.at("name"), parse_rational(q.at("identity").get<std::string>()),
                                         q.value("constraint", std::string())));
      }
    }
    std::vector<CRational> comps;
    for (const auto& c : p.at("components")) comps.push_back(rational_from_json(c));
    MapFamily f(coords, std::move(params), std::move(comps));
    if (p.contains("law")) {
      std::map<std::string, CRational> law;
      for (const auto& [k, v] : p.at("law").items()) law[k] = rational_from_json(v);
      f.set_composition_law(std::move(law));
    }
    return f;
  }

  std::vector<CField> basis(const std::string& id) const {
    const json& p = payload(id, "basis");
    auto coords = p.at("coords").get<std::vector<std::string>>();
    VarList vars = make_vars(coords);
    std::vector<CField> out;
    for (const auto& f : p.at("fields")) {
      std::vector<CPoly> comps;
      for (const auto& c : f) comps.push_back(poly_from_json(c));
      out.emplace_back(vars, std::move(comps));
    }
    return out;
  }

  GoldenTable table(const std::string& id) const {
    const json& p = payload(id, "table");
    GoldenTable t;
    t.basis = p.at("basis").get<std::string>();
    t.dim = p.at("dim").get<std::size_t>();
    for (const auto& e : p.at("entries")) {
      std::size_t i = e.at("i").get<std::size_t>() - 1, j = e.at("j").get<std::size_t>() - 1;
      if (i >= j || j >= t.dim) throw std::invalid_argument("table entry outside the upper triangle");
      QVector v(t.dim, Rational(0));
      for (const auto& [k, c] : e.at("value").items()) v.at(std::stoul(k) - 1) = parse_rational(c.get<std::string>());
      t.entries[{i, j}] = v;
    }
    return t;
  }

  std::vector<QVector> span(const std::string& id) const {
    const json& p = payload(id, "span");
    std::vector<QVector> out;
    for (const auto& v : p.at("vectors")) out.push_back(rational_vector_from_json(v));
    return out;
  }

  ObstructionSpec obstruction(const std::string& id) const {
    const json& p = payload(id, "obstruction");
    ObstructionSpec o;
    o.basis = p.at("basis");
    o.table = p.at("table");
    o.iso = p.at("iso");
    o.z1 = p.at("z1").get<std::size_t>() - 1;
    o.z4 = p.at("z4").get<std::size_t>() - 1;
    for (auto k : p.at("S").get<std::vector<std::size_t>>()) o.s_idx.push_back(k - 1);
    return o;
  }

  SurfaceMapSpec surface_map(const std::string& id) const {
    const json& p = payload(id, "map");
    SurfaceMapSpec m;
    m.source = graph_from_json(p.at("source"));
    m.rho = poly_from_json(p.at("rho"));
    m.target_coords = p.at("target_coords").get<std::vector<std::string>>();
    for (const auto& c : p.at("components")) m.phi.push_back(rational_from_json(c));
    m.origin = point_from_json(p.at("origin"));
    m.expect = p.value("expect", true);
    return m;
  }

  NormalFormSpec normal_form(const std::string& id) const {
    const json& p = payload(id, "normal_form");
    NormalFormSpec n;
    n.surface = graph_from_json(p.at("surface"));
    n.cutoff = p.value("cutoff", kDefaultSeriesCutoff);
    if (p.contains("parts"))
      for (const auto& [k, v] : p.at("parts").items()) {
        auto comma = k.find(',');
        n.parts[{std::stoi(k.substr(0, comma)), std::stoi(k.substr(comma + 1))}] = poly_from_json(v);
      }
    if (p.contains("trace")) {
      const auto& rows = p.at("trace");
      Matrix<Gaussian> g(rows.size(), rows.size(), Gaussian(0));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        auto r = point_from_json(rows[i]);
        for (std::size_t j = 0; j < r.size(); ++j) g(i, j) = r[j];
      }
      n.trace = g;
    }
    if (p.contains("perturbation")) n.perturbation = poly_from_json(p.at("perturbation"));
    n.expect_pass = p.value("expect_pass", true);
    return n;
  }

  WitnessSpec witness(const std::string& id) const {
    const json& p = payload(id, "witness");
    WitnessSpec w;
    w.family = p.at("family");
    for (const auto& x : point_from_json(p.at("base"))) w.base.push_back(x.re);
    w.witness.targets = p.at("targets").get<std::vector<std::string>>();
    for (const auto& r : p.at("radicals")) w.witness.relations.add_radical(r.at("symbol"), poly_from_json(r.at("radicand")));
    for (const auto& [k, v] : p.at("params").items()) w.witness.params[k] = rational_from_json(v);
    for (const auto& s : p.at("samples")) {
      QVector v;
      for (const auto& x : point_from_json(s)) v.push_back(x.re);
      w.samples.push_back(std::move(v));
    }
    return w;
  }

  LineSpec line(const std::string& id) const {
    const json& p = payload(id, "line");
    LineSpec l;
    l.domain = p.at("domain");
    l.equations = p.at("equations");
    l.line.point = point_from_json(p.at("point"));
    l.line.direction = point_from_json(p.at("direction"));
    l.expect = p.at("expect") == "contained" ? LineVerdict::Contained : LineVerdict::NotContained;
    return l;
  }

  BridgeSpec bridge(const std::string& id) const {
    const json& p = payload(id, "bridge");
    BridgeSpec b;
    b.z_families = p.at("z_families").get<std::vector<std::string>>();
    b.w_family = p.at("w_family");
    b.map = p.at("map");
    for (const auto& [k, v] : p.at("substitution").items()) b.substitution[k] = rational_from_json(v);
    return b;
  }

  /// Composed z-side family of a bridge, with the substitution applied; the
  /// remaining parameters are the w-side ones.
  MapFamily bridge_z_family(const BridgeSpec& b) const {
    MapFamily z = family(b.z_families.back());
    for (auto it = b.z_families.rbegin() + 1; it != b.z_families.rend(); ++it) z = compose(family(*it), z);
    std::vector<Parameter> keep;
    std::set<std::string> names;
    for (const auto& p : z.params())
      if (!b.substitution.count(p.name)) {
        keep.push_back(p);
        names.insert(p.name);
      }
    MapFamily w = family(b.w_family);
    for (const auto& p : w.params())
      if (!names.count(p.name)) keep.push_back(p);
    return z.with_params(b.substitution, keep);
  }

  SubalgebraSpec subalgebra(const std::string& id) const {
    const json& p = payload(id, "subalgebra");
    SubalgebraSpec s;
    s.surface = p.at("surface");
    VarList vars = make_vars(fx::kX);
    for (const auto& f : p.at("fields")) {
      std::vector<QPoly> comps;
      for (const auto& c : f) comps.push_back(to_real(poly_from_json(c)));
      s.fields.emplace_back(vars, std::move(comps));
    }
    return s;
  }

  const json& payload(const std::string& id, const std::string& kind) const {
    const Fixture& f = get(id);
    if (f.kind != kind) throw std::invalid_argument("fixture " + id + " is a " + f.kind + ", not a " + kind);
    return f.payload;
  }

  static GraphSurface graph_from_json(const json& g) {
    GraphSurface s;
    s.form = g.at("form") == "re" ? GraphSurface::Form::Re : GraphSurface::Form::Im;
    s.free_vars = g.at("free").get<std::vector<std::string>>();
    s.solved = g.at("solved");
    s.slice = g.value("slice", std::string("s"));
    s.r = rational_from_json(g.at("r"));
    s.check_real();
    return s;
  }

 private:
  static bool glob_match(const std::string& pat, const std::string& s) {
    std::size_t p = 0, i = 0, star = std::string::npos, mark = 0;
    while (i < s.size()) {
      if (p < pat.size() && (pat[p] == s[i] || pat[p] == '?')) {
        ++p;
        ++i;
      } else if (p < pat.size() && pat[p] == '*') {
        star = p++;
        mark = i;
      } else if (star != std::string::npos) {
        p = star + 1;
        i = ++mark;
      } else {
        return false;
      }
    }
    while (p < pat.size() && pat[p] == '*') ++p;
    return p == pat.size();
  }

  static std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
      cur[0] = i;
      for (std::size_t j = 1; j <= b.size(); ++j)
        cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
      std::swap(prev, cur);
    }
    return prev[b.size()];
  }

  std::map<std::string, Fixture> items_;
};

namespace detail {

inline void add_surfaces(Catalog& c) {
  using namespace fx;
  auto surface = [&](const std::string& id, Tag tag, const std::string& loc, const std::string& quote, const std::string& eq,
                     const std::string& poly, std::vector<std::string> base, std::vector<std::string> side = {},
                     json extra = json::object()) {
    json p{{"equation", eq}, {"vars", kX}, {"poly", rpoly(poly)}, {"basepoint", point(base)}};
    json s = json::array();
    for (const auto& g : side) s.push_back(rpoly(g));
    p["side"] = s;
    p["irreducible"] = true;
    for (auto& [k, v] : extra.items()) p[k] = v;
    c.add({id, "surface", tag, {loc, tag == Tag::Paper ? quote : "", tag == Tag::Derived ? quote : ""}, p});
  };
  const std::string table = "classification table";
  surface("surface.table.1p", Tag::Paper, table + ", row #1 (+)", "x_4=x_1^2+x_2^2\\pm x_3^2", "x4 = x1^2 + x2^2 + x3^2",
          "x4 - x1^2 - x2^2 - x3^2", {"0", "0", "0", "0"}, {}, json{{"symmetry_dim", 7}});
  surface("surface.table.1m", Tag::Paper, table + ", row #1 (-)", "x_4=x_1^2+x_2^2\\pm x_3^2", "x4 = x1^2 + x2^2 - x3^2",
          "x4 - x1^2 - x2^2 + x3^2", {"0", "0", "0", "0"}, {}, json{{"symmetry_dim", 7}});
  const std::string q2 = "x_1^2+x_2^2+x_3^3\\pm x_4^2=1\\quad\\mbox{or}\\quad";
  struct V {
    std::string suffix, eq, poly;
  };
  for (const auto& v : std::vector<V>{{"pp", "x1^2 + x2^2 + x3^3 + x4^2 = 1", "x1^2 + x2^2 + x3^3 + x4^2 - 1"},
                                      {"pm", "x1^2 + x2^2 + x3^3 - x4^2 = 1", "x1^2 + x2^2 + x3^3 - x4^2 - 1"},
                                      {"mp", "x1^2 - x2^2 - x3^3 + x4^2 = 1", "x1^2 - x2^2 - x3^3 + x4^2 - 1"},
                                      {"mm", "x1^2 - x2^2 - x3^3 - x4^2 = 1", "x1^2 - x2^2 - x3^3 - x4^2 - 1"}})
    surface("surface.table.2.cubic." + v.suffix, Tag::Paper, table + ", row #2 as printed", q2, v.eq, v.poly,
            {"1", "0", "0", "0"}, {}, json{{"variant", "printed"}});
  for (const auto& v : std::vector<V>{{"pp", "x1^2 + x2^2 + x3^2 + x4^2 = 1", "x1^2 + x2^2 + x3^2 + x4^2 - 1"},
                                      {"pm", "x1^2 + x2^2 + x3^2 - x4^2 = 1", "x1^2 + x2^2 + x3^2 - x4^2 - 1"},
                                      {"mp", "x1^2 - x2^2 - x3^2 + x4^2 = 1", "x1^2 - x2^2 - x3^2 + x4^2 - 1"},
                                      {"mm", "x1^2 - x2^2 - x3^2 - x4^2 = 1", "x1^2 - x2^2 - x3^2 - x4^2 - 1"}})
    surface("surface.table.2.quadric." + v.suffix, Tag::Paper, table + ", row #2 with x3^2 (quadric variant)",
            "x_j\\partial/\\partial x_k-x_k\\partial/\\partial x_j", v.eq, v.poly, {"1", "0", "0", "0"}, {},
            json{{"variant", "quadric"}, {"symmetry_dim", 6}});
  surface("surface.table.3", Tag::Paper, table + ", row #3", "x_4=x_1x_2+x_3^2+x_1^3", "x4 = x1*x2 + x3^2 + x1^3",
          "x4 - x1*x2 - x3^2 - x1^3", {"0", "0", "0", "0"}, {}, json{{"symmetry_dim", 5}});
  {
    json p{{"equation", "x4 = x1*x2 + x3^2 + x1^2*x3 + alpha*x1^4"},
           {"vars", kX},
           {"poly", rpoly("x4 - x1*x2 - x3^2 - x1^2*x3 - alpha*x1^4", {"x1", "x2", "x3", "x4", "alpha"})},
           {"basepoint", point({"0", "0", "0", "0"})},
           {"side", json::array()},
           {"irreducible", true},
           {"symmetry_dim", 4},
           {"params",
            {{"alpha",
              {{"samples", json::array({"0", "1/12", "1"})},
               {"normal_form", "2 Im w4 = w1*wb2 + w2*wb1 + w3*wb3 +/- (w1*wb1)^2"},
               {"sign_rule", "sign(alpha - 1/12)"}}}}}};
    c.add({"surface.table.4", "surface", Tag::Paper, {table + ", row #4", "x_4=x_1x_2+x_3^2+x_1^2x_3+\\alpha x_1^4", ""}, p});
  }
  surface("surface.table.5", Tag::Paper, table + ", row #5", "x_4=x_1x_2+x_1x_3^2", "x4 = x1*x2 + x1*x3^2",
          "x4 - x1*x2 - x1*x3^2", {"1", "0", "0", "0"}, {}, json{{"symmetry_dim", 4}});
  surface("surface.table.6", Tag::Paper, table + ", row #6", "x_4^2=x_1x_2+x_1^2x_3", "x4^2 = x1*x2 + x1^2*x3",
          "x4^2 - x1*x2 - x1^2*x3", {"1", "0", "1", "1"}, {}, json{{"symmetry_dim", 4}});
  surface("surface.H", Tag::Paper, "domain list, half-pseudo-balls", "x_4>x_1x_2+x_3^2\\mbox{\\rm\\ and }",
          "x4 = x1*x2 + x3^2", "x4 - x1*x2 - x3^2", {"1", "0", "0", "0"}, {"x1"});
  c.add({"surface.hyperplane", "surface", Tag::Trivial, {"control: hyperplane", "", ""},
         json{{"equation", "x4 = 0"},
              {"vars", kX},
              {"poly", rpoly("x4")},
              {"basepoint", point({"0", "0", "0", "0"})},
              {"side", json::array()},
              {"irreducible", true},
              {"symmetry_dim", 16}}});
}

inline void add_domains(Catalog& c) {
  using namespace fx;
  struct D {
    std::string id, name, quote, surface, alpha, inequality, side;
    std::vector<std::string> probe, boundary;
    std::string levi, algebra;
  };
  const std::vector<std::string> o{"0", "0", "0", "0"};
  std::vector<D> ds{
      {"domain.B+.gt", "B_+^>", "B_+^>&:=&\\left\\{z\\in{\\mathbb C}^4:x_4>x_1^2+x_2^2+x_3^2\\right\\}", "surface.table.1p", "",
       "x4 - x1^2 - x2^2 - x3^2", "", {"0", "0", "0", "1"}, o, "+++", "full"},
      {"domain.B+.lt", "B_+^<", "B_+^<&:=&\\left\\{z\\in{\\mathbb C}^4:x_4<x_1^2+x_2^2+x_3^2\\right\\}", "surface.table.1p", "",
       "x1^2 + x2^2 + x3^2 - x4", "", {"0", "0", "0", "-1"}, o, "---", "full"},
      {"domain.B-.gt", "B_-^>", "B_-^>&:=&\\left\\{z\\in{\\mathbb C}^4:x_4>x_1^2+x_2^2-x_3^2\\right\\}", "surface.table.1m", "",
       "x4 - x1^2 - x2^2 + x3^2", "", {"0", "0", "0", "1"}, o, "++-", "full"},
      {"domain.B-.lt", "B_-^<", "B_-^<&:=&\\left\\{z\\in{\\mathbb C}^4:x_4<x_1^2+x_2^2-x_3^2\\right\\}", "surface.table.1m", "",
       "x1^2 + x2^2 - x3^2 - x4", "", {"0", "0", "0", "-1"}, o, "+--", "full"},
      {"domain.H.gt", "H^>", "H^>  &:=&\\left\\{z\\in{\\mathbb C}^4:x_4>x_1x_2+x_3^2\\mbox{\\rm\\ and }",
       "surface.H", "", "x4 - x1*x2 - x3^2", "x1", {"1", "0", "0", "1"}, {"1", "0", "0", "0"}, "++-", "subalgebra.H"},
      {"domain.H.lt", "H^<", "H^<  &:=&\\left\\{z\\in{\\mathbb C}^4:x_4<x_1x_2+x_3^2\\mbox{\\rm\\ and }",
       "surface.H", "", "x1*x2 + x3^2 - x4", "x1", {"1", "0", "0", "-1"}, {"1", "0", "0", "0"}, "+--", "subalgebra.H"},
      {"domain.N+.gt", "N_+^>", "N_+^>&:=&\\left\\{z\\in{\\mathbb C}^4:x_4>x_1x_2+x_3^2+x_1^2x_3+x_1^4\\right\\}",
       "surface.table.4", "1", "x4 - x1*x2 - x3^2 - x1^2*x3 - x1^4", "", {"0", "0", "0", "1"}, o, "++-", "full"},
      {"domain.N+.lt", "N_+^<", "N_+^<&:=&\\left\\{z\\in{\\mathbb C}^4:x_4<x_1x_2+x_3^2+x_1^2x_3+x_1^4\\right\\}",
       "surface.table.4", "1", "x1*x2 + x3^2 + x1^2*x3 + x1^4 - x4", "", {"0", "0", "0", "-1"}, o, "+--", "full"},
      {"domain.N-.gt", "N_-^>", "N_-^>&:=&\\left\\{z\\in{\\mathbb C}^4:x_4>x_1x_2+x_3^2+x_1^2x_3-x_1^4\\right\\}",
       "surface.table.4", "-1", "x4 - x1*x2 - x3^2 - x1^2*x3 + x1^4", "", {"0", "0", "0", "1"}, o, "++-", "full"},
      {"domain.N-.lt", "N_-^<", "N_-^<&:=&\\left\\{z\\in{\\mathbb C}^4:x_4<x_1x_2+x_3^2+x_1^2x_3-x_1^4\\right\\}",
       "surface.table.4", "-1", "x1*x2 + x3^2 + x1^2*x3 - x1^4 - x4", "", {"0", "0", "0", "-1"}, o, "+--", "full"},
      {"domain.C.gt", "C^>", "C^>  &:=&\\left\\{z\\in{\\mathbb C}^4:x_4>x_1x_2+x_1x_3^2\\mbox{\\rm\\ and }",
       "surface.table.5", "", "x4 - x1*x2 - x1*x3^2", "x1", {"1", "0", "0", "1"}, {"1", "0", "0", "0"}, "++-", "full"},
      {"domain.C.lt", "C^<", "C^<  &:=&\\left\\{z\\in{\\mathbb C}^4:x_4<x_1x_2+x_1x_3^2\\mbox{\\rm\\ and }",
       "surface.table.5", "", "x1*x2 + x1*x3^2 - x4", "x1", {"1", "0", "0", "-1"}, {"1", "0", "0", "0"}, "+--", "full"},
      {"domain.D.gt", "D^>", "D^>  &:=&\\left\\{z\\in{\\mathbb C}^4:x_4^2>x_1x_2+x_1^2x_3\\mbox{\\rm\\ and }",
       "surface.table.6", "", "x4^2 - x1*x2 - x1^2*x3", "x1", {"1", "0", "0", "1"}, {"1", "0", "1", "1"}, "++-", "full"},
      {"domain.D.lt", "D^<", "D^<  &:=&\\left\\{z\\in{\\mathbb C}^4:x_4^2<x_1x_2+x_1^2x_3\\mbox{\\rm\\ and }",
       "surface.table.6", "", "x1*x2 + x1^2*x3 - x4^2", "x1", {"1", "1", "0", "0"}, {"1", "0", "1", "1"}, "+--", "full"},
  };
  for (const auto& d : ds) {
    json p{{"name", d.name}, {"surface", d.surface}};
    if (!d.alpha.empty()) p["alpha"] = d.alpha;
    p["inequality"] = rpoly(d.inequality);
    json side = json::array();
    if (!d.side.empty()) side.push_back(rpoly(d.side));
    p["side"] = side;
    p["probe"] = point(d.probe);
    p["boundary_point"] = point(d.boundary);
    p["levi_class"] = d.levi;
    p["algebra"] = d.algebra;
    c.add({d.id, "domain", Tag::Paper, {"domain list of the classification theorem", d.quote, ""}, p});
  }
  json sig;
  for (const auto& [id, s] : std::vector<std::pair<std::string, std::string>>{
           {"domain.B+.gt", "+++"}, {"domain.B+.lt", "---"}, {"domain.B-.gt", "++-"}, {"domain.B-.lt", "+--"},
           {"domain.H.gt", "++-"},  {"domain.H.lt", "+--"},  {"domain.N+.gt", "++-"}, {"domain.N+.lt", "+--"},
           {"domain.N-.gt", "++-"}, {"domain.N-.lt", "+--"}, {"domain.C.gt", "++-"},  {"domain.C.lt", "+--"},
           {"domain.D.gt", "+--"},  {"domain.D.lt", "++-"}})
    sig[id] = s;
  c.add({"levi.signatures", "levi", Tag::Derived,
         {"Levi signature of -E at each domain's boundary point", "", "tools/oracles/derive_fixtures.py:levi_signatures"},
         json{{"signatures", sig}}});
}

inline void add_families(Catalog& c) {
  using namespace fx;
  auto fam = [&](const std::string& id, Tag tag, const std::string& loc, const std::string& src, json params,
                 const std::vector<std::string>& comps, json law = nullptr) {
    json p{{"coords", kZ}, {"params", params}, {"components", rfs(comps, kZ)}};
    if (!law.is_null()) p["law"] = law;
    c.add({id, "family", tag, {loc, tag == Tag::Paper ? src : "", tag == Tag::Derived ? src : ""}, p});
  };
  const std::string law_oracle = "tools/oracles/derive_fixtures.py:composition_laws";
  auto law = [](const std::map<std::string, std::string>& m) {
    json j;
    for (const auto& [k, v] : m) j[k] = rational_to_json(parse_rational_function(v));
    return j;
  };
  fam("family.G.D", Tag::Paper, "affine group acting on the D-case cones",
      "x_2 &\\mapsto& qr^2(s+t^2) x_1+qr^2 x_2+2qr^2t x_4",
      json::array({param("q", "1", "q > 0"), param("r", "1", "r != 0"), param("s"), param("t")}),
      {"q*z1", "q*r^2*(s+t^2)*z1 + q*r^2*z2 + 2*q*r^2*t*z4", "r^2*z3 - r^2*s", "q*r*t*z1 + q*r*z4"},
      law({{"q", "q*q'"}, {"r", "r*r'"}, {"s", "s' + s/r'^2"}, {"t", "t' + t/r'"}}));
  c.add({"law.G.D", "note", Tag::Derived, {"composition law of the affine D-case group", "", law_oracle},
         json{{"family", "family.G.D"}}});
  fam("family.iso.D.affine", Tag::Paper, "affine part of the isotropy of p0 = (1,0,1,1)",
      "z_2 &\\mapsto & 2(r^2-r)z_1+r^2z_2+2(r-r^2)z_4", json::array({param("r", "1", "r != 0")}),
      {"z1", "2*(r^2-r)*z1 + r^2*z2 + 2*(r-r^2)*z4", "r^2*z3 + 1 - r^2", "(1-r)*z1 + r*z4"});
  fam("family.iso.D", Tag::Paper, "isotropy group of p0 = (1,0,1,1) on the D-case tube",
      "z_4&\\mapsto &-ivz_1^2+(1-r)z_1+rz_4+iv",
      json::array({param("r", "1", "r != 0"), param("u"), param("v")}),
      {"z1",
       "-2*v^2*z1^3 + I*(-2*v+4*v*r+u)*z1^2 - 4*I*v*r*z1*z4 + 2*(v^2+r^2-r)*z1 + r^2*z2 + 2*(r-r^2)*z4 + 2*I*v - I*u",
       "2*v^2*z1^2 - I*(2*u+4*v*r)*z1 + r^2*z3 + 4*I*v*r*z4 - r^2 + 1 - 2*v^2 + 2*I*u", "-I*v*z1^2 + (1-r)*z1 + r*z4 + I*v"});
  fam("family.full.D", Tag::Paper, "full automorphism group of the D-case domains",
      "z_3&\\mapsto& 2v^2z_1^2-2i(2vr+u)z_1+r^2z_3+4ivrz_4",
      json::array({param("q", "1", "q > 0"), param("r", "1", "r != 0"), param("s"), param("t"), param("u"), param("v"),
                   param("a1"), param("a2"), param("a3"), param("a4")}),
      {"q*z1 + I*a1",
       "-2*q*v^2*z1^3 + I*q*(-2*v+4*v*r-2*v*t+u)*z1^2 - 4*I*q*v*r*z1*z4 + q*(2*v^2+2*r^2-2*r-2*t*r+2*t+s+t^2)*z1 + "
       "q*r^2*z2 + 2*q*(r-r^2+t*r)*z4 + I*a2",
       "2*v^2*z1^2 - 2*I*(2*v*r+u)*z1 + r^2*z3 + 4*I*v*r*z4 - r^2 - 2*v^2 - s + 1 + I*a3",
       "-I*q*v*z1^2 + q*(t-r+1)*z1 + q*r*z4 + I*a4"},
      law({{"q", "q*q'"},
           {"r", "r*r'"},
           {"s", "2*a1'^2*v^2 - 4*a1'*r*v - 2*a1'*u + 4*a4'*r*v - 2*q'^2*v^2 - 4*q'*v'*r*v + s'*r^2 + s + 2*v^2"},
           {"t", "2*a1'*v + t'*r + t"},
           {"u", "-2*a1'*q'*v^2 - 2*q'*t'*r*v + q'*u + u'*r^2"},
           {"v", "q'*v + v'*r"},
           {"a1", "a1'*q + a1"},
           {"a2",
            "2*a1'^3*q*v^2 - 4*a1'^2*q*r*v + 2*a1'^2*q*t*v - a1'^2*q*u + 2*a1'^2*q*v + 4*a1'*a4'*q*r*v + 2*a1'*q*r^2 - "
            "2*a1'*q*r*t - 2*a1'*q*r + a1'*q*s + a1'*q*t^2 + 2*a1'*q*t + 2*a1'*q*v^2 + a2'*q*r^2 - 2*a4'*q*r^2 + "
            "2*a4'*q*r*t + 2*a4'*q*r + a2"},
           {"a3", "a3'*r^2 + a3"},
           {"a4", "a1'^2*q*v - a1'*q*r + a1'*q*t + a1'*q + a4'*q*r + a4"}}));
  c.add({"law.full.D", "note", Tag::Derived, {"composition law of the full D-case group", "", law_oracle},
         json{{"family", "family.full.D"}}});
  c.add({"family.full.D.isotropy", "family", Tag::Derived,
         {"full D-case group restricted to the isotropy of p0", "", "tools/oracles/derive_fixtures.py:isotropy_restriction"},
         json{{"restrict", "family.full.D"},
              {"fix",
               {{"q", rational_to_json(parse_rational_function("1"))},
                {"s", rational_to_json(parse_rational_function("0"))},
                {"t", rational_to_json(parse_rational_function("0"))},
                {"a1", rational_to_json(parse_rational_function("0"))},
                {"a2", rational_to_json(parse_rational_function("2*v - u"))},
                {"a3", rational_to_json(parse_rational_function("2*u"))},
                {"a4", rational_to_json(parse_rational_function("v"))}}}}});
  fam("family.translations", Tag::Trivial, "imaginary translations", "",
      json::array({param("a1"), param("a2"), param("a3"), param("a4")}),
      {"z1 + I*a1", "z2 + I*a2", "z3 + I*a3", "z4 + I*a4"});
  fam("family.afftrans.C", Tag::Paper, "affine group acting on the C-case domains",
      "x_4&\\mapsto& qr^2(x_4+s^2x_1+tx_1)",
      json::array({param("q", "1", "q > 0"), param("r", "1", "r != 0"), param("s"), param("t")}),
      {"q*z1", "r^2*(z2 - 2*s*z3 + t)", "r*(z3 + s)", "q*r^2*(z4 + s^2*z1 + t*z1)"},
      law({{"q", "q*q'"}, {"r", "r*r'"}, {"s", "s' + s/r'"}, {"t", "t' - 2*s'*s/r' + t/r'^2"}}));
  c.add({"law.afftrans.C", "note", Tag::Derived, {"composition law of the affine C-case group", "", law_oracle},
         json{{"family", "family.afftrans.C"}}});
  fam("family.iso.C.r", Tag::Paper, "C-case isotropy from the affine group", "z_2&\\mapsto& r^2z_2",
      json::array({param("r", "1", "r != 0")}), {"z1", "r^2*z2", "r*z3", "r^2*z4"});
  fam("family.iso.C.u", Tag::Paper, "C-case isotropy, u-family", "z_2&\\mapsto& z_2+iu(z_1-1)",
      json::array({param("u")}), {"z1", "z2 + I*u*(z1-1)", "z3", "z4 + I*u*(z1^2-1)/2"});
  fam("family.circle.C.printed", Tag::Paper, "C-case circle action as printed",
      "z_2&\\mapsto& \\displaystyle z_2+\\frac{(e^{2i\\theta}-1)z_3^2}{2}", json::array({angle("theta", "c", "cb")}),
      {"z1", "z2 + (c^2-1)*z3^2/2", "c*z3", "z4"});
  fam("family.circle.C", Tag::Derived, "C-case circle action, sign corrected",
      "tools/oracles/derive_fixtures.py:circle_action", json::array({angle("theta", "c", "cb")}),
      {"z1", "z2 - (c^2-1)*z3^2/2", "c*z3", "z4"});
  c.add({"family.full.C", "family", Tag::Derived,
         {"C-case automorphism group: translations, affine group, u-family, circle action", "",
          "tools/oracles/derive_fixtures.py:generator_spans"},
         json{{"compose", json::array({"family.translations", "family.afftrans.C", "family.iso.C.u", "family.circle.C"})}}});
  c.add({"family.H.D", "family", Tag::Derived,
         {"subgroup r = 1 of the D-case affine group with imaginary translations", "",
          "tools/oracles/derive_fixtures.py:simply_transitive"},
         json{{"restrict", "family.H.D.all"}, {"fix", {{"r", rational_to_json(parse_rational_function("1"))}}}}});
  c.add({"family.H.D.all", "family", Tag::Trivial, {"D-case affine group with imaginary translations", "", ""},
         json{{"compose", json::array({"family.translations", "family.G.D"})}}});
}

inline void add_iw_families(Catalog& c) {
  using namespace fx;
  auto p = [&](const std::string& id, Tag tag, const std::string& loc, const std::string& src, json params,
               const std::vector<std::string>& comps) {
    json pl{{"coords", kW}, {"params", params}, {"components", rfs(comps, kW)}};
    c.add({id, "family", tag, {loc, tag == Tag::Paper ? src : "", tag == Tag::Derived ? src : ""}, pl});
  };
  p("family.Iw.D", Tag::Paper, "linear isotropy in normal-form coordinates (D case)",
    "\\displaystyle\\left(i\\mu-\\frac{\\nu^2}{2}\\right)w_1+r^2w_2+i\\nu rw_3",
    json::array({param("r", "1", "r != 0"), param("mu"), param("nu")}),
    {"w1", "(I*mu - nu^2/2)*w1 + r^2*w2 + I*nu*r*w3", "I*nu*w1 + r*w3", "r^2*w4"});
  p("family.Iw.C", Tag::Paper, "linear isotropy in normal-form coordinates (C case)", "w_2 &\\mapsto& r^2(w_2+iuw_1)",
    json::array({param("r", "1", "r != 0"), param("u"), angle("theta", "c", "cb")}),
    {"w1", "r^2*(w2 + I*u*w1)", "r*c*w3", "r^2*w4"});
}

inline CRational d_case_r() {
  const std::vector<std::string> h{"w1", "w2", "w3"};
  CPoly n = 4 * Gaussian(1) *
            fx::two_re("48*w1*w3*wb3 + 25*w1^2*wb3^2 + 16*w3*wb3 + 36*w1*wb1*w3*wb3 + "
                       "2*(11*w1*wb1 + 24*w1 + 24*wb1 + 16)*w1*wb2",
                       h);
  CPoly d = parse_polynomial("(11*w1*wb1 + 24*w1 + 24*wb1 + 16)*(5*w1*wb1 + 16)");
  return CRational(n, d);
}

inline CRational c_case_r() {
  const std::vector<std::string> h{"w1", "w2", "w3"};
  CPoly m = 5 * Gaussian(1) *
            fx::two_re("4*w3*wb3*(1+w1) + 2*w2*w1*wb1 + wb2*w1^2*wb1 + 4*wb2*w1 + 2*wb2*w1^2", h);
  CPoly d = parse_polynomial("(2+w1)*(2+wb1)*(20-w1*wb1)");
  return CRational(m, d);
}

inline void add_bases_and_tables(Catalog& c) {
  using namespace fx;
  auto basis = [&](const std::string& id, const std::string& loc, const std::string& quote,
                   const std::vector<std::vector<std::string>>& fs) {
    json names = json::array();
    for (std::size_t i = 1; i <= fs.size(); ++i) names.push_back("Z" + std::to_string(i));
    c.add({id, "basis", Tag::Paper, {loc, quote, ""}, json{{"coords", kZ}, {"names", names}, {"fields", fields(fs, kZ)}}});
  };
  basis("basis.Z.Dcase", "D-case holomorphic vector field basis",
        "Z_{10}:=\\displaystyle 2i(z_1^2-2z_1z_4)\\frac{\\partial}{\\partial z_2}",
        {{"z1", "z2", "0", "z4"},
         {"0", "z1", "-1", "0"},
         {"0", "2*z4", "0", "z1"},
         {"I", "0", "0", "I"},
         {"0", "I", "0", "0"},
         {"0", "0", "I", "0"},
         {"0", "2*I", "0", "I"},
         {"0", "2*(z1+z2-z4)", "2*(z3-1)", "z4-z1"},
         {"0", "I*z1^2", "-2*I*z1", "0"},
         {"0", "2*I*(z1^2-2*z1*z4)", "-4*I*(z1-z4)", "-I*z1^2"}});
  basis("basis.Z.Ccase", "C-case holomorphic vector field basis",
        "-iz_3^2\\frac{\\partial}{\\partial z_2}",
        {{"z1", "0", "0", "z4"},
         {"0", "-2*z3", "1", "0"},
         {"0", "1", "0", "z1"},
         {"I", "0", "0", "0"},
         {"0", "I", "0", "0"},
         {"0", "0", "I", "0"},
         {"0", "0", "0", "I"},
         {"0", "2*z2", "z3", "2*z4"},
         {"0", "2*I*z1", "0", "I*z1^2"},
         {"0", "-I*z3^2", "I*z3", "0"}});
  struct E {
    int i, j, k;
    std::string coef;
  };
  auto table = [&](const std::string& id, const std::string& basis_id, const std::string& loc, const std::string& quote,
                   const std::vector<E>& es) {
    json entries = json::array();
    for (const auto& e : es) {
      std::string text = (e.coef == "1" ? "" : e.coef == "-1" ? "-" : e.coef) + "Z" + std::to_string(e.k);
      entries.push_back(json{{"i", e.i}, {"j", e.j}, {"value", {{std::to_string(e.k), e.coef}}}, {"text", text}});
    }
    c.add({id, "table", Tag::Paper, {loc, quote, ""}, json{{"basis", basis_id}, {"dim", 10}, {"entries", entries}}});
  };
  table("table.golden.Dcase", "basis.Z.Dcase", "D-case commutation table",
        "$Z_1$&&$0$&$0$&$-Z_4$&$-Z_5$&$0$&$-Z_7$&$0$&$Z_9$&$Z_{10}$",
        {{1, 4, 4, "-1"}, {1, 5, 5, "-1"}, {1, 7, 7, "-1"}, {1, 9, 9, "1"},  {1, 10, 10, "1"}, {2, 4, 5, "-1"},
         {2, 8, 2, "2"},  {3, 4, 7, "-1"}, {3, 7, 5, "-2"}, {3, 8, 3, "1"},  {3, 10, 9, "-2"}, {4, 9, 2, "-2"},
         {4, 10, 3, "2"}, {5, 8, 5, "2"},  {6, 8, 6, "2"},  {7, 8, 7, "1"},  {7, 10, 2, "4"},  {8, 9, 9, "-2"},
         {8, 10, 10, "-1"}});
  table("table.golden.Ccase", "basis.Z.Ccase", "C-case commutation table",
        "$Z_1$&&$0$&$0$&$-Z_4$&$0$&$0$&$-Z_7$&$0$&$Z_9$&$0$",
        {{1, 4, 4, "-1"}, {1, 7, 7, "-1"}, {1, 9, 9, "1"}, {2, 6, 5, "2"}, {2, 8, 2, "1"},  {2, 10, 6, "1"},
         {3, 4, 7, "-1"}, {3, 8, 3, "2"},  {4, 9, 3, "-2"}, {5, 8, 5, "2"}, {6, 8, 6, "1"},  {6, 10, 2, "-1"},
         {7, 8, 7, "2"},  {8, 9, 9, "-2"}});
  auto span = [&](const std::string& id, Tag tag, const std::string& basis_id, const std::string& loc,
                  const std::string& src, const std::vector<std::vector<std::string>>& vs, const std::vector<std::string>& text) {
    json vecs = json::array();
    for (const auto& v : vs) vecs.push_back(v);
    c.add({id, "span", tag, {loc, tag == Tag::Paper ? src : "", tag == Tag::Derived ? src : ""},
           json{{"basis", basis_id}, {"vectors", vecs}, {"text", text}}});
  };
  span("span.iso.Dcase", Tag::Paper, "basis.Z.Dcase", "D-case isotropy algebra", "spanned by $Z_8$, $Z_9-Z_5+2Z_6$,",
       {{"0", "0", "0", "0", "0", "0", "0", "1", "0", "0"},
        {"0", "0", "0", "0", "-1", "2", "0", "0", "1", "0"},
        {"0", "0", "0", "0", "0", "0", "1", "0", "0", "1"}},
       {"Z8", "Z9 - Z5 + 2Z6", "Z10 + Z7"});
  span("span.iso.Ccase", Tag::Paper, "basis.Z.Ccase", "C-case isotropy algebra", "Z_8$, $Z_9-2Z_5-Z_7$, $Z_{10}",
       {{"0", "0", "0", "0", "0", "0", "0", "1", "0", "0"},
        {"0", "0", "0", "0", "-2", "0", "-1", "0", "1", "0"},
        {"0", "0", "0", "0", "0", "0", "0", "0", "0", "1"}},
       {"Z8", "Z9 - 2Z5 - Z7", "Z10"});
  for (const auto& [cs, q] : std::vector<std::pair<std::string, std::string>>{
           {"Dcase", "Z_1':=Z-Z_1$, $Z_4':=Z_4+W"}, {"Ccase", "Z_1':=Z-Z_1$, $Z_4':=Z_4+W"}})
    c.add({"obstruction." + cs, "obstruction", Tag::Paper, {cs + " nilpotency obstruction", q, ""},
           json{{"basis", "basis.Z." + cs},
                {"table", "table.golden." + cs},
                {"iso", "span.iso." + cs},
                {"z1", 1},
                {"z4", 4},
                {"S", json::array({2, 3, 5, 6, 7, 8, 9, 10})}}});
}

inline void add_maps(Catalog& c) {
  using namespace fx;
  const std::vector<std::string> free{"w1", "w2", "w3"};
  c.add({"map.cm.Dcase", "map", Tag::Paper,
         {"D-case change of coordinates to normal form",
          "z_1 &=&\\displaystyle \\frac {11 w_1+4}{w_1+4}", ""},
         json{{"source", graph_im(d_case_r(), free, "w4")},
              {"rho", tube_rho("x4^2 - x1*x2 - x1^2*x3")},
              {"target_coords", kZ},
              {"components",
               rfs({"(11*w1+4)/(w1+4)",
                    "-96*I*(4*I*w2-5*I*w3+11*w4)/(5*w1+20) + 1600*I*(4*I*w2-5*I*w3-6*I*w3^2+6*w4)/(5*w1+20)^2 - "
                    "1280*w3^2/(w1+4)^3 + 24*I*w4",
                    "32*I*(2*I*w2+3*w4)/(5*w1+20) - 32*w3^2/(w1+4)^2 - 4*I*w4 + 1",
                    "-8*(6*w3+5)/(w1+4) + 160*w3/(w1+4)^2 + 11"},
                   kW)},
              {"origin", point({"1", "0", "1", "1"})},
              {"expect", true}}});
  c.add({"map.cm.Ccase", "map", Tag::Paper,
         {"C-case change of coordinates to normal form", "z_3 &=& \\displaystyle \\frac{2w_3}{w_1+2}", ""},
         json{{"source", graph_im(c_case_r(), free, "w4")},
              {"rho", tube_rho("x4 - x1*x2 - x1*x3^2")},
              {"target_coords", kZ},
              {"components",
               rfs({"w1 + 1", "w2 - I*w1*w4/10 - 2*w3^2/(w1+2)^2", "2*w3/(w1+2)", "-I*w4 + w2 + w1*(10*w2 - I*(w1+2)*w4)/20"},
                   kW)},
              {"origin", point({"1", "0", "0", "0"})},
              {"expect", true}}});
  const std::string case3 = "x1*x2 + x3^2 + x1^3", quadric = "x1*x2 + x3^2";
  c.add({"map.case3.derived", "map", Tag::Derived,
         {"case #3 tube onto the tube over x4 = x1*x2 + x3^2", "", "tools/oracles/derive_fixtures.py:case3_map"},
         json{{"source", graph_re_tube(case3)},
              {"rho", tube_rho("x4 - (" + quadric + ")")},
              {"target_coords", kZ},
              {"components", rfs({"z1", "z2 + 3/2*z1^2", "z3", "z4 + 1/2*z1^3"}, kZ)},
              {"origin", point({"0", "0", "0", "0"})},
              {"expect", true}}});
  c.add({"map.case3.printed", "map", Tag::Paper,
         {"case #3 polynomial map as printed, read from the case #3 tube",
          "z_2 \\mapsto z_2-3z_1^2/2\\qquad z_4 \\mapsto z_4-z_1^3/2", ""},
         json{{"source", graph_re_tube(case3)},
              {"rho", tube_rho("x4 - (" + quadric + ")")},
              {"target_coords", kZ},
              {"components", rfs({"z1", "z2 - 3/2*z1^2", "z3", "z4 - 1/2*z1^3"}, kZ)},
              {"origin", point({"0", "0", "0", "0"})},
              {"expect", false}}});
  c.add({"map.case3.printed.reverse", "map", Tag::Derived,
         {"case #3 polynomial map as printed, read from the quadric tube", "",
          "tools/oracles/derive_fixtures.py:case3_map"},
         json{{"source", graph_re_tube(quadric)},
              {"rho", tube_rho("x4 - (" + case3 + ")")},
              {"target_coords", kZ},
              {"components", rfs({"z1", "z2 - 3/2*z1^2", "z3", "z4 - 1/2*z1^3"}, kZ)},
              {"origin", point({"0", "0", "0", "0"})},
              {"expect", true}}});
  CRational quad_r = parse_rational_function("(w1*wb2 + w2*wb1 + w3*wb3)/2");
  CPoly quad_rho = parse_polynomial("-I/2*(w4 - wb4) - (w1*wb2 + w2*wb1 + w3*wb3)/2");
  c.add({"map.identity.quadric", "map", Tag::Trivial, {"control: identity on the Hermitian quadric", "", ""},
         json{{"source", graph_im(quad_r, free, "w4")},
              {"rho", poly_to_json(quad_rho)},
              {"target_coords", kW},
              {"components", rfs({"w1", "w2", "w3", "w4"}, kW)},
              {"origin", point({"0", "0", "0", "0"})},
              {"expect", true}}});
}

inline void add_normal_forms(Catalog& c) {
  using namespace fx;
  const std::vector<std::string> free{"w1", "w2", "w3"};
  const std::vector<std::string> all{"w1", "w2", "w3", "wb1", "wb2", "wb3"};
  auto re2 = [&](const std::string& e) { return poly_to_json(two_re(e, free)); };
  json g = json::array({point({"0", "2", "0"}), point({"2", "0", "0"}), point({"0", "0", "2"})});
  c.add({"normalform.Dcase", "normal_form", Tag::Paper,
         {"D-case normal form, bidegree terms and trace operator",
          "\\displaystyle\\frac{|w_3|^2}{2}+\\hbox{Re}\\,w_1\\overline{w_2}", ""},
         json{{"surface", graph_im(d_case_r(), free, "w4")},
              {"cutoff", 8},
              {"parts",
               {{"1,1", poly_to_json(parse_polynomial("w3*wb3/2 + (w1*wb2 + w2*wb1)/2", all))},
                {"2,2", re2("-5/32*w1^2*wb1*wb2 + 25/64*w1^2*wb3^2 + 5/16*w1*wb1*w3*wb3")},
                {"3,2", poly_to_json(parse_polynomial(
                            "-75/128*w1^3*wb3^2 - 75/64*w1^2*w3*wb1*wb3 - 75/128*w1*w3^2*wb1^2", all))},
                {"3,3", re2("25/512*w1^3*wb1^2*wb2 + 175/128*w1^3*wb1*wb3^2 + 1425/1024*w1^2*wb1^2*w3*wb3")}}},
              {"trace", g},
              {"expect_pass", true}}});
  c.add({"normalform.Ccase", "normal_form", Tag::Paper,
         {"C-case normal form", "4w_3\\overline{w_3}(1+w_1)+2w_2w_1\\overline{w_1}", ""},
         json{{"surface", graph_im(c_case_r(), free, "w4")}, {"cutoff", 8}, {"expect_pass", true}}});
  c.add({"normalform.Ccase.derived", "normal_form", Tag::Derived,
         {"C-case normal form, leading bidegree term", "", "tools/oracles/derive_fixtures.py:c_case_series"},
         json{{"surface", graph_im(c_case_r(), free, "w4")},
              {"cutoff", 8},
              {"parts", {{"1,1", poly_to_json(parse_polynomial("(wb1*w2 + wb2*w1)/4 + wb3*w3/2", all))}}},
              {"expect_pass", true}}});
  c.add({"normalform.Dcase.perturbed", "normal_form", Tag::Derived,
         {"negative control: D-case numerator plus a real bidegree (2,2) term", "",
          "tools/oracles/derive_fixtures.py:perturbation_control"},
         json{{"surface", graph_im(d_case_r(), free, "w4")},
              {"cutoff", 8},
              {"perturbation", poly_to_json(parse_polynomial("w1^2*wb1*wb2 + wb1^2*w1*w2", all))},
              {"expect_pass", false}}});
  for (const auto& [sfx, sign] : std::vector<std::pair<std::string, std::string>>{{"plus", "+"}, {"minus", "-"}})
    c.add({"normalform.table4." + sfx, "normal_form", Tag::Paper,
           {"case #4 normal form target", "2\\hbox{Im}\\,w_4=w_1\\overline{w_2}+w_2\\overline{w_1}+|w_3|^2\\pm|w_1|^4", ""},
           json{{"surface",
                 graph_im(parse_rational_function("(w1*wb2 + w2*wb1 + w3*wb3 " + sign + " w1^2*wb1^2)/2"), free, "w4")},
                {"cutoff", 8},
                {"expect_pass", true}}});
  c.add({"normalform.quadric", "normal_form", Tag::Trivial, {"control: Hermitian quadric", "", ""},
         json{{"surface", graph_im(parse_rational_function("(w1*wb2 + w2*wb1 + w3*wb3)/2"), free, "w4")},
              {"cutoff", 8},
              {"parts", {{"1,1", poly_to_json(parse_polynomial("(w1*wb2 + w2*wb1 + w3*wb3)/2", all))}}},
              {"expect_pass", true}}});
}

inline void add_witnesses_lines(Catalog& c) {
  using namespace fx;
  const std::vector<std::string> t{"x1_0", "x2_0", "x3_0", "x4_0"};
  c.add({"witness.transitivity.D.gt", "witness", Tag::Paper,
         {"transitivity of the D-case affine group on the > cone",
          "r=\\frac{\\sqrt{(x_4^0)^2-x_1^0x_2^0-(x_1^0)^2x_3^0}}{x_1^0}", ""},
         json{{"family", "family.G.D"},
              {"base", point({"1", "0", "0", "1"})},
              {"targets", t},
              {"radicals", json::array({json{{"symbol", "rho"}, {"radicand", cpoly("x4_0^2 - x1_0*x2_0 - x1_0^2*x3_0", t)}}})},
              {"params",
               {{"q", rational_to_json(parse_rational_function("x1_0", t))},
                {"r", rational_to_json(parse_rational_function("rho/x1_0", t))},
                {"t", rational_to_json(parse_rational_function("x4_0/rho - 1", t))},
                {"s", rational_to_json(parse_rational_function("-x1_0^2*x3_0/(x4_0^2 - x1_0*x2_0 - x1_0^2*x3_0)", t))}}},
              {"samples", json::array({point({"1", "0", "0", "1"}), point({"1", "-3", "0", "1"}), point({"2", "0", "0", "3"}),
                                       point({"1", "1", "-1", "1"}), point({"2", "0", "0", "2"})})}}});
  c.add({"witness.transitivity.C.gt", "witness", Tag::Derived,
         {"transitivity of the C-case affine group on the > domain", "",
          "tools/oracles/derive_fixtures.py:c_case_witness"},
         json{{"family", "family.afftrans.C"},
              {"base", point({"1", "0", "0", "1"})},
              {"targets", t},
              {"radicals", json::array({json{{"symbol", "rho"}, {"radicand", cpoly("x1_0*(x4_0 - x1_0*x2_0 - x1_0*x3_0^2)", t)}}})},
              {"params",
               {{"q", rational_to_json(parse_rational_function("x1_0", t))},
                {"r", rational_to_json(parse_rational_function("rho/x1_0", t))},
                {"s", rational_to_json(parse_rational_function("x1_0*x3_0/rho", t))},
                {"t", rational_to_json(parse_rational_function("x1_0*x2_0/(x4_0 - x1_0*x2_0 - x1_0*x3_0^2)", t))}}},
              {"samples", json::array({point({"1", "0", "0", "1"}), point({"4", "0", "0", "1"}), point({"1", "1", "1", "3"}),
                                       point({"2", "0", "1", "4"})})}}});
  auto line = [&](const std::string& id, Tag tag, const std::string& loc, const std::string& src, const std::string& dom,
                  const std::string& eqs, const std::vector<std::string>& pt, const std::vector<std::string>& dir,
                  const std::string& expect) {
    c.add({id, "line", tag, {loc, tag == Tag::Paper ? src : "", tag == Tag::Derived ? src : ""},
           json{{"domain", dom}, {"equations", eqs}, {"point", point(pt)}, {"direction", point(dir)}, {"expect", expect}}});
  };
  line("line.Dgt", Tag::Paper, "complex line in D^>", "\\{z\\in{\\mathbb C}^4:z_1=1, z_2+z_3=0, z_4=1\\}", "domain.D.gt",
       "z1 = 1, z2 + z3 = 0, z4 = 1", {"1", "0", "0", "1"}, {"0", "1", "-1", "0"}, "contained");
  line("line.Dlt", Tag::Paper, "complex line in D^<", "\\{z\\in{\\mathbb C}^4:z_1=1, z_2+z_3=1,z_4=0\\}", "domain.D.lt",
       "z1 = 1, z2 + z3 = 1, z4 = 0", {"1", "1", "0", "0"}, {"0", "1", "-1", "0"}, "contained");
  line("line.Cgt", Tag::Derived, "complex line in C^>", "tools/oracles/derive_fixtures.py:c_case_lines", "domain.C.gt",
       "z1 = 1, z3 = 0, z4 = z2 + 1", {"1", "0", "0", "1"}, {"0", "1", "0", "1"}, "contained");
  line("line.Clt", Tag::Derived, "complex line in C^<", "tools/oracles/derive_fixtures.py:c_case_lines", "domain.C.lt",
       "z1 = 1, z3 = 0, z4 = z2 - 1", {"1", "0", "0", "-1"}, {"0", "1", "0", "1"}, "contained");
  line("line.Cgt.printed", Tag::Paper, "complex line for C^> as printed", "\\{z\\in{\\mathbb C}^4:z_2=z_3=0,z_4=\\pm1\\}",
       "domain.C.gt", "z2 = z3 = 0, z4 = 1", {"0", "0", "0", "1"}, {"1", "0", "0", "0"}, "not contained");
  line("line.Clt.printed", Tag::Paper, "complex line for C^< as printed", "\\{z\\in{\\mathbb C}^4:z_2=z_3=0,z_4=\\pm1\\}",
       "domain.C.lt", "z2 = z3 = 0, z4 = -1", {"0", "0", "0", "-1"}, {"1", "0", "0", "0"}, "not contained");
}

inline void add_bridges_subalgebras(Catalog& c) {
  using namespace fx;
  c.add({"bridge.Dcase", "bridge", Tag::Paper,
         {"isotropy in z- and w-coordinates (D case)", "u=\\frac{16}{25}\\mu$ and $v=\\frac{2}{5}\\nu", ""},
         json{{"z_families", json::array({"family.iso.D"})},
              {"w_family", "family.Iw.D"},
              {"map", "map.cm.Dcase"},
              {"substitution",
               {{"u", rational_to_json(parse_rational_function("16/25*mu"))},
                {"v", rational_to_json(parse_rational_function("2/5*nu"))}}}}});
  c.add({"bridge.Ccase", "bridge", Tag::Derived,
         {"isotropy in z- and w-coordinates (C case)", "", "tools/oracles/derive_fixtures.py:c_case_bridge"},
         json{{"z_families", json::array({"family.iso.C.r", "family.iso.C.u", "family.circle.C"})},
              {"w_family", "family.Iw.C"},
              {"map", "map.cm.Ccase"},
              {"substitution", json::object()}}});
  auto sub = [&](const std::string& id, const std::string& surface, const std::string& loc,
                 const std::vector<std::vector<std::string>>& fs) {
    json f = json::array();
    for (const auto& fld : fs) {
      json comps = json::array();
      for (const auto& e : fld) comps.push_back(rpoly(e));
      f.push_back(comps);
    }
    c.add({id, "subalgebra", Tag::Derived, {loc, "", "tools/oracles/derive_fixtures.py:half_pseudo_ball"},
           json{{"surface", surface}, {"fields", f}}});
  };
  sub("subalgebra.H", "surface.H", "half-pseudo-ball symmetry subalgebra (fields preserving x1 = 0)",
      {{"0", "-2*x3", "x1", "0"}, {"0", "1", "0", "x1"}, {"0", "0", "1", "2*x3"}, {"0", "x2", "x3/2", "x4"}, {"x1", "-x2", "0", "0"}});
  sub("subalgebra.H.table1m", "surface.table.1m",
      "half-pseudo-ball symmetry subalgebra in row #1 (-) coordinates (fields preserving x1 + x3 = 0)",
      {{"-x2", "x1 + x3", "x2", "0"},
       {"0", "1", "0", "2*x2"},
       {"-1", "0", "1", "-2*x1 - 2*x3"},
       {"x1/2 - x3/2", "x2/2", "-x1/2 + x3/2", "x4"},
       {"x3", "0", "x1", "0"}});
}

}  // namespace detail

inline Catalog builtin_catalog() {
  Catalog c;
  detail::add_surfaces(c);
  detail::add_domains(c);
  detail::add_families(c);
  detail::add_iw_families(c);
  detail::add_bases_and_tables(c);
  detail::add_maps(c);
  detail::add_normal_forms(c);
  detail::add_witnesses_lines(c);
  detail::add_bridges_subalgebras(c);
  return c;
}

inline std::filesystem::path fixtures_dir() {
  if (const char* env = std::getenv("TUBES_FIXTURES"); env && *env) return env;
  return TUBES_DEFAULT_FIXTURES;
}

/// Fixture tree from TUBES_FIXTURES or the default location; the built-in
/// catalog when no tree is present.
inline Catalog default_catalog() {
  auto dir = fixtures_dir();
  if (std::filesystem::exists(dir / "index.json")) return Catalog::load(dir);
  if (std::getenv("TUBES_FIXTURES")) throw std::runtime_error("TUBES_FIXTURES has no index.json: " + dir.string());
  return builtin_catalog();
}

}  // namespace tubes

#endif
