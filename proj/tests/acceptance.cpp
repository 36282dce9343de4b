// One PASS/FAIL line per acceptance criterion. Criteria named with
// --known-fail N are still reported as FAIL but do not fail the run.

#include "tubes/commands.hpp"

#include <chrono>
#include <iostream>
#include <random>
#include <set>

using namespace tubes;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void require(const Report& r, const std::string& id) {
    const Check* c = r.find(id);
    if (!c) {
      ok = false;
      notes.push_back(id + ": missing");
    } else if (c->verdict != Verdict::Pass) {
      ok = false;
      notes.push_back(id + ": " + to_string(c->verdict) + " " + c->details.substr(0, 300));
    }
  }

  void require_prefix(const Report& r, const std::string& prefix) {
    bool any = false;
    for (const auto& c : r.checks())
      if (c.id.rfind(prefix, 0) == 0) {
        any = true;
        require(r, c.id);
      }
    if (!any) {
      ok = false;
      notes.push_back(prefix + "*: no checks");
    }
  }
};

Report run(const Catalog& c, const std::string& cmd, cli::Options o = {}) { return cli::run_command(cmd, c, o); }

cli::Options with_case(const std::string& cs) {
  cli::Options o;
  o.case_name = cs;
  return o;
}

cli::Options with_surface(const std::string& s, std::size_t dim = 0) {
  cli::Options o;
  o.surface = s;
  o.dim = dim;
  return o;
}

Outcome criterion1(const Catalog& c) {
  Outcome out;
  for (std::string s : {"surface.table.1p", "surface.table.1m", "surface.table.2.quadric.pp", "surface.table.3",
                        "surface.table.5", "surface.table.6"}) {
    Report r = run(c, "symmetry", with_surface(s));
    out.require(r, "symmetry." + s + ".dimension");
  }
  out.require(run(c, "symmetry", with_surface("surface.table.2.quadric.pp")), "symmetry.surface.table.2.quadric.pp.rotations");
  Report r4 = run(c, "symmetry", with_surface("surface.table.4"));
  for (std::string a : {"0", "1/12", "1"}) out.require(r4, "symmetry.surface.table.4[alpha=" + a + "].dimension");
  return out;
}

Outcome criterion2(const Catalog& c) {
  Outcome out;
  for (std::string cs : {"D", "C"}) {
    Report r = run(c, "table", with_case(cs));
    out.require_prefix(r, "table." + cs + ".");
    std::size_t entries = 0;
    for (const auto& ch : r.checks())
      if (ch.id.find('-') != std::string::npos) ++entries;
    if (entries != 45) {
      out.ok = false;
      out.notes.push_back(cs + ": " + std::to_string(entries) + " entries compared");
    }
  }
  return out;
}

Outcome criterion3(const Catalog& c) {
  Outcome out;
  for (std::string id : {"normalform.Dcase", "normalform.Ccase"}) {
    cli::Options o;
    o.id = id;
    o.cutoff = 8;
    Report r = run(c, "normal-form", o);
    for (int k = 1; k <= 5; ++k) out.require(r, "normal-form." + id + ".condition" + std::to_string(k));
    out.require(r, "normal-form." + id + ".reality");
  }
  cli::Options o;
  o.id = "normalform.Dcase.perturbed";
  o.cutoff = 8;
  out.require(run(c, "normal-form", o), "normal-form.normalform.Dcase.perturbed.control");
  return out;
}

Outcome criterion4(const Catalog& c) {
  Outcome out;
  for (std::string id : {"map.cm.Dcase", "map.cm.Ccase"}) {
    cli::Options o;
    o.id = id;
    Report r = run(c, "verify-map", o);
    out.require(r, "verify-map." + id + ".identity");
    out.require(r, "verify-map." + id + ".origin");
  }
  return out;
}

Outcome criterion5(const Catalog& c) {
  Outcome out;
  Report d = run(c, "isotropy", with_case("D"));
  out.require(d, "isotropy.D.family.iso.D.invariance");
  out.require(d, "isotropy.D.family.full.D.isotropy.fixed_point");
  out.require(d, "isotropy.D.restriction");
  Report cc = run(c, "isotropy", with_case("C"));
  for (std::string f : {"family.iso.C.r", "family.iso.C.u", "family.circle.C"}) out.require(cc, "isotropy.C." + f + ".invariance");
  Report gd = run(c, "group", with_case("D"));
  out.require(gd, "group.D.family.full.D.invariance");
  out.require(gd, "group.D.generators");
  Report gc = run(c, "group", with_case("C"));
  out.require(gc, "group.C.generators");
  return out;
}

Outcome criterion6(const Catalog& c) {
  Outcome out;
  out.require(run(c, "isotropy", with_case("D")), "isotropy.D.bridge");
  return out;
}

Outcome criterion7(const Catalog& c) {
  Outcome out;
  for (std::string cs : {"D", "C"}) {
    Report r = run(c, "nilpotency", with_case(cs));
    for (std::string k : {"a", "b", "c", "d", "e"}) out.require(r, "nilpotency." + cs + "." + k);
    out.require(r, "nilpotency." + cs + ".control");
  }
  return out;
}

Outcome criterion8(const Catalog& c) {
  Outcome out;
  cli::Options o = with_surface("surface.table.2.quadric.pp");
  out.require(run(c, "orbits", o), "orbits.surface.table.2.quadric.pp.minors");
  for (std::string s : {"surface.table.6", "surface.table.5"}) {
    Report r = run(c, "orbits", with_surface(s));
    for (const auto& ch : r.checks())
      if (ch.id.find(".domain.") != std::string::npos) out.require(r, ch.id);
  }
  Report scan = run(c, "scan", with_surface("surface.table.3", 4));
  out.require(scan, "scan.surface.table.3.k4.minors_vanish");
  const Check* u = scan.find("scan.surface.table.3.k4.unresolved");
  if (!u || u->verdict == Verdict::Fail) {
    out.ok = false;
    out.notes.push_back("unresolved count missing");
  } else if (u->verdict == Verdict::Unresolved) {
    out.notes.push_back(u->details);
  }
  return out;
}

Outcome criterion9(const Catalog& c) {
  Outcome out;
  Report r = run(c, "witness");
  out.require(r, "witness.transitivity.D.gt.identity");
  out.require(r, "witness.transitivity.C.gt.identity");
  return out;
}

Outcome criterion10(const Catalog& c) {
  Outcome out;
  Report r = run(c, "lines");
  for (std::string id : {"Dgt", "Dlt", "Cgt", "Clt"}) {
    out.require(r, "lines." + id);
    if (c.line("line." + id).expect != LineVerdict::Contained) {
      out.ok = false;
      out.notes.push_back(id + " is not expected to be contained");
    }
  }
  return out;
}

QPoly random_poly(std::mt19937_64& rng, const VarList& vars, int max_deg) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, max_deg);
  QPoly p(vars);
  for (int t = 0; t < 4; ++t) {
    QPoly m(vars, Rational(coef(rng)));
    int d = deg(rng);
    for (int k = 0; k < d; ++k) m = m * QPoly::variable(vars, std::uniform_int_distribution<std::size_t>(0, vars->size() - 1)(rng));
    p += m;
  }
  return p;
}

QPoly cofactor_det(const Matrix<QPoly>& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols, const VarList& vars) {
  if (rows.size() == 1) return m(rows[0], cols[0]);
  QPoly acc(vars);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (m(rows[0], cols[j]).is_zero()) continue;
    std::vector<std::size_t> r(rows.begin() + 1, rows.end()), cs = cols;
    cs.erase(cs.begin() + static_cast<long>(j));
    QPoly term = m(rows[0], cols[j]) * cofactor_det(m, r, cs, vars);
    if (j % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

Outcome criterion11() {
  Outcome out;
  std::mt19937_64 rng(20240611);
  VarList vars = make_vars({"x", "y", "z"});
  std::size_t det_bad = 0, series_bad = 0;
  for (int t = 0; t < 100; ++t) {
    Matrix<QPoly> m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = random_poly(rng, vars, 2);
    if (det_exact(m) - cofactor_det(m, {0, 1, 2, 3}, {0, 1, 2, 3}, vars) != QPoly(vars)) ++det_bad;
  }
  const int cutoff = 6;
  for (int t = 0; t < 100; ++t) {
    QPoly num = random_poly(rng, vars, 3), den = random_poly(rng, vars, 2);
    Rational d0 = den.constant_term();
    if (sgn(d0) == 0) den += QPoly(vars, Rational(1 + t % 3));
    QPoly s = series_expand(QRational(num, den), cutoff);
    if ((s * den).truncate(cutoff) - num.truncate(cutoff) != QPoly(vars)) ++series_bad;
  }
  if (det_bad || series_bad) {
    out.ok = false;
    out.notes.push_back(std::to_string(det_bad) + " determinant and " + std::to_string(series_bad) + " series mismatches");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--known-fail") known.insert(std::stoi(argv[++i]));
  auto start = std::chrono::steady_clock::now();
  Catalog c = default_catalog();
  struct Item {
    int n;
    std::string name;
    std::function<Outcome()> run;
  };
  std::vector<Item> items{
      {1, "symmetry dimensions", [&] { return criterion1(c); }},
      {2, "golden commutation tables", [&] { return criterion2(c); }},
      {3, "normal-form conditions and perturbation control", [&] { return criterion3(c); }},
      {4, "coordinate changes to normal form", [&] { return criterion4(c); }},
      {5, "group families, isotropy restriction, 10 generators", [&] { return criterion5(c); }},
      {6, "isotropy bridge", [&] { return criterion6(c); }},
      {7, "nil-ball obstruction and control", [&] { return criterion7(c); }},
      {8, "orbits and subalgebra scan", [&] { return criterion8(c); }},
      {9, "transitivity witnesses", [&] { return criterion9(c); }},
      {10, "complex lines in the domains", [&] { return criterion10(c); }},
      {11, "determinant and series oracles", [] { return criterion11(); }},
  };
  int unexpected = 0;
  for (const auto& it : items) {
    Outcome o;
    try {
      o = it.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << it.n << ": " << it.name;
    if (!o.ok && known.count(it.n)) std::cout << " (known failure)";
    std::cout << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    if (!o.ok && !known.count(it.n)) ++unexpected;
    if (o.ok && known.count(it.n)) std::cout << "    listed as a known failure but passed\n";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "total " << secs << " s\n";
  return unexpected ? 1 : 0;
}
