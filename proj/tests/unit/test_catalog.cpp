#include "tubes/catalog.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <regex>

using namespace tubes;

namespace {

const std::filesystem::path kRoot = TUBES_SOURCE_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

const Catalog& builtin() {
  static const Catalog c = builtin_catalog();
  return c;
}

}  // namespace

TEST(Catalog, FixtureTreeMatchesBuiltin) {
  Catalog tree = Catalog::load(kRoot / "fixtures");
  EXPECT_EQ(tree.size(), builtin().size());
  EXPECT_TRUE(tree == builtin());
}

TEST(Catalog, ExportLoadRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / ("tubes_roundtrip_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  builtin().export_to(dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "index.json"));
  Catalog back = Catalog::load(dir);
  EXPECT_TRUE(back == builtin());
  std::filesystem::remove_all(dir);
}

TEST(Catalog, ProvenanceTags) {
  for (const auto& id : builtin().list()) {
    const Fixture& f = builtin().get(id);
    SCOPED_TRACE(id);
    EXPECT_FALSE(f.provenance.location.empty());
    if (f.tag == Tag::Paper) EXPECT_FALSE(f.provenance.quote.empty());
    if (f.tag == Tag::Derived) {
      EXPECT_EQ(f.provenance.oracle.rfind("tools/oracles/derive_fixtures.py:", 0), 0u);
      EXPECT_TRUE(f.provenance.quote.empty());
    }
  }
}

TEST(Catalog, QuotesAppearInSource) {
  auto paper = kRoot / "paper.md";
  if (!std::filesystem::exists(paper)) GTEST_SKIP() << "source text not available";
  std::string text = slurp(paper);
  for (const auto& id : builtin().list()) {
    const Fixture& f = builtin().get(id);
    if (f.tag == Tag::Paper) EXPECT_NE(text.find(f.provenance.quote), std::string::npos) << id;
  }
}

TEST(Catalog, OracleFunctionsExist) {
  std::string script = slurp(kRoot / "tools/oracles/derive_fixtures.py");
  for (const auto& id : builtin().list()) {
    const Fixture& f = builtin().get(id);
    if (f.tag != Tag::Derived) continue;
    std::string fn = f.provenance.oracle.substr(f.provenance.oracle.find(':') + 1);
    EXPECT_NE(script.find("def " + fn + "("), std::string::npos) << id;
  }
}

TEST(Catalog, OracleOutputCoversDerivedFixtures) {
  json derived = json::parse(slurp(kRoot / "tools/oracles/derived.json"));
  std::set<std::string> expected;
  for (const auto& id : builtin().list()) {
    const Fixture& f = builtin().get(id);
    if (f.tag != Tag::Derived) continue;
    expected.insert(id);
    ASSERT_TRUE(derived.contains(id)) << id;
    EXPECT_EQ(derived[id]["oracle"].get<std::string>(), f.provenance.oracle.substr(f.provenance.oracle.find(':') + 1));
    EXPECT_TRUE(derived[id]["verified"].get<bool>()) << id;
  }
  EXPECT_EQ(derived.size(), expected.size());
}

TEST(Catalog, LeviSignaturesAgreeWithOracle) {
  json derived = json::parse(slurp(kRoot / "tools/oracles/derived.json"));
  const json& sigs = derived.at("levi.signatures").at("value").at("signatures");
  for (const auto& id : builtin().list("domain.*")) {
    DomainSpec d = builtin().domain(id);
    EXPECT_EQ(levi_signature(-d.inequality, d.vars, d.boundary_point).label(), sigs.at(id).get<std::string>()) << id;
  }
}

TEST(Catalog, BasepointsAndProbes) {
  for (const auto& id : builtin().list("surface.*")) {
    SCOPED_TRACE(id);
    for (const auto& a : builtin().surface_samples(id)) {
      Hypersurface s = builtin().surface(id, a);
      EXPECT_TRUE(s.on_surface(s.basepoint));
      EXPECT_TRUE(s.side_holds(s.basepoint));
    }
  }
  for (const auto& id : builtin().list("domain.*")) {
    SCOPED_TRACE(id);
    DomainSpec d = builtin().domain(id);
    Hypersurface s = builtin().surface(d.surface, d.alpha);
    auto eval = [&](const QPoly& f, const QVector& x) { return s.eval(f, x); };
    EXPECT_GT(sgn(eval(d.inequality, d.probe)), 0);
    for (const auto& g : d.side) EXPECT_GT(sgn(eval(g, d.probe)), 0);
    EXPECT_EQ(sgn(eval(d.inequality, d.boundary_point)), 0);
    EXPECT_TRUE(s.on_surface(d.boundary_point));
  }
}

TEST(Catalog, UnknownIdSuggestsNearMatches) {
  try {
    builtin().get("map.cm.Dcas");
    FAIL() << "expected out_of_range";
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("map.cm.Dcase"), std::string::npos);
  }
}

TEST(Catalog, RejectsMalformedFixtures) {
  Catalog c;
  Fixture f{"x.y", "note", Tag::Paper, {"somewhere", "", ""}, json::object()};
  EXPECT_THROW(c.add(f), std::invalid_argument);
  f.tag = Tag::Derived;
  EXPECT_THROW(c.add(f), std::invalid_argument);
  f.tag = Tag::Trivial;
  c.add(f);
  EXPECT_THROW(c.add(f), std::invalid_argument);
}

TEST(Catalog, FamiliesAndTablesDecode) {
  EXPECT_EQ(builtin().family("family.full.D").params().size(), 10u);
  EXPECT_EQ(builtin().family("family.full.C").params().size(), 10u);
  EXPECT_EQ(builtin().basis("basis.Z.Dcase").size(), 10u);
  auto t = builtin().table("table.golden.Ccase");
  EXPECT_EQ(t.dim, 10u);
  EXPECT_TRUE(t.constants().satisfies_jacobi());
}
