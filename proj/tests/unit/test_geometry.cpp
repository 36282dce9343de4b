#include "tubes/map_family.hpp"
#include "tubes/normal_form.hpp"
#include "tubes/parse.hpp"
#include "tubes/symmetry.hpp"

#include <gtest/gtest.h>

using namespace tubes;

namespace {

const std::vector<std::string> kX{"x1", "x2", "x3", "x4"};
const std::vector<std::string> kZ{"z1", "z2", "z3", "z4"};

QPoly rp(const std::string& e) { return parse_real_polynomial(e, kX); }

Hypersurface surface(const std::string& p, QVector base, std::vector<QPoly> side = {}) {
  Hypersurface s;
  s.vars = kX;
  s.p = rp(p);
  s.basepoint = std::move(base);
  s.side = std::move(side);
  return s;
}

}  // namespace

TEST(Fields, LieBracket) {
  auto a = QField::parse({"x", "y"}, {"0", "x"});
  auto b = QField::parse({"x", "y"}, {"y", "0"});
  EXPECT_EQ(lie_bracket(a, b), QField::parse({"x", "y"}, {"x", "-y"}));
  EXPECT_TRUE(lie_bracket(a, a).is_zero());
}

TEST(Fields, TangencyMultiplier) {
  auto x = QField::parse(kX, {"x1", "0", "0", "2*x4"});
  auto cert = tangency_multiplier(x, rp("x4 - x1^2"));
  ASSERT_TRUE(cert);
  EXPECT_TRUE((cert->multiplier - QPoly(cert->multiplier.vars(), Rational(2))).is_zero());
  EXPECT_FALSE(tangency_multiplier(QField::parse(kX, {"1", "0", "0", "0"}), rp("x4 - x1^2")));
}

TEST(Fields, RankAndMinors) {
  std::vector<QField> f{QField::parse({"x", "y"}, {"1", "0"}), QField::parse({"x", "y"}, {"0", "x"})};
  EXPECT_EQ(rank_at(f, QVector{0, 5}), 1u);
  EXPECT_EQ(rank_at(f, QVector{1, 0}), 2u);
  auto minors = minors_scan(f);
  ASSERT_EQ(minors.size(), 1u);
  EXPECT_TRUE((minors[0].value - parse_real_polynomial("x", {"x", "y"})).is_zero());
}

TEST(Fields, RealifyHolomorphicField) {
  HoloField z(CField::parse({"z"}, {"I*z"}));
  QField r = realify(z);
  EXPECT_EQ(r.dim(), 2u);
  // i z d/dz is the rotation -y d/dx + x d/dy
  EXPECT_EQ(r, QField::parse(*r.vars(), {"-" + (*r.vars())[1], (*r.vars())[0]}));
}

TEST(Symmetry, HyperplaneAffineAlgebra) {
  auto l = affine_symmetry_algebra(surface("x4", {0, 0, 0, 0}));
  EXPECT_EQ(l.dim(), 16u);
  EXPECT_TRUE(l.constants.satisfies_jacobi());
}

TEST(Symmetry, ParaboloidIsHomogeneous) {
  auto s = surface("x4 - x1^2 - x2^2 - x3^2", {0, 0, 0, 0});
  auto l = affine_symmetry_algebra(s);
  // translations along the surface, x4 translation excluded, so(3), dilation
  EXPECT_EQ(l.dim(), 7u);
  EXPECT_EQ(rank_at(l.basis, s.basepoint), 3u);
  auto rep = open_orbit_report(l, s, {QVector{0, 0, 0, 1}});
  ASSERT_EQ(rep.probes.size(), 1u);
  EXPECT_EQ(rep.probes[0].rank, 4u);
}

TEST(Symmetry, LeviSignatureOfTubes) {
  QVector origin{0, 0, 0, 0};
  EXPECT_EQ(levi_signature(-rp("x4 - x1^2 - x2^2 - x3^2"), kX, origin).label(), "+++");
  EXPECT_EQ(levi_signature(rp("x4 - x1^2 - x2^2 - x3^2"), kX, origin).label(), "---");
  EXPECT_EQ(levi_signature(-rp("x4 - x1*x2 - x3^2"), kX, origin).label(), "++-");
  EXPECT_EQ(levi_signature(-rp("x4 - x1^2"), kX, origin).label(), "+00");
  EXPECT_THROW(levi_signature(rp("x1^2 - x2^2"), kX, origin), std::invalid_argument);
}

TEST(Symmetry, ComplexLineInHalfSpace) {
  DomainInequality half{kX, rp("x4 - x1"), {}};
  ComplexLine inside{{Gaussian(0), Gaussian(0), Gaussian(0), Gaussian(1)}, {Gaussian(1), Gaussian(0), Gaussian(0), Gaussian(1)}};
  EXPECT_EQ(line_in_domain_check(inside, half).verdict, LineVerdict::Contained);
  ComplexLine outside{{Gaussian(0), Gaussian(0), Gaussian(0), Gaussian(-1)}, inside.direction};
  EXPECT_EQ(line_in_domain_check(outside, half).verdict, LineVerdict::NotContained);
  ComplexLine crossing{inside.point, {Gaussian(0), Gaussian(0), Gaussian(0), Gaussian(1)}};
  EXPECT_EQ(line_in_domain_check(crossing, half).verdict, LineVerdict::Unresolved);
}

namespace {

MapFamily scaling() {
  MapFamily f = MapFamily::parse(kZ, {Parameter::real("q", 1, "q > 0"), Parameter::real("b", 0)},
                                 {"q*z1", "q*z2", "q*z3", "q^2*z4 + I*b"});
  std::vector<std::string> all{"q", "q'", "b", "b'"};
  f.set_composition_law({{"q", parse_rational_function("q*q'", all)}, {"b", parse_rational_function("b + q^2*b'", all)}});
  return f;
}

}  // namespace

TEST(MapFamily, GroupLawHoldsAndBreaks) {
  auto f = scaling();
  EXPECT_EQ(verify_group_law(f).verdict, GroupLawResult::Verdict::Holds);
  std::vector<std::string> all{"q", "q'", "b", "b'"};
  f.set_composition_law({{"q", parse_rational_function("q*q'", all)}, {"b", parse_rational_function("b + b'", all)}});
  EXPECT_EQ(verify_group_law(f).verdict, GroupLawResult::Verdict::Fails);
}

TEST(MapFamily, InvarianceOfParaboloidTube) {
  CPoly rho = tube_defining_polynomial(rp("x4 - x1^2 - x2^2 - x3^2"), kX, kZ);
  auto res = verify_family_invariance(scaling(), rho, std::vector<Gaussian>(4, Gaussian(0)));
  EXPECT_TRUE(res.invariant);
  // the imaginary translation moves the origin
  EXPECT_FALSE(res.fixes_point);
  auto shear = MapFamily::parse(kZ, {Parameter::real("t", 0)}, {"z1 + t", "z2", "z3", "z4"});
  EXPECT_FALSE(verify_family_invariance(shear, rho).invariant);
}

TEST(MapFamily, GeneratorsAndComposition) {
  auto gens = infinitesimal_generators(scaling());
  ASSERT_EQ(gens.size(), 2u);
  EXPECT_EQ(gens[0], CField::parse(kZ, {"z1", "z2", "z3", "2*z4"}));
  EXPECT_EQ(gens[1], CField::parse(kZ, {"0", "0", "0", "I"}));
  auto rot = MapFamily::parse(kZ, {Parameter::angle("theta", "c", "cb")}, {"c*z1", "z2", "z3", "z4"});
  EXPECT_EQ(infinitesimal_generators(rot)[0], CField::parse(kZ, {"I*z1", "0", "0", "0"}));
  auto both = compose(rot, scaling());
  EXPECT_EQ(both.params().size(), 3u);
  EXPECT_THROW(compose(scaling(), scaling()), std::invalid_argument);
}

namespace {

GraphSurface quadric(const std::string& extra = "") {
  std::vector<std::string> vars{"w1", "w2", "wb1", "wb2"};
  return GraphSurface::im_graph({"w1", "w2"}, "w3", parse_rational_function("w1*wb2 + w2*wb1" + extra, vars));
}

}  // namespace

TEST(NormalForm, QuadricSatisfiesConditions) {
  auto s = defining_series(quadric(), 6);
  auto tr = trace_from_levi(s.part(1, 1), s.holo, s.anti);
  auto rep = chern_moser_check(s, tr);
  EXPECT_TRUE(rep.passed());
  EXPECT_TRUE(rep.reality);
  EXPECT_EQ(rep.conditions.size(), 5u);
}

TEST(NormalForm, PureTermsViolateFirstCondition) {
  auto s = defining_series(quadric(" + w1^2 + wb1^2"), 6);
  auto rep = chern_moser_check(s, trace_from_levi(s.part(1, 1), s.holo, s.anti));
  EXPECT_FALSE(rep.passed());
  EXPECT_FALSE(rep.conditions[0].holds);
}

TEST(NormalForm, TraceDetectsBidegreeTwoTwo) {
  auto bad = defining_series(quadric(" + w1^2*wb1*wb2 + w1*w2*wb1^2"), 6);
  auto rep = chern_moser_check(bad, trace_from_levi(bad.part(1, 1), bad.holo, bad.anti));
  EXPECT_FALSE(rep.passed());
  auto traceless = defining_series(quadric(" + w1^2*wb1^2"), 6);
  EXPECT_TRUE(chern_moser_check(traceless, trace_from_levi(traceless.part(1, 1), traceless.holo, traceless.anti)).passed());
}

TEST(NormalForm, SeriesOfRationalGraph) {
  std::vector<std::string> vars{"w1", "wb1"};
  auto g = GraphSurface::im_graph({"w1"}, "w2", parse_rational_function("w1*wb1/(1 - w1*wb1)", vars));
  auto s = defining_series(g, 6);
  EXPECT_TRUE(s.is_real());
  for (int k = 1; k <= 3; ++k) EXPECT_FALSE(s.part(k, k).is_zero()) << k;
  EXPECT_TRUE(s.part(2, 1).is_zero());
  EXPECT_THROW(chern_moser_check(defining_series(g, 4), trace_from_levi(s.part(1, 1), s.holo, s.anti)),
               std::invalid_argument);
}

TEST(NormalForm, IdentityMapOfQuadric) {
  auto g = quadric();
  CPoly rho = graph_defining_polynomial(g);
  std::vector<CRational> phi;
  for (const auto& w : g.coords()) phi.push_back(CRational(CPoly::variable(w)));
  auto res = verify_surface_map(g, rho, g.coords(), phi);
  EXPECT_TRUE(res.identity);
  phi[0] = phi[0] + CRational(CPoly::constant(Gaussian(1)));
  EXPECT_FALSE(verify_surface_map(g, rho, g.coords(), phi).identity);
}
