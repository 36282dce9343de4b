#include "tubes/grassmannian.hpp"
#include "tubes/interchange.hpp"
#include "tubes/lie_algebra.hpp"
#include "tubes/linalg.hpp"
#include "tubes/parse.hpp"
#include "tubes/series.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace tubes;

namespace {

QPoly q(const std::string& e, const std::vector<std::string>& vars) { return parse_real_polynomial(e, vars); }

const std::vector<std::string> kXYZ{"x", "y", "z"};

}  // namespace

TEST(Scalar, ParseRationalCanonicalizes) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("14/2"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Scalar, GaussianArithmetic) {
  Gaussian a(1, 2), b(3, -1);
  EXPECT_EQ(a * b, Gaussian(5, 5));
  EXPECT_EQ((a / b) * b, a);
  EXPECT_EQ(a.conj(), Gaussian(1, -2));
  EXPECT_EQ(Gaussian::i() * Gaussian::i(), Gaussian(-1));
}

TEST(Polynomial, ExpansionAndDerivative) {
  QPoly p = q("(x + y)^3", kXYZ);
  EXPECT_TRUE((p - q("x^3 + 3*x^2*y + 3*x*y^2 + y^3", kXYZ)).is_zero());
  EXPECT_TRUE((p.derivative("x") - q("3*(x + y)^2", kXYZ)).is_zero());
  EXPECT_TRUE(p.derivative("z").is_zero());
  std::vector<Rational> pt{1, 2, 5};
  EXPECT_EQ(p.evaluate(std::span<const Rational>(pt)), Rational(27));
}

TEST(Polynomial, TruncateAndHomogeneousParts) {
  QPoly p = q("1 + x + x*y + x^2*y^2", kXYZ);
  EXPECT_TRUE((p.truncate(2) - q("1 + x + x*y", kXYZ)).is_zero());
  EXPECT_TRUE((p.homogeneous_part(4) - q("x^2*y^2", kXYZ)).is_zero());
  EXPECT_EQ(p.total_degree(), 4);
}

TEST(Polynomial, DivisionIdentity) {
  QPoly a = q("x^3*y - 2*x*y^2 + z + 4", kXYZ), d = q("x*y - 1", kXYZ);
  auto [quo, rem] = divide(a, d);
  EXPECT_TRUE((quo * d + rem - a).is_zero());
  QPoly f = q("(x - y)*(x + z^2)", kXYZ);
  EXPECT_TRUE((f.divide_exact(q("x - y", kXYZ)) - q("x + z^2", kXYZ)).is_zero());
}

TEST(Polynomial, ComplexConjugation) {
  std::vector<std::string> vars{"z1", "z2", "zb1", "zb2"};
  CPoly p = parse_polynomial("I*z1*zb2 + 2*z2", vars);
  CPoly c = conjugate(p, holomorphic_pairing({"z1", "z2"}));
  EXPECT_TRUE((c - parse_polynomial("-I*zb1*z2 + 2*zb2", vars)).is_zero());
  EXPECT_TRUE((conjugate(c, holomorphic_pairing({"z1", "z2"})) - p).is_zero());
}

TEST(RationalFunction, ArithmeticNormalizes) {
  QRational a(q("x", kXYZ), q("x + 1", kXYZ));
  QRational b(q("1", kXYZ), q("x + 1", kXYZ));
  EXPECT_EQ(a + b, QRational(q("1", kXYZ)));
  EXPECT_EQ(a * b / b, a);
  QRational half(q("x + y", kXYZ), q("2", kXYZ));
  ASSERT_TRUE(half.is_polynomial());
  QPoly twice = half.as_polynomial();
  twice *= Rational(2);
  EXPECT_TRUE((twice - q("x + y", kXYZ)).is_zero());
}

TEST(Series, GeometricSeries) {
  QRational f(q("1", kXYZ), q("1 - x", kXYZ));
  QPoly s = series_expand(f, 5);
  EXPECT_TRUE((s - q("1 + x + x^2 + x^3 + x^4 + x^5", kXYZ)).is_zero());
}

TEST(Series, MultiplyBackAgreesUpToCutoff) {
  QPoly num = q("x*y - 3*z + 2", kXYZ), den = q("4 + x - y*z + x^2", kXYZ);
  for (int cutoff : {2, 5, 7}) {
    QPoly s = series_expand(QRational(num, den), cutoff);
    EXPECT_TRUE(((s * den).truncate(cutoff) - num.truncate(cutoff)).is_zero()) << cutoff;
  }
  EXPECT_THROW(series_expand(QRational(num, q("x", kXYZ)), 3), std::domain_error);
}

TEST(Linalg, VandermondeDeterminant) {
  VarList v = make_vars(kXYZ);
  auto x = QPoly::variable(v, 0), y = QPoly::variable(v, 1), z = QPoly::variable(v, 2);
  QPoly one(v, Rational(1));
  Matrix<QPoly> m(std::vector<std::vector<QPoly>>{{one, x, x * x}, {one, y, y * y}, {one, z, z * z}});
  EXPECT_TRUE((det_exact(m) - (y - x) * (z - x) * (z - y)).is_zero());
}

TEST(Linalg, RankAndKernel) {
  QMatrix m(std::vector<std::vector<Rational>>{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(rank(m), 2u);
  auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  for (std::size_t i = 0; i < 3; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < 3; ++j) acc += m(i, j) * k[0][j];
    EXPECT_EQ(acc, 0);
  }
}

TEST(Interchange, PolynomialRoundTrip) {
  std::vector<std::string> vars{"w1", "wb1", "s"};
  CPoly p = parse_polynomial("(1/3 + 2*I)*w1^2*wb1 - 5/7*s + I", vars);
  CPoly back = poly_from_json(poly_to_json(p));
  EXPECT_TRUE((back.with_vars(p.vars()) - p).is_zero());
  CRational f = parse_rational_function("w1/(1 + w1*wb1)", vars);
  EXPECT_EQ(rational_from_json(rational_to_json(f)), f);
}

namespace {

// sl2 with basis e, f, h.
StructureConstants sl2(const std::vector<std::size_t>& order = {0, 1, 2}) {
  // position of each abstract element in the basis
  std::vector<std::size_t> pos(3);
  for (std::size_t i = 0; i < 3; ++i) pos[order[i]] = i;
  const std::size_t e = pos[0], f = pos[1], h = pos[2];
  StructureConstants sc(3);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, Rational c) {
    sc(i, j, k) = c;
    sc(j, i, k) = -c;
  };
  set(e, f, h, 1);
  set(h, e, e, 2);
  set(h, f, f, -2);
  return sc;
}

StructureConstants heisenberg() {
  StructureConstants sc(3);
  sc(0, 1, 2) = 1;
  sc(1, 0, 2) = -1;
  return sc;
}

QVector unit(std::size_t n, std::size_t i) {
  QVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

}  // namespace

TEST(LieAlgebra, Sl2IsAntisymmetricAndJacobi) {
  auto sc = sl2();
  EXPECT_TRUE(sc.is_antisymmetric());
  EXPECT_TRUE(sc.satisfies_jacobi());
  StructureConstants broken = sc;
  broken(0, 1, 0) = 1;
  broken(1, 0, 0) = -1;
  EXPECT_FALSE(broken.satisfies_jacobi());
}

TEST(LieAlgebra, Nilpotency) {
  auto h = is_nilpotent(heisenberg());
  EXPECT_TRUE(h.nilpotent);
  EXPECT_EQ(h.series_dims, (std::vector<std::size_t>{3, 1, 0}));
  EXPECT_FALSE(is_nilpotent(sl2()).nilpotent);
}

TEST(LieAlgebra, SubspaceAndSubalgebra) {
  auto sc = sl2();
  Subspace borel(3, {unit(3, 0), unit(3, 2)});
  EXPECT_EQ(borel.dim(), 2u);
  EXPECT_FALSE(borel.add(QVector{2, 0, -3}));
  EXPECT_TRUE(is_subalgebra(sc, borel));
  EXPECT_FALSE(is_subalgebra(sc, Subspace(3, {unit(3, 0), unit(3, 1)})));
  EXPECT_EQ(generated_subalgebra(sc, {unit(3, 0), unit(3, 1)}).dim(), 3u);
}

TEST(LieAlgebra, VectorFieldPresentation) {
  auto e = QField::parse({"x", "y"}, {"0", "x"});
  auto f = QField::parse({"x", "y"}, {"y", "0"});
  auto h = QField::parse({"x", "y"}, {"-x", "y"});
  auto l = LieAlgebraPresentation<Rational>::from_basis({e, f, h});
  EXPECT_EQ(l.dim(), 3u);
  EXPECT_TRUE(l.constants.satisfies_jacobi());
  EXPECT_FALSE(is_nilpotent(l.constants).nilpotent);
}

namespace {

bool scan_finds(const ScanResult& res, const Subspace& s) {
  return std::any_of(res.families.begin(), res.families.end(), [&](const SubalgebraFamily& f) { return f.contains(s); });
}

}  // namespace

TEST(SubalgebraScan, HeisenbergPlanesAreIdeals) {
  auto res = subalgebra_scan(heisenberg(), 2, 1);
  EXPECT_TRUE(res.unresolved.empty());
  for (const auto& f : res.families) EXPECT_TRUE(f.verified());
  // every plane through the center is a subalgebra
  EXPECT_TRUE(scan_finds(res, Subspace(3, {unit(3, 0), unit(3, 2)})));
  EXPECT_TRUE(scan_finds(res, Subspace(3, {QVector{1, 1, 0}, unit(3, 2)})));
  EXPECT_FALSE(scan_finds(res, Subspace(3, {unit(3, 0), unit(3, 1)})));
}

TEST(SubalgebraScan, Sl2BorelsUnderBasisPermutation) {
  std::vector<std::size_t> order{0, 1, 2};
  do {
    auto sc = sl2(order);
    std::vector<std::size_t> pos(3);
    for (std::size_t i = 0; i < 3; ++i) pos[order[i]] = i;
    auto res = subalgebra_scan(sc, 2, 7);
    for (const auto& f : res.families) {
      EXPECT_TRUE(f.verified());
      EXPECT_TRUE(!f.params.empty() || is_subalgebra(sc, f.at({})));
    }
    bool upper = scan_finds(res, Subspace(3, {unit(3, pos[0]), unit(3, pos[2])}));
    bool lower = scan_finds(res, Subspace(3, {unit(3, pos[1]), unit(3, pos[2])}));
    EXPECT_TRUE(upper || !res.unresolved.empty());
    EXPECT_TRUE(lower || !res.unresolved.empty());
    EXPECT_FALSE(scan_finds(res, Subspace(3, {unit(3, pos[0]), unit(3, pos[1])})));
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(SubalgebraScan, RejectsTrivialDimensions) {
  EXPECT_THROW(subalgebra_scan(sl2(), 3, 1), std::invalid_argument);
  EXPECT_THROW(subalgebra_scan(sl2(), 0, 1), std::invalid_argument);
}
