#include <gtest/gtest.h>

#include <random>

#include "coneforge/coneforge.hpp"
#include "oracles.hpp"

using namespace coneforge;

namespace {

Vec v(std::initializer_list<long> xs) {
  Vec out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Algebra componentwise_r2() {
  return Algebra("R2", 2, {{0, 0, 0, Scalar(1)}, {1, 1, 1, Scalar(1)}}, Matrix::identity(2), std::nullopt, true);
}

Algebra from_text(const char* text, std::size_t n) {
  return algebra_from_cubic(Polynomial::parse(text, n), Matrix::identity(n));
}

/// G(x) = h(x^2,x^3) - h(x^2,x^2) trace L(x) and P(x) = h(x,x) h(x,x^2), densely.
std::pair<oracle::Q, oracle::Q> quintic(const oracle::Table& t, const oracle::QVec& x) {
  const auto x2 = oracle::mul(t, x, x);
  const auto x3 = oracle::mul(t, x2, x);
  oracle::Q tr = 0;
  const auto l = oracle::left_matrix(t, x);
  for (std::size_t i = 0; i < t.n; ++i) tr += l[i][i];
  return {oracle::h(t, x2, x3) - oracle::h(t, x2, x2) * tr, oracle::h(t, x, x) * oracle::h(t, x, x2)};
}

oracle::Q bform(const Matrix& b, const oracle::QVec& x) {
  oracle::Q s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * oracle::rational(b(i, j)) * x[j];
  return s;
}

/// dim - rank of L(x^sigma) L(x) at an integer point.
long oracle_kernel_dim(const oracle::Table& t, const oracle::QVec& x) {
  const auto a = oracle::left_matrix(t, oracle::involute(t, x));
  const auto b = oracle::left_matrix(t, x);
  std::vector<oracle::QVec> ab(t.n, oracle::QVec(t.n, 0));
  for (std::size_t i = 0; i < t.n; ++i)
    for (std::size_t k = 0; k < t.n; ++k)
      for (std::size_t j = 0; j < t.n; ++j) ab[i][j] += a[i][k] * b[k][j];
  return static_cast<long>(t.n - oracle::rank(ab));
}

}  // namespace

// ---- quasicomposition

TEST(Quasicomposition, DefectsAgreeWithTraceOracle) {
  const std::pair<const char*, long> cases[] = {{"R", 0}, {"C", 0}, {"H", 0},      {"O", 0},
                                                {"paraC", 0}, {"cross3", 1}, {"cross7", 1}, {"color", 2}};
  std::mt19937_64 rng(53);
  for (const auto& [name, delta] : cases) {
    const Algebra a = construct(name);
    const auto rep = quasicomposition_check(a, 7);
    EXPECT_TRUE(rep.is_quasicomposition) << name;
    EXPECT_EQ(rep.delta, delta) << name;
    const auto t = oracle::table_of(a);
    for (int s = 0; s < 5; ++s) {
      const auto x = oracle::random_point(t.n, rng);
      if (oracle::h(t, x, x) == 0) continue;
      const auto lx = oracle::left_matrix(t, x);
      const auto ls = oracle::left_matrix(t, oracle::involute(t, x));
      EXPECT_EQ(oracle::trace_product(lx, ls), oracle::Q(static_cast<long>(t.n) - delta) * oracle::h(t, x, x)) << name;
      EXPECT_EQ(oracle_kernel_dim(t, x), delta) << name;
    }
  }
}

TEST(Quasicomposition, ComponentwiseR2Fails) {
  const auto rep = quasicomposition_check(componentwise_r2(), 0);
  EXPECT_FALSE(rep.is_quasicomposition);
  EXPECT_TRUE(rep.witness.has_value());
  // x = (3,-1), y = e1: x(x(xy)) = 27 e1 but h(x,x) xy = 30 e1
  const auto t = oracle::table_of(componentwise_r2());
  const oracle::QVec x{3, -1};
  const oracle::QVec y{1, 0};
  const auto lhs = oracle::mul(t, x, oracle::mul(t, x, oracle::mul(t, x, y)));
  const auto xy = oracle::mul(t, x, y);
  EXPECT_NE(lhs, (oracle::QVec{oracle::h(t, x, x) * xy[0], oracle::h(t, x, x) * xy[1]}));
}

TEST(Quasicomposition, NotMetrizedIsReported) {
  const auto rep = quasicomposition_check(hurwitz(4, true), 0);
  EXPECT_FALSE(rep.is_quasicomposition);
  EXPECT_FALSE(rep.delta.has_value());
}

// ---- radial and nonradial Hsiang

TEST(Hsiang, TripledRealsHaveFourThirds) {
  const auto rep = radial_hsiang_check(triple(hurwitz(1)));
  ASSERT_TRUE(rep.theta);
  EXPECT_EQ(*rep.theta, Scalar::rational(4, 3));
  EXPECT_FALSE(rep.degenerate);
  EXPECT_TRUE(rep.exhaustive);
}

TEST(Hsiang, ThetaAgreesWithOracleAtRandomPoints) {
  std::mt19937_64 rng(59);
  for (const char* name : {"triple(C)", "triple(cross3)", "triple(color)", "cartan(0)", "clifford(2,3)"}) {
    const Algebra a = construct(name);
    const auto rep = radial_hsiang_check(a);
    ASSERT_TRUE(rep.theta) << name;
    if (a.field() != Field::rational) continue;
    const auto t = oracle::table_of(a);
    for (int s = 0; s < 5; ++s) {
      const auto [g, p] = quintic(t, oracle::random_point(t.n, rng));
      EXPECT_EQ(g, oracle::rational(*rep.theta) * p) << name;
    }
  }
}

TEST(Hsiang, CartanZero) {
  const auto rep = radial_hsiang_check(cartan_cubic(0).alg);
  ASSERT_TRUE(rep.theta);
  EXPECT_EQ(*rep.theta, Scalar(36));
  EXPECT_FALSE(rep.degenerate);
}

TEST(Hsiang, PureCubeIsDegenerate) {
  const auto rep = radial_hsiang_check(from_text("x1^3", 1));
  ASSERT_TRUE(rep.theta);
  EXPECT_EQ(*rep.theta, Scalar(0));
  EXPECT_TRUE(rep.degenerate);
}

TEST(Hsiang, TripledComponentwiseR2HasNoRadialSolution) {
  const Algebra t = triple(componentwise_r2());
  const auto rep = radial_hsiang_check(t);
  EXPECT_FALSE(rep.theta);
  ASSERT_TRUE(rep.witness);
  EXPECT_EQ(rep.witness->size(), 5u);
  const auto nr = nonradial_hsiang_check(t);
  EXPECT_FALSE(nr.nonradial_b);
  EXPECT_TRUE(nr.witness);
}

TEST(Hsiang, RandomizedPathAgrees) {
  SweepOptions opt;
  opt.exhaustive = false;
  opt.seed = 99;
  const auto good = radial_hsiang_check(triple(cross_product(3)), opt);
  ASSERT_TRUE(good.theta);
  EXPECT_EQ(*good.theta, Scalar::rational(4, 3));
  EXPECT_FALSE(good.exhaustive);
  const auto bad = radial_hsiang_check(triple(componentwise_r2()), opt);
  EXPECT_FALSE(bad.theta);
  EXPECT_TRUE(bad.witness_point);
}

TEST(Hsiang, RejectsUnsuitableInput) {
  EXPECT_THROW(radial_hsiang_check(hurwitz(4)), DomainError);
  Matrix g = Matrix::identity(2);
  g(1, 1) = Scalar(-1);
  const Algebra indefinite("ind", 2, {}, g, std::nullopt, true);
  EXPECT_THROW(radial_hsiang_check(indefinite), DomainError);
}

TEST(Nonradial, ProductOfThreeLinearForms) {
  const Algebra a = from_text("x1^2*x2 + x1*x2^2 + x1*x2*x3", 3);
  EXPECT_FALSE(radial_hsiang_check(a).theta);
  const auto rep = nonradial_hsiang_check(a);
  ASSERT_TRUE(rep.nonradial_b);
  EXPECT_FALSE(rep.theta);
  std::mt19937_64 rng(61);
  const auto t = oracle::table_of(a);
  for (int s = 0; s < 10; ++s) {
    const auto x = oracle::random_point(3, rng);
    const auto [g, p] = quintic(t, x);
    EXPECT_EQ(g, bform(*rep.nonradial_b, x) * oracle::h(t, x, oracle::mul(t, x, x)));
  }
}

TEST(Nonradial, TripledCross7EmbedsRadial) {
  const auto rep = nonradial_hsiang_check(triple(cross_product(7)));
  ASSERT_TRUE(rep.nonradial_b);
  EXPECT_EQ(*rep.nonradial_b, Scalar::rational(4, 3) * Matrix::identity(21));
  EXPECT_EQ(rep.theta, Scalar::rational(4, 3));
}

TEST(Nonradial, ParaComplexHasMetricB) {
  const auto rep = nonradial_hsiang_check(para_complex());
  ASSERT_TRUE(rep.nonradial_b);
  EXPECT_EQ(*rep.nonradial_b, Matrix::identity(2));
}

TEST(Nonradial, RandomizedPathFindsSameB) {
  SweepOptions opt;
  opt.exhaustive = false;
  opt.seed = 5;
  const Algebra a = from_text("x1^2*x2 + x1*x2^2 + x1*x2*x3", 3);
  const auto r = nonradial_hsiang_check(a, opt);
  ASSERT_TRUE(r.nonradial_b);
  EXPECT_EQ(*r.nonradial_b, *nonradial_hsiang_check(a).nonradial_b);
}

// ---- degeneracy and normalization

TEST(Degeneracy, PureCube) {
  const auto c = degeneracy_conditions(from_text("x1^3", 1));
  EXPECT_TRUE(c.not_exact);
  EXPECT_TRUE(c.rank_one_products);
  EXPECT_TRUE(c.cube_of_linear);
}

TEST(Degeneracy, TripledComplexNumbers) {
  const auto c = degeneracy_conditions(triple(hurwitz(2)));
  EXPECT_FALSE(c.not_exact);
  EXPECT_FALSE(c.rank_one_products);
  EXPECT_FALSE(c.cube_of_linear);
}

TEST(Degeneracy, RotatedCubeRecoversDirection) {
  const Algebra a = from_text("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3", 2);
  const auto c = degeneracy_conditions(a);
  EXPECT_TRUE(c.not_exact && c.rank_one_products && c.cube_of_linear);
  ASSERT_TRUE(c.omega && c.r);
  const Vec& w = *c.omega;
  EXPECT_EQ(w[0], w[1]);
  // u = r (w.x)^3 at x = (1,0)
  EXPECT_EQ(*c.r * w[0] * w[0] * w[0], Scalar(1));
  const Report r = degeneracy_check(a);
  EXPECT_TRUE(r.pass);
  EXPECT_NE(r.summary.find("degenerate"), std::string::npos);
}

TEST(Degeneracy, NeedsRadialAlgebra) {
  EXPECT_THROW(degeneracy_check(from_text("x1^2*x2 + x1*x2^2 + x1*x2*x3", 3)), DomainError);
}

TEST(Normalize, CartanZeroScale) {
  const Algebra c0 = cartan_cubic(0).alg;
  const Algebra n0 = normalize_theta(c0, Scalar(36));
  // lambda = sqrt 3 / 9, so e2 e2 = 6 lambda e2
  EXPECT_EQ(n0.coefficient(1, 1, 1), Scalar(6) * Scalar(mpq_class(0), mpq_class(1, 9)));
  const auto rep = radial_hsiang_check(n0);
  ASSERT_TRUE(rep.theta);
  EXPECT_EQ(*rep.theta, Scalar::rational(4, 3));
  const auto idem = find_idempotent(n0, 10, 0);
  ASSERT_FALSE(idem.empty());
  for (const auto& c : idem) EXPECT_NEAR(c.c.squaredNorm(), 0.75, 1e-8);
}

TEST(Normalize, FourThirdsIsIdentity) {
  const Algebra t = triple(hurwitz(2));
  const Algebra n = normalize_theta(t);
  EXPECT_EQ(n.entries().size(), t.entries().size());
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = 0; j < t.dim(); ++j)
      for (std::size_t k = 0; k < t.dim(); ++k) EXPECT_EQ(n.coefficient(i, j, k), t.coefficient(i, j, k));
}

TEST(Normalize, UnrepresentableScale) {
  try {
    normalize_theta(triple(hurwitz(1)), Scalar(2));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("unrepresentable scale"), std::string::npos);
  }
}

// ---- pseudocomposition

TEST(Eikonal, ParaComplex) {
  const auto r = pseudocomposition_check(para_complex());
  EXPECT_TRUE(r.eikonal);
  EXPECT_EQ(r.theta_prime, Scalar(1));
}

TEST(Eikonal, CartanZero) {
  const auto r = pseudocomposition_check(cartan_cubic(0).alg);
  EXPECT_TRUE(r.eikonal);
  EXPECT_EQ(r.theta_prime, Scalar(36));
  const auto t = oracle::table_of(cartan_cubic(0).alg);
  std::mt19937_64 rng(67);
  for (int s = 0; s < 10; ++s) {
    const auto x = oracle::random_point(2, rng);
    const auto x3 = oracle::mul(t, oracle::mul(t, x, x), x);
    const oracle::Q f = 36 * oracle::h(t, x, x);
    EXPECT_EQ(x3, (oracle::QVec{f * x[0], f * x[1]}));
  }
}

TEST(Eikonal, TripledRealsFail) {
  const auto r = pseudocomposition_check(triple(hurwitz(1)));
  EXPECT_FALSE(r.eikonal);
  EXPECT_FALSE(r.b);
  EXPECT_TRUE(r.witness);
  // e1 is square-zero, so e1^3 = 0 while h(e1,e1) e1 != 0
  const Algebra t = triple(hurwitz(1));
  EXPECT_TRUE(is_zero(t.multiply(unit_vec(3, 0), unit_vec(3, 0))));
}

// ---- polar and Killing

TEST(Polar, TripledOctonionsAreMutant) {
  const Algebra t = triple(hurwitz(8));
  std::vector<std::size_t> block(8);
  for (std::size_t i = 0; i < 8; ++i) block[i] = i;
  const auto rep = verify_polar(t, Subspace::coordinate(block, 24));
  EXPECT_TRUE(rep.pass) << rep.failed_axiom;
  EXPECT_TRUE(rep.mutant);
  EXPECT_EQ(rep.dim0, 8u);
  EXPECT_EQ(rep.dim1, 16u);
}

TEST(Polar, RegularCliffordAlgebra) {
  const Algebra a = polar_from_clifford(clifford_system(1, 2));
  const std::vector<std::size_t> block{2, 3};
  const auto rep = verify_polar(a, Subspace::coordinate(block, 4));
  EXPECT_TRUE(rep.pass) << rep.failed_axiom;
  EXPECT_FALSE(rep.mutant);
}

TEST(Polar, WrongZeroBlockFailsFirstAxiom) {
  const Algebra t = triple(hurwitz(1));
  const std::vector<Vec> gens{v({1, 1, 1})};
  const auto rep = verify_polar(t, Subspace::span(gens, 3));
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.failed_axiom.substr(0, 3), "(i)");
  ASSERT_TRUE(rep.witness);
  EXPECT_NE(rep.witness->find("[2, 2, 2]"), std::string::npos) << *rep.witness;
}

TEST(Polar, RejectsImproperBlocks) {
  const Algebra t = triple(hurwitz(1));
  EXPECT_THROW(verify_polar(t, Subspace::span(std::vector<Vec>{}, 3)), DomainError);
  EXPECT_THROW(verify_polar(hurwitz(4), Subspace::coordinate(std::vector<std::size_t>{0}, 4)), DomainError);
}

TEST(Killing, TripledCross3IsExceptional) {
  const Report r = killing_metrized_check(triple(cross_product(3)), 5);
  EXPECT_TRUE(r.pass);
  bool exceptional = false;
  for (const auto& n : r.notes) exceptional = exceptional || n.find("exceptional") != std::string::npos;
  EXPECT_TRUE(exceptional);
}

TEST(Killing, RegularPolarIsNotKillingMetrized) {
  EXPECT_FALSE(killing_metrized_check(polar_from_clifford(clifford_system(1, 2))).pass);
  EXPECT_FALSE(killing_metrized_check(polar_from_clifford(clifford_system(2, 3))).pass);
}

TEST(Killing, RatioIsTwiceDimMinusDefect) {
  const std::pair<const char*, long> cases[] = {{"H", 0}, {"cross3", 1}, {"color", 2}};
  for (const auto& [name, delta] : cases) {
    const Algebra a = construct(name);
    EXPECT_EQ(killing_ratio(triple(a)), Scalar(2 * (static_cast<long>(a.dim()) - delta))) << name;
  }
}

// ---- full report

TEST(FullReport, TripledColor) {
  ReportOptions opt;
  opt.peirce = true;
  const Report r = full_report(triple(vector_color()), opt);
  EXPECT_TRUE(r.pass) << r.to_text();
  EXPECT_EQ(r.theta, Scalar::rational(4, 3));
  EXPECT_EQ(r.n1, 1);
  EXPECT_EQ(r.n2, 8);
  EXPECT_EQ(r.d, 2);
  bool cross = false;
  for (const auto& c : r.children)
    if (c.check == "hurwitz-defect") cross = c.pass;
  EXPECT_TRUE(cross);
}

TEST(FullReport, Quaternions) {
  const Report r = full_report(hurwitz(4));
  EXPECT_EQ(r.delta, 0);
  const auto has = [&](const std::string& s) { return std::find(r.notes.begin(), r.notes.end(), s) != r.notes.end(); };
  EXPECT_TRUE(has("unital"));
  EXPECT_TRUE(has("not exact"));
}

TEST(FullReport, PureCube) {
  const Report r = full_report(from_text("x1^3", 1));
  EXPECT_EQ(r.theta, Scalar(0));
  bool degenerate = false;
  for (const auto& c : r.children)
    if (c.check == "hsiang")
      for (const auto& n : c.notes) degenerate = degenerate || n == "degenerate";
  EXPECT_TRUE(degenerate);
}
