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

Algebra from_text(const char* text, std::size_t n) {
  return algebra_from_cubic(Polynomial::parse(text, n), Matrix::identity(n));
}

}  // namespace

TEST(Cubic, ProductOfCoordinatesGivesTripledReals) {
  const Algebra a = from_text("x1*x2*x3", 3);
  const Algebra t = triple(hurwitz(1));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const Vec expected = i == j ? zero_vec(3) : unit_vec(3, 3 - i - j);
      EXPECT_EQ(a.multiply(unit_vec(3, i), unit_vec(3, j)), expected);
      EXPECT_EQ(t.multiply(unit_vec(3, i), unit_vec(3, j)), expected);
    }
}

TEST(Cubic, PureCube) {
  const Algebra a = from_text("x1^3", 1);
  EXPECT_EQ(a.coefficient(0, 0, 0), Scalar(6));
}

TEST(Cubic, CartanZeroTable) {
  const Algebra a = from_text("x2^3 - 3*x1^2*x2", 2);
  EXPECT_EQ(a.multiply(unit_vec(2, 0), unit_vec(2, 0)), v({0, -6}));
  EXPECT_EQ(a.multiply(unit_vec(2, 0), unit_vec(2, 1)), v({-6, 0}));
  EXPECT_EQ(a.multiply(unit_vec(2, 1), unit_vec(2, 1)), v({0, 6}));
}

TEST(Cubic, NonIdentityMetricUsesInverse) {
  Matrix g = Matrix::identity(2);
  g(1, 1) = Scalar(2);
  const Algebra a = algebra_from_cubic(Polynomial::parse("x2^3", 2), g);
  EXPECT_EQ(a.coefficient(1, 1, 1), Scalar(3));  // h(e2 e2, e2) = 6
  EXPECT_EQ(cubic_from_algebra(a), Polynomial::parse("x2^3", 2));
}

TEST(Cubic, FormFromAlgebra) {
  EXPECT_EQ(cubic_from_algebra(triple(hurwitz(1))), Polynomial::parse("x1*x2*x3"));
  EXPECT_EQ(cubic_from_algebra(cartan_cubic(0).alg), Polynomial::parse("x2^3 - 3*x1^2*x2"));
  const Algebra zero("zero", 3, {}, Matrix::identity(3), std::nullopt, true);
  EXPECT_TRUE(cubic_from_algebra(zero).is_zero());
}

TEST(Cubic, FormMatchesOracleExpansion) {
  for (const char* name : {"C", "H", "cross3", "color", "paraC"}) {
    const Algebra t = triple(construct(name));
    EXPECT_TRUE(oracle::from_library(cubic_from_algebra(t)).terms == oracle::cubic_of(oracle::table_of(t)).terms) << name;
  }
}

TEST(Cubic, RoundTripThroughAlgebra) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> d(-4, 4);
  for (int t = 0; t < 10; ++t) {
    Polynomial u(3);
    for (unsigned a = 0; a <= 3; ++a)
      for (unsigned b = 0; a + b <= 3; ++b) u.add_term({a, b, 3 - a - b}, Scalar::rational(d(rng), 1 + t % 3));
    EXPECT_EQ(cubic_from_algebra(algebra_from_cubic(u, Matrix::identity(3))), u);
  }
}

TEST(Cubic, RejectsNonCubic) {
  EXPECT_THROW(algebra_from_cubic(Polynomial::parse("x1^2", 1), Matrix::identity(1)), DomainError);
  EXPECT_THROW(cubic_from_algebra(hurwitz(4)), DomainError);
}

TEST(Cubic, GradientAndHessian) {
  const auto gh = gradient_hessian(triple(hurwitz(1)), v({1, 1, 1}));
  EXPECT_EQ(gh.grad, v({1, 1, 1}));
  const auto z = gradient_hessian(triple(hurwitz(1)), zero_vec(3));
  EXPECT_TRUE(is_zero(z.grad));
  EXPECT_TRUE(z.hess.is_zero());
  const Algebra c0 = cartan_cubic(0).alg;
  const auto e2 = gradient_hessian(c0, unit_vec(2, 1));
  EXPECT_EQ(e2.grad, v({0, 3}));
  EXPECT_EQ(e2.hess, Matrix::diagonal(v({-6, 6})));
}

TEST(Cubic, HsiangOperatorExamples) {
  EXPECT_EQ(hsiang_operator(triple(hurwitz(1)), v({1, 1, 1})), Scalar(-6));
  EXPECT_TRUE(hsiang_operator(triple(hurwitz(1)), zero_vec(3)).is_zero());
  EXPECT_TRUE(hsiang_operator(from_text("x1^3", 1), v({1})).is_zero());
}

TEST(Cubic, HsiangOperatorMatchesDirectDifferentiation) {
  std::mt19937_64 rng(29);
  const std::pair<const char*, std::size_t> cubics[] = {
      {"x1*x2*x3", 3}, {"x2^3 - 3*x1^2*x2", 2}, {"x1^2*x2 + x1*x2^2 + x1*x2*x3", 3}, {"x1^3 + 2*x1*x2^2 - x3^3", 3}};
  for (const auto& [text, n] : cubics) {
    const Polynomial u = Polynomial::parse(text, n);
    const Algebra a = algebra_from_cubic(u, Matrix::identity(n));
    const oracle::Poly m = oracle::minimal_cone_operator(oracle::from_library(u));
    for (int s = 0; s < 8; ++s) {
      const auto x = oracle::random_point(n, rng);
      Vec xs;
      for (const auto& c : x) xs.emplace_back(c);
      EXPECT_EQ(oracle::rational(hsiang_operator(a, xs)), m.eval(x)) << text;
    }
  }
}

TEST(CartanMunzner, DegreeZeroIdentityByOracle) {
  // 36 x1^2 x2^2 + 9 (x2^2 - x1^2)^2 = 9 (x1^2 + x2^2)^2
  const oracle::Poly u = oracle::from_library(cartan_cubic(0).u);
  oracle::Poly g2(2);
  for (std::size_t i = 0; i < 2; ++i) g2 = g2 + u.d(i) * u.d(i);
  const oracle::Poly r2 = oracle::Poly::var(2, 0) * oracle::Poly::var(2, 0) + oracle::Poly::var(2, 1) * oracle::Poly::var(2, 1);
  EXPECT_TRUE((g2 - r2 * r2 * oracle::Q(9)).zero());
  EXPECT_TRUE(cartan_munzner_check(cartan_cubic(0).u, Scalar(9)).pass);
}

TEST(CartanMunzner, DegreeOnePasses) { EXPECT_TRUE(cartan_munzner_check(cartan_cubic(1).u, Scalar(9)).pass); }

TEST(CartanMunzner, ProductOfCoordinatesFails) {
  const Report r = cartan_munzner_check(Polynomial::parse("x1*x2*x3"), Scalar(9));
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.witness);
  EXPECT_NE(r.witness->find("residual"), std::string::npos);
}
