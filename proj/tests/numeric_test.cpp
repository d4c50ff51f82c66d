#include <gtest/gtest.h>

#include <cmath>

#include "coneforge/coneforge.hpp"
#include "oracles.hpp"

using namespace coneforge;

namespace {

/// |c c - c| computed without the library's orthonormalization.
double oracle_residual(const Algebra& a, const Eigen::VectorXd& c) {
  const oracle::Numeric o(a);
  return (o.mul(c, c) - c).norm();
}

PeirceData first_peirce(const Algebra& a, std::uint64_t seed = 0) {
  const FloatAlgebra fa(a);
  const auto idem = find_idempotent(fa, 20, seed);
  if (idem.empty()) throw std::runtime_error("no idempotent");
  return peirce(fa, idem.front().c);
}

}  // namespace

TEST(Idempotent, TripledReals) {
  const Algebra t = triple(hurwitz(1));
  const auto idem = find_idempotent(t, 20, 1);
  ASSERT_FALSE(idem.empty());
  for (const auto& c : idem) {
    EXPECT_LE(c.residual, 1e-10);
    EXPECT_LE(oracle_residual(t, c.c), 1e-10);
    for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(c.c(i)), 0.5, 1e-10);
  }
}

TEST(Idempotent, CartanZero) {
  const Algebra a = cartan_cubic(0).alg;
  const auto idem = find_idempotent(a, 20, 2);
  ASSERT_FALSE(idem.empty());
  bool found_axis = false;
  for (const auto& c : idem) {
    EXPECT_LE(oracle_residual(a, c.c), 1e-10);
    EXPECT_NEAR(c.c.squaredNorm(), 1.0 / 36, 1e-12);
    found_axis = found_axis || (std::abs(c.c(0)) < 1e-10 && std::abs(c.c(1) - 1.0 / 6) < 1e-10);
  }
  // the three idempotents are (0, 1/6) and its rotations by 120 degrees
  EXPECT_TRUE(found_axis || idem.size() < 3);
  EXPECT_LE(idem.size(), 3u);
}

TEST(Idempotent, ZeroAlgebraHasNone) {
  const Algebra zero("zero", 3, {}, Matrix::identity(3), std::nullopt, true);
  EXPECT_TRUE(find_idempotent(zero, 10, 0).empty());
}

TEST(Idempotent, NonIdentityMetric) {
  Matrix g = Matrix::identity(3);
  g(0, 0) = Scalar(2);
  g(0, 1) = g(1, 0) = Scalar(1);
  const Algebra a = algebra_from_cubic(Polynomial::parse("x1*x2*x3 + x1^3"), g);
  const auto idem = find_idempotent(a, 10, 3);
  ASSERT_FALSE(idem.empty());
  for (const auto& c : idem) EXPECT_LE(oracle_residual(a, c.c), 1e-9);
}

TEST(Idempotent, SeedIsReproducible) {
  const Algebra t = triple(cross_product(3));
  const auto a = find_idempotent(t, 8, 42);
  const auto b = find_idempotent(t, 8, 42);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].c, b[i].c);
}

TEST(Peirce, TripledOctonions) {
  const auto pd = first_peirce(triple(hurwitz(8)));
  EXPECT_TRUE(pd.spectrum_ok);
  EXPECT_TRUE(pd.dimensions_ok);
  EXPECT_EQ(pd.multiplicity(1.0), 1u);
  EXPECT_EQ(pd.multiplicity(-1.0), 7u);
  EXPECT_EQ(pd.multiplicity(-0.5), 2u);
  EXPECT_EQ(pd.multiplicity(0.5), 14u);
  EXPECT_EQ(pd.d, 0);
}

TEST(Peirce, TripledCross7) {
  const auto pd = first_peirce(triple(cross_product(7)));
  EXPECT_EQ(pd.n1, 4);
  EXPECT_EQ(pd.n2, 5);
  EXPECT_EQ(pd.d, 1);
  EXPECT_NEAR(pd.idempotent_norm, 0.75, 1e-8);
}

TEST(Peirce, CartanZero) {
  const auto pd = first_peirce(cartan_cubic(0).alg);
  ASSERT_EQ(pd.clusters.size(), 2u);
  EXPECT_NEAR(pd.clusters[0].value, -1.0, 1e-9);
  EXPECT_NEAR(pd.clusters[1].value, 1.0, 1e-9);
  EXPECT_EQ(pd.n1, 1);
  EXPECT_EQ(pd.n2, 0);
}

TEST(Peirce, TripledColor) {
  const auto pd = first_peirce(triple(vector_color()));
  EXPECT_EQ(pd.n1, 1);
  EXPECT_EQ(pd.n2, 8);
  EXPECT_EQ(pd.d, 2);
}

TEST(Peirce, ForeignSpectrumIsNoted) {
  // e1 e1 = 6 e1, e2 e2 = 6 e2: L(c) has spectrum {0, 1} at c = e1/6
  const Algebra a = algebra_from_cubic(Polynomial::parse("x1^3 + x2^3"), Matrix::identity(2));
  const auto pd = first_peirce(a);
  EXPECT_FALSE(pd.spectrum_ok);
  EXPECT_FALSE(pd.dimensions_ok);
  ASSERT_FALSE(pd.notes.empty());
  EXPECT_NE(pd.notes.front().find("does not match"), std::string::npos);
}

TEST(Peirce, RejectsNonIdempotent) {
  const FloatAlgebra fa(triple(hurwitz(1)));
  EXPECT_THROW(peirce(fa, Eigen::Vector3d(1, 0, 0)), DomainError);
}

TEST(Jordan, TripledCross7) {
  const Algebra t = triple(cross_product(7));
  const FloatAlgebra fa(t);
  const auto pd = first_peirce(t);
  const auto j = jordan_mutation(fa, pd, 0);
  EXPECT_EQ(j.dim, 6u);
  EXPECT_TRUE(j.closed);
  EXPECT_TRUE(j.jordan_identity) << j.jordan_residual;
  EXPECT_EQ(j.trace_form_rank, 6u);
}

TEST(Jordan, TripledReals) {
  const Algebra t = triple(hurwitz(1));
  const auto j = jordan_mutation(FloatAlgebra(t), first_peirce(t), 0);
  EXPECT_EQ(j.dim, 3u);
  EXPECT_TRUE(j.closed);
  EXPECT_TRUE(j.jordan_identity) << j.jordan_residual;
}

TEST(Jordan, CartanOneIsTrivial) {
  const Algebra a = cartan_cubic(1).alg;
  const auto pd = first_peirce(a);
  const auto j = jordan_mutation(FloatAlgebra(a), pd, 0);
  EXPECT_EQ(j.dim, 1u);
  EXPECT_TRUE(j.closed);
  EXPECT_TRUE(j.jordan_identity);
}

TEST(Nilpotent, TripledRealsFindsAxis) {
  const auto xs = nilpotent_search(triple(hurwitz(1)), 20, 0);
  ASSERT_FALSE(xs.empty());
  bool axis = false;
  for (const auto& x : xs) {
    EXPECT_LE(oracle::Numeric(triple(hurwitz(1))).mul(x, x).norm(), 1e-8);
    axis = axis || std::abs(std::abs(x(0)) - 1.0) < 1e-6;
  }
  EXPECT_TRUE(axis);
}

TEST(Nilpotent, CartanZeroHasNone) { EXPECT_TRUE(nilpotent_search(cartan_cubic(0).alg, 20, 0).empty()); }

TEST(Nilpotent, CliffordFindsZeroBlockVectors) {
  const Algebra a = polar_from_clifford(clifford_system(1, 2));
  const auto xs = nilpotent_search(a, 20, 0);
  ASSERT_FALSE(xs.empty());
  bool in_block = false;
  for (const auto& x : xs) in_block = in_block || x.head(2).norm() < 1e-6;
  EXPECT_TRUE(in_block);
}
