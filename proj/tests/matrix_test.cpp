#include <gtest/gtest.h>

#include <random>

#include "coneforge/matrix.hpp"
#include "oracles.hpp"

using namespace coneforge;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (long v : row) m(r, c++) = Scalar(v);
    ++r;
  }
  return m;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, long bound = 4) {
  std::uniform_int_distribution<long> d(-bound, bound);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Scalar(d(rng));
  return m;
}

std::vector<oracle::QVec> to_q(const Matrix& m) {
  std::vector<oracle::QVec> out(m.rows(), oracle::QVec(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = oracle::rational(m(r, c));
  return out;
}

}  // namespace

TEST(Matrix, ProductAndTranspose) {
  const Matrix a = from_rows({{1, 2}, {3, 4}});
  const Matrix b = from_rows({{0, 1}, {1, 0}});
  EXPECT_EQ(a * b, from_rows({{2, 1}, {4, 3}}));
  EXPECT_EQ((a * b).transpose(), b.transpose() * a.transpose());
  EXPECT_EQ(a.trace(), Scalar(5));
}

TEST(Matrix, DeterminantMatchesCofactorExpansion) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Matrix m = random_matrix(3, 3, rng);
    const auto e = [&](int r, int c) { return m(r, c); };
    const Scalar cof = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
                       e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    EXPECT_EQ(determinant(m), cof);
  }
}

TEST(Matrix, RankMatchesOracle) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    Matrix m = random_matrix(4, 5, rng, 2);
    if (t % 3 == 0)
      for (std::size_t c = 0; c < 5; ++c) m(3, c) = m(0, c) + m(1, c);
    EXPECT_EQ(rank(m), oracle::rank(to_q(m)));
  }
}

TEST(Matrix, NullspaceIsAnnihilated) {
  const Matrix m = from_rows({{1, 2, 3}, {2, 4, 6}});
  const auto ns = nullspace(m);
  EXPECT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_TRUE(is_zero(m * v));
}

TEST(Matrix, InverseAndSolve) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const Matrix m = random_matrix(4, 4, rng);
    if (determinant(m).is_zero()) continue;
    const auto inv = inverse(m);
    ASSERT_TRUE(inv);
    EXPECT_TRUE((m * *inv).is_identity());
    Vec b{Scalar(1), Scalar(-2), Scalar(3), Scalar(0)};
    const auto x = solve(m, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(m * *x, b);
  }
  EXPECT_FALSE(inverse(from_rows({{1, 2}, {2, 4}})).has_value());
}

TEST(Matrix, PositiveDefiniteBySylvester) {
  EXPECT_TRUE(is_positive_definite(from_rows({{2, 1}, {1, 1}})));
  EXPECT_FALSE(is_positive_definite(from_rows({{1, 2}, {2, 1}})));
  EXPECT_FALSE(is_positive_definite(from_rows({{0, 0}, {0, 1}})));
  Matrix m = Matrix::identity(2);
  m(1, 1) = Scalar(3) - Scalar::sqrt3();
  EXPECT_TRUE(is_positive_definite(m));
}

TEST(Subspace, SpanContainsAndComplement) {
  const Vec a{Scalar(1), Scalar(1), Scalar(0)};
  const Vec b{Scalar(0), Scalar(1), Scalar(1)};
  const std::vector<Vec> gens{a, b, a + b};
  const Subspace s = Subspace::span(gens, 3);
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_TRUE(s.contains(Scalar(2) * a - b));
  EXPECT_FALSE(s.contains(unit_vec(3, 0)));
  const Subspace c = s.orthogonal_complement(Matrix::identity(3));
  ASSERT_EQ(c.dim(), 1u);
  EXPECT_TRUE(dot(c.basis()[0], a).is_zero());
  EXPECT_TRUE(dot(c.basis()[0], b).is_zero());
}

TEST(IncrementalSolver, DetectsRedundancyAndInconsistency) {
  IncrementalSolver s(2);
  EXPECT_EQ(s.add({{0, Scalar(1)}, {1, Scalar(1)}}, Scalar(3)), IncrementalSolver::Outcome::independent);
  EXPECT_EQ(s.add({{0, Scalar(2)}, {1, Scalar(2)}}, Scalar(6)), IncrementalSolver::Outcome::redundant);
  EXPECT_EQ(s.add({{0, Scalar(1)}, {1, Scalar(1)}}, Scalar(4)), IncrementalSolver::Outcome::inconsistent);
  EXPECT_FALSE(s.determined());
  EXPECT_EQ(s.add({{0, Scalar(1)}, {1, Scalar(-1)}}, Scalar(1)), IncrementalSolver::Outcome::independent);
  ASSERT_TRUE(s.determined());
  const Vec x = s.solution();
  EXPECT_EQ(x[0], Scalar(2));
  EXPECT_EQ(x[1], Scalar(1));
}
