#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "gittins/linsolve.hpp"
#include "test_support.hpp"

namespace gittins {
namespace {

double residual(const Matrix& A, const Matrix& X, const Matrix& B) {
  double worst = 0.0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t c = 0; c < B.cols(); ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j) * X(j, c);
      worst = std::max(worst, std::abs(s - B(i, c)));
    }
  }
  return worst;
}

TEST(SolveDense, IdentityReturnsRightHandSide) {
  Matrix B(3, 2);
  B(0, 0) = 1.5; B(1, 0) = -2.0; B(2, 0) = 7.0;
  B(0, 1) = 0.0; B(1, 1) = 3.25; B(2, 1) = -1.0;
  EXPECT_EQ(solve_dense(Matrix::identity(3), B), B);
}

TEST(SolveDense, TwoByTwoVerifiedByMultiplyingBack) {
  Matrix A(2, 2);
  A(0, 0) = 0.75; A(0, 1) = -0.25;
  A(1, 0) = -0.25; A(1, 1) = 0.75;
  const Vector x = solve_dense(A, Vector{2.0, 4.0});
  // Oracle: A x must reproduce b. The exact solution is (5, 7).
  EXPECT_NEAR(0.75 * x[0] - 0.25 * x[1], 2.0, 1e-14);
  EXPECT_NEAR(-0.25 * x[0] + 0.75 * x[1], 4.0, 1e-14);
  EXPECT_NEAR(x[0], 5.0, 1e-13);
  EXPECT_NEAR(x[1], 7.0, 1e-13);
}

TEST(SolveDense, RankDeficientIsSingular) {
  const Matrix A(2, 2, 1.0);
  EXPECT_THROW(solve_dense(A, Vector{1.0, 2.0}), SingularMatrix);
  EXPECT_THROW(solve_dense(Matrix(3, 3), Vector{1.0, 2.0, 3.0}), SingularMatrix);
}

TEST(SolveDense, RejectsNonSquare) {
  EXPECT_THROW(solve_dense(Matrix(2, 3), Matrix(2, 1)), DimensionMismatch);
  EXPECT_THROW(solve_dense(Matrix::identity(2), Matrix(3, 1)), DimensionMismatch);
}

TEST(SolveDense, NeedsRowPivoting) {
  Matrix A(2, 2);
  A(0, 0) = 0.0; A(0, 1) = 1.0;
  A(1, 0) = 1.0; A(1, 1) = 1.0;
  const Vector x = solve_dense(A, Vector{2.0, 3.0});
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(SolveDense, RandomWellConditionedResidual) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + trial % 15;
    Matrix A(m, m), B(m, 3);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) A(i, j) = u(rng);
      A(i, i) += static_cast<double>(m);
      for (std::size_t c = 0; c < 3; ++c) B(i, c) = 10.0 * u(rng);
    }
    double bmax = 0.0;
    for (double b : B.data()) bmax = std::max(bmax, std::abs(b));
    const Matrix X = solve_dense(A, B);
    EXPECT_LE(residual(A, X, B), 1e-8 * (1.0 + bmax));
  }
}

TEST(SolveDense, CountsCubicWork) {
  OpCounter ops;
  Matrix A = Matrix::identity(60);
  for (std::size_t i = 0; i < 60; ++i) A(i, (i + 1) % 60) = 0.5;
  solve_dense(A, Vector(60, 1.0), &ops);
  const double n3 = 60.0 * 60.0 * 60.0;
  EXPECT_NEAR(static_cast<double>(ops.total()) / n3, 2.0 / 3.0, 0.1);
}

TEST(EvaluatePolicy, EmptySetGivesZeros) {
  const PolicyMeasures pm = evaluate_policy(testing::two_state(), StateSet(2, false));
  EXPECT_EQ(pm.g, (Vector{0.0, 0.0}));
  EXPECT_EQ(pm.f, (Vector{0.0, 0.0}));
}

TEST(EvaluatePolicy, SingleContinuationState) {
  const PolicyMeasures pm = evaluate_policy(testing::two_state(), make_set(2, {0}));
  EXPECT_NEAR(pm.g[0], 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(pm.f[0], 4.0 / 3.0, 1e-15);
  EXPECT_EQ(pm.g[1], 0.0);
  EXPECT_EQ(pm.f[1], 0.0);
}

TEST(EvaluatePolicy, FullContinuationSet) {
  const PolicyMeasures pm = evaluate_policy(testing::two_state(), make_set(2, {0, 1}));
  EXPECT_NEAR(pm.g[0], 2.0, 1e-14);
  EXPECT_NEAR(pm.g[1], 2.0, 1e-14);
  EXPECT_NEAR(pm.f[0], 1.5, 1e-14);
  EXPECT_NEAR(pm.f[1], 0.5, 1e-14);
}

TEST(EvaluatePolicy, FixedPointResidualOnRandomSets) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 9;
    const BanditInstance inst = testing::random_dense(n, 0.95, seed, seed % 2 ? 1.0 : 0.4);
    StateSet S(n);
    for (std::size_t i = 0; i < n; ++i) S[i] = rng() % 2;
    const PolicyMeasures pm = evaluate_policy(inst, S);
    for (std::size_t i = 0; i < n; ++i) {
      if (!S[i]) {
        EXPECT_EQ(pm.g[i], 0.0);
        EXPECT_EQ(pm.f[i], 0.0);
        continue;
      }
      double gs = 1.0, fs = inst.R[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (!S[j]) continue;
        gs += inst.beta * inst.P(i, j) * pm.g[j];
        fs += inst.beta * inst.P(i, j) * pm.f[j];
      }
      EXPECT_NEAR(pm.g[i], gs, 1e-9);
      EXPECT_NEAR(pm.f[i], fs, 1e-9);
      EXPECT_GE(pm.g[i], 1.0);
    }
  }
}

TEST(EvaluatePolicy, GeometricSeriesOnWholeStateSpace) {
  for (double beta : {0.2, 0.5, 0.9, 0.99}) {
    const BanditInstance inst = testing::random_dense(7, beta, 3);
    const PolicyMeasures pm = evaluate_policy(inst, StateSet(7, true));
    for (double g : pm.g) EXPECT_NEAR(g, 1.0 / (1.0 - beta), 1e-9 / (1.0 - beta));
  }
}

TEST(EvaluatePolicy, RecurrentSubChainAtUnitDiscountIsSingular) {
  const BanditInstance inst = testing::two_state(1.0);
  EXPECT_THROW(evaluate_policy(inst, StateSet(2, true)), SingularMatrix);
  EXPECT_NO_THROW(evaluate_policy(inst, make_set(2, {0})));
}

}  // namespace
}  // namespace gittins
