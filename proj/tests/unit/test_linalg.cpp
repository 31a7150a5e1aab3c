#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "rcdyn/errors.hpp"
#include "rcdyn/linalg.hpp"

using namespace rcdyn;

TEST(DenseMatrix, Arithmetic) {
  DenseMatrix a(2, 3);
  a(0, 0) = 1;
  a(0, 2) = 2;
  a(1, 1) = 3;
  const DenseMatrix at = a.transpose();
  EXPECT_EQ(at.rows(), 3u);
  EXPECT_EQ(at(2, 0), 2.0);
  const DenseMatrix prod = multiply(a, at);
  EXPECT_EQ(prod(0, 0), 5.0);
  EXPECT_EQ(prod(1, 1), 9.0);
  EXPECT_EQ(prod(0, 1), 0.0);
  EXPECT_EQ(prod.trace(), 14.0);
  EXPECT_EQ(max_abs_difference(add(a, scale(a, -1.0)), DenseMatrix(2, 3)), 0.0);
  const std::vector<double> v{1.0, 1.0};
  EXPECT_EQ(left_multiply(v, a), (std::vector<double>{1.0, 3.0, 2.0}));
  EXPECT_THROW(multiply(a, a), ParameterError);
  EXPECT_EQ(multiply(DenseMatrix::identity(2), a), a);
}

TEST(Jacobi, TwoByTwo) {
  DenseMatrix m(2, 2);
  m(0, 0) = 2;
  m(0, 1) = m(1, 0) = 1;
  m(1, 1) = 2;
  const auto r = jacobi_eigenvalues(m);
  ASSERT_EQ(r.eigenvalues.size(), 2u);
  EXPECT_NEAR(r.eigenvalues[0], 3.0, 1e-14);
  EXPECT_NEAR(r.eigenvalues[1], 1.0, 1e-14);
}

TEST(Jacobi, DiagonalNeedsNoSweeps) {
  DenseMatrix m(3, 3);
  m(0, 0) = -1;
  m(1, 1) = 4;
  m(2, 2) = 0.5;
  const auto r = jacobi_eigenvalues(m);
  EXPECT_EQ(r.sweeps, 0);
  EXPECT_EQ(r.eigenvalues, (std::vector<double>{4.0, 0.5, -1.0}));
}

TEST(Jacobi, RandomSymmetricMatchesEigen) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {1, 5, 17, 40}) {
    DenseMatrix m(n, n);
    Eigen::MatrixXd e(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = e(i, j) = e(j, i) = u(gen);
    }
    const auto r = jacobi_eigenvalues(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e, Eigen::EigenvaluesOnly);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(r.eigenvalues[i], solver.eigenvalues()[n - 1 - i], 1e-12);
    EXPECT_LT(r.off_diagonal_norm, 1e-13);
  }
}

TEST(Jacobi, ReportsNonConvergence) {
  DenseMatrix m(3, 3, 1.0);
  EXPECT_THROW(jacobi_eigenvalues(m, {1e-13, 0}), ConvergenceError);
  EXPECT_THROW(jacobi_eigenvalues(DenseMatrix(2, 3)), ParameterError);
}
