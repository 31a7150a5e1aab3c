#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rcdyn {

/// Dense row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const noexcept { return data_; }

  DenseMatrix transpose() const;
  double trace() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, double factor);
/// Row vector times matrix.
std::vector<double> left_multiply(std::span<const double> v, const DenseMatrix& m);
/// max |a - b| entrywise; matrices must have equal shape.
double max_abs_difference(const DenseMatrix& a, const DenseMatrix& b);
/// max |a_ij - a_ji|.
double max_asymmetry(const DenseMatrix& a);

struct JacobiOptions {
  /// Converged when the off-diagonal Frobenius norm drops below this times max(1, Frobenius norm).
  double tolerance = 1e-13;
  int max_sweeps = 100;
};

struct SymmetricEigenResult {
  /// Sorted descending.
  std::vector<double> eigenvalues;
  int sweeps = 0;
  double off_diagonal_norm = 0.0;
};

/// Cyclic Jacobi eigenvalues of a symmetric matrix. Throws ConvergenceError
/// when max_sweeps is exhausted and ParameterError for non-square input.
SymmetricEigenResult jacobi_eigenvalues(DenseMatrix a, const JacobiOptions& options = {});

}  // namespace rcdyn
