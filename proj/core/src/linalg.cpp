#include "rcdyn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "rcdyn/errors.hpp"

namespace rcdyn {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

double DenseMatrix::trace() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
  return sum;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw ParameterError("matrix shapes do not compose");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParameterError("matrix shapes differ");
  DenseMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  }
  return out;
}

DenseMatrix scale(const DenseMatrix& a, double factor) {
  DenseMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (double& x : out.row(i)) x *= factor;
  }
  return out;
}

std::vector<double> left_multiply(std::span<const double> v, const DenseMatrix& m) {
  if (v.size() != m.rows()) throw ParameterError("vector length does not match matrix rows");
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0.0) continue;
    auto row = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * row[j];
  }
  return out;
}

double max_abs_difference(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParameterError("matrix shapes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  }
  return worst;
}

double max_asymmetry(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw ParameterError("matrix is not square");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  }
  return worst;
}

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) sum += a(i, j) * a(i, j);
  }
  return std::sqrt(2.0 * sum);
}

}  // namespace

SymmetricEigenResult jacobi_eigenvalues(DenseMatrix a, const JacobiOptions& options) {
  if (a.rows() != a.cols()) throw ParameterError("Jacobi eigensolver needs a square matrix");
  const std::size_t n = a.rows();
  SymmetricEigenResult result;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale += a(i, j) * a(i, j);
  const double threshold = options.tolerance * std::max(1.0, std::sqrt(scale));

  for (result.sweeps = 0;; ++result.sweeps) {
    result.off_diagonal_norm = off_diagonal_norm(a);
    if (result.off_diagonal_norm < threshold) break;
    if (result.sweeps == options.max_sweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge in " + std::to_string(options.max_sweeps) +
                             " sweeps (off-diagonal norm " + std::to_string(result.off_diagonal_norm) + ")");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Entries below rounding of both diagonals cannot move the spectrum.
        const double g = 100.0 * std::abs(apq);
        if (result.sweeps > 3 && std::abs(a(p, p)) + g == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + g == std::abs(a(q, q))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = 0.5 * (a(q, q) - a(p, p)) / apq;
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          const double new_kp = c * akp - s * akq;
          const double new_kq = s * akp + c * akq;
          a(k, p) = new_kp;
          a(p, k) = new_kp;
          a(k, q) = new_kq;
          a(q, k) = new_kq;
        }
      }
    }
  }

  result.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a(i, i);
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end(), std::greater<>());
  return result;
}

}  // namespace rcdyn
