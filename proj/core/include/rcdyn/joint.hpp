#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rcdyn/caps.hpp"
#include "rcdyn/check.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/linalg.hpp"
#include "rcdyn/models.hpp"

namespace rcdyn {

struct KernelEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Sparse matrix between two indexed state spaces, stored as row-sorted
/// (row, col, value) triples with a row offset table.
class SparseKernel {
 public:
  SparseKernel(std::size_t rows, std::size_t cols, std::vector<KernelEntry> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }
  std::span<const KernelEntry> entries() const noexcept { return entries_; }
  std::span<const KernelEntry> row(std::size_t r) const;
  /// Entry lookup by binary search within the row.
  double at(std::size_t r, std::size_t c) const;

  /// max over rows of |row sum - 1|.
  double row_sum_error() const;
  DenseMatrix to_dense() const;
  SparseKernel transpose() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<KernelEntry> entries_;
  std::vector<std::size_t> row_start_;
};

/// Product a*b; entries that cancel to exactly zero are dropped.
SparseKernel compose(const SparseKernel& a, const SparseKernel& b);
SparseKernel add(const SparseKernel& a, const SparseKernel& b, double b_scale = 1.0);
SparseKernel scale(const SparseKernel& a, double factor);
/// max |a - b| over the union of supports.
double max_abs_difference(const SparseKernel& a, const SparseKernel& b);

/// RC -> joint: M(B, (sigma, A)) = q^-c(B) 1(A = B) 1(sigma in Omega(B)).
SparseKernel build_M(const Graph& g, const ModelParams& params, const Caps& caps = {});
/// joint -> RC: M*((sigma, A), B) = 1(A = B).
SparseKernel build_M_star(const Graph& g, const ModelParams& params, const Caps& caps = {});
/// Joint-space update of edge e with sigma held fixed: add e with probability p
/// if sigma is constant on e (remove otherwise), always remove if it is not.
SparseKernel build_T_e(const Graph& g, const ModelParams& params, std::size_t e, const Caps& caps = {});
/// T_{order[0]} T_{order[1]} ... ; ascending edge index when `order` is empty.
SparseKernel product_T(const Graph& g, const ModelParams& params, std::span<const std::size_t> order = {},
                       const Caps& caps = {});
/// Closed form of the full product:
/// 1(sigma = tau) 1(B inside E(sigma)) p^|B| (1-p)^(|E(sigma)| - |B|).
SparseKernel product_T_closed_form(const Graph& g, const ModelParams& params, const Caps& caps = {});

/// Joint identity J.
SparseKernel build_joint_identity(const Graph& g, const ModelParams& params, const Caps& caps = {});
/// S_mu(A, B) = mu(B).
SparseKernel build_S_mu(const Graph& g, const ModelParams& params, const Caps& caps = {});
/// S_(mu, mu_bar)(B, (sigma, A)) = mu_bar(sigma, A).
SparseKernel build_S_mu_mubar(const Graph& g, const ModelParams& params, const Caps& caps = {});

/// Kernel between same-sized spaces as a dense matrix restricted to the states
/// where `measure` is positive, symmetrised as sqrt(m(x)/m(y)) K(x, y).
DenseMatrix symmetrize_on_support(const SparseKernel& k, std::span<const double> measure);
/// max |m(x) K(x,y) - m(y) K(y,x)| over x, y with m > 0.
double detailed_balance_violation(const SparseKernel& k, std::span<const double> measure);
/// Eigenvalues of the symmetrised kernel, solved block by block over the
/// connected pieces of its support graph. Sorted descending.
std::vector<double> symmetrized_spectrum(const SparseKernel& k, std::span<const double> measure);

/// Self-adjointness of M*M and each T_e in L2(mu_bar); M M* = I and
/// (M*M)^2 = M*M; idempotence and pairwise commutation of the T_e; spectra
/// of symmetrised T_e and M*M inside {0, 1}.
std::vector<CheckResult> verify_lemma_properties(const Graph& g, const ModelParams& params, const Caps& caps = {});

/// |P_SW - M (prod T_e) M*| and max_e |P_e - M T_e M*|, entrywise.
std::vector<CheckResult> verify_representation(const Graph& g, const ModelParams& params, const Caps& caps = {});

}  // namespace rcdyn
