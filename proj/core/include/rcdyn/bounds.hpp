#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rcdyn/graph.hpp"
#include "rcdyn/models.hpp"

namespace rcdyn {

// --- widths -----------------------------------------------------------------

struct WidthResult {
  std::size_t width = 0;
  /// Vertex ordering (bandwidth) or edge ordering (linear-width) achieving `width`.
  std::vector<std::size_t> witness;
};

inline constexpr std::size_t kMaxBandwidthVertices = 10;
inline constexpr std::size_t kMaxLinearWidthEdges = 20;

/// max over edges of |f(u) - f(v)|, where `order[i]` is the vertex at position i.
std::size_t bandwidth_of_ordering(const Graph& g, std::span<const std::size_t> order);
/// Exact bandwidth by branch and bound; at most kMaxBandwidthVertices vertices.
WidthResult bandwidth_exact(const Graph& g);

/// Vertices with an incident edge in the prefix {e_1..e_i} and one in the
/// suffix, maximised over i = 1..|E| (the full prefix has an empty suffix).
std::size_t linear_width_of_ordering(const Graph& g, std::span<const std::size_t> order);
/// Exact linear-width by dynamic programming over edge subsets; at most
/// kMaxLinearWidthEdges edges.
WidthResult linear_width_exact(const Graph& g);

/// 2 L^(d-1) + 1, an upper bound on the linear-width of the L^d torus.
std::size_t torus_linear_width_bound(std::size_t side, std::size_t dim);

// --- bound calculators ------------------------------------------------------

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  /// Named intermediate terms (e.g. k1, k2).
  std::vector<std::pair<std::string, double>> terms;
  double value = 0.0;
  /// True when `value` is the natural log of the bound.
  bool log_scale = false;
};

/// log(4 |E|^2 q^(ell+1)); bounds 1/gap of lazy single-bond dynamics on graphs
/// of linear-width at most ell.
BoundReport width_gap_bound(std::size_t num_edges, double q, std::size_t ell);

/// (1 - p(1 - 1/q)) / (2|E|): exact lazy single-bond gap on a tree.
double tree_gap_exact(const Graph& tree, const ModelParams& params);
/// 2 |E| / (1 - p(1 - 1/q)): upper bound on 1/gap of Swendsen-Wang on a tree.
double sw_tree_bound(const Graph& tree, const ModelParams& params);

/// 3 + |E| log(1/(p(1-p))) + |V| log q.
double mixing_comparison_factor(const Graph& g, const ModelParams& params);

/// log(1 + log(1/(p(1-p)))).
double torus_k1(double p);
/// 4 + 3 log q + log(1 + log q).
double torus_k2(double q);
/// Exponent k1(p) + k2(q) L^(d-1) of the single-bond mixing-time bound on the torus.
BoundReport torus_upper_bound(const ModelParams& params, std::size_t side, std::size_t dim);

/// (1/d) log q: only the leading term of the Potts transition point; the
/// O(q^(-1/d)) correction is not known explicitly.
double potts_transition_beta_leading(double q, std::size_t dim);

}  // namespace rcdyn
