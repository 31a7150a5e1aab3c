#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rcdyn {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite simple graph with a fixed edge order. The index of an edge in
/// edges() is its bit position in every EdgeSubset and state index.
class Graph {
 public:
  Graph() = default;
  /// Throws ParameterError on self-loops, duplicate pairs or out-of-range endpoints.
  Graph(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return n_vertices_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_.at(index); }

  std::size_t degree(Vertex v) const;
  bool is_connected() const;
  /// Connected and acyclic.
  bool is_tree() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_vertices_ = 0;
  std::vector<Edge> edges_;
};

/// Subset of a graph's edges as a bit-set keyed by edge index.
class EdgeSubset {
 public:
  EdgeSubset() = default;
  explicit EdgeSubset(std::size_t num_edges);

  static EdgeSubset empty(std::size_t num_edges) { return EdgeSubset(num_edges); }
  static EdgeSubset full(std::size_t num_edges);
  /// Bits of `index` select edges; requires num_edges <= 64 and index < 2^num_edges.
  static EdgeSubset from_index(std::size_t num_edges, std::uint64_t index);
  static EdgeSubset from_edges(std::size_t num_edges, std::span<const std::size_t> members);

  std::size_t num_edges() const noexcept { return num_edges_; }
  bool contains(std::size_t e) const;
  void insert(std::size_t e);
  void erase(std::size_t e);
  void toggle(std::size_t e);
  std::size_t size() const noexcept;
  bool is_subset_of(const EdgeSubset& other) const;
  std::vector<std::size_t> members() const;
  /// Inverse of from_index; requires num_edges <= 64.
  std::uint64_t index() const;

  EdgeSubset with(std::size_t e) const;
  EdgeSubset without(std::size_t e) const;

  friend bool operator==(const EdgeSubset&, const EdgeSubset&) = default;

 private:
  void check(std::size_t e) const;

  std::size_t num_edges_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Union-find with path compression and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);

  std::size_t find(std::size_t x);
  /// Returns true if x and y were in different sets.
  bool unite(std::size_t x, std::size_t y);
  std::size_t count() const noexcept { return count_; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t count_;
};

struct Components {
  /// c(A): components of (V, A), isolated vertices included.
  std::size_t count = 0;
  /// Canonical label per vertex: the smallest vertex index in its component.
  std::vector<Vertex> label;
};

Components components(const Graph& g, const EdgeSubset& a);
/// Component count of (V, A) for A given as an edge-index bit mask (|E| <= 64).
std::size_t component_count(const Graph& g, std::uint64_t mask);
/// Canonical labels for A given as a bit mask (|E| <= 64).
Components components(const Graph& g, std::uint64_t mask);

bool connected_in(const Graph& g, const EdgeSubset& a, Vertex u, Vertex v);

Graph make_torus(std::size_t side, std::size_t dim);
Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_complete(std::size_t n);
/// Vertex 0 joined to vertices 1..n-1.
Graph make_star(std::size_t n);

inline constexpr std::size_t kMaxEnumeratedVertices = 5;

/// All labeled connected simple graphs on 2..max_vertices vertices, ordered by
/// vertex count and then by the bit mask over K_n's lexicographic pair list.
std::vector<Graph> enumerate_connected_graphs(std::size_t max_vertices);

inline constexpr std::size_t kMaxEnumeratedTreeEdges = 6;

/// One tree per isomorphism class with 1..max_edges edges, each the first
/// labeled representative met in Pruefer-sequence order.
std::vector<Graph> enumerate_trees(std::size_t max_edges);

}  // namespace rcdyn
