#include "rcdyn/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "rcdyn/caps.hpp"
#include "rcdyn/errors.hpp"

namespace rcdyn {

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges) : n_vertices_(n_vertices) {
  std::set<std::pair<Vertex, Vertex>> seen;
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u == e.v) {
      throw ParameterError("self-loop at vertex " + std::to_string(e.u));
    }
    if (e.u >= n_vertices || e.v >= n_vertices) {
      throw ParameterError("edge endpoint out of range");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(e.u, e.v).second) {
      throw ParameterError("duplicate edge {" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + "}");
    }
    edges_.push_back(e);
  }
}

std::size_t Graph::degree(Vertex v) const {
  if (v >= n_vertices_) throw ParameterError("vertex out of range");
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.u == v || e.v == v; }));
}

bool Graph::is_connected() const {
  if (n_vertices_ == 0) return true;
  DisjointSets sets(n_vertices_);
  for (const Edge& e : edges_) sets.unite(e.u, e.v);
  return sets.count() == 1;
}

bool Graph::is_tree() const {
  return n_vertices_ >= 1 && edges_.size() + 1 == n_vertices_ && is_connected();
}

// ---------------------------------------------------------------------------

EdgeSubset::EdgeSubset(std::size_t num_edges) : num_edges_(num_edges), words_((num_edges + 63) / 64, 0) {}

EdgeSubset EdgeSubset::full(std::size_t num_edges) {
  EdgeSubset s(num_edges);
  for (std::size_t e = 0; e < num_edges; ++e) s.insert(e);
  return s;
}

EdgeSubset EdgeSubset::from_index(std::size_t num_edges, std::uint64_t index) {
  if (num_edges > 64) throw ParameterError("state index requires at most 64 edges");
  if (num_edges < 64 && (index >> num_edges) != 0) throw ParameterError("subset index out of range");
  EdgeSubset s(num_edges);
  if (num_edges > 0) s.words_[0] = index;
  return s;
}

EdgeSubset EdgeSubset::from_edges(std::size_t num_edges, std::span<const std::size_t> members) {
  EdgeSubset s(num_edges);
  for (std::size_t e : members) s.insert(e);
  return s;
}

void EdgeSubset::check(std::size_t e) const {
  if (e >= num_edges_) throw ParameterError("edge index " + std::to_string(e) + " out of range");
}

bool EdgeSubset::contains(std::size_t e) const {
  check(e);
  return (words_[e / 64] >> (e % 64)) & 1U;
}

void EdgeSubset::insert(std::size_t e) {
  check(e);
  words_[e / 64] |= std::uint64_t{1} << (e % 64);
}

void EdgeSubset::erase(std::size_t e) {
  check(e);
  words_[e / 64] &= ~(std::uint64_t{1} << (e % 64));
}

void EdgeSubset::toggle(std::size_t e) {
  check(e);
  words_[e / 64] ^= std::uint64_t{1} << (e % 64);
}

std::size_t EdgeSubset::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool EdgeSubset::is_subset_of(const EdgeSubset& other) const {
  if (other.num_edges_ != num_edges_) throw ParameterError("edge subsets belong to different graphs");
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

std::vector<std::size_t> EdgeSubset::members() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < num_edges_; ++e) {
    if (contains(e)) out.push_back(e);
  }
  return out;
}

std::uint64_t EdgeSubset::index() const {
  if (num_edges_ > 64) throw ParameterError("state index requires at most 64 edges");
  return words_.empty() ? 0 : words_[0];
}

EdgeSubset EdgeSubset::with(std::size_t e) const {
  EdgeSubset s = *this;
  s.insert(e);
  return s;
}

EdgeSubset EdgeSubset::without(std::size_t e) const {
  EdgeSubset s = *this;
  s.erase(e);
  return s;
}

// ---------------------------------------------------------------------------

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), count_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  --count_;
  return true;
}

namespace {

Components labels_from(DisjointSets& sets, std::size_t n) {
  Components out;
  out.count = sets.count();
  out.label.resize(n);
  // First vertex seen in each set is its smallest member.
  std::vector<Vertex> root_label(n, static_cast<Vertex>(n));
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t r = sets.find(v);
    if (root_label[r] == n) root_label[r] = static_cast<Vertex>(v);
    out.label[v] = root_label[r];
  }
  return out;
}

}  // namespace

Components components(const Graph& g, const EdgeSubset& a) {
  if (a.num_edges() != g.num_edges()) throw ParameterError("edge subset does not belong to graph");
  DisjointSets sets(g.num_vertices());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (a.contains(e)) sets.unite(g.edge(e).u, g.edge(e).v);
  }
  return labels_from(sets, g.num_vertices());
}

std::size_t component_count(const Graph& g, std::uint64_t mask) {
  DisjointSets sets(g.num_vertices());
  while (mask != 0) {
    auto e = static_cast<std::size_t>(std::countr_zero(mask));
    mask &= mask - 1;
    sets.unite(g.edge(e).u, g.edge(e).v);
  }
  return sets.count();
}

Components components(const Graph& g, std::uint64_t mask) {
  DisjointSets sets(g.num_vertices());
  while (mask != 0) {
    auto e = static_cast<std::size_t>(std::countr_zero(mask));
    mask &= mask - 1;
    sets.unite(g.edge(e).u, g.edge(e).v);
  }
  return labels_from(sets, g.num_vertices());
}

bool connected_in(const Graph& g, const EdgeSubset& a, Vertex u, Vertex v) {
  if (u >= g.num_vertices() || v >= g.num_vertices()) throw ParameterError("vertex out of range");
  if (u == v) return true;
  Components c = components(g, a);
  return c.label[u] == c.label[v];
}

// ---------------------------------------------------------------------------

Graph make_torus(std::size_t side, std::size_t dim) {
  if (side < 2) throw ParameterError("torus side length must be >= 2");
  if (dim < 1) throw ParameterError("torus dimension must be >= 1");
  std::size_t n = saturating_pow(side, dim);
  if (n > (std::size_t{1} << 24)) throw ParameterError("torus too large");

  // Row-major: the last coordinate varies fastest, so stride[k] = side^(dim-1-k).
  std::vector<std::size_t> stride(dim, 1);
  for (std::size_t k = dim - 1; k > 0; --k) stride[k - 1] = stride[k] * side;

  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < dim; ++k) {
      std::size_t coord = (v / stride[k]) % side;
      std::size_t next = coord + 1 == side ? 0 : coord + 1;
      std::size_t w = v - coord * stride[k] + next * stride[k];
      auto a = static_cast<Vertex>(std::min(v, w));
      auto b = static_cast<Vertex>(std::max(v, w));
      // side == 2 reaches the same neighbour in both directions.
      if (seen.emplace(a, b).second) edges.push_back({a, b});
    }
  }
  return Graph(n, std::move(edges));
}

Graph make_path(std::size_t n) {
  if (n < 1) throw ParameterError("path needs at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  return Graph(n, std::move(edges));
}

Graph make_cycle(std::size_t n) {
  if (n < 3) throw ParameterError("cycle needs at least three vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  }
  return Graph(n, std::move(edges));
}

Graph make_complete(std::size_t n) {
  if (n < 1) throw ParameterError("complete graph needs at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j)});
  }
  return Graph(n, std::move(edges));
}

Graph make_star(std::size_t n) {
  if (n < 1) throw ParameterError("star needs at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({0, static_cast<Vertex>(i)});
  return Graph(n, std::move(edges));
}

std::vector<Graph> enumerate_connected_graphs(std::size_t max_vertices) {
  if (max_vertices > kMaxEnumeratedVertices) {
    throw SizeError("graph enumeration limited", max_vertices, kMaxEnumeratedVertices);
  }
  std::vector<Graph> out;
  for (std::size_t n = 2; n <= max_vertices; ++n) {
    const Graph complete = make_complete(n);
    const std::size_t m = complete.num_edges();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
      if (component_count(complete, mask) != 1) continue;
      std::vector<Edge> edges;
      for (std::size_t e = 0; e < m; ++e) {
        if ((mask >> e) & 1U) edges.push_back(complete.edge(e));
      }
      out.emplace_back(n, std::move(edges));
    }
  }
  return out;
}

}  // namespace rcdyn

namespace rcdyn {

namespace {

Graph tree_from_pruefer(std::size_t n, const std::vector<std::size_t>& code) {
  std::vector<std::size_t> degree(n, 1);
  for (std::size_t x : code) ++degree[x];
  std::vector<Edge> edges;
  for (std::size_t x : code) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.push_back({static_cast<Vertex>(std::min(leaf, x)), static_cast<Vertex>(std::max(leaf, x))});
    --degree[leaf];
    --degree[x];
  }
  std::size_t a = n;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] != 1) continue;
    if (a == n) {
      a = v;
    } else {
      edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(v)});
    }
  }
  return Graph(n, std::move(edges));
}

// Rooted canonical form: a vertex is "(" + sorted child forms + ")".
std::string rooted_form(const std::vector<std::vector<std::size_t>>& adj, std::size_t v, std::size_t parent) {
  std::vector<std::string> children;
  for (std::size_t w : adj[v]) {
    if (w != parent) children.push_back(rooted_form(adj, w, v));
  }
  std::sort(children.begin(), children.end());
  std::string out = "(";
  for (const std::string& c : children) out += c;
  return out + ")";
}

std::string tree_form(const Graph& t) {
  std::vector<std::vector<std::size_t>> adj(t.num_vertices());
  for (const Edge& e : t.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::string best;
  for (std::size_t root = 0; root < t.num_vertices(); ++root) {
    std::string form = rooted_form(adj, root, t.num_vertices());
    if (root == 0 || form < best) best = std::move(form);
  }
  return best;
}

}  // namespace

std::vector<Graph> enumerate_trees(std::size_t max_edges) {
  if (max_edges > kMaxEnumeratedTreeEdges) {
    throw SizeError("tree enumeration limited", max_edges, kMaxEnumeratedTreeEdges);
  }
  std::vector<Graph> out;
  for (std::size_t n = 2; n <= max_edges + 1; ++n) {
    std::set<std::string> seen;
    std::vector<std::size_t> code(n - 2, 0);
    while (true) {
      Graph t = tree_from_pruefer(n, code);
      if (seen.insert(tree_form(t)).second) out.push_back(std::move(t));
      // Next sequence in base-n counting order.
      std::size_t i = 0;
      while (i < code.size() && ++code[i] == n) code[i++] = 0;
      if (i == code.size()) break;
    }
  }
  return out;
}

}  // namespace rcdyn
