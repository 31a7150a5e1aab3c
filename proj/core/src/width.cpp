#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rcdyn/bounds.hpp"
#include "rcdyn/errors.hpp"

namespace rcdyn {

namespace {

void require_permutation(std::span<const std::size_t> order, std::size_t n) {
  if (order.size() != n) throw ParameterError("ordering has the wrong length");
  std::vector<char> seen(n, 0);
  for (std::size_t x : order) {
    if (x >= n || seen[x]) throw ParameterError("ordering is not a permutation");
    seen[x] = 1;
  }
}

class BandwidthSearch {
 public:
  explicit BandwidthSearch(const Graph& g) : n_(g.num_vertices()), adjacent_(n_) {
    for (const Edge& e : g.edges()) {
      adjacent_[e.u].push_back(e.v);
      adjacent_[e.v].push_back(e.u);
    }
  }

  // Tries to lay out all vertices with every edge stretched at most `k`.
  bool feasible(std::size_t k) {
    k_ = k;
    position_.assign(n_, kUnplaced);
    order_.clear();
    return place(0);
  }

  const std::vector<std::size_t>& order() const { return order_; }

 private:
  static constexpr std::size_t kUnplaced = SIZE_MAX;

  bool place(std::size_t slot) {
    if (slot == n_) return true;
    // A placed vertex with unplaced neighbours must still reach them: its
    // remaining neighbours need distinct slots in [slot, position + k].
    for (std::size_t u : order_) {
      std::size_t pending = 0;
      for (std::size_t w : adjacent_[u]) pending += position_[w] == kUnplaced;
      if (pending == 0) continue;
      if (position_[u] + k_ < slot || position_[u] + k_ - slot + 1 < pending) return false;
    }
    for (std::size_t v = 0; v < n_; ++v) {
      if (position_[v] != kUnplaced) continue;
      bool ok = true;
      for (std::size_t w : adjacent_[v]) {
        if (position_[w] != kUnplaced && slot - position_[w] > k_) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      position_[v] = slot;
      order_.push_back(v);
      if (place(slot + 1)) return true;
      order_.pop_back();
      position_[v] = kUnplaced;
    }
    return false;
  }

  std::size_t n_;
  std::size_t k_ = 0;
  std::vector<std::vector<std::size_t>> adjacent_;
  std::vector<std::size_t> position_;
  std::vector<std::size_t> order_;
};

}  // namespace

std::size_t bandwidth_of_ordering(const Graph& g, std::span<const std::size_t> order) {
  require_permutation(order, g.num_vertices());
  std::vector<std::size_t> position(g.num_vertices());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  std::size_t width = 0;
  for (const Edge& e : g.edges()) {
    width = std::max(width, position[e.u] > position[e.v] ? position[e.u] - position[e.v] : position[e.v] - position[e.u]);
  }
  return width;
}

WidthResult bandwidth_exact(const Graph& g) {
  require_within(g.num_vertices(), kMaxBandwidthVertices, "exact bandwidth vertex count");
  WidthResult result;
  if (g.num_edges() == 0) {
    result.witness.resize(g.num_vertices());
    std::iota(result.witness.begin(), result.witness.end(), std::size_t{0});
    return result;
  }
  std::size_t lower = 1;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    lower = std::max(lower, (g.degree(static_cast<Vertex>(v)) + 1) / 2);
  }
  BandwidthSearch search(g);
  for (std::size_t k = lower;; ++k) {
    if (search.feasible(k)) {
      result.width = k;
      result.witness = search.order();
      return result;
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint32_t> incidence_masks(const Graph& g) {
  std::vector<std::uint32_t> incident(g.num_vertices(), 0);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    incident[g.edge(e).u] |= std::uint32_t{1} << e;
    incident[g.edge(e).v] |= std::uint32_t{1} << e;
  }
  return incident;
}

std::size_t boundary_size(const std::vector<std::uint32_t>& incident, std::uint32_t prefix, std::uint32_t all) {
  std::size_t count = 0;
  for (std::uint32_t mask : incident) count += (mask & prefix) != 0 && (mask & all & ~prefix) != 0;
  return count;
}

}  // namespace

std::size_t linear_width_of_ordering(const Graph& g, std::span<const std::size_t> order) {
  require_permutation(order, g.num_edges());
  const std::size_t n = g.num_vertices();
  // Edges at each vertex in the prefix, and in total.
  std::vector<std::size_t> seen(n, 0);
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : g.edges()) {
    ++degree[e.u];
    ++degree[e.v];
  }
  std::size_t width = 0;
  for (std::size_t e : order) {
    ++seen[g.edge(e).u];
    ++seen[g.edge(e).v];
    std::size_t boundary = 0;
    for (std::size_t v = 0; v < n; ++v) boundary += seen[v] > 0 && seen[v] < degree[v];
    width = std::max(width, boundary);
  }
  return width;
}

WidthResult linear_width_exact(const Graph& g) {
  const std::size_t m = g.num_edges();
  require_within(m, kMaxLinearWidthEdges, "exact linear-width edge count");
  const std::vector<std::uint32_t> incident = incidence_masks(g);
  const std::uint32_t all = m == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);

  // best[S]: minimal max boundary over orderings whose first |S| edges are S.
  std::vector<std::uint8_t> best(std::size_t{1} << m, 0);
  std::vector<std::uint8_t> last(std::size_t{1} << m, 0);
  for (std::uint32_t s = 1; s <= all; ++s) {
    const auto here = static_cast<std::uint8_t>(boundary_size(incident, s, all));
    std::uint8_t choice = 0;
    std::uint8_t value = UINT8_MAX;
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      const auto e = static_cast<std::uint8_t>(std::countr_zero(rest));
      const std::uint8_t candidate = std::max(best[s & ~(std::uint32_t{1} << e)], here);
      if (candidate < value) {
        value = candidate;
        choice = e;
      }
    }
    best[s] = value;
    last[s] = choice;
  }

  WidthResult result;
  result.width = best[all];
  result.witness.resize(m);
  for (std::uint32_t s = all, i = static_cast<std::uint32_t>(m); s != 0; s &= ~(std::uint32_t{1} << last[s])) {
    result.witness[--i] = last[s];
  }
  return result;
}

std::size_t torus_linear_width_bound(std::size_t side, std::size_t dim) {
  if (side < 2) throw ParameterError("torus side length must be >= 2");
  if (dim < 1) throw ParameterError("torus dimension must be >= 1");
  return 2 * saturating_pow(side, dim - 1) + 1;
}

}  // namespace rcdyn
