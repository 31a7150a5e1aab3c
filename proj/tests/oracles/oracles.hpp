#pragma once

// Brute-force reference implementations used only by the tests. Nothing here
// calls into the library beyond reading a Graph's vertex and edge lists.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "rcdyn/graph.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline std::size_t popcount(std::uint64_t x) {
  std::size_t n = 0;
  for (; x; x &= x - 1) ++n;
  return n;
}

// Component count by repeated relabelling.
inline std::size_t count_components(const rcdyn::Graph& g, std::uint64_t mask) {
  std::vector<std::size_t> label(g.num_vertices());
  std::iota(label.begin(), label.end(), std::size_t{0});
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      if (!((mask >> e) & 1U)) continue;
      auto& a = label[g.edge(e).u];
      auto& b = label[g.edge(e).v];
      if (a != b) {
        a = b = std::min(a, b);
        changed = true;
      }
    }
  }
  std::size_t count = 0;
  for (std::size_t v = 0; v < label.size(); ++v) count += label[v] == v;
  return count;
}

inline bool joined(const rcdyn::Graph& g, std::uint64_t mask, std::size_t u, std::size_t v) {
  std::vector<char> seen(g.num_vertices(), 0);
  std::vector<std::size_t> stack{u};
  seen[u] = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      if (!((mask >> e) & 1U)) continue;
      std::size_t y = g.num_vertices();
      if (g.edge(e).u == x) y = g.edge(e).v;
      if (g.edge(e).v == x) y = g.edge(e).u;
      if (y < g.num_vertices() && !seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return seen[v];
}

inline std::vector<int> spins(std::size_t n, std::size_t q, std::uint64_t index) {
  std::vector<int> s(n);
  for (std::size_t v = 0; v < n; ++v, index /= q) s[v] = static_cast<int>(index % q) + 1;
  return s;
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::uint64_t mono_mask(const rcdyn::Graph& g, const std::vector<int>& s) {
  std::uint64_t m = 0;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (s[g.edge(e).u] == s[g.edge(e).v]) m |= std::uint64_t{1} << e;
  }
  return m;
}

inline std::vector<double> normalise(std::vector<double> w) {
  const double z = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= z;
  return w;
}

inline std::vector<double> rc_weights(const rcdyn::Graph& g, double p, double q) {
  std::vector<double> w(std::size_t{1} << g.num_edges());
  for (std::uint64_t a = 0; a < w.size(); ++a) {
    w[a] = std::pow(p / (1 - p), double(popcount(a))) * std::pow(q, double(count_components(g, a)));
  }
  return w;
}

inline std::vector<double> rc_distribution(const rcdyn::Graph& g, double p, double q) {
  return normalise(rc_weights(g, p, q));
}

inline double rc_partition(const rcdyn::Graph& g, double p, double q) {
  const auto w = rc_weights(g, p, q);
  return std::accumulate(w.begin(), w.end(), 0.0);
}

inline std::vector<double> potts_distribution(const rcdyn::Graph& g, double beta, std::size_t q) {
  std::vector<double> w(ipow(q, g.num_vertices()));
  for (std::uint64_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(beta * double(popcount(mono_mask(g, spins(g.num_vertices(), q, i)))));
  }
  return normalise(w);
}

// mu_bar(sigma, A) on index sigma * 2^|E| + A.
inline std::vector<double> fkes_distribution(const rcdyn::Graph& g, double p, std::size_t q) {
  const std::size_t m = g.num_edges();
  std::vector<double> w(ipow(q, g.num_vertices()) << m, 0.0);
  for (std::uint64_t s = 0; s < ipow(q, g.num_vertices()); ++s) {
    const std::uint64_t mono = mono_mask(g, spins(g.num_vertices(), q, s));
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); ++a) {
      if ((a & ~mono) == 0) w[(s << m) | a] = std::pow(p / (1 - p), double(popcount(a)));
    }
  }
  return normalise(w);
}

// Swendsen-Wang by its two steps: colour each cluster of A uniformly, then keep
// each monochromatic edge with probability p.
inline Matrix sw_matrix(const rcdyn::Graph& g, double p, std::size_t q) {
  const std::size_t states = std::size_t{1} << g.num_edges();
  Matrix out(states, std::vector<double>(states, 0.0));
  for (std::uint64_t a = 0; a < states; ++a) {
    const double colour_prob = std::pow(double(q), -double(count_components(g, a)));
    for (std::uint64_t s = 0; s < ipow(q, g.num_vertices()); ++s) {
      const std::uint64_t mono = mono_mask(g, spins(g.num_vertices(), q, s));
      if ((a & ~mono) != 0) continue;  // sigma not constant on the clusters of A
      for (std::uint64_t b = 0; b < states; ++b) {
        if ((b & ~mono) != 0) continue;
        out[a][b] += colour_prob * std::pow(p, double(popcount(b))) *
                     std::pow(1 - p, double(popcount(mono) - popcount(b)));
      }
    }
  }
  return out;
}

inline Matrix single_edge_matrix(const rcdyn::Graph& g, double p, double q, std::size_t e) {
  const std::size_t states = std::size_t{1} << g.num_edges();
  Matrix out(states, std::vector<double>(states, 0.0));
  const std::uint64_t bit = std::uint64_t{1} << e;
  for (std::uint64_t a = 0; a < states; ++a) {
    const double keep = joined(g, a, g.edge(e).u, g.edge(e).v) ? p : p / q;
    out[a][a | bit] += keep;
    out[a][a & ~bit] += 1 - keep;
  }
  return out;
}

inline Matrix sb_matrix(const rcdyn::Graph& g, double p, double q, bool lazy) {
  const std::size_t states = std::size_t{1} << g.num_edges();
  const double m = double(g.num_edges());
  Matrix out(states, std::vector<double>(states, 0.0));
  for (std::size_t a = 0; a < states; ++a) out[a][a] = lazy ? 0.5 : 0.0;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Matrix pe = single_edge_matrix(g, p, q, e);
    for (std::size_t a = 0; a < states; ++a) {
      for (std::size_t b = 0; b < states; ++b) out[a][b] += (lazy ? 0.5 : 1.0) * pe[a][b] / m;
    }
  }
  return out;
}

// Heat-bath (metropolis = false) or Metropolis single-edge chains, lazy.
inline Matrix glauber_matrix(const rcdyn::Graph& g, double p, double q, bool metropolis) {
  const std::size_t states = std::size_t{1} << g.num_edges();
  const auto w = rc_weights(g, p, q);
  Matrix out(states, std::vector<double>(states, 0.0));
  for (std::uint64_t a = 0; a < states; ++a) {
    double moved = 0.0;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const std::uint64_t b = a ^ (std::uint64_t{1} << e);
      const double rate = metropolis ? std::min(1.0, w[b] / w[a]) : w[b] / (w[a] + w[b]);
      out[a][b] = rate / (2.0 * double(g.num_edges()));
      moved += out[a][b];
    }
    out[a][a] = 1.0 - moved;
  }
  return out;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix c(a.size(), std::vector<double>(b[0].size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Eigenvalues of a reversible chain through Eigen's symmetric solver, descending.
inline std::vector<double> eigenvalues(const Matrix& p, const std::vector<double>& pi) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s(i, j) = std::sqrt(pi[i] / pi[j]) * p[i][j];
  s = (s + s.transpose()).eval() / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

// 1 - max |xi| over all eigenvalues but the top one.
inline double gap(const Matrix& p, const std::vector<double>& pi) {
  const auto ev = eigenvalues(p, pi);
  double m = 0.0;
  for (std::size_t i = 1; i < ev.size(); ++i) m = std::max(m, std::abs(ev[i]));
  return 1.0 - m;
}

// First t with max_x ||P^t(x, .) - pi||_1 <= 1/e, by stepping one power at a time.
inline std::size_t mixing_time(const Matrix& p, const std::vector<double>& pi, std::size_t limit = 100000) {
  Matrix pt(p.size(), std::vector<double>(p.size(), 0.0));
  for (std::size_t i = 0; i < p.size(); ++i) pt[i][i] = 1.0;
  for (std::size_t t = 0; t <= limit; ++t) {
    double worst = 0.0;
    for (const auto& row : pt) {
      double d = 0.0;
      for (std::size_t y = 0; y < row.size(); ++y) d += std::abs(row[y] - pi[y]);
      worst = std::max(worst, d);
    }
    if (worst <= std::exp(-1.0)) return t;
    pt = multiply(pt, p);
  }
  return limit + 1;
}

inline std::size_t bandwidth(const rcdyn::Graph& g) {
  std::vector<std::size_t> pos(g.num_vertices());
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::size_t best = g.num_vertices();
  do {
    std::size_t w = 0;
    for (const auto& e : g.edges()) w = std::max(w, pos[e.u] > pos[e.v] ? pos[e.u] - pos[e.v] : pos[e.v] - pos[e.u]);
    best = std::min(best, w);
  } while (std::next_permutation(pos.begin(), pos.end()));
  return g.num_edges() == 0 ? 0 : best;
}

inline std::size_t linear_width(const rcdyn::Graph& g) {
  std::vector<std::size_t> order(g.num_edges());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t best = g.num_vertices();
  do {
    std::size_t w = 0;
    for (std::size_t i = 1; i <= order.size(); ++i) {
      std::size_t boundary = 0;
      for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        bool before = false;
        bool after = false;
        for (std::size_t k = 0; k < order.size(); ++k) {
          const auto& e = g.edge(order[k]);
          if (e.u != v && e.v != v) continue;
          (k < i ? before : after) = true;
        }
        boundary += before && after;
      }
      w = std::max(w, boundary);
    }
    best = std::min(best, w);
  } while (std::next_permutation(order.begin(), order.end()));
  return g.num_edges() == 0 ? 0 : best;
}

// Connected labeled graphs on exactly n vertices.
inline std::size_t connected_graph_count(std::size_t n) {
  std::vector<rcdyn::Edge> pairs;
  for (rcdyn::Vertex u = 0; u < n; ++u)
    for (rcdyn::Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  const rcdyn::Graph complete(n, pairs);
  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    count += count_components(complete, mask) == 1;
  }
  return count;
}

// Colourings constant on every edge of A.
inline std::size_t omega_size(const rcdyn::Graph& g, std::size_t q, std::uint64_t a) {
  std::size_t count = 0;
  for (std::uint64_t s = 0; s < ipow(q, g.num_vertices()); ++s) {
    count += (a & ~mono_mask(g, spins(g.num_vertices(), q, s))) == 0;
  }
  return count;
}

}  // namespace oracle
