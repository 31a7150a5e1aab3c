#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "rcdyn/caps.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/linalg.hpp"
#include "rcdyn/models.hpp"
#include "rcdyn/rng.hpp"

namespace rcdyn {

/// Dense row-stochastic matrix over an indexed state space, paired with the
/// distribution it is reversible with respect to.
class StochasticMatrix {
 public:
  StochasticMatrix(DenseMatrix entries, std::vector<double> stationary, bool lazy);

  std::size_t size() const noexcept { return entries_.rows(); }
  const DenseMatrix& entries() const noexcept { return entries_; }
  const std::vector<double>& stationary() const noexcept { return stationary_; }
  bool lazy() const noexcept { return lazy_; }
  double operator()(std::size_t from, std::size_t to) const { return entries_(from, to); }

  /// max over rows of |sum_j P(i, j) - 1|.
  double row_sum_error() const;
  /// max |(pi P)_j - pi_j|.
  double stationarity_error() const;

 private:
  DenseMatrix entries_;
  std::vector<double> stationary_;
  bool lazy_;
};

enum class Dynamics { swendsen_wang, single_bond, single_bond_nonlazy, heat_bath, metropolis };

/// CLI names: sw, sb, sb-nonlazy, heatbath, metropolis.
std::string_view dynamics_name(Dynamics d);
std::optional<Dynamics> parse_dynamics(std::string_view name);
inline constexpr Dynamics kAllDynamics[] = {Dynamics::swendsen_wang, Dynamics::single_bond,
                                            Dynamics::single_bond_nonlazy, Dynamics::heat_bath,
                                            Dynamics::metropolis};

enum class Laziness { lazy, non_lazy };

/// Swendsen-Wang on random-cluster states:
/// P(A,B) = q^-c(A) (p/(1-p))^|B| sum_sigma (1-p)^|E(sigma)| 1(sigma in Omega(A u B)).
StochasticMatrix sw_matrix(const Graph& g, const ModelParams& params, const Caps& caps = {});

/// Update of edge e alone. Moves to A u e with probability p when the endpoints
/// of e are connected in (V, A), and with p/q otherwise; to A \ e with the
/// complement. Connectivity is tested in A itself, so e in A always counts as
/// connected.
StochasticMatrix single_edge_matrix(const Graph& g, const ModelParams& params, std::size_t e,
                                    const Caps& caps = {});

/// I/2 + (1/(2|E|)) sum_e P_e, or (1/|E|) sum_e P_e for Laziness::non_lazy.
StochasticMatrix sb_matrix(const Graph& g, const ModelParams& params, Laziness laziness = Laziness::lazy,
                           const Caps& caps = {});

/// Lazy heat-bath: off-diagonal (1/(2|E|)) mu(B) / (mu(A u e) + mu(A \ e)) for B = A xor e.
StochasticMatrix heatbath_matrix(const Graph& g, const ModelParams& params, const Caps& caps = {});

/// Lazy Metropolis: off-diagonal (1/(2|E|)) min{1, mu(A xor e) / mu(A)}.
StochasticMatrix metropolis_matrix(const Graph& g, const ModelParams& params, const Caps& caps = {});

StochasticMatrix build_dynamics_matrix(Dynamics d, const Graph& g, const ModelParams& params,
                                       const Caps& caps = {});

// --- samplers ----------------------------------------------------------------
//
// Draw order is fixed per sampler and documented at each function; the same
// source state therefore yields the same trajectory.

/// One Swendsen-Wang move. Draws one colour per component, in ascending order
/// of component label, then one retention coin per monochromatic edge in
/// ascending edge index.
template <UniformSource R>
EdgeSubset sw_step(const Graph& g, const ModelParams& params, const EdgeSubset& a, R& rng) {
  const std::size_t q = params.q_colors();
  const Components comps = components(g, a);
  std::vector<std::uint64_t> color(g.num_vertices(), 0);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (comps.label[v] == v) color[v] = rng.below(q);
  }
  EdgeSubset next(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    if (color[comps.label[edge.u]] != color[comps.label[edge.v]]) continue;
    if (rng.uniform01() < params.p()) next.insert(e);
  }
  return next;
}

/// Non-lazy single-bond move: draws the edge, then the retention coin.
template <UniformSource R>
EdgeSubset single_bond_update(const Graph& g, const ModelParams& params, const EdgeSubset& a, R& rng) {
  const auto e = static_cast<std::size_t>(rng.below(g.num_edges()));
  const bool joined = connected_in(g, a, g.edge(e).u, g.edge(e).v);
  const double keep = joined ? params.p() : params.p() / params.q();
  return rng.uniform01() < keep ? a.with(e) : a.without(e);
}

/// One lazy single-bond move. Draws the laziness coin, then the edge, then the
/// retention coin.
template <UniformSource R>
EdgeSubset sb_step(const Graph& g, const ModelParams& params, const EdgeSubset& a, R& rng) {
  if (rng.uniform01() < 0.5) return a;
  return single_bond_update(g, params, a, rng);
}

/// One lazy heat-bath move: laziness coin, edge, then resample e from mu
/// conditioned on the other edges.
template <UniformSource R>
EdgeSubset heatbath_step(const Graph& g, const ModelParams& params, const EdgeSubset& a, R& rng) {
  if (rng.uniform01() < 0.5) return a;
  const auto e = static_cast<std::size_t>(rng.below(g.num_edges()));
  const EdgeSubset open = a.without(e);
  const bool bridge = !connected_in(g, open, g.edge(e).u, g.edge(e).v);
  // log mu(A u e) - log mu(A \ e)
  const double log_ratio = params.log_odds() - (bridge ? std::log(params.q()) : 0.0);
  const double keep = 1.0 / (1.0 + std::exp(-log_ratio));
  return rng.uniform01() < keep ? a.with(e) : open;
}

/// One lazy Metropolis move: laziness coin, edge, then acceptance coin for A xor e.
template <UniformSource R>
EdgeSubset metropolis_step(const Graph& g, const ModelParams& params, const EdgeSubset& a, R& rng) {
  if (rng.uniform01() < 0.5) return a;
  const auto e = static_cast<std::size_t>(rng.below(g.num_edges()));
  EdgeSubset proposal = a;
  proposal.toggle(e);
  const double log_ratio = rc_log_weight(g, params, proposal).value - rc_log_weight(g, params, a).value;
  const double accept = log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
  return rng.uniform01() < accept ? proposal : a;
}

/// Dispatches to the sampler for `d`. Non-lazy single-bond skips the laziness coin.
EdgeSubset dynamics_step(Dynamics d, const Graph& g, const ModelParams& params, const EdgeSubset& a,
                         CounterRng& rng);

}  // namespace rcdyn
