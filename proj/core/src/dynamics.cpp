#include "rcdyn/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "rcdyn/errors.hpp"

namespace rcdyn {

StochasticMatrix::StochasticMatrix(DenseMatrix entries, std::vector<double> stationary, bool lazy)
    : entries_(std::move(entries)), stationary_(std::move(stationary)), lazy_(lazy) {
  if (entries_.rows() != entries_.cols()) throw ParameterError("transition matrix must be square");
  if (stationary_.size() != entries_.rows()) throw ParameterError("stationary vector length mismatch");
}

double StochasticMatrix::row_sum_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double sum = 0.0;
    for (double x : entries_.row(i)) sum += x;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

double StochasticMatrix::stationarity_error() const {
  const std::vector<double> moved = left_multiply(stationary_, entries_);
  double worst = 0.0;
  for (std::size_t j = 0; j < size(); ++j) worst = std::max(worst, std::abs(moved[j] - stationary_[j]));
  return worst;
}

std::string_view dynamics_name(Dynamics d) {
  switch (d) {
    case Dynamics::swendsen_wang: return "sw";
    case Dynamics::single_bond: return "sb";
    case Dynamics::single_bond_nonlazy: return "sb-nonlazy";
    case Dynamics::heat_bath: return "heatbath";
    case Dynamics::metropolis: return "metropolis";
  }
  return "unknown";
}

std::optional<Dynamics> parse_dynamics(std::string_view name) {
  for (Dynamics d : kAllDynamics) {
    if (dynamics_name(d) == name) return d;
  }
  return std::nullopt;
}

namespace {

std::size_t matrix_dimension(const Graph& g, const Caps& caps) {
  if (g.num_edges() > 62) throw SizeError("transition matrix over too many edges", g.num_edges(), 62);
  const std::size_t n = std::size_t{1} << g.num_edges();
  require_within(n, caps.matrix_states, "dense transition matrix");
  return n;
}

void require_edges(const Graph& g) {
  if (g.num_edges() == 0) throw ParameterError("single-edge dynamics need at least one edge");
}

// Per-state data shared by the local-update builders.
struct LocalState {
  std::vector<double> log_weight;             // unnormalised log mu
  std::vector<std::vector<Vertex>> label;  // component labels of (V, A)
};

LocalState local_states(const Graph& g, const ModelParams& params, std::size_t n) {
  LocalState s;
  s.log_weight.resize(n);
  s.label.resize(n);
  for (std::uint64_t a = 0; a < n; ++a) {
    Components c = components(g, a);
    s.log_weight[a] = static_cast<double>(std::popcount(a)) * params.log_odds() +
                      static_cast<double>(c.count) * std::log(params.q());
    s.label[a] = std::move(c.label);
  }
  return s;
}

// Adds weight * P_e(a, .) into `row`.
void accumulate_single_edge(const Graph& g, const ModelParams& params, const LocalState& s, std::uint64_t a,
                            std::size_t e, double weight, std::span<double> row) {
  const Edge& edge = g.edge(e);
  const bool joined = s.label[a][edge.u] == s.label[a][edge.v];
  const double up = joined ? params.p() : params.p() / params.q();
  const std::uint64_t bit = std::uint64_t{1} << e;
  row[a | bit] += weight * up;
  row[a & ~bit] += weight * (1.0 - up);
}

void complete_diagonal(DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j != i) off += m(i, j);
    }
    m(i, i) = 1.0 - off;
  }
}

}  // namespace

StochasticMatrix sw_matrix(const Graph& g, const ModelParams& params, const Caps& caps) {
  const std::size_t q = params.q_colors();
  const std::size_t n = matrix_dimension(g, caps);
  const std::size_t spins = spin_state_count(g, q, caps);
  const std::size_t m = g.num_edges();

  // weight[M] = sum over sigma with E(sigma) = M of (1-p)^|M|.
  std::vector<double> weight(n, 0.0);
  const double log_keep_none = std::log1p(-params.p());
  for (std::uint64_t s = 0; s < spins; ++s) {
    const std::uint64_t mono = monochromatic_mask(g, SpinConfig::from_index(g.num_vertices(), q, s));
    weight[mono] += std::exp(static_cast<double>(std::popcount(mono)) * log_keep_none);
  }
  // Superset sums: weight[U] = sum over sigma in Omega(U) of (1-p)^|E(sigma)|.
  for (std::size_t bit = 0; bit < m; ++bit) {
    for (std::uint64_t u = 0; u < n; ++u) {
      if (!((u >> bit) & 1U)) weight[u] += weight[u | (std::uint64_t{1} << bit)];
    }
  }
  std::vector<double> log_superset(n);
  for (std::size_t u = 0; u < n; ++u) log_superset[u] = std::log(weight[u]);

  const double log_q = std::log(params.q());
  DenseMatrix entries(n, n);
  for (std::uint64_t a = 0; a < n; ++a) {
    const double row_scale = -static_cast<double>(component_count(g, a)) * log_q;
    for (std::uint64_t b = 0; b < n; ++b) {
      const double log_entry =
          row_scale + static_cast<double>(std::popcount(b)) * params.log_odds() + log_superset[a | b];
      entries(a, b) = std::exp(log_entry);
    }
  }
  return StochasticMatrix(std::move(entries), rc_distribution(g, params, caps), false);
}

StochasticMatrix single_edge_matrix(const Graph& g, const ModelParams& params, std::size_t e, const Caps& caps) {
  if (e >= g.num_edges()) throw ParameterError("edge index out of range");
  const std::size_t n = matrix_dimension(g, caps);
  const LocalState s = local_states(g, params, n);
  DenseMatrix entries(n, n);
  for (std::uint64_t a = 0; a < n; ++a) accumulate_single_edge(g, params, s, a, e, 1.0, entries.row(a));
  return StochasticMatrix(std::move(entries), rc_distribution(g, params, caps), false);
}

StochasticMatrix sb_matrix(const Graph& g, const ModelParams& params, Laziness laziness, const Caps& caps) {
  require_edges(g);
  const std::size_t n = matrix_dimension(g, caps);
  const LocalState s = local_states(g, params, n);
  const bool lazy = laziness == Laziness::lazy;
  const double weight = (lazy ? 0.5 : 1.0) / static_cast<double>(g.num_edges());
  DenseMatrix entries(n, n);
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::size_t e = 0; e < g.num_edges(); ++e) accumulate_single_edge(g, params, s, a, e, weight, entries.row(a));
    if (lazy) entries(a, a) += 0.5;
  }
  return StochasticMatrix(std::move(entries), rc_distribution(g, params, caps), lazy);
}

StochasticMatrix heatbath_matrix(const Graph& g, const ModelParams& params, const Caps& caps) {
  require_edges(g);
  const std::size_t n = matrix_dimension(g, caps);
  const LocalState s = local_states(g, params, n);
  const double weight = 0.5 / static_cast<double>(g.num_edges());
  DenseMatrix entries(n, n);
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const std::uint64_t b = a ^ (std::uint64_t{1} << e);
      // mu(B) / (mu(A) + mu(B)), with {A, B} = {A u e, A \ e}.
      entries(a, b) = weight / (1.0 + std::exp(s.log_weight[a] - s.log_weight[b]));
    }
  }
  complete_diagonal(entries);
  return StochasticMatrix(std::move(entries), rc_distribution(g, params, caps), true);
}

StochasticMatrix metropolis_matrix(const Graph& g, const ModelParams& params, const Caps& caps) {
  require_edges(g);
  const std::size_t n = matrix_dimension(g, caps);
  const LocalState s = local_states(g, params, n);
  const double weight = 0.5 / static_cast<double>(g.num_edges());
  DenseMatrix entries(n, n);
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const std::uint64_t b = a ^ (std::uint64_t{1} << e);
      const double log_ratio = s.log_weight[b] - s.log_weight[a];
      entries(a, b) = weight * (log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio));
    }
  }
  complete_diagonal(entries);
  return StochasticMatrix(std::move(entries), rc_distribution(g, params, caps), true);
}

StochasticMatrix build_dynamics_matrix(Dynamics d, const Graph& g, const ModelParams& params, const Caps& caps) {
  switch (d) {
    case Dynamics::swendsen_wang: return sw_matrix(g, params, caps);
    case Dynamics::single_bond: return sb_matrix(g, params, Laziness::lazy, caps);
    case Dynamics::single_bond_nonlazy: return sb_matrix(g, params, Laziness::non_lazy, caps);
    case Dynamics::heat_bath: return heatbath_matrix(g, params, caps);
    case Dynamics::metropolis: return metropolis_matrix(g, params, caps);
  }
  throw ParameterError("unknown dynamics");
}

EdgeSubset dynamics_step(Dynamics d, const Graph& g, const ModelParams& params, const EdgeSubset& a,
                         CounterRng& rng) {
  switch (d) {
    case Dynamics::swendsen_wang: return sw_step(g, params, a, rng);
    case Dynamics::single_bond: return sb_step(g, params, a, rng);
    case Dynamics::single_bond_nonlazy: return single_bond_update(g, params, a, rng);
    case Dynamics::heat_bath: return heatbath_step(g, params, a, rng);
    case Dynamics::metropolis: return metropolis_step(g, params, a, rng);
  }
  throw ParameterError("unknown dynamics");
}

}  // namespace rcdyn
