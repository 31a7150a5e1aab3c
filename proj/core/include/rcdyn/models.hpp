#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rcdyn/caps.hpp"
#include "rcdyn/graph.hpp"

namespace rcdyn {

/// Random-cluster / Potts parameters. p is the edge probability in (0, 1),
/// q >= 1 the cluster weight, and beta = -log(1 - p) the matching Potts
/// inverse temperature.
class ModelParams {
 public:
  ModelParams(double p, double q);
  static ModelParams from_beta(double beta, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double beta() const noexcept { return beta_; }
  /// log(p / (1 - p)).
  double log_odds() const noexcept { return log_odds_; }
  bool has_integer_q() const noexcept;
  /// q as an integer; throws ParameterError for non-integer q.
  std::size_t q_colors() const;

 private:
  double p_;
  double q_;
  double beta_;
  double log_odds_;
};

/// Natural-log weight or probability.
struct LogWeight {
  double value = 0.0;

  double exp() const;
  friend auto operator<=>(const LogWeight&, const LogWeight&) = default;
};

/// Colour per vertex, colours in 1..q.
class SpinConfig {
 public:
  SpinConfig(std::size_t q, std::vector<int> colors);
  /// Base-q digits of `index`, vertex 0 least significant; digit d is colour d+1.
  static SpinConfig from_index(std::size_t n_vertices, std::size_t q, std::uint64_t index);
  static SpinConfig constant(std::size_t n_vertices, std::size_t q, int color);

  std::size_t q() const noexcept { return q_; }
  std::size_t size() const noexcept { return colors_.size(); }
  int color(Vertex v) const { return colors_.at(v); }
  const std::vector<int>& colors() const noexcept { return colors_; }
  std::uint64_t index() const;

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

 private:
  std::size_t q_;
  std::vector<int> colors_;
};

// State-space sizes. Each throws SizeError when the relevant cap is exceeded.
std::size_t rc_state_count(const Graph& g, const Caps& caps = {});
std::size_t spin_state_count(const Graph& g, std::size_t q, const Caps& caps = {});
std::size_t joint_state_count(const Graph& g, std::size_t q, const Caps& caps = {});

/// Joint state (sigma, A) packed as spin_index * 2^|E| + subset_index.
struct JointIndex {
  std::uint64_t spin = 0;
  std::uint64_t subset = 0;

  static JointIndex decompose(std::uint64_t joint, std::size_t num_edges) {
    return {joint >> num_edges, joint & ((std::uint64_t{1} << num_edges) - 1)};
  }
  std::uint64_t compose(std::size_t num_edges) const { return (spin << num_edges) | subset; }

  friend bool operator==(const JointIndex&, const JointIndex&) = default;
};

// --- random-cluster measure -------------------------------------------------

/// |A| log(p/(1-p)) + c(A) log q, unnormalised.
LogWeight rc_log_weight(const Graph& g, const ModelParams& params, const EdgeSubset& a);
LogWeight rc_log_weight(const Graph& g, const ModelParams& params, std::uint64_t mask);
/// log Z(G, p, q).
LogWeight rc_log_partition(const Graph& g, const ModelParams& params, const Caps& caps = {});
double rc_prob(const Graph& g, const ModelParams& params, const EdgeSubset& a, const Caps& caps = {});
/// mu over all 2^|E| subsets, indexed by subset mask.
std::vector<double> rc_distribution(const Graph& g, const ModelParams& params, const Caps& caps = {});

// --- structural maps --------------------------------------------------------

/// E(sigma): edges whose endpoints share a colour.
EdgeSubset monochromatic_edges(const Graph& g, const SpinConfig& sigma);
std::uint64_t monochromatic_mask(const Graph& g, const SpinConfig& sigma);
/// sigma in Omega(A), i.e. A is a subset of E(sigma).
bool in_omega(const Graph& g, const SpinConfig& sigma, const EdgeSubset& a);

// --- Potts measure ----------------------------------------------------------

/// beta * #monochromatic edges, unnormalised.
LogWeight potts_log_weight(const Graph& g, double beta, const SpinConfig& sigma);
/// log pi(sigma), normalised by the random-cluster partition function.
LogWeight potts_log_prob(const Graph& g, const ModelParams& params, const SpinConfig& sigma, const Caps& caps = {});
/// pi over all q^|V| configurations, indexed by spin index.
std::vector<double> potts_distribution(const Graph& g, const ModelParams& params, const Caps& caps = {});
/// log of the Potts partition sum computed directly over configurations.
/// Accepts beta = 0, which ModelParams cannot represent.
LogWeight potts_log_partition_direct(const Graph& g, double beta, std::size_t q, const Caps& caps = {});
std::vector<double> potts_distribution_at_beta(const Graph& g, double beta, std::size_t q, const Caps& caps = {});

// --- FKES joint measure -----------------------------------------------------

/// log mu_bar(sigma, A); -infinity off the support (A not inside E(sigma)).
LogWeight fkes_log_prob(const Graph& g, const ModelParams& params, const SpinConfig& sigma, const EdgeSubset& a,
                        const Caps& caps = {});
/// mu_bar over the joint space, indexed by JointIndex::compose.
std::vector<double> fkes_distribution(const Graph& g, const ModelParams& params, const Caps& caps = {});

/// log(sum_i exp(x_i)) with max shift; -infinity for an empty or all -inf input.
double log_sum_exp(const std::vector<double>& values);

}  // namespace rcdyn
