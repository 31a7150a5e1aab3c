#include "rcdyn/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "rcdyn/errors.hpp"

namespace rcdyn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_rc_mask_width(const Graph& g) {
  if (g.num_edges() > 63) throw SizeError("random-cluster state space over too many edges", g.num_edges(), 63);
}

}  // namespace

ModelParams::ModelParams(double p, double q) : p_(p), q_(q) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0, 1), got " + std::to_string(p));
  if (!(q >= 1.0) || !std::isfinite(q)) throw ParameterError("q must be >= 1, got " + std::to_string(q));
  beta_ = -std::log1p(-p);
  log_odds_ = std::log(p) - std::log1p(-p);
}

ModelParams ModelParams::from_beta(double beta, double q) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be positive and finite");
  return ModelParams(-std::expm1(-beta), q);
}

bool ModelParams::has_integer_q() const noexcept { return q_ == std::floor(q_) && q_ < 1e9; }

std::size_t ModelParams::q_colors() const {
  if (!has_integer_q()) {
    throw ParameterError("q must be an integer for Potts, joint and Swendsen-Wang objects, got " +
                         std::to_string(q_));
  }
  return static_cast<std::size_t>(q_);
}

double LogWeight::exp() const { return std::exp(value); }

// ---------------------------------------------------------------------------

SpinConfig::SpinConfig(std::size_t q, std::vector<int> colors) : q_(q), colors_(std::move(colors)) {
  if (q < 1) throw ParameterError("spin configuration needs q >= 1");
  for (int c : colors_) {
    if (c < 1 || static_cast<std::size_t>(c) > q) throw ParameterError("colour outside 1..q");
  }
}

SpinConfig SpinConfig::from_index(std::size_t n_vertices, std::size_t q, std::uint64_t index) {
  std::vector<int> colors(n_vertices);
  for (auto& c : colors) {
    c = static_cast<int>(index % q) + 1;
    index /= q;
  }
  if (index != 0) throw ParameterError("spin index out of range");
  return SpinConfig(q, std::move(colors));
}

SpinConfig SpinConfig::constant(std::size_t n_vertices, std::size_t q, int color) {
  return SpinConfig(q, std::vector<int>(n_vertices, color));
}

std::uint64_t SpinConfig::index() const {
  std::uint64_t idx = 0;
  for (std::size_t v = colors_.size(); v-- > 0;) idx = idx * q_ + static_cast<std::uint64_t>(colors_[v] - 1);
  return idx;
}

// ---------------------------------------------------------------------------

std::size_t rc_state_count(const Graph& g, const Caps& caps) {
  require_rc_mask_width(g);
  std::size_t n = std::size_t{1} << g.num_edges();
  require_within(n, caps.rc_states, "random-cluster state space");
  return n;
}

std::size_t spin_state_count(const Graph& g, std::size_t q, const Caps& caps) {
  std::size_t n = saturating_pow(q, g.num_vertices());
  require_within(n, caps.spin_states, "Potts configuration space");
  return n;
}

std::size_t joint_state_count(const Graph& g, std::size_t q, const Caps& caps) {
  require_rc_mask_width(g);
  std::size_t spins = saturating_pow(q, g.num_vertices());
  std::size_t subsets = std::size_t{1} << g.num_edges();
  const std::size_t n = spins > SIZE_MAX / subsets ? SIZE_MAX : spins * subsets;
  require_within(n, caps.joint_states, "joint state space");
  return n;
}

// ---------------------------------------------------------------------------

LogWeight rc_log_weight(const Graph& g, const ModelParams& params, const EdgeSubset& a) {
  const auto c = components(g, a).count;
  return {static_cast<double>(a.size()) * params.log_odds() + static_cast<double>(c) * std::log(params.q())};
}

LogWeight rc_log_weight(const Graph& g, const ModelParams& params, std::uint64_t mask) {
  const auto c = component_count(g, mask);
  return {static_cast<double>(std::popcount(mask)) * params.log_odds() +
          static_cast<double>(c) * std::log(params.q())};
}

double log_sum_exp(const std::vector<double>& values) {
  if (values.empty()) return kNegInf;
  const double top = *std::max_element(values.begin(), values.end());
  if (top == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - top);
  return top + std::log(sum);
}

namespace {

std::vector<double> rc_log_weights(const Graph& g, const ModelParams& params, const Caps& caps) {
  const std::size_t n = rc_state_count(g, caps);
  std::vector<double> logw(n);
  for (std::uint64_t mask = 0; mask < n; ++mask) logw[mask] = rc_log_weight(g, params, mask).value;
  return logw;
}

}  // namespace

LogWeight rc_log_partition(const Graph& g, const ModelParams& params, const Caps& caps) {
  return {log_sum_exp(rc_log_weights(g, params, caps))};
}

double rc_prob(const Graph& g, const ModelParams& params, const EdgeSubset& a, const Caps& caps) {
  return std::exp(rc_log_weight(g, params, a).value - rc_log_partition(g, params, caps).value);
}

std::vector<double> rc_distribution(const Graph& g, const ModelParams& params, const Caps& caps) {
  std::vector<double> logw = rc_log_weights(g, params, caps);
  const double log_z = log_sum_exp(logw);
  for (double& w : logw) w = std::exp(w - log_z);
  return logw;
}

// ---------------------------------------------------------------------------

EdgeSubset monochromatic_edges(const Graph& g, const SpinConfig& sigma) {
  if (sigma.size() != g.num_vertices()) throw ParameterError("spin configuration does not match graph");
  EdgeSubset out(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (sigma.color(g.edge(e).u) == sigma.color(g.edge(e).v)) out.insert(e);
  }
  return out;
}

std::uint64_t monochromatic_mask(const Graph& g, const SpinConfig& sigma) {
  require_rc_mask_width(g);
  return monochromatic_edges(g, sigma).index();
}

bool in_omega(const Graph& g, const SpinConfig& sigma, const EdgeSubset& a) {
  if (sigma.size() != g.num_vertices() || a.num_edges() != g.num_edges()) {
    throw ParameterError("configuration and edge subset must belong to the same graph");
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (a.contains(e) && sigma.color(g.edge(e).u) != sigma.color(g.edge(e).v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

LogWeight potts_log_weight(const Graph& g, double beta, const SpinConfig& sigma) {
  return {beta * static_cast<double>(monochromatic_edges(g, sigma).size())};
}

namespace {

std::vector<double> potts_log_weights(const Graph& g, double beta, std::size_t q, const Caps& caps) {
  const std::size_t n = spin_state_count(g, q, caps);
  std::vector<double> logw(n);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    logw[idx] = potts_log_weight(g, beta, SpinConfig::from_index(g.num_vertices(), q, idx)).value;
  }
  return logw;
}

}  // namespace

LogWeight potts_log_prob(const Graph& g, const ModelParams& params, const SpinConfig& sigma, const Caps& caps) {
  if (sigma.q() != params.q_colors()) throw ParameterError("spin configuration uses a different q");
  spin_state_count(g, sigma.q(), caps);
  return {potts_log_weight(g, params.beta(), sigma).value - rc_log_partition(g, params, caps).value};
}

std::vector<double> potts_distribution(const Graph& g, const ModelParams& params, const Caps& caps) {
  std::vector<double> logw = potts_log_weights(g, params.beta(), params.q_colors(), caps);
  const double log_z = rc_log_partition(g, params, caps).value;
  for (double& w : logw) w = std::exp(w - log_z);
  return logw;
}

LogWeight potts_log_partition_direct(const Graph& g, double beta, std::size_t q, const Caps& caps) {
  if (beta < 0.0) throw ParameterError("beta must be non-negative");
  return {log_sum_exp(potts_log_weights(g, beta, q, caps))};
}

std::vector<double> potts_distribution_at_beta(const Graph& g, double beta, std::size_t q, const Caps& caps) {
  if (beta < 0.0) throw ParameterError("beta must be non-negative");
  std::vector<double> logw = potts_log_weights(g, beta, q, caps);
  const double log_z = log_sum_exp(logw);
  for (double& w : logw) w = std::exp(w - log_z);
  return logw;
}

// ---------------------------------------------------------------------------

LogWeight fkes_log_prob(const Graph& g, const ModelParams& params, const SpinConfig& sigma, const EdgeSubset& a,
                        const Caps& caps) {
  joint_state_count(g, params.q_colors(), caps);
  if (sigma.q() != params.q_colors()) throw ParameterError("spin configuration uses a different q");
  if (!in_omega(g, sigma, a)) return {kNegInf};
  return {static_cast<double>(a.size()) * params.log_odds() - rc_log_partition(g, params, caps).value};
}

std::vector<double> fkes_distribution(const Graph& g, const ModelParams& params, const Caps& caps) {
  const std::size_t q = params.q_colors();
  const std::size_t n = joint_state_count(g, q, caps);
  const std::size_t spins = spin_state_count(g, q, caps);
  const std::size_t m = g.num_edges();
  const double log_z = rc_log_partition(g, params, caps).value;

  std::vector<double> out(n, 0.0);
  for (std::uint64_t s = 0; s < spins; ++s) {
    const std::uint64_t mono = monochromatic_mask(g, SpinConfig::from_index(g.num_vertices(), q, s));
    // Enumerate every A inside E(sigma); all other entries stay zero.
    std::uint64_t a = mono;
    while (true) {
      out[JointIndex{s, a}.compose(m)] =
          std::exp(static_cast<double>(std::popcount(a)) * params.log_odds() - log_z);
      if (a == 0) break;
      a = (a - 1) & mono;
    }
  }
  return out;
}

}  // namespace rcdyn
