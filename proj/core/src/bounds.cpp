#include "rcdyn/bounds.hpp"

#include <cmath>

#include "rcdyn/errors.hpp"

namespace rcdyn {

BoundReport width_gap_bound(std::size_t num_edges, double q, std::size_t ell) {
  if (num_edges == 0) throw ParameterError("width bound needs at least one edge");
  if (!(q >= 1.0)) throw ParameterError("q must be >= 1");
  BoundReport report;
  report.name = "width_gap_bound";
  report.inputs = {{"edges", static_cast<double>(num_edges)}, {"q", q}, {"ell", static_cast<double>(ell)}};
  report.value = std::log(4.0 * static_cast<double>(num_edges) * static_cast<double>(num_edges)) +
                 static_cast<double>(ell + 1) * std::log(q);
  report.log_scale = true;
  return report;
}

namespace {

double single_edge_slowdown(const ModelParams& params) { return 1.0 - params.p() * (1.0 - 1.0 / params.q()); }

void require_tree(const Graph& g) {
  if (!g.is_tree() || g.num_edges() == 0) throw ParameterError("graph must be a tree with at least one edge");
}

}  // namespace

double tree_gap_exact(const Graph& tree, const ModelParams& params) {
  require_tree(tree);
  return single_edge_slowdown(params) / (2.0 * static_cast<double>(tree.num_edges()));
}

double sw_tree_bound(const Graph& tree, const ModelParams& params) {
  require_tree(tree);
  return 2.0 * static_cast<double>(tree.num_edges()) / single_edge_slowdown(params);
}

double mixing_comparison_factor(const Graph& g, const ModelParams& params) {
  return 3.0 + static_cast<double>(g.num_edges()) * -std::log(params.p() * (1.0 - params.p())) +
         static_cast<double>(g.num_vertices()) * std::log(params.q());
}

double torus_k1(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("p must lie in (0, 1)");
  return std::log(1.0 - std::log(p * (1.0 - p)));
}

double torus_k2(double q) {
  if (!(q >= 1.0)) throw ParameterError("q must be >= 1");
  return 4.0 + 3.0 * std::log(q) + std::log(1.0 + std::log(q));
}

BoundReport torus_upper_bound(const ModelParams& params, std::size_t side, std::size_t dim) {
  if (side < 2 || dim < 2) throw ParameterError("torus bound needs L >= 2 and d >= 2");
  params.q_colors();
  BoundReport report;
  report.name = "torus_upper_bound";
  report.inputs = {{"p", params.p()}, {"q", params.q()}, {"L", static_cast<double>(side)}, {"d", static_cast<double>(dim)}};
  const double k1 = torus_k1(params.p());
  const double k2 = torus_k2(params.q());
  report.terms = {{"k1", k1}, {"k2", k2}};
  report.value = k1 + k2 * std::pow(static_cast<double>(side), static_cast<double>(dim - 1));
  report.log_scale = true;
  return report;
}

double potts_transition_beta_leading(double q, std::size_t dim) {
  if (!(q >= 2.0)) throw ParameterError("q must be >= 2");
  if (dim < 2) throw ParameterError("dimension must be >= 2");
  return std::log(q) / static_cast<double>(dim);
}

}  // namespace rcdyn
