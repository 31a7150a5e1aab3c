#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcdyn/bounds.hpp"
#include "rcdyn/dynamics.hpp"
#include "rcdyn/errors.hpp"
#include "rcdyn/graph_io.hpp"
#include "rcdyn/models.hpp"
#include "rcdyn/spectral.hpp"
#include "rcdyn/verification.hpp"

namespace rcdyn::cli {

namespace {

using nlohmann::json;

std::string num(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

struct ModelArgs {
  std::string graph;
  std::optional<double> p;
  std::optional<double> beta;
  double q = 2.0;

  void attach(CLI::App* cmd, bool need_graph = true) {
    auto* g = cmd->add_option("--graph", graph, "Graph file (JSON) or builtin such as torus:3,2, path:4");
    if (need_graph) g->required();
    auto* po = cmd->add_option("--p", p, "Edge probability in (0, 1)");
    cmd->add_option("--beta", beta, "Potts inverse temperature; p = 1 - exp(-beta)")->excludes(po);
    cmd->add_option("--q", q, "Cluster weight / number of colours")->capture_default_str();
  }

  ModelParams params() const {
    if (beta) return ModelParams::from_beta(*beta, q);
    if (!p) throw ParameterError("one of --p or --beta is required");
    return ModelParams(*p, q);
  }
};

Dynamics dynamics_or_throw(const std::string& name) {
  if (auto d = parse_dynamics(name)) return *d;
  throw ParameterError("unknown dynamics '" + name + "' (expected sw, sb, sb-nonlazy, heatbath, metropolis)");
}

json check_json(Suite suite, const CheckResult& r) {
  return {{"suite", suite_name(suite)},     {"check", r.check},         {"subject", r.subject},
          {"max_violation", r.max_violation}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

// --- subcommands -------------------------------------------------------------

struct GapArgs {
  ModelArgs model;
  std::string dynamics = "sw";
  std::string format = "json";
};

int cmd_gap(const GapArgs& a, const Caps& caps, std::ostream& out) {
  const Graph g = resolve_graph_source(a.model.graph);
  const ModelParams params = a.model.params();
  const Dynamics d = dynamics_or_throw(a.dynamics);
  const StochasticMatrix p = build_dynamics_matrix(d, g, params, caps);
  const SpectrumResult s = spectral_gap(p, caps);
  if (a.format == "csv") {
    out << "graph,p,q,dynamics,gap,second_eigenvalue,dim,reversibility_error\n"
        << a.model.graph << ',' << num(params.p()) << ',' << num(params.q()) << ',' << dynamics_name(d) << ','
        << num(s.gap) << ',' << num(s.second_eigenvalue) << ',' << p.size() << ',' << num(s.reversibility_error)
        << '\n';
  } else {
    out << json{{"graph", a.model.graph},
                {"p", params.p()},
                {"q", params.q()},
                {"dynamics", dynamics_name(d)},
                {"gap", s.gap},
                {"second_eigenvalue", s.second_eigenvalue},
                {"dim", p.size()},
                {"reversibility_error", s.reversibility_error}}
               .dump()
        << '\n';
  }
  return kOk;
}

struct VerifyArgs {
  std::vector<std::string> suites{"all"};
  std::vector<double> p;
  std::vector<double> q;
  std::size_t max_vertices = 0;
  bool deterministic_order = false;
};

int cmd_verify(const VerifyArgs& a, const Caps& caps, std::ostream& out, std::ostream& err) {
  std::vector<Suite> selected;
  for (const std::string& name : a.suites) {
    if (name == "all") {
      selected.assign(std::begin(kAllSuites), std::end(kAllSuites));
    } else if (auto s = parse_suite(name)) {
      selected.push_back(*s);
    } else {
      throw ParameterError("unknown suite '" + name + "'");
    }
  }
  SuiteOptions options;
  options.p_values = a.p;
  options.q_values = a.q;
  options.max_vertices = a.max_vertices;
  options.caps = caps;
  // Suites run sequentially, so output order is already deterministic.
  const CheckSink sink = [&out](Suite s, const CheckResult& r) { out << check_json(s, r).dump() << '\n'; };
  SuiteSummary total;
  std::vector<std::string> names;
  for (Suite s : selected) {
    total.merge(run_suite(s, options, sink));
    names.emplace_back(suite_name(s));
  }
  json summary = {{"aggregate", true},
                  {"suites", names},
                  {"checks", total.checks},
                  {"failures", total.failures},
                  {"pass", total.failures == 0}};
  if (total.worst) {
    summary["worst"] = {{"check", total.worst->check},
                        {"subject", total.worst->subject},
                        {"max_violation", total.worst->max_violation},
                        {"tolerance", total.worst->tolerance}};
  }
  out << summary.dump() << '\n';
  if (total.failures == 0) return kOk;
  err << "verification failed: " << total.failures << " of " << total.checks << " checks; worst "
      << total.worst->check << " [" << total.worst->subject << "] violation " << num(total.worst->max_violation)
      << " > " << num(total.worst->tolerance) << '\n';
  return kVerificationFailed;
}

struct SampleArgs {
  ModelArgs model;
  std::string dynamics = "sw";
  std::uint64_t seed = 0;
  std::size_t steps = 10;
  std::uint64_t start = 0;
  std::size_t chains = 0;
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const Graph g = resolve_graph_source(a.model.graph);
  const ModelParams params = a.model.params();
  const Dynamics d = dynamics_or_throw(a.dynamics);
  require_within(g.num_edges(), 63, "sampled graph edge count");
  if (a.start >> g.num_edges() != 0) throw ParameterError("--start is not a state index of this graph");
  if (d == Dynamics::swendsen_wang) params.q_colors();
  const EdgeSubset initial = EdgeSubset::from_index(g.num_edges(), a.start);
  CounterRng rng(a.seed);

  if (a.chains == 0) {
    out << "step,state_index,edges,components\n";
    EdgeSubset state = initial;
    for (std::size_t t = 0;; ++t) {
      out << t << ',' << state.index() << ',' << state.size() << ',' << components(g, state).count << '\n';
      if (t == a.steps) break;
      state = dynamics_step(d, g, params, state, rng);
    }
    return kOk;
  }

  std::map<std::uint64_t, std::size_t> census;
  for (std::size_t c = 0; c < a.chains; ++c) {
    EdgeSubset state = initial;
    for (std::size_t t = 0; t < a.steps; ++t) state = dynamics_step(d, g, params, state, rng);
    ++census[state.index()];
  }
  out << "state_index,count,frequency\n";
  for (const auto& [index, count] : census) {
    out << index << ',' << count << ',' << num(static_cast<double>(count) / static_cast<double>(a.chains)) << '\n';
  }
  return kOk;
}

struct SweepArgs {
  std::string graph;
  std::vector<double> p;
  std::vector<double> q{2.0};
};

int cmd_sweep(const SweepArgs& a, const Caps& caps, std::ostream& out) {
  const Graph g = resolve_graph_source(a.graph);
  out << "p,q,gap_sw,gap_sb,ratio,factor\n";
  for (double q : a.q) {
    for (double p : a.p) {
      const ModelParams params(p, q);
      const double sw = spectral_gap(sw_matrix(g, params, caps), caps).gap;
      const double sb = spectral_gap(sb_matrix(g, params, Laziness::lazy, caps), caps).gap;
      out << num(p) << ',' << num(q) << ',' << num(sw) << ',' << num(sb) << ',' << num(sw / sb) << ','
          << num(mixing_comparison_factor(g, params)) << '\n';
    }
  }
  return kOk;
}

struct BoundsArgs {
  double p = 0.5;
  double q = 2.0;
  std::size_t side = 2;
  std::size_t dim = 2;
  ModelArgs model;
  std::string width_graph;
  double beta0_q = 2.0;
  std::size_t beta0_dim = 2;
};

json terms_json(const BoundReport& r) {
  json out = json::object();
  for (const auto& [name, value] : r.terms) out[name] = value;
  return out;
}

int cmd_bounds_torus(const BoundsArgs& a, std::ostream& out) {
  const BoundReport r = torus_upper_bound(ModelParams(a.p, a.q), a.side, a.dim);
  json doc = terms_json(r);
  doc["log_bound"] = r.value;
  doc["linear_width_bound"] = torus_linear_width_bound(a.side, a.dim);
  out << doc.dump() << '\n';
  return kOk;
}

int cmd_bounds_width(const BoundsArgs& a, std::ostream& out) {
  const Graph g = resolve_graph_source(a.width_graph);
  const WidthResult bw = bandwidth_exact(g);
  const WidthResult lw = linear_width_exact(g);
  json doc = {{"bandwidth", bw.width},
              {"linear_width", lw.width},
              {"witnesses", {{"bandwidth", bw.witness}, {"linear_width", lw.witness}}}};
  if (g.num_edges() > 0) doc["log_inverse_gap_bound_q2"] = width_gap_bound(g.num_edges(), 2.0, lw.width).value;
  out << doc.dump() << '\n';
  return kOk;
}

int cmd_bounds_tree(const BoundsArgs& a, std::ostream& out) {
  const Graph g = resolve_graph_source(a.model.graph);
  const ModelParams params = a.model.params();
  out << json{{"tree_gap_sb", tree_gap_exact(g, params)}, {"sw_inverse_gap_bound", sw_tree_bound(g, params)}}.dump()
      << '\n';
  return kOk;
}

int cmd_bounds_factor(const BoundsArgs& a, std::ostream& out) {
  const Graph g = resolve_graph_source(a.model.graph);
  out << json{{"factor", mixing_comparison_factor(g, a.model.params())}}.dump() << '\n';
  return kOk;
}

int cmd_bounds_beta0(const BoundsArgs& a, std::ostream& out) {
  out << json{{"beta_leading", potts_transition_beta_leading(a.beta0_q, a.beta0_dim)}, {"leading_term_only", true}}
             .dump()
      << '\n';
  return kOk;
}

int cmd_graph(const std::string& source, std::ostream& out) {
  const Graph g = resolve_graph_source(source);
  json doc = json::parse(graph_to_json(g));
  doc["num_edges"] = g.num_edges();
  doc["connected"] = g.is_connected();
  doc["tree"] = g.is_tree();
  if (g.num_edges() < 64) doc["rc_states"] = std::uint64_t{1} << g.num_edges();
  out << doc.dump() << '\n';
  return kOk;
}

struct MatrixArgs {
  ModelArgs model;
  std::string dynamics = "sw";
  std::string format = "csv";
};

int cmd_matrix(const MatrixArgs& a, const Caps& caps, std::ostream& out) {
  const Graph g = resolve_graph_source(a.model.graph);
  const StochasticMatrix p = build_dynamics_matrix(dynamics_or_throw(a.dynamics), g, a.model.params(), caps);
  if (a.format == "json") {
    out << json{{"dim", p.size()},
                {"lazy", p.lazy()},
                {"row_sum_max_err", p.row_sum_error()},
                {"reversibility_max_err", check_reversible(p)}}
               .dump()
        << '\n';
    return kOk;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) out << (j ? "," : "") << num(p(i, j));
    out << '\n';
  }
  return kOk;
}

struct DistributionArgs {
  ModelArgs model;
  std::string measure = "rc";
};

int cmd_distribution(const DistributionArgs& a, const Caps& caps, std::ostream& out) {
  const Graph g = resolve_graph_source(a.model.graph);
  const ModelParams params = a.model.params();
  std::vector<double> dist;
  if (a.measure == "rc") {
    dist = rc_distribution(g, params, caps);
  } else if (a.measure == "potts") {
    dist = potts_distribution(g, params, caps);
  } else if (a.measure == "fkes") {
    dist = fkes_distribution(g, params, caps);
  } else {
    throw ParameterError("unknown measure '" + a.measure + "' (expected rc, potts, fkes)");
  }
  out << "state_index,probability\n";
  for (std::size_t i = 0; i < dist.size(); ++i) out << i << ',' << num(dist[i]) << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact comparison of Swendsen-Wang and single-bond dynamics for the random-cluster model", "rcdyn"};
  app.require_subcommand(1);
  std::optional<std::size_t> max_states;
  app.add_option("--max-states", max_states, "Override the dense-matrix, powering and joint caps");

  GapArgs gap;
  auto* gap_cmd = app.add_subcommand("gap", "Spectral gap of one dynamics");
  gap.model.attach(gap_cmd);
  gap_cmd->add_option("--dynamics", gap.dynamics, "sw, sb, sb-nonlazy, heatbath, metropolis")->capture_default_str();
  gap_cmd->add_option("--format", gap.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites, one JSON line per check");
  verify_cmd->add_option("--suite", verify.suites, "Suite names or 'all'")->delimiter(',')->capture_default_str();
  verify_cmd->add_option("--p", verify.p, "Edge probabilities (replaces each suite's grid)")->delimiter(',');
  verify_cmd->add_option("--q", verify.q, "Cluster weights (default 2,3)")->delimiter(',');
  verify_cmd->add_option("--max-vertices", verify.max_vertices, "Largest graph size; 0 picks by q");
  verify_cmd->add_flag("--deterministic-order", verify.deterministic_order, "Serialise output (always the case)");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Run a sampler: state trace, or end-state census over chains");
  sample.model.attach(sample_cmd);
  sample_cmd->add_option("--dynamics", sample.dynamics)->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed)->capture_default_str();
  sample_cmd->add_option("--steps", sample.steps)->capture_default_str();
  sample_cmd->add_option("--start", sample.start, "Initial state index (edge bit mask)")->capture_default_str();
  sample_cmd->add_option("--chains", sample.chains, "Census over this many chains instead of a trace");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Exact SW and SB gaps over a (p, q) grid, as CSV");
  sweep_cmd->add_option("--graph", sweep.graph)->required();
  sweep_cmd->add_option("--p", sweep.p)->delimiter(',');
  sweep_cmd->add_option("--q", sweep.q)->delimiter(',')->capture_default_str();

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form bounds and exact widths");
  bounds_cmd->require_subcommand(1);
  auto* torus_cmd = bounds_cmd->add_subcommand("torus", "Log of the single-bond mixing bound on the L^d torus");
  torus_cmd->add_option("--p", bounds.p)->required();
  torus_cmd->add_option("--q", bounds.q)->required();
  torus_cmd->add_option("--L", bounds.side)->required();
  torus_cmd->add_option("--d", bounds.dim)->required();
  auto* width_cmd = bounds_cmd->add_subcommand("width", "Exact bandwidth and linear-width");
  width_cmd->add_option("--graph", bounds.width_graph)->required();
  auto* tree_cmd = bounds_cmd->add_subcommand("tree", "Exact single-bond gap and SW bound on a tree");
  bounds.model.attach(tree_cmd);
  auto* factor_cmd = bounds_cmd->add_subcommand("factor", "Mixing-time comparison factor");
  bounds.model.attach(factor_cmd);
  auto* beta0_cmd = bounds_cmd->add_subcommand("beta0", "Leading term of the Potts transition point");
  beta0_cmd->add_option("--q", bounds.beta0_q)->required();
  beta0_cmd->add_option("--d", bounds.beta0_dim)->required();

  std::string graph_source;
  auto* graph_cmd = app.add_subcommand("graph", "Describe a graph file or builtin");
  graph_cmd->add_option("--graph", graph_source)->required();

  MatrixArgs matrix;
  auto* matrix_cmd = app.add_subcommand("matrix", "Export a transition matrix (CSV) or its summary (JSON)");
  matrix.model.attach(matrix_cmd);
  matrix_cmd->add_option("--dynamics", matrix.dynamics)->capture_default_str();
  matrix_cmd->add_option("--format", matrix.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  DistributionArgs dist;
  auto* dist_cmd = app.add_subcommand("distribution", "Export rc, potts or fkes probabilities as CSV");
  dist.model.attach(dist_cmd);
  dist_cmd->add_option("--measure", dist.measure)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    Caps caps = Caps::from_environment();
    if (max_states) caps.matrix_states = caps.powering_states = caps.joint_states = *max_states;
    if (*gap_cmd) return cmd_gap(gap, caps, out);
    if (*verify_cmd) return cmd_verify(verify, caps, out, err);
    if (*sample_cmd) return cmd_sample(sample, out);
    if (*sweep_cmd) return cmd_sweep(sweep, caps, out);
    if (*torus_cmd) return cmd_bounds_torus(bounds, out);
    if (*width_cmd) return cmd_bounds_width(bounds, out);
    if (*tree_cmd) return cmd_bounds_tree(bounds, out);
    if (*factor_cmd) return cmd_bounds_factor(bounds, out);
    if (*beta0_cmd) return cmd_bounds_beta0(bounds, out);
    if (*graph_cmd) return cmd_graph(graph_source, out);
    if (*matrix_cmd) return cmd_matrix(matrix, caps, out);
    if (*dist_cmd) return cmd_distribution(dist, caps, out);
  } catch (const SizeError& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kConfigError;
}

}  // namespace rcdyn::cli
