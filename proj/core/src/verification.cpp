#include "rcdyn/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "rcdyn/bounds.hpp"
#include "rcdyn/dynamics.hpp"
#include "rcdyn/graph.hpp"
#include "rcdyn/graph_io.hpp"
#include "rcdyn/joint.hpp"
#include "rcdyn/models.hpp"
#include "rcdyn/spectral.hpp"

namespace rcdyn {

namespace {

constexpr std::string_view kSuiteNames[] = {"theorem", "lemma", "representation", "marginals", "sandwich",
                                            "tree",    "width", "mixing",         "bounds"};

constexpr double kGapTolerance = 1e-9;
constexpr double kEntryTolerance = 1e-12;

const std::vector<double> kWideP = {0.1, 0.3, 0.5, 0.7, 0.9};
const std::vector<double> kFixtureP = {0.2, 0.5, 0.8};
const std::vector<double> kDefaultQ = {2.0, 3.0};

double excess(double value, double limit) { return std::max(0.0, value - limit); }

std::string subject(const Graph& g, const ModelParams& params, std::string_view extra = {}) {
  std::ostringstream out;
  out << "graph=" << describe_graph(g) << " p=" << params.p() << " q=" << params.q();
  if (!extra.empty()) out << ' ' << extra;
  return out.str();
}

// Shared state of one suite run.
class Runner {
 public:
  Runner(Suite suite, const SuiteOptions& options, const CheckSink& sink)
      : suite_(suite), options_(options), sink_(sink) {
    q_values_ = options.q_values.empty() ? kDefaultQ : options.q_values;
    max_vertices_ = options.max_vertices;
    if (max_vertices_ == 0) {
      const bool small_q = std::all_of(q_values_.begin(), q_values_.end(), [](double q) { return q <= 3.0; });
      max_vertices_ = small_q ? 4 : 3;
    }
  }

  const Caps& caps() const { return options_.caps; }

  void emit(CheckResult r) {
    summary_.record(r);
    if (sink_) sink_(suite_, r);
  }

  const std::vector<double>& p_values(const std::vector<double>& fallback) const {
    return options_.p_values.empty() ? fallback : options_.p_values;
  }

  std::vector<ModelParams> grid(const std::vector<double>& p_fallback) const {
    std::vector<ModelParams> out;
    for (double q : q_values_) {
      for (double p : p_values(p_fallback)) {
        ModelParams params(p, q);
        params.q_colors();
        out.push_back(params);
      }
    }
    return out;
  }

  std::vector<Graph> suite_graphs() const { return enumerate_connected_graphs(max_vertices_); }

  std::vector<Graph> fixtures(bool with_single_edge) const {
    std::vector<Graph> out;
    if (with_single_edge) out.push_back(make_path(2));
    for (Graph g : {make_path(4), make_complete(3)}) {
      if (g.num_vertices() <= max_vertices_) out.push_back(std::move(g));
    }
    return out;
  }

  SuiteSummary finish() const { return summary_; }

 private:
  Suite suite_;
  const SuiteOptions& options_;
  const CheckSink& sink_;
  std::vector<double> q_values_;
  std::size_t max_vertices_ = 0;
  SuiteSummary summary_;
};

void theorem_suite(Runner& run) {
  const auto grid = run.grid(kWideP);
  for (const Graph& g : run.suite_graphs()) {
    for (const ModelParams& params : grid) {
      const double sw = spectral_gap(sw_matrix(g, params, run.caps()), run.caps()).gap;
      const double lazy = spectral_gap(sb_matrix(g, params, Laziness::lazy, run.caps()), run.caps()).gap;
      const double eager = spectral_gap(sb_matrix(g, params, Laziness::non_lazy, run.caps()), run.caps()).gap;
      run.emit(make_check("gap_sw_ge_gap_sb", excess(lazy, sw), kGapTolerance, subject(g, params)));
      run.emit(make_check("gap_sw_ge_gap_sb_nonlazy", excess(eager, sw), kGapTolerance, subject(g, params)));
    }
  }
}

void lemma_suite(Runner& run) {
  const auto grid = run.grid(kFixtureP);
  for (const Graph& g : run.fixtures(true)) {
    for (const ModelParams& params : grid) {
      for (CheckResult r : verify_lemma_properties(g, params, run.caps())) {
        r.subject = subject(g, params, r.subject);
        run.emit(std::move(r));
      }
    }
  }
}

void representation_suite(Runner& run) {
  const auto grid = run.grid(kFixtureP);
  for (const Graph& g : run.fixtures(true)) {
    for (const ModelParams& params : grid) {
      for (CheckResult r : verify_representation(g, params, run.caps())) {
        r.subject = subject(g, params, r.subject);
        run.emit(std::move(r));
      }
    }
  }
}

void marginals_suite(Runner& run) {
  const auto grid = run.grid(kFixtureP);
  for (const Graph& g : run.fixtures(false)) {
    for (const ModelParams& params : grid) {
      const std::size_t q = params.q_colors();
      const std::vector<double> joint = fkes_distribution(g, params, run.caps());
      const std::vector<double> rc = rc_distribution(g, params, run.caps());
      const std::vector<double> potts = potts_distribution(g, params, run.caps());
      const std::vector<double> direct = potts_distribution_at_beta(g, params.beta(), q, run.caps());
      std::vector<double> spin_marginal(potts.size(), 0.0);
      std::vector<double> rc_marginal(rc.size(), 0.0);
      for (std::size_t i = 0; i < joint.size(); ++i) {
        const JointIndex idx = JointIndex::decompose(i, g.num_edges());
        spin_marginal[idx.spin] += joint[i];
        rc_marginal[idx.subset] += joint[i];
      }
      double spin_err = 0.0;
      double direct_err = 0.0;
      for (std::size_t s = 0; s < potts.size(); ++s) {
        spin_err = std::max(spin_err, std::abs(spin_marginal[s] - potts[s]));
        direct_err = std::max(direct_err, std::abs(direct[s] - potts[s]));
      }
      double rc_err = 0.0;
      for (std::size_t a = 0; a < rc.size(); ++a) rc_err = std::max(rc_err, std::abs(rc_marginal[a] - rc[a]));
      run.emit(make_check("fkes_spin_marginal_is_potts", spin_err, kEntryTolerance, subject(g, params)));
      run.emit(make_check("fkes_edge_marginal_is_rc", rc_err, kEntryTolerance, subject(g, params)));
      run.emit(make_check("potts_matches_direct_sum", direct_err, kEntryTolerance, subject(g, params)));
    }
  }
}

// max over x != y of (a(x,y) - factor * b(x,y))^+.
double off_diagonal_excess(const StochasticMatrix& a, const StochasticMatrix& b, double factor) {
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < a.size(); ++y) {
      if (x != y) worst = std::max(worst, excess(a(x, y), factor * b(x, y)));
    }
  }
  return worst;
}

void sandwich_suite(Runner& run) {
  const auto grid = run.grid(kWideP);
  for (const Graph& g : run.suite_graphs()) {
    for (const ModelParams& params : grid) {
      const double slow = 1.0 - params.p() * (1.0 - 1.0 / params.q());
      const double two_q = 2.0 * params.q();
      const StochasticMatrix sb = sb_matrix(g, params, Laziness::lazy, run.caps());
      const StochasticMatrix hb = heatbath_matrix(g, params, run.caps());
      const StochasticMatrix metro = metropolis_matrix(g, params, run.caps());
      const std::string who = subject(g, params);
      run.emit(make_check("heatbath_ge_sb_entrywise", off_diagonal_excess(sb, hb, 1.0), kEntryTolerance, who));
      run.emit(make_check("heatbath_le_sb_over_c_entrywise", off_diagonal_excess(hb, sb, 1.0 / slow),
                          kEntryTolerance, who));
      run.emit(make_check("metropolis_le_2q_sb_entrywise", off_diagonal_excess(metro, sb, two_q), kEntryTolerance,
                          who));
      const double gap_sb = spectral_gap(sb, run.caps()).gap;
      const double gap_hb = spectral_gap(hb, run.caps()).gap;
      const double gap_m = spectral_gap(metro, run.caps()).gap;
      run.emit(make_check("gap_heatbath_ge_gap_sb", excess(gap_sb, gap_hb), kGapTolerance, who));
      run.emit(make_check("gap_heatbath_le_gap_sb_over_c", excess(gap_hb, gap_sb / slow), kGapTolerance, who));
      run.emit(make_check("gap_metropolis_le_2q_gap_sb", excess(gap_m, two_q * gap_sb), kGapTolerance, who));
    }
  }
}

void tree_suite(Runner& run) {
  const auto grid = run.grid(kFixtureP);
  for (const Graph& t : enumerate_trees(5)) {
    for (const ModelParams& params : grid) {
      const double exact = spectral_gap(sb_matrix(t, params, Laziness::lazy, run.caps()), run.caps()).gap;
      const double sw = spectral_gap(sw_matrix(t, params, run.caps()), run.caps()).gap;
      run.emit(make_check("tree_gap_formula", std::abs(exact - tree_gap_exact(t, params)), 1e-10, subject(t, params)));
      run.emit(make_check("sw_tree_bound", excess(1.0 / sw, sw_tree_bound(t, params)), kGapTolerance,
                          subject(t, params)));
    }
  }
}

void width_suite(Runner& run) {
  for (const Graph& g : enumerate_connected_graphs(kMaxEnumeratedVertices)) {
    if (g.num_edges() > 8) continue;
    const WidthResult bw = bandwidth_exact(g);
    const WidthResult lw = linear_width_exact(g);
    const std::string who = "graph=" + describe_graph(g);
    const auto diff = [](std::size_t a, std::size_t b) { return a > b ? double(a - b) : double(b - a); };
    run.emit(make_check("bandwidth_witness", diff(bandwidth_of_ordering(g, bw.witness), bw.width), 0.0, who));
    run.emit(make_check("linear_width_witness", diff(linear_width_of_ordering(g, lw.witness), lw.width), 0.0, who));
    run.emit(make_check("linear_width_le_bandwidth_plus_1", excess(double(lw.width), double(bw.width + 1)), 0.0, who));
  }
  for (std::size_t len = 4; len <= 8; ++len) {
    const Graph c = make_cycle(len);
    const std::string who = "graph=" + describe_graph(c);
    run.emit(make_check("cycle_bandwidth_is_2", std::abs(double(bandwidth_exact(c).width) - 2.0), 0.0, who));
    run.emit(make_check("cycle_linear_width_within_torus_bound",
                        excess(double(linear_width_exact(c).width), double(torus_linear_width_bound(len, 1))), 0.0,
                        who));
  }
  run.emit(make_check("torus_linear_width_bound_3_2", std::abs(double(torus_linear_width_bound(3, 2)) - 7.0), 0.0));
}

double min_positive(const std::vector<double>& pi) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : pi) {
    if (x > 0.0) m = std::min(m, x);
  }
  return m;
}

void mixing_suite(Runner& run) {
  const auto grid = run.grid(kWideP);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (const Graph& g : run.suite_graphs()) {
    if (rc_state_count(g, run.caps()) > 64) continue;
    for (const ModelParams& params : grid) {
      double tau_sw = kInf;
      double tau_sb = kInf;
      for (Dynamics d : kAllDynamics) {
        const StochasticMatrix p = build_dynamics_matrix(d, g, params, run.caps());
        const double gap = spectral_gap(p, run.caps()).gap;
        const SandwichBounds bounds = sandwich_bounds(gap, min_positive(p.stationary()));
        const MixingResult mix = exact_mixing_time(p, 1'000'000, run.caps());
        const double tau = mix.mixing_time ? static_cast<double>(*mix.mixing_time) : kInf;
        if (d == Dynamics::swendsen_wang) tau_sw = tau;
        if (d == Dynamics::single_bond) tau_sb = tau;
        const std::string who = subject(g, params, "dynamics=" + std::string(dynamics_name(d)));
        run.emit(make_check("mixing_lower_sandwich", excess(bounds.lower, tau), kGapTolerance, who));
        run.emit(make_check("mixing_upper_sandwich", excess(tau, bounds.upper), kGapTolerance, who));
      }
      run.emit(make_check("tau_sw_le_factor_tau_sb", excess(tau_sw, mixing_comparison_factor(g, params) * tau_sb),
                          kGapTolerance, subject(g, params)));
    }
  }
}

void bounds_suite(Runner& run) {
  const auto grid = run.grid(kWideP);
  for (const Graph& g : run.suite_graphs()) {
    const std::size_t ell = linear_width_exact(g).width;
    for (const ModelParams& params : grid) {
      const double gap = spectral_gap(sb_matrix(g, params, Laziness::lazy, run.caps()), run.caps()).gap;
      const double bound = width_gap_bound(g.num_edges(), params.q(), ell).value;
      run.emit(make_check("width_bound_dominates_inverse_gap", excess(-std::log(gap), bound), kGapTolerance,
                          subject(g, params, "ell=" + std::to_string(ell))));
      run.emit(make_check("comparison_factor_ge_3", excess(3.0, mixing_comparison_factor(g, params)), 0.0,
                          subject(g, params)));
    }
  }
  const Graph torus = make_torus(2, 2);
  const ModelParams half(0.5, 2.0);
  const MixingResult mix = exact_mixing_time(sb_matrix(torus, half, Laziness::lazy, run.caps()), 1'000'000, run.caps());
  const double log_tau =
      mix.mixing_time ? std::log(static_cast<double>(*mix.mixing_time)) : std::numeric_limits<double>::infinity();
  run.emit(make_check("torus_bound_dominates_tau_sb", excess(log_tau, torus_upper_bound(half, 2, 2).value), 0.0,
                      subject(torus, half)));
}

}  // namespace

std::string_view suite_name(Suite s) { return kSuiteNames[static_cast<std::size_t>(s)]; }

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : kAllSuites) {
    if (suite_name(s) == name) return s;
  }
  return std::nullopt;
}

void SuiteSummary::record(const CheckResult& r) {
  ++checks;
  if (!r.pass) ++failures;
  // NaN compares false, so a NaN violation is forced to the top.
  const double margin = std::isnan(r.max_violation) ? std::numeric_limits<double>::infinity()
                                                    : r.max_violation - r.tolerance;
  if (!worst || margin > worst->max_violation - worst->tolerance) worst = r;
}

void SuiteSummary::merge(const SuiteSummary& other) {
  checks += other.checks;
  failures += other.failures;
  if (other.worst && (!worst || other.worst->max_violation - other.worst->tolerance >
                                    worst->max_violation - worst->tolerance)) {
    worst = other.worst;
  }
}

SuiteSummary run_suite(Suite suite, const SuiteOptions& options, const CheckSink& sink) {
  Runner run(suite, options, sink);
  switch (suite) {
    case Suite::theorem: theorem_suite(run); break;
    case Suite::lemma: lemma_suite(run); break;
    case Suite::representation: representation_suite(run); break;
    case Suite::marginals: marginals_suite(run); break;
    case Suite::sandwich: sandwich_suite(run); break;
    case Suite::tree: tree_suite(run); break;
    case Suite::width: width_suite(run); break;
    case Suite::mixing: mixing_suite(run); break;
    case Suite::bounds: bounds_suite(run); break;
  }
  return run.finish();
}

}  // namespace rcdyn
