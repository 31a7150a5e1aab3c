#include "rcdyn/joint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "rcdyn/dynamics.hpp"
#include "rcdyn/errors.hpp"

namespace rcdyn {

SparseKernel::SparseKernel(std::size_t rows, std::size_t cols, std::vector<KernelEntry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const KernelEntry& x, const KernelEntry& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  row_start_.assign(rows_ + 1, 0);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const KernelEntry& k = entries_[i];
    if (k.row >= rows_ || k.col >= cols_) throw ParameterError("kernel entry out of range");
    if (i > 0 && entries_[i - 1].row == k.row && entries_[i - 1].col == k.col) {
      throw ParameterError("duplicate kernel entry");
    }
    ++row_start_[k.row + 1];
  }
  for (std::size_t r = 0; r < rows_; ++r) row_start_[r + 1] += row_start_[r];
}

std::span<const KernelEntry> SparseKernel::row(std::size_t r) const {
  return std::span<const KernelEntry>(entries_).subspan(row_start_[r], row_start_[r + 1] - row_start_[r]);
}

double SparseKernel::at(std::size_t r, std::size_t c) const {
  auto entries = row(r);
  auto it = std::lower_bound(entries.begin(), entries.end(), c,
                             [](const KernelEntry& k, std::size_t col) { return k.col < col; });
  return it != entries.end() && it->col == c ? it->value : 0.0;
}

double SparseKernel::row_sum_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (const auto& k : row(r)) sum += k.value;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

DenseMatrix SparseKernel::to_dense() const {
  DenseMatrix out(rows_, cols_);
  for (const auto& k : entries_) out(k.row, k.col) = k.value;
  return out;
}

SparseKernel SparseKernel::transpose() const {
  std::vector<KernelEntry> t;
  t.reserve(entries_.size());
  for (const auto& k : entries_) t.push_back({k.col, k.row, k.value});
  return SparseKernel(cols_, rows_, std::move(t));
}

SparseKernel compose(const SparseKernel& a, const SparseKernel& b) {
  if (a.cols() != b.rows()) throw ParameterError("kernel shapes do not compose");
  // Compensated dot products (TwoSum plus fma product error), so that sums of
  // many equal inexact terms such as q^-c(B) round to the exact total.
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<double> comp(b.cols(), 0.0);
  std::vector<char> touched(b.cols(), 0);
  std::vector<std::size_t> cols;
  std::vector<KernelEntry> out;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    cols.clear();
    for (const auto& x : a.row(r)) {
      for (const auto& y : b.row(x.col)) {
        if (!touched[y.col]) {
          touched[y.col] = 1;
          cols.push_back(y.col);
        }
        const double prod = x.value * y.value;
        const double prod_err = std::fma(x.value, y.value, -prod);
        const double sum = acc[y.col] + prod;
        const double back = sum - acc[y.col];
        comp[y.col] += (acc[y.col] - (sum - back)) + (prod - back) + prod_err;
        acc[y.col] = sum;
      }
    }
    std::sort(cols.begin(), cols.end());
    for (std::size_t c : cols) {
      const double total = acc[c] + comp[c];
      if (total != 0.0) out.push_back({r, c, total});
      acc[c] = 0.0;
      comp[c] = 0.0;
      touched[c] = 0;
    }
  }
  return SparseKernel(a.rows(), b.cols(), std::move(out));
}

SparseKernel add(const SparseKernel& a, const SparseKernel& b, double b_scale) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParameterError("kernel shapes differ");
  std::vector<KernelEntry> out;
  out.reserve(a.nonzeros() + b.nonzeros());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto x = a.row(r);
    auto y = b.row(r);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].col < y[j].col)) {
        out.push_back(x[i++]);
      } else if (i == x.size() || y[j].col < x[i].col) {
        out.push_back({r, y[j].col, b_scale * y[j].value});
        ++j;
      } else {
        out.push_back({r, x[i].col, x[i].value + b_scale * y[j].value});
        ++i;
        ++j;
      }
    }
  }
  return SparseKernel(a.rows(), a.cols(), std::move(out));
}

SparseKernel scale(const SparseKernel& a, double factor) {
  std::vector<KernelEntry> out(a.entries().begin(), a.entries().end());
  for (auto& k : out) k.value *= factor;
  return SparseKernel(a.rows(), a.cols(), std::move(out));
}

double max_abs_difference(const SparseKernel& a, const SparseKernel& b) {
  const SparseKernel diff = add(a, b, -1.0);
  double worst = 0.0;
  for (const auto& k : diff.entries()) worst = std::max(worst, std::abs(k.value));
  return worst;
}

// ---------------------------------------------------------------------------

namespace {

struct JointShape {
  std::size_t q;
  std::size_t num_edges;
  std::size_t subsets;
  std::size_t spins;
  std::size_t joint;
};

JointShape joint_shape(const Graph& g, const ModelParams& params, const Caps& caps) {
  JointShape s{};
  s.q = params.q_colors();
  s.joint = joint_state_count(g, s.q, caps);
  s.num_edges = g.num_edges();
  s.subsets = std::size_t{1} << s.num_edges;
  s.spins = s.joint / s.subsets;
  return s;
}

std::vector<std::uint64_t> mono_masks(const Graph& g, const JointShape& s) {
  std::vector<std::uint64_t> masks(s.spins);
  for (std::uint64_t sp = 0; sp < s.spins; ++sp) {
    masks[sp] = monochromatic_mask(g, SpinConfig::from_index(g.num_vertices(), s.q, sp));
  }
  return masks;
}

}  // namespace

SparseKernel build_M(const Graph& g, const ModelParams& params, const Caps& caps) {
  const JointShape s = joint_shape(g, params, caps);
  const std::vector<std::uint64_t> mono = mono_masks(g, s);
  std::vector<KernelEntry> entries;
  for (std::uint64_t b = 0; b < s.subsets; ++b) {
    const double value = std::pow(params.q(), -static_cast<double>(component_count(g, b)));
    for (std::uint64_t sp = 0; sp < s.spins; ++sp) {
      if ((b & ~mono[sp]) == 0) entries.push_back({b, JointIndex{sp, b}.compose(s.num_edges), value});
    }
  }
  return SparseKernel(s.subsets, s.joint, std::move(entries));
}

SparseKernel build_M_star(const Graph& g, const ModelParams& params, const Caps& caps) {
  const JointShape s = joint_shape(g, params, caps);
  std::vector<KernelEntry> entries;
  entries.reserve(s.joint);
  for (std::uint64_t x = 0; x < s.joint; ++x) {
    entries.push_back({x, JointIndex::decompose(x, s.num_edges).subset, 1.0});
  }
  return SparseKernel(s.joint, s.subsets, std::move(entries));
}

SparseKernel build_T_e(const Graph& g, const ModelParams& params, std::size_t e, const Caps& caps) {
  if (e >= g.num_edges()) throw ParameterError("edge index out of range");
  const JointShape s = joint_shape(g, params, caps);
  const std::vector<std::uint64_t> mono = mono_masks(g, s);
  const std::uint64_t bit = std::uint64_t{1} << e;
  std::vector<KernelEntry> entries;
  entries.reserve(2 * s.joint);
  for (std::uint64_t x = 0; x < s.joint; ++x) {
    const JointIndex j = JointIndex::decompose(x, s.num_edges);
    const std::uint64_t removed = JointIndex{j.spin, j.subset & ~bit}.compose(s.num_edges);
    if (mono[j.spin] & bit) {
      entries.push_back({x, removed, 1.0 - params.p()});
      entries.push_back({x, JointIndex{j.spin, j.subset | bit}.compose(s.num_edges), params.p()});
    } else {
      entries.push_back({x, removed, 1.0});
    }
  }
  return SparseKernel(s.joint, s.joint, std::move(entries));
}

SparseKernel build_joint_identity(const Graph& g, const ModelParams& params, const Caps& caps) {
  const JointShape s = joint_shape(g, params, caps);
  std::vector<KernelEntry> entries;
  entries.reserve(s.joint);
  for (std::size_t x = 0; x < s.joint; ++x) entries.push_back({x, x, 1.0});
  return SparseKernel(s.joint, s.joint, std::move(entries));
}

SparseKernel product_T(const Graph& g, const ModelParams& params, std::span<const std::size_t> order,
                       const Caps& caps) {
  std::vector<std::size_t> edges(order.begin(), order.end());
  if (edges.empty()) {
    for (std::size_t e = 0; e < g.num_edges(); ++e) edges.push_back(e);
  }
  SparseKernel result = build_joint_identity(g, params, caps);
  for (std::size_t e : edges) result = compose(result, build_T_e(g, params, e, caps));
  return result;
}

SparseKernel product_T_closed_form(const Graph& g, const ModelParams& params, const Caps& caps) {
  const JointShape s = joint_shape(g, params, caps);
  const std::vector<std::uint64_t> mono = mono_masks(g, s);
  const double log_p = std::log(params.p());
  const double log_not_p = std::log1p(-params.p());
  std::vector<KernelEntry> entries;
  for (std::uint64_t x = 0; x < s.joint; ++x) {
    const std::uint64_t sp = JointIndex::decompose(x, s.num_edges).spin;
    const std::uint64_t e_sigma = mono[sp];
    const int size_e_sigma = std::popcount(e_sigma);
    std::uint64_t b = e_sigma;
    while (true) {
      const int kept = std::popcount(b);
      entries.push_back({x, JointIndex{sp, b}.compose(s.num_edges),
                         std::exp(kept * log_p + (size_e_sigma - kept) * log_not_p)});
      if (b == 0) break;
      b = (b - 1) & e_sigma;
    }
  }
  return SparseKernel(s.joint, s.joint, std::move(entries));
}

SparseKernel build_S_mu(const Graph& g, const ModelParams& params, const Caps& caps) {
  const std::vector<double> mu = rc_distribution(g, params, caps);
  std::vector<KernelEntry> entries;
  entries.reserve(mu.size() * mu.size());
  for (std::size_t a = 0; a < mu.size(); ++a) {
    for (std::size_t b = 0; b < mu.size(); ++b) entries.push_back({a, b, mu[b]});
  }
  return SparseKernel(mu.size(), mu.size(), std::move(entries));
}

SparseKernel build_S_mu_mubar(const Graph& g, const ModelParams& params, const Caps& caps) {
  const JointShape s = joint_shape(g, params, caps);
  const std::vector<double> mubar = fkes_distribution(g, params, caps);
  std::vector<KernelEntry> entries;
  for (std::size_t b = 0; b < s.subsets; ++b) {
    for (std::size_t x = 0; x < s.joint; ++x) {
      if (mubar[x] > 0.0) entries.push_back({b, x, mubar[x]});
    }
  }
  return SparseKernel(s.subsets, s.joint, std::move(entries));
}

// ---------------------------------------------------------------------------

namespace {

void require_square_measure(const SparseKernel& k, std::span<const double> measure) {
  if (k.rows() != k.cols() || measure.size() != k.rows()) {
    throw ParameterError("kernel and measure dimensions differ");
  }
}

}  // namespace

double detailed_balance_violation(const SparseKernel& k, std::span<const double> measure) {
  require_square_measure(k, measure);
  double worst = 0.0;
  for (const auto& x : k.entries()) {
    if (measure[x.row] <= 0.0 && measure[x.col] <= 0.0) continue;
    const double forward = measure[x.row] * x.value;
    const double backward = measure[x.col] * k.at(x.col, x.row);
    worst = std::max(worst, std::abs(forward - backward));
  }
  return worst;
}

DenseMatrix symmetrize_on_support(const SparseKernel& k, std::span<const double> measure) {
  require_square_measure(k, measure);
  std::vector<std::size_t> position(k.rows(), SIZE_MAX);
  std::size_t n = 0;
  for (std::size_t x = 0; x < k.rows(); ++x) {
    if (measure[x] > 0.0) position[x] = n++;
  }
  DenseMatrix out(n, n);
  for (const auto& x : k.entries()) {
    if (position[x.row] == SIZE_MAX || position[x.col] == SIZE_MAX) continue;
    out(position[x.row], position[x.col]) = std::sqrt(measure[x.row] / measure[x.col]) * x.value;
  }
  return out;
}

std::vector<double> symmetrized_spectrum(const SparseKernel& k, std::span<const double> measure) {
  require_square_measure(k, measure);
  std::vector<std::size_t> support;
  std::vector<std::size_t> position(k.rows(), SIZE_MAX);
  for (std::size_t x = 0; x < k.rows(); ++x) {
    if (measure[x] > 0.0) {
      position[x] = support.size();
      support.push_back(x);
    }
  }
  DisjointSets blocks(support.size());
  for (const auto& x : k.entries()) {
    if (position[x.row] != SIZE_MAX && position[x.col] != SIZE_MAX) blocks.unite(position[x.row], position[x.col]);
  }

  std::vector<std::vector<std::size_t>> members(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) members[blocks.find(i)].push_back(i);

  std::vector<double> spectrum;
  spectrum.reserve(support.size());
  std::vector<std::size_t> local(support.size(), 0);
  for (const auto& block : members) {
    if (block.empty()) continue;
    for (std::size_t i = 0; i < block.size(); ++i) local[block[i]] = i;
    DenseMatrix dense(block.size(), block.size());
    for (std::size_t i : block) {
      const std::size_t x = support[i];
      for (const auto& entry : k.row(x)) {
        const std::size_t j = position[entry.col];
        if (j == SIZE_MAX) continue;
        dense(local[i], local[j]) = std::sqrt(measure[x] / measure[entry.col]) * entry.value;
      }
    }
    // Average out rounding asymmetry before the symmetric solver.
    for (std::size_t r = 0; r < dense.rows(); ++r) {
      for (std::size_t c = r + 1; c < dense.cols(); ++c) {
        const double mean = 0.5 * (dense(r, c) + dense(c, r));
        dense(r, c) = mean;
        dense(c, r) = mean;
      }
    }
    auto eig = jacobi_eigenvalues(std::move(dense));
    spectrum.insert(spectrum.end(), eig.eigenvalues.begin(), eig.eigenvalues.end());
  }
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  return spectrum;
}

// ---------------------------------------------------------------------------

namespace {

double distance_to_zero_one(const std::vector<double>& spectrum) {
  double worst = 0.0;
  for (double x : spectrum) worst = std::max(worst, std::min(std::abs(x), std::abs(x - 1.0)));
  return worst;
}

}  // namespace

std::vector<CheckResult> verify_lemma_properties(const Graph& g, const ModelParams& params, const Caps& caps) {
  constexpr double kTol = 1e-12;
  constexpr double kSpectralTol = 1e-10;

  const SparseKernel m = build_M(g, params, caps);
  const SparseKernel m_star = build_M_star(g, params, caps);
  const SparseKernel projector = compose(m_star, m);
  const std::vector<double> mubar = fkes_distribution(g, params, caps);

  std::vector<SparseKernel> t;
  for (std::size_t e = 0; e < g.num_edges(); ++e) t.push_back(build_T_e(g, params, e, caps));

  std::vector<CheckResult> out;
  double stochastic = std::max(m.row_sum_error(), m_star.row_sum_error());
  for (const auto& te : t) stochastic = std::max(stochastic, te.row_sum_error());
  out.push_back(make_check("kernels_row_stochastic", stochastic, kTol));

  out.push_back(make_check("M*M_self_adjoint", detailed_balance_violation(projector, mubar), kTol));
  double te_adjoint = 0.0;
  for (const auto& te : t) te_adjoint = std::max(te_adjoint, detailed_balance_violation(te, mubar));
  out.push_back(make_check("T_e_self_adjoint", te_adjoint, kTol));

  const SparseKernel identity_rc = [&] {
    std::vector<KernelEntry> id;
    for (std::size_t a = 0; a < m.rows(); ++a) id.push_back({a, a, 1.0});
    return SparseKernel(m.rows(), m.rows(), std::move(id));
  }();
  // Row sums are q^c(B) copies of fl(q^-c(B)); they are exactly 1 unless that
  // rounding error survives, which is bounded by the unit roundoff.
  constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
  out.push_back(make_check("MM*_identity", max_abs_difference(compose(m, m_star), identity_rc), kUnitRoundoff));
  out.push_back(make_check("M*M_idempotent", max_abs_difference(compose(projector, projector), projector), kTol));

  double idempotent = 0.0;
  double commute = 0.0;
  double preserves = 0.0;
  for (std::size_t e = 0; e < t.size(); ++e) {
    idempotent = std::max(idempotent, max_abs_difference(compose(t[e], t[e]), t[e]));
    for (std::size_t f = e + 1; f < t.size(); ++f) {
      commute = std::max(commute, max_abs_difference(compose(t[e], t[f]), compose(t[f], t[e])));
    }
    std::vector<double> moved(mubar.size(), 0.0);
    for (const auto& k : t[e].entries()) moved[k.col] += mubar[k.row] * k.value;
    for (std::size_t x = 0; x < mubar.size(); ++x) preserves = std::max(preserves, std::abs(moved[x] - mubar[x]));
  }
  out.push_back(make_check("T_e_idempotent", idempotent, kTol));
  out.push_back(make_check("T_e_commute", commute, kTol));
  out.push_back(make_check("T_e_preserves_mu_bar", preserves, kTol));

  double te_spectrum = 0.0;
  for (const auto& te : t) te_spectrum = std::max(te_spectrum, distance_to_zero_one(symmetrized_spectrum(te, mubar)));
  out.push_back(make_check("T_e_spectrum_in_{0,1}", te_spectrum, kSpectralTol));
  out.push_back(
      make_check("M*M_spectrum_in_{0,1}", distance_to_zero_one(symmetrized_spectrum(projector, mubar)), kSpectralTol));
  return out;
}

std::vector<CheckResult> verify_representation(const Graph& g, const ModelParams& params, const Caps& caps) {
  constexpr double kTol = 1e-12;
  const SparseKernel m = build_M(g, params, caps);
  const SparseKernel m_star = build_M_star(g, params, caps);

  std::vector<CheckResult> out;
  const DenseMatrix sw_joint = compose(compose(m, product_T(g, params, {}, caps)), m_star).to_dense();
  out.push_back(make_check("P_SW=M(prod T_e)M*", max_abs_difference(sw_matrix(g, params, caps).entries(), sw_joint), kTol));

  double single = 0.0;
  DenseMatrix sb_joint = scale(DenseMatrix::identity(m.rows()), 0.5);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const DenseMatrix via_joint = compose(compose(m, build_T_e(g, params, e, caps)), m_star).to_dense();
    single = std::max(single, max_abs_difference(single_edge_matrix(g, params, e, caps).entries(), via_joint));
    sb_joint = add(sb_joint, scale(via_joint, 0.5 / static_cast<double>(g.num_edges())));
  }
  out.push_back(make_check("P_e=M T_e M*", single, kTol));
  if (g.num_edges() > 0) {
    out.push_back(make_check("P_SB=I/2+sum M T_e M*/(2|E|)",
                             max_abs_difference(sb_matrix(g, params, Laziness::lazy, caps).entries(), sb_joint), kTol));
  }
  return out;
}

}  // namespace rcdyn
