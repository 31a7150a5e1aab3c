#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "rcdyn/dynamics.hpp"
#include "rcdyn/errors.hpp"
#include "rcdyn/joint.hpp"

using namespace rcdyn;

namespace {

SparseKernel from_dense(const DenseMatrix& m) {
  std::vector<KernelEntry> entries;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) entries.push_back({i, j, m(i, j)});
  return SparseKernel(m.rows(), m.cols(), std::move(entries));
}

std::vector<double> row_times(const std::vector<double>& v, const SparseKernel& k) {
  std::vector<double> out(k.cols(), 0.0);
  for (const auto& e : k.entries()) out[e.col] += v[e.row] * e.value;
  return out;
}

struct Fixture {
  Graph g;
  ModelParams params;
};

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  for (const Graph& g : {make_path(2), make_path(4), make_complete(3)})
    for (double q : {2.0, 3.0})
      for (double p : {0.2, 0.5, 0.8}) out.push_back({g, ModelParams(p, q)});
  return out;
}

}  // namespace

TEST(SparseKernel, BasicsAgreeWithDense) {
  DenseMatrix a(3, 3);
  a(0, 1) = 0.5;
  a(0, 2) = 0.5;
  a(1, 1) = 1.0;
  a(2, 0) = 0.25;
  a(2, 2) = 0.75;
  const SparseKernel k = from_dense(a);
  EXPECT_EQ(k.nonzeros(), 5u);
  EXPECT_EQ(k.at(2, 0), 0.25);
  EXPECT_EQ(k.at(1, 0), 0.0);
  EXPECT_EQ(k.to_dense(), a);
  EXPECT_EQ(k.transpose().to_dense(), a.transpose());
  EXPECT_EQ(k.row_sum_error(), 0.0);
  EXPECT_EQ(compose(k, k).to_dense(), multiply(a, a));
  EXPECT_EQ(max_abs_difference(add(k, k, -1.0), scale(k, 0.0)), 0.0);
  EXPECT_EQ(scale(k, 2.0).at(0, 1), 1.0);
  EXPECT_THROW(compose(k, SparseKernel(2, 2, {})), ParameterError);
}

TEST(Operators, ShapesAndRowSums) {
  const Graph g = make_complete(3);
  const ModelParams params(0.4, 3);
  const SparseKernel m = build_M(g, params);
  const SparseKernel ms = build_M_star(g, params);
  EXPECT_EQ(m.rows(), 8u);
  EXPECT_EQ(m.cols(), 27u * 8u);
  EXPECT_EQ(ms.rows(), m.cols());
  EXPECT_LT(m.row_sum_error(), 1e-15);
  EXPECT_EQ(ms.row_sum_error(), 0.0);
  EXPECT_EQ(build_joint_identity(g, params).rows(), m.cols());
  for (std::size_t e = 0; e < g.num_edges(); ++e) EXPECT_LT(build_T_e(g, params, e).row_sum_error(), 1e-15);
  Caps caps;
  caps.joint_states = 100;
  EXPECT_THROW(build_M(g, params, caps), SizeError);
}

TEST(Operators, MMStarIsExactlyIdentity) {
  for (const auto& [g, params] : fixtures()) {
    const SparseKernel mms = compose(build_M(g, params), build_M_star(g, params));
    const std::size_t n = mms.rows();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) ASSERT_EQ(mms.at(a, b), a == b ? 1.0 : 0.0);
    }
  }
}

TEST(Operators, ProductOfTMatchesClosedFormInAnyOrder) {
  for (const auto& [g, params] : fixtures()) {
    const SparseKernel closed = product_T_closed_form(g, params);
    EXPECT_LT(max_abs_difference(product_T(g, params), closed), 1e-15);
    std::vector<std::size_t> order(g.num_edges());
    std::iota(order.rbegin(), order.rend(), std::size_t{0});
    EXPECT_LT(max_abs_difference(product_T(g, params, order), closed), 1e-15);
  }
}

TEST(Operators, RepresentationMatchesOracleSw) {
  for (const auto& [g, params] : fixtures()) {
    const SparseKernel rep = compose(compose(build_M(g, params), product_T(g, params)), build_M_star(g, params));
    const auto expected = oracle::sw_matrix(g, params.p(), params.q_colors());
    for (std::size_t a = 0; a < expected.size(); ++a)
      for (std::size_t b = 0; b < expected.size(); ++b) EXPECT_NEAR(rep.at(a, b), expected[a][b], 1e-14);
  }
}

TEST(Operators, MeasuresTransportThroughM) {
  for (const auto& [g, params] : fixtures()) {
    const auto mu = oracle::rc_distribution(g, params.p(), params.q());
    const auto mubar = oracle::fkes_distribution(g, params.p(), params.q_colors());
    const auto via_m = row_times(mu, build_M(g, params));
    const auto via_mstar = row_times(mubar, build_M_star(g, params));
    for (std::size_t i = 0; i < mubar.size(); ++i) EXPECT_NEAR(via_m[i], mubar[i], 1e-15);
    for (std::size_t a = 0; a < mu.size(); ++a) EXPECT_NEAR(via_mstar[a], mu[a], 1e-15);
    // S_(mu, mu_bar) M* = S_mu.
    EXPECT_LT(max_abs_difference(compose(build_S_mu_mubar(g, params), build_M_star(g, params)),
                                 build_S_mu(g, params)),
              1e-15);
    for (std::size_t a = 0; a < mu.size(); ++a) EXPECT_NEAR(build_S_mu(g, params).at(a, a), mu[a], 1e-15);
  }
}

TEST(Operators, DetailedBalance) {
  const Graph g = make_path(4);
  const ModelParams params(0.3, 3);
  const auto mubar = fkes_distribution(g, params);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    EXPECT_LT(detailed_balance_violation(build_T_e(g, params, e), mubar), 1e-15);
  }
  const SparseKernel projector = compose(build_M_star(g, params), build_M(g, params));
  EXPECT_LT(detailed_balance_violation(projector, mubar), 1e-15);
}

TEST(Operators, SymmetrizedSpectrumMatchesOracle) {
  const Graph g = make_complete(3);
  const ModelParams params(0.5, 2);
  const StochasticMatrix sw = sw_matrix(g, params);
  const auto spectrum = symmetrized_spectrum(from_dense(sw.entries()), sw.stationary());
  oracle::Matrix dense(8, std::vector<double>(8));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) dense[i][j] = sw(i, j);
  const auto expected = oracle::eigenvalues(dense, sw.stationary());
  ASSERT_EQ(spectrum.size(), expected.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) EXPECT_NEAR(spectrum[i], expected[i], 1e-12);
}

TEST(Operators, LemmaAndRepresentationChecksPass) {
  for (const auto& [g, params] : fixtures()) {
    for (const CheckResult& r : verify_lemma_properties(g, params)) {
      EXPECT_TRUE(r.pass) << r.check << " " << r.max_violation;
    }
    const auto rep = verify_representation(g, params);
    EXPECT_EQ(rep.size(), 3u);
    for (const CheckResult& r : rep) EXPECT_LT(r.max_violation, 1e-12) << r.check;
  }
}
