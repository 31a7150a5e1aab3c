#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rcdyn/errors.hpp"
#include "rcdyn/models.hpp"

using namespace rcdyn;

namespace {

const Graph kGraphs[] = {make_path(2), make_path(4), make_complete(3), make_cycle(4), make_complete(4),
                         make_star(4)};

}  // namespace

TEST(ModelParams, Validation) {
  EXPECT_THROW(ModelParams(0.0, 2), ParameterError);
  EXPECT_THROW(ModelParams(1.0, 2), ParameterError);
  EXPECT_THROW(ModelParams(0.5, 0.5), ParameterError);
  EXPECT_THROW(ModelParams(std::nan(""), 2), ParameterError);
  EXPECT_NO_THROW(ModelParams(0.5, 1.0));
  EXPECT_THROW(ModelParams(0.5, 2.5).q_colors(), ParameterError);
  EXPECT_EQ(ModelParams(0.5, 3.0).q_colors(), 3u);
}

TEST(ModelParams, BetaMapping) {
  const ModelParams m(0.5, 2);
  EXPECT_NEAR(m.beta(), std::log(2.0), 1e-15);
  EXPECT_NEAR(ModelParams::from_beta(m.beta(), 2).p(), 0.5, 1e-15);
  EXPECT_NEAR(m.log_odds(), 0.0, 1e-15);
  EXPECT_THROW(ModelParams::from_beta(0.0, 2), ParameterError);
}

TEST(SpinConfig, IndexIsBaseQWithVertexZeroLowest) {
  const SpinConfig s = SpinConfig::from_index(3, 3, 5);  // 5 = 2 + 1*3
  EXPECT_EQ(s.colors(), (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(s.index(), 5u);
  for (std::uint64_t i = 0; i < 81; ++i) EXPECT_EQ(SpinConfig::from_index(4, 3, i).index(), i);
  EXPECT_THROW(SpinConfig(2, {0, 1}), ParameterError);
  EXPECT_THROW(SpinConfig::from_index(2, 2, 4), ParameterError);
}

TEST(JointIndex, PacksSpinAboveSubset) {
  const JointIndex j{5, 3};
  EXPECT_EQ(j.compose(2), 23u);
  EXPECT_EQ(JointIndex::decompose(23, 2), j);
}

TEST(StateCounts, CapsApply) {
  Caps caps;
  caps.spin_states = 8;
  EXPECT_EQ(spin_state_count(make_path(3), 2, caps), 8u);
  EXPECT_THROW(spin_state_count(make_path(4), 2, caps), SizeError);
  EXPECT_EQ(joint_state_count(make_path(3), 3), 27u * 4u);
  caps.joint_states = 100;
  EXPECT_THROW(joint_state_count(make_path(3), 3, caps), SizeError);
}

TEST(RandomCluster, MatchesOracle) {
  for (const Graph& g : kGraphs) {
    for (double p : {0.1, 0.5, 0.85}) {
      for (double q : {1.0, 2.0, 3.0, 4.5}) {
        const ModelParams params(p, q);
        const auto expected = oracle::rc_distribution(g, p, q);
        const auto got = rc_distribution(g, params);
        ASSERT_EQ(got.size(), expected.size());
        for (std::size_t a = 0; a < got.size(); ++a) EXPECT_NEAR(got[a], expected[a], 1e-14);
        EXPECT_NEAR(rc_log_partition(g, params).value, std::log(oracle::rc_partition(g, p, q)), 1e-12);
        EXPECT_NEAR(rc_prob(g, params, EdgeSubset::full(g.num_edges())), expected.back(), 1e-14);
      }
    }
  }
}

TEST(RandomCluster, SingleEdgeClosedForm) {
  // mu(e) = p / (p + (1 - p) q) on K2.
  const ModelParams m(0.3, 3);
  EXPECT_NEAR(rc_distribution(make_path(2), m)[1], 0.3 / (0.3 + 0.7 * 3), 1e-15);
}

TEST(Potts, MatchesOracleAndDirectPartition) {
  for (const Graph& g : kGraphs) {
    for (double p : {0.2, 0.7}) {
      for (std::size_t q : {2u, 3u}) {
        const ModelParams params(p, double(q));
        const auto expected = oracle::potts_distribution(g, params.beta(), q);
        const auto got = potts_distribution(g, params);
        const auto direct = potts_distribution_at_beta(g, params.beta(), q);
        for (std::size_t s = 0; s < got.size(); ++s) {
          EXPECT_NEAR(got[s], expected[s], 1e-14);
          EXPECT_NEAR(direct[s], expected[s], 1e-14);
        }
        // With 1 - p = e^(-beta) the two partition functions coincide.
        EXPECT_NEAR(potts_log_partition_direct(g, params.beta(), q).value, rc_log_partition(g, params).value, 1e-12);
      }
    }
  }
}

TEST(Potts, InfiniteTemperatureIsUniform) {
  const auto pi = potts_distribution_at_beta(make_complete(3), 0.0, 3);
  for (double x : pi) EXPECT_NEAR(x, 1.0 / 27.0, 1e-15);
}

TEST(Fkes, MatchesOracleAndSupport) {
  for (const Graph& g : {make_path(2), make_complete(3), make_path(4)}) {
    for (std::size_t q : {2u, 3u}) {
      const ModelParams params(0.4, double(q));
      const auto expected = oracle::fkes_distribution(g, 0.4, q);
      const auto got = fkes_distribution(g, params);
      ASSERT_EQ(got.size(), expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-14);
      const SpinConfig mixed = SpinConfig::from_index(g.num_vertices(), q, 1);
      EXPECT_TRUE(std::isinf(fkes_log_prob(g, params, mixed, EdgeSubset::full(g.num_edges())).value));
    }
  }
}

TEST(Structure, OmegaHasQToTheComponentsColourings) {
  for (const Graph& g : {make_complete(3), make_cycle(4), make_star(4)}) {
    for (std::size_t q : {2u, 3u}) {
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << g.num_edges()); ++a) {
        EXPECT_EQ(oracle::omega_size(g, q, a), oracle::ipow(q, oracle::count_components(g, a)));
        std::size_t counted = 0;
        const EdgeSubset subset = EdgeSubset::from_index(g.num_edges(), a);
        for (std::uint64_t s = 0; s < oracle::ipow(q, g.num_vertices()); ++s) {
          counted += in_omega(g, SpinConfig::from_index(g.num_vertices(), q, s), subset);
        }
        EXPECT_EQ(counted, oracle::omega_size(g, q, a));
      }
    }
  }
}

// Among colourings constant on A's clusters, the share that is constant on e is
// 1 when e's endpoints are joined in A and 1/q otherwise.
TEST(Structure, MonochromaticShareOfAnEdge) {
  const Graph g = make_cycle(4);
  for (std::size_t q : {2u, 3u}) {
    for (std::uint64_t a = 0; a < 16; ++a) {
      for (std::size_t e = 0; e < 4; ++e) {
        std::size_t inside = 0;
        std::size_t mono = 0;
        for (std::uint64_t s = 0; s < oracle::ipow(q, 4); ++s) {
          const SpinConfig sigma = SpinConfig::from_index(4, q, s);
          if (!in_omega(g, sigma, EdgeSubset::from_index(4, a))) continue;
          ++inside;
          mono += (monochromatic_mask(g, sigma) >> e) & 1U;
        }
        const double joined = oracle::joined(g, a, g.edge(e).u, g.edge(e).v) ? 1.0 : 0.0;
        EXPECT_NEAR(double(mono) / double(inside), 1.0 / double(q) + joined * (1.0 - 1.0 / double(q)), 1e-15);
      }
    }
  }
}

TEST(LogSumExp, Basics) {
  EXPECT_NEAR(log_sum_exp({std::log(2.0), std::log(3.0)}), std::log(5.0), 1e-15);
  EXPECT_TRUE(std::isinf(log_sum_exp({})));
  EXPECT_NEAR(log_sum_exp({1000.0, 1000.0}), 1000.0 + std::log(2.0), 1e-12);
}
