#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rcdyn/errors.hpp"
#include "rcdyn/spectral.hpp"

using namespace rcdyn;

namespace {

oracle::Matrix to_oracle(const StochasticMatrix& m) {
  oracle::Matrix out(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m(i, j);
  return out;
}

StochasticMatrix two_state(double a, double b) {
  DenseMatrix p(2, 2);
  p(0, 0) = 1 - a;
  p(0, 1) = a;
  p(1, 0) = b;
  p(1, 1) = 1 - b;
  return StochasticMatrix(p, {b / (a + b), a / (a + b)}, false);
}

}  // namespace

TEST(SpectralGap, SingleEdgeValues) {
  const ModelParams half(0.5, 2);
  EXPECT_NEAR(spectral_gap(sb_matrix(make_path(2), half)).gap, 0.375, 1e-14);
  EXPECT_NEAR(spectral_gap(sw_matrix(make_path(2), half)).gap, 0.75, 1e-14);
}

TEST(SpectralGap, TwoStateChain) {
  // Eigenvalues 1 and 1 - a - b.
  const auto r = spectral_gap(two_state(0.3, 0.2));
  EXPECT_NEAR(r.second_eigenvalue, 0.5, 1e-15);
  EXPECT_NEAR(r.gap, 0.5, 1e-15);
  EXPECT_EQ(r.multiplicity_of_one, 1u);
  // Negative second eigenvalue counts by modulus.
  EXPECT_NEAR(spectral_gap(two_state(0.9, 0.8)).gap, 1.0 - 0.7, 1e-14);
}

TEST(SpectralGap, MatchesEigenOracleForEveryDynamics) {
  for (const Graph& g : {make_complete(3), make_cycle(4), make_star(4), make_complete(4)}) {
    for (double p : {0.1, 0.5, 0.9}) {
      for (double q : {2.0, 3.0}) {
        const ModelParams params(p, q);
        for (Dynamics d : kAllDynamics) {
          const StochasticMatrix m = build_dynamics_matrix(d, g, params);
          const auto r = spectral_gap(m);
          EXPECT_NEAR(r.gap, oracle::gap(to_oracle(m), m.stationary()), 1e-11) << dynamics_name(d);
          EXPECT_NEAR(gap_via_norm(m), r.gap, 1e-11);
          const auto ev = oracle::eigenvalues(to_oracle(m), m.stationary());
          for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(r.eigenvalues[i], ev[i], 1e-11);
          if (m.lazy()) EXPECT_GT(r.eigenvalues.back(), -1e-12);
        }
      }
    }
  }
}

TEST(SpectralGap, SingleStateHasGapOne) {
  DenseMatrix p(1, 1, 1.0);
  EXPECT_EQ(spectral_gap(StochasticMatrix(p, {1.0}, false)).gap, 1.0);
}

TEST(SpectralGap, RejectsIrreversibleAndOversize) {
  DenseMatrix cyc(3, 3);
  cyc(0, 1) = cyc(1, 2) = cyc(2, 0) = 0.9;
  cyc(0, 0) = cyc(1, 1) = cyc(2, 2) = 0.1;
  const StochasticMatrix rotation(cyc, {1.0 / 3, 1.0 / 3, 1.0 / 3}, false);
  EXPECT_GT(check_reversible(rotation), 0.1);
  EXPECT_THROW(spectral_gap(rotation), ReversibilityError);
  Caps caps;
  caps.matrix_states = 1;
  EXPECT_THROW(spectral_gap(two_state(0.1, 0.1), caps), SizeError);
}

TEST(SpectralGap, ReducibleChainHasZeroGap) {
  DenseMatrix id = DenseMatrix::identity(2);
  const auto r = spectral_gap(StochasticMatrix(id, {0.5, 0.5}, true));
  EXPECT_EQ(r.multiplicity_of_one, 2u);
  EXPECT_NEAR(r.gap, 0.0, 1e-15);
}

TEST(Mixing, MatchesStepwiseOracle) {
  for (const Graph& g : {make_path(2), make_complete(3), make_cycle(4)}) {
    for (double p : {0.1, 0.5, 0.9}) {
      const ModelParams params(p, 2);
      for (Dynamics d : kAllDynamics) {
        const StochasticMatrix m = build_dynamics_matrix(d, g, params);
        const MixingResult r = exact_mixing_time(m);
        ASSERT_TRUE(r.mixing_time.has_value());
        EXPECT_EQ(*r.mixing_time, oracle::mixing_time(to_oracle(m), m.stationary())) << dynamics_name(d);
        EXPECT_FALSE(r.timed_out);
        for (std::size_t i = 1; i < r.distances.size(); ++i) EXPECT_LT(r.distances[i - 1].first, r.distances[i].first);
      }
    }
  }
}

TEST(Mixing, TrajectoryIsNonIncreasing) {
  const StochasticMatrix m = sb_matrix(make_cycle(4), ModelParams(0.7, 3));
  const auto d = distance_trajectory(m, 60);
  ASSERT_EQ(d.size(), 61u);
  for (std::size_t t = 1; t < d.size(); ++t) EXPECT_LE(d[t], d[t - 1] + 1e-15);
  const auto tau = *exact_mixing_time(m).mixing_time;
  EXPECT_LE(d[tau], std::exp(-1.0));
  EXPECT_GT(d[tau - 1], std::exp(-1.0));
}

TEST(Mixing, TimesOutAndRespectsCaps) {
  const MixingResult r = exact_mixing_time(two_state(1e-6, 1e-6), 100);
  EXPECT_TRUE(r.timed_out);
  EXPECT_FALSE(r.mixing_time.has_value());
  Caps caps;
  caps.powering_states = 1;
  EXPECT_THROW(exact_mixing_time(two_state(0.5, 0.5), 10, caps), SizeError);
  // Already mixed at t = 0.
  DenseMatrix p(1, 1, 1.0);
  EXPECT_EQ(exact_mixing_time(StochasticMatrix(p, {1.0}, false)).mixing_time, 0u);
}

TEST(Sandwich, FormulaAndContainment) {
  const auto b = sandwich_bounds(0.25, 0.01);
  EXPECT_DOUBLE_EQ(b.lower, 3.0);
  EXPECT_DOUBLE_EQ(b.upper, std::log(200.0 * std::exp(1.0)) * 4.0);
  EXPECT_TRUE(std::isinf(sandwich_bounds(0.0, 0.5).upper));
  const StochasticMatrix m = sw_matrix(make_complete(3), ModelParams(0.6, 3));
  const auto s = sandwich_bounds(m);
  const double tau = double(*exact_mixing_time(m).mixing_time);
  EXPECT_LE(s.lower, tau);
  EXPECT_GE(s.upper, tau);
}

TEST(Sandwich, MuMinLowerBound) {
  for (const Graph& g : {make_complete(3), make_cycle(4)}) {
    const ModelParams params(0.3, 3);
    const auto mu = rc_distribution(g, params);
    EXPECT_LE(mu_min_lower_bound(g, params), *std::min_element(mu.begin(), mu.end()));
  }
}

TEST(StationaryProjector, IsRankOne) {
  const StochasticMatrix s = stationary_projector({0.2, 0.3, 0.5});
  EXPECT_EQ(s(0, 2), 0.5);
  EXPECT_EQ(s(2, 0), 0.2);
  EXPECT_NEAR(spectral_gap(s).gap, 1.0, 1e-12);
}
