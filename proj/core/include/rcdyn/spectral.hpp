#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rcdyn/caps.hpp"
#include "rcdyn/dynamics.hpp"
#include "rcdyn/linalg.hpp"

namespace rcdyn {

/// max over (x, y) of |pi(x) P(x,y) - pi(y) P(y,x)|.
double check_reversible(const StochasticMatrix& p);

struct SpectrumResult {
  /// All eigenvalues, sorted descending.
  std::vector<double> eigenvalues;
  /// 1 - max |xi| over the spectrum with one copy of the top eigenvalue removed.
  double gap = 0.0;
  /// Eigenvalue of largest modulus after the top one is removed.
  double second_eigenvalue = 0.0;
  /// Eigenvalues within 1e-9 of 1. Equals 1 for an ergodic chain.
  std::size_t multiplicity_of_one = 0;
  /// max |S - S^T| of the symmetrised matrix before solving.
  double symmetrization_error = 0.0;
  double reversibility_error = 0.0;
};

struct SpectralOptions {
  /// Inputs with larger detailed-balance violation are rejected.
  double reversibility_tolerance = 1e-9;
  JacobiOptions jacobi;
};

/// S(x,y) = sqrt(pi(x)/pi(y)) P(x,y), similar to P.
DenseMatrix symmetrize(const StochasticMatrix& p);

/// Spectral gap via the symmetrised matrix and cyclic Jacobi. Throws
/// ReversibilityError, SizeError (caps.matrix_states) or ConvergenceError.
SpectrumResult spectral_gap(const StochasticMatrix& p, const Caps& caps = {}, const SpectralOptions& options = {});

/// 1 - (largest |eigenvalue| of the symmetrised P - S_pi), an independent route
/// to the same gap.
double gap_via_norm(const StochasticMatrix& p, const Caps& caps = {}, const SpectralOptions& options = {});

/// Rank-one chain S_pi(x, y) = pi(y).
StochasticMatrix stationary_projector(std::vector<double> pi);

struct MixingResult {
  /// First t with max_x sum_y |P^t(x,y) - pi(y)| <= 1/e; empty on timeout.
  std::optional<std::size_t> mixing_time;
  bool timed_out = false;
  /// (t, max_x L1 distance) at every power that was evaluated, sorted by t.
  std::vector<std::pair<std::size_t, double>> distances;
};

/// max_x sum_y |m(x,y) - pi(y)|.
double max_l1_distance(const DenseMatrix& m, const std::vector<double>& pi);

/// Exact mixing time by repeated squaring followed by binary search over the
/// binary expansion of t; relies on the distance being non-increasing in t.
MixingResult exact_mixing_time(const StochasticMatrix& p, std::size_t cap_steps = 1'000'000, const Caps& caps = {});

/// Distances for t = 0..steps, one multiplication per step.
std::vector<double> distance_trajectory(const StochasticMatrix& p, std::size_t steps, const Caps& caps = {});

struct SandwichBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// (1/gap - 1, log(2e / pi_min) / gap).
SandwichBounds sandwich_bounds(double gap, double pi_min);
SandwichBounds sandwich_bounds(const StochasticMatrix& p, const Caps& caps = {});

/// (p(1-p))^|E| q^-|V|, a lower bound on the smallest random-cluster probability.
double mu_min_lower_bound(const Graph& g, const ModelParams& params);

}  // namespace rcdyn
