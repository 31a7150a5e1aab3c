#include "rcdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rcdyn/errors.hpp"

namespace rcdyn {

double check_reversible(const StochasticMatrix& p) {
  const auto& pi = p.stationary();
  double worst = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = x + 1; y < p.size(); ++y) {
      worst = std::max(worst, std::abs(pi[x] * p(x, y) - pi[y] * p(y, x)));
    }
  }
  return worst;
}

DenseMatrix symmetrize(const StochasticMatrix& p) {
  const auto& pi = p.stationary();
  for (double w : pi) {
    if (!(w > 0.0)) throw ParameterError("stationary distribution must be strictly positive");
  }
  DenseMatrix s(p.size(), p.size());
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < p.size(); ++y) s(x, y) = std::sqrt(pi[x] / pi[y]) * p(x, y);
  }
  return s;
}

namespace {

void require_reversible(const SpectralOptions& options, double violation) {
  if (violation > options.reversibility_tolerance) {
    throw ReversibilityError("matrix is not reversible w.r.t. its stationary vector (violation " +
                             std::to_string(violation) + ")");
  }
}

// Replaces S by (S + S^T)/2 and returns the asymmetry it removed.
double symmetric_part(DenseMatrix& s) {
  const double asymmetry = max_asymmetry(s);
  for (std::size_t r = 0; r < s.rows(); ++r) {
    for (std::size_t c = r + 1; c < s.cols(); ++c) {
      const double mean = 0.5 * (s(r, c) + s(c, r));
      s(r, c) = mean;
      s(c, r) = mean;
    }
  }
  return asymmetry;
}

}  // namespace

SpectrumResult spectral_gap(const StochasticMatrix& p, const Caps& caps, const SpectralOptions& options) {
  require_within(p.size(), caps.matrix_states, "dense eigensolver dimension");
  SpectrumResult result;
  result.reversibility_error = check_reversible(p);
  require_reversible(options, result.reversibility_error);

  DenseMatrix s = symmetrize(p);
  result.symmetrization_error = symmetric_part(s);
  result.eigenvalues = jacobi_eigenvalues(std::move(s), options.jacobi).eigenvalues;

  for (double xi : result.eigenvalues) {
    if (std::abs(xi - 1.0) <= 1e-9) ++result.multiplicity_of_one;
  }
  if (result.eigenvalues.size() <= 1) {
    result.gap = 1.0;
    return result;
  }
  // Drop one copy of the Perron eigenvalue (the largest); the rest decide the gap.
  double top = 0.0;
  for (std::size_t i = 1; i < result.eigenvalues.size(); ++i) {
    if (std::abs(result.eigenvalues[i]) > std::abs(top)) top = result.eigenvalues[i];
  }
  result.second_eigenvalue = top;
  result.gap = 1.0 - std::abs(top);
  return result;
}

double gap_via_norm(const StochasticMatrix& p, const Caps& caps, const SpectralOptions& options) {
  require_within(p.size(), caps.matrix_states, "dense eigensolver dimension");
  require_reversible(options, check_reversible(p));
  const auto& pi = p.stationary();
  DenseMatrix d = symmetrize(p);
  // Symmetrised S_pi is the rank-one matrix sqrt(pi(x) pi(y)).
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < p.size(); ++y) d(x, y) -= std::sqrt(pi[x] * pi[y]);
  }
  symmetric_part(d);
  const auto eig = jacobi_eigenvalues(std::move(d), options.jacobi).eigenvalues;
  double norm = 0.0;
  for (double xi : eig) norm = std::max(norm, std::abs(xi));
  return 1.0 - norm;
}

StochasticMatrix stationary_projector(std::vector<double> pi) {
  DenseMatrix s(pi.size(), pi.size());
  for (std::size_t x = 0; x < pi.size(); ++x) {
    for (std::size_t y = 0; y < pi.size(); ++y) s(x, y) = pi[y];
  }
  return StochasticMatrix(std::move(s), std::move(pi), false);
}

// ---------------------------------------------------------------------------

double max_l1_distance(const DenseMatrix& m, const std::vector<double>& pi) {
  double worst = 0.0;
  for (std::size_t x = 0; x < m.rows(); ++x) {
    double sum = 0.0;
    auto row = m.row(x);
    for (std::size_t y = 0; y < m.cols(); ++y) sum += std::abs(row[y] - pi[y]);
    worst = std::max(worst, sum);
  }
  return worst;
}

MixingResult exact_mixing_time(const StochasticMatrix& p, std::size_t cap_steps, const Caps& caps) {
  require_within(p.size(), caps.powering_states, "mixing-time powering dimension");
  const double threshold = std::exp(-1.0);
  const auto& pi = p.stationary();
  MixingResult result;

  const double at_zero = max_l1_distance(DenseMatrix::identity(p.size()), pi);
  result.distances.emplace_back(0, at_zero);
  if (at_zero <= threshold) {
    result.mixing_time = 0;
    return result;
  }

  // powers[k] = P^(2^k). Find the first k with d(2^k) <= threshold.
  std::vector<DenseMatrix> powers{p.entries()};
  std::size_t k = 0;
  while (true) {
    const std::size_t t = std::size_t{1} << k;
    const double d = max_l1_distance(powers[k], pi);
    result.distances.emplace_back(t, d);
    if (d <= threshold) break;
    if (t >= cap_steps) {
      result.timed_out = true;
      return result;
    }
    powers.push_back(multiply(powers[k], powers[k]));
    ++k;
  }

  // Largest t with d(t) > threshold lies in [2^(k-1), 2^k); fix its bits top-down.
  std::size_t below = 0;
  DenseMatrix current;
  if (k > 0) {
    below = std::size_t{1} << (k - 1);
    current = powers[k - 1];
    for (std::size_t j = k - 1; j-- > 0;) {
      DenseMatrix candidate = multiply(current, powers[j]);
      const std::size_t t = below + (std::size_t{1} << j);
      const double d = max_l1_distance(candidate, pi);
      result.distances.emplace_back(t, d);
      if (d > threshold) {
        below = t;
        current = std::move(candidate);
      }
    }
  }
  std::sort(result.distances.begin(), result.distances.end());
  const std::size_t tau = below + 1;
  if (tau > cap_steps) {
    result.timed_out = true;
    return result;
  }
  result.mixing_time = tau;
  return result;
}

std::vector<double> distance_trajectory(const StochasticMatrix& p, std::size_t steps, const Caps& caps) {
  require_within(p.size(), caps.powering_states, "mixing-time powering dimension");
  std::vector<double> out;
  out.reserve(steps + 1);
  DenseMatrix current = DenseMatrix::identity(p.size());
  out.push_back(max_l1_distance(current, p.stationary()));
  for (std::size_t t = 1; t <= steps; ++t) {
    current = multiply(current, p.entries());
    out.push_back(max_l1_distance(current, p.stationary()));
  }
  return out;
}

SandwichBounds sandwich_bounds(double gap, double pi_min) {
  if (!(pi_min > 0.0)) throw ParameterError("pi_min must be positive");
  if (gap <= 0.0) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    return {kInf, kInf};
  }
  return {1.0 / gap - 1.0, std::log(2.0 * std::numbers::e / pi_min) / gap};
}

SandwichBounds sandwich_bounds(const StochasticMatrix& p, const Caps& caps) {
  const double pi_min = *std::min_element(p.stationary().begin(), p.stationary().end());
  return sandwich_bounds(spectral_gap(p, caps).gap, pi_min);
}

double mu_min_lower_bound(const Graph& g, const ModelParams& params) {
  return std::exp(static_cast<double>(g.num_edges()) * std::log(params.p() * (1.0 - params.p())) -
                  static_cast<double>(g.num_vertices()) * std::log(params.q()));
}

}  // namespace rcdyn
