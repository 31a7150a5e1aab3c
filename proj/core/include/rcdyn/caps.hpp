#pragma once

#include <cstddef>
#include <string>

namespace rcdyn {

/// Upper limits on enumerated state spaces. Every builder checks the relevant
/// cap before allocating and throws SizeError when it would be exceeded.
struct Caps {
  /// Random-cluster states 2^|E| for distribution vectors and partition sums.
  std::size_t rc_states = std::size_t{1} << 24;
  /// Potts configurations q^|V|.
  std::size_t spin_states = std::size_t{1} << 24;
  /// Joint states q^|V| * 2^|E| for the FKES operators.
  std::size_t joint_states = std::size_t{1} << 22;
  /// Dimension of dense transition matrices (and the dense eigensolver).
  std::size_t matrix_states = 4096;
  /// Dimension accepted by exact mixing-time powering.
  std::size_t powering_states = 1024;

  /// Defaults, with `RCDYN_MAX_STATES` (if set) overriding the dense matrix,
  /// powering and joint caps.
  static Caps from_environment();
};

/// Throws SizeError if `requested > limit`.
void require_within(std::size_t requested, std::size_t limit, const std::string& what);

/// base^exponent, or SIZE_MAX when the result does not fit.
std::size_t saturating_pow(std::size_t base, std::size_t exponent);

}  // namespace rcdyn
