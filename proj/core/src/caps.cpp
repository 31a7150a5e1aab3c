#include "rcdyn/caps.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "rcdyn/errors.hpp"

namespace rcdyn {

Caps Caps::from_environment() {
  Caps caps;
  if (const char* raw = std::getenv("RCDYN_MAX_STATES"); raw != nullptr && *raw != '\0') {
    std::size_t value = 0;
    try {
      value = std::stoull(raw);
    } catch (const std::exception&) {
      throw ParameterError(std::string("RCDYN_MAX_STATES is not an integer: ") + raw);
    }
    caps.matrix_states = value;
    caps.powering_states = value;
    caps.joint_states = value;
  }
  return caps;
}

void require_within(std::size_t requested, std::size_t limit, const std::string& what) {
  if (requested > limit) throw SizeError(what, requested, limit);
}

std::size_t saturating_pow(std::size_t base, std::size_t exponent) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > kMax / base) return kMax;
    result *= base;
  }
  return result;
}

}  // namespace rcdyn
