#pragma once

#include <stdexcept>
#include <string>

namespace rcdyn {

// Invalid model parameter, graph shape, or argument outside an operation's domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A state space (or search space) exceeds the configured cap.
class SizeError : public std::length_error {
 public:
  SizeError(const std::string& what, std::size_t requested, std::size_t limit)
      : std::length_error(what + " (requested " + std::to_string(requested) +
                          ", cap " + std::to_string(limit) + ")"),
        requested_(requested),
        limit_(limit) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t requested_;
  std::size_t limit_;
};

// Input matrix is not reversible with respect to its attached stationary vector.
class ReversibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Iterative eigensolver failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rcdyn
