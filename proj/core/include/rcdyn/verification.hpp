#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "rcdyn/caps.hpp"
#include "rcdyn/check.hpp"

namespace rcdyn {

enum class Suite { theorem, lemma, representation, marginals, sandwich, tree, width, mixing, bounds };

inline constexpr Suite kAllSuites[] = {Suite::theorem,  Suite::lemma, Suite::representation,
                                       Suite::marginals, Suite::sandwich, Suite::tree,
                                       Suite::width,    Suite::mixing, Suite::bounds};

std::string_view suite_name(Suite s);
std::optional<Suite> parse_suite(std::string_view name);

struct SuiteOptions {
  /// Edge probabilities; empty selects the suite's own grid.
  std::vector<double> p_values;
  /// Integer cluster weights; empty selects {2, 3}.
  std::vector<double> q_values;
  /// Largest graph (vertex count) in the enumerated and fixture sets. 0 picks
  /// 4 when every q <= 3 and 3 otherwise.
  std::size_t max_vertices = 0;
  Caps caps;
};

using CheckSink = std::function<void(Suite, const CheckResult&)>;

struct SuiteSummary {
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Check with the largest violation - tolerance.
  std::optional<CheckResult> worst;

  void record(const CheckResult& r);
  void merge(const SuiteSummary& other);
};

/// Runs every check of `suite`, reporting each result to `sink` as it is made.
/// Cap violations propagate as SizeError.
SuiteSummary run_suite(Suite suite, const SuiteOptions& options, const CheckSink& sink = {});

}  // namespace rcdyn
