#pragma once

#include <string>

namespace rcdyn {

/// Outcome of one quantified check: pass iff max_violation <= tolerance.
struct CheckResult {
  std::string check;
  /// Instance the check ran on, e.g. "graph=... p=0.5 q=2". Empty for fixture-free checks.
  std::string subject;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline CheckResult make_check(std::string check, double violation, double tolerance, std::string subject = {}) {
  // NaN never passes.
  return {std::move(check), std::move(subject), violation, tolerance, violation <= tolerance};
}

}  // namespace rcdyn
