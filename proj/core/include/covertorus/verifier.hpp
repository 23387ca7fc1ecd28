#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covertorus/rng.hpp"
#include "covertorus/syntax.hpp"
#include "covertorus/torus.hpp"

namespace covertorus {

struct VerifierConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t max_arity = 4;
  std::int64_t max_exponent = 6;
  std::int64_t kernel_bound = 3;
  /// Worker threads for trials; results do not depend on it.
  std::size_t jobs = 1;
  /// Restrict to these checks; empty runs all.
  std::vector<std::string> only;

  /// Throws InvalidArgument unless every bound is positive.
  void validate() const;
};

using IntersectFn =
    std::function<TorusPresentation(const TorusPresentation&, const TorusPresentation&)>;

/// What a check may depend on besides its instance. `intersect` is the
/// torus intersection used by the dimension checks, replaceable so that a
/// faulty implementation can be shown to be caught.
struct CheckContext {
  VerifierConfig config;
  IntersectFn intersect = [](const TorusPresentation& a, const TorusPresentation& b) {
    return covertorus::intersect(a, b);
  };
};

struct CheckDef {
  std::string_view name;
  std::string_view summary;
  /// Builds the instance for one trial.
  Document (*generate)(CounterRng& rng, const VerifierConfig& cfg);
  /// nullopt on success, otherwise what went wrong. Depends only on the
  /// instance and the context.
  std::optional<std::string> (*evaluate)(const Document& instance, const CheckContext& ctx);
};

const std::vector<CheckDef>& all_checks();
const CheckDef* find_check(std::string_view name);

/// Consistent presentation with n <= max_arity, entries bounded by
/// max_exponent and at most 64 components.
TorusPresentation generate_torus(const VerifierConfig& cfg, CounterRng& rng);

struct Failure {
  std::size_t trial = 0;
  std::string detail;
  /// The instance in declaration syntax.
  std::string instance;
};

struct CheckReport {
  std::string name;
  std::size_t trials = 0;
  std::vector<Failure> failures;
  double wall_ms = 0;
};

struct Report {
  VerifierConfig config;
  std::vector<CheckReport> checks;
  bool passed() const;
};

/// Trial i of check c draws from CounterRng(seed, hash_name(c), i).
CheckReport run_check(const CheckDef& check, const CheckContext& ctx);
Report run_suite(const CheckContext& ctx);

/// Header line, then per check
/// `check=<name> trials=<n> failures=<k> wall_ms=<t>` and for each failure
/// `  failure trial=<i> detail=<text>` followed by the instance indented by
/// four spaces.
std::string format_report(const Report& r, bool with_time = true);

struct ReplayOutcome {
  std::string check;
  std::size_t trial = 0;
  bool reproduced = false;
  std::string detail;
};

/// Re-evaluates every certificate of a formatted report, with the bounds
/// from its header. Throws InvalidArgument on text that is not a report.
std::vector<ReplayOutcome> replay_report(std::string_view text, const CheckContext& ctx);

}  // namespace covertorus
