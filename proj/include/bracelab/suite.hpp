#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bracelab/prelie.hpp"

namespace bracelab {

struct SuiteOptions {
  SweepMode mode = SweepMode::automatic();
  std::optional<unsigned> k;
  std::optional<int> depth;  // overrides the default descent depth
  PullbackSection::Policy section = PullbackSection::Policy::canonical;
  u64 section_seed = 0;
  /// Random sections compared against the build section.
  std::vector<u64> comparison_seeds{1, 2, 3};
  /// Sample count for the pre-Lie identity when its triple space is too large.
  u64 prelie_samples = 1000000;
};

struct SuiteResult {
  std::string suite;
  SweepMode mode;
  std::vector<Report> reports;
  double seconds = 0;

  bool passed() const;
  /// Exit status: 0 when every clause passes or is skipped, 1 otherwise.
  int exit_code() const { return passed() ? 0 : 1; }
  Json to_json(bool timing = true) const;
};

/// axioms, properties, filtration, prelie, flows, all.
const std::vector<std::string>& suite_ids();
SuiteResult run_suite(const Brace& b, const std::string& suite, const SuiteOptions& options = {});
/// Loads and validates the document first.
SuiteResult run_suite(const Json& doc, const std::string& suite, const SuiteOptions& options = {});

// The bundles behind the suites. Library errors inside a bundle become a
// failing "error" clause (or a skipped one for unsupported primes).
std::vector<Report> axiom_checks(const Brace& b, const SuiteOptions& options);
std::vector<Report> property_checks(const Brace& b, const SuiteOptions& options);
std::vector<Report> filtration_checks(const Brace& b, const SuiteOptions& options);
/// When `built` is given, the quotient pre-Lie ring is stored there.
std::vector<Report> prelie_checks(const Brace& b, const SuiteOptions& options,
                                  std::optional<QuotientPreLie>* built = nullptr);
std::vector<Report> roundtrip_checks(const Brace& b, const SuiteOptions& options);
std::vector<Report> recovery_checks(const Brace& b, const SuiteOptions& options);

}  // namespace bracelab
