#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "asimkit/generators.hpp"

namespace asimkit {

struct SuiteFailure {
  std::size_t case_index = 0;
  std::string what;
  /// Enough data to rebuild the case: models, points, formula, relation.
  nlohmann::json record;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  /// Individual comparisons made across all cases.
  std::size_t checks = 0;
  /// Cases where the property had something to check (e.g. a relation was found).
  std::size_t hits = 0;
  /// Sorted by case index.
  std::vector<SuiteFailure> failures;

  bool empty() const { return cases == 0; }
  /// "ok", "failed" or "empty".
  std::string status() const;
  /// 0 for ok, 1 otherwise.
  int exit_code() const { return status() == "ok" ? 0 : 1; }
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// adequacy, preservation, degree, fixpoint, lift, theory, quotient.
const std::vector<std::string>& suite_names();

/// Runs cfg.cases cases of the named suite. Throws Error for an unknown name.
SuiteReport run_property_suite(const std::string& name, const GenConfig& cfg);

}  // namespace asimkit
