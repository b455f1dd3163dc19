#pragma once

#include <cstddef>
#include <optional>

#include "json.hpp"
#include "asimkit/asimulation.hpp"
#include "asimkit/fo_model.hpp"
#include "asimkit/formulas.hpp"
#include "asimkit/generators.hpp"

namespace asimkit {

/// A pair of points related by a k-asimulation with k = degree(phi) where phi
/// holds on the left and fails on the right.
struct Witness {
  FoFormula formula;
  EvalPoint left;
  EvalPoint right;
  int k = 0;
  AtomMode mode = AtomMode::Full;
  AsimRelation relation;
  bool left_value = true;
  bool right_value = false;
  /// Zero-based index of the case that produced it.
  std::size_t case_index = 0;
};

struct SearchResult {
  std::optional<Witness> witness;
  std::size_t cases = 0;
  /// Whether every model pair with domains <= 2 was tried.
  bool small_exhausted = false;
};

/// Enumerates all model pairs over the letters of phi with domains of size 1,
/// then 2, in a fixed order, every pair of seeds on each; afterwards samples
/// models from `bounds`. Each (pair, seeds) is one case. phi's free variables
/// must be x and w1..wn for some n (gaps allowed); anything else throws Error.
SearchResult search_noninvariance(const FoFormula& phi, const GenConfig& bounds, std::size_t budget,
                                  AtomMode mode = AtomMode::Full);

std::optional<Witness> find_noninvariance_witness(const FoFormula& phi, const GenConfig& bounds, std::size_t budget,
                                                  AtomMode mode = AtomMode::Full);

/// Largest n with w<n> free in phi; throws Error on free variables other than x and w<i>.
int point_arity_of(const FoFormula& phi);

/// Rechecks the stored relation and truth values.
bool replay(const Witness& w);

nlohmann::json witness_to_json(const Witness& w);
/// Inverse of witness_to_json.
Witness witness_from_json(const nlohmann::json& j);

}  // namespace asimkit
