#pragma once

// k-asimulations and asimulations between evaluation points of two finite
// models M and N.
//
// A k-asimulation state records the number m of predecessor worlds but not
// the worlds themselves: none of the four conditions reads them, so two
// states that differ only in their histories are interchangeable. States
// with m + l > n + k are never constrained and are left out.
//
// An asimulation state in FULL atom mode depends only on the two worlds and
// the set of object pairs (b_i, d_i) of its tuples, so relations are kept
// as sets of (world, world, pair-set) triples.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asimkit/fo_model.hpp"

namespace asimkit {

enum class AtomMode : std::uint8_t {
  /// Only P'(x, w_1, ..., w_l) for letters of arity exactly l + 1.
  Literal,
  /// Every P'(x, w_i1, ..., w_ir) with indices drawn from the tuple.
  Full,
};

const char* atom_mode_name(AtomMode m);
AtomMode parse_atom_mode(const std::string& s);

/// Which model the left-hand side of a state lives in.
enum class Side : std::uint8_t { M, N };

inline Side other(Side s) { return s == Side::M ? Side::N : Side::M; }

struct PairState {
  Side left = Side::M;
  int hist_len = 0;
  Element left_world = 0;
  Element right_world = 0;
  Tuple left_objects;
  Tuple right_objects;

  int length() const { return static_cast<int>(left_objects.size()); }
  auto operator<=>(const PairState&) const = default;
};

struct AsimRelation {
  EvalPoint seed_left;   // in M
  EvalPoint seed_right;  // in N
  int n = 0;
  int k = 0;
  AtomMode mode = AtomMode::Literal;
  /// Sorted, without duplicates.
  std::vector<PairState> states;

  const FoModel& model(Side s) const { return s == Side::M ? *seed_left.model : *seed_right.model; }
  PairState seed() const;
  bool contains(const PairState& s) const;
};

struct QuotientState {
  Side left = Side::M;
  Element left_world = 0;
  Element right_world = 0;
  /// Sorted pairs (b, d), b in the left model, d in the right one.
  std::vector<std::pair<Element, Element>> pairs;

  auto operator<=>(const QuotientState&) const = default;
};

struct QuotientRelation {
  EvalPoint seed_left;
  EvalPoint seed_right;
  /// Sorted, without duplicates.
  std::vector<QuotientState> states;

  const FoModel& model(Side s) const { return s == Side::M ? *seed_left.model : *seed_right.model; }
  QuotientState seed() const;
  bool contains(const QuotientState& s) const;
};

enum class Condition : std::uint8_t { MissingSeed, Atoms, RStep, EStep, REStep };

const char* condition_name(Condition c);

template <class State>
struct Violation {
  State state;
  Condition condition;
  /// The unmatched element(s) or letter, in element ids.
  std::string detail;
};

using ViolationReport = Violation<PairState>;
using QuotientViolation = Violation<QuotientState>;

std::string to_string(const PairState& s, const FoModel& left, const FoModel& right);
std::string to_string(const QuotientState& s, const FoModel& left, const FoModel& right);
std::string to_string(const ViolationReport& v, const AsimRelation& a);
std::string to_string(const QuotientViolation& v, const QuotientRelation& a);

/// Default ceiling on the number of explored states.
inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 22;

/// Throws RelationError for malformed states (bad orientation, unequal
/// tuple lengths, elements out of range, m + l > n + k).
std::optional<ViolationReport> is_k_asimulation(const AsimRelation& a, int k);

struct KAsimOutcome {
  std::optional<AsimRelation> relation;
  /// Explored states that did not survive, sorted.
  std::vector<PairState> deleted;
  std::size_t explored = 0;
};

/// The greatest k-asimulation restricted to the states reachable from the
/// seed through the conditions' witnesses. Since every condition only looks
/// at reachable states, this is the maximal k-asimulation cut down to that
/// region and is itself a k-asimulation.
KAsimOutcome compute_k_asimulation(const EvalPoint& pt_m, const EvalPoint& pt_n, int k, AtomMode mode,
                                   std::size_t state_cap = kDefaultStateCap);
std::optional<AsimRelation> max_k_asimulation(const EvalPoint& pt_m, const EvalPoint& pt_n, int k,
                                              AtomMode mode = AtomMode::Literal);

/// Checks the unbounded conditions over quotient states (FULL atom mode).
std::optional<QuotientViolation> is_asimulation_quotient(const QuotientRelation& a);

/// Requires |D(M)| * |D(N)| <= 64.
std::optional<QuotientRelation> max_asimulation_quotient(const EvalPoint& pt_m, const EvalPoint& pt_n,
                                                         std::size_t state_cap = kDefaultStateCap);

/// Quotient states reachable from the seed, whether or not they survive.
std::vector<QuotientState> reachable_quotient_states(const EvalPoint& pt_m, const EvalPoint& pt_n,
                                                     std::size_t state_cap = kDefaultStateCap);

/// Every history length and every tuple listing of each quotient state,
/// restricted to m + l <= n + k. Throws RelationError when `a` is not an
/// asimulation.
AsimRelation lift_to_k(const QuotientRelation& a, int k);

/// Requires both points to live in models over the same vocabulary and to
/// carry equally many objects; throws RelationError otherwise.
void check_compatible(const EvalPoint& pt_m, const EvalPoint& pt_n);

}  // namespace asimkit
