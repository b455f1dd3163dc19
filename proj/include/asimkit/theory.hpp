#pragma once

// Graded families of sets of evaluation points defined by standard
// translations over a fixed pair of finite models.
//
// The points of arity l are (side, world, l objects) over both models. For
// each arity l and grade g the family holds the denotations of ST(i, x) with
// free variables among w1..wl and translation_degree(i) <= g. It is closed
// under union and intersection, so it consists of exactly the up-sets of the
// preorder "every value containing p contains q" restricted to points lying
// in some value. It is stored as a generating set of values plus, for each
// covered point p, its principal up-set (the least value containing p).
//
// Values at (l, g) depend on (l+1, g-1) through the quantifier steps, so a
// family built with budget B holds correct values exactly where l + g <= B.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asimkit/asimulation.hpp"
#include "asimkit/fo_model.hpp"
#include "asimkit/formulas.hpp"
#include "asimkit/point_set.hpp"

namespace asimkit {

struct SemanticValue {
  int arity = 0;
  int grade = 0;
  PointSet members;
  /// Free variables among w1..w<arity>; translation_degree(witness) <= grade.
  IntFormula witness = IntFormula::bottom();
};

struct FamilyOptions {
  AtomMode mode = AtomMode::Full;
  /// Ceiling on generator values per layer and on enumerated closures.
  std::size_t value_cap = std::size_t{1} << 16;
};

class DefinableFamily {
 public:
  /// Correct values for every arity l and grade g with l + g <= budget.
  DefinableFamily(std::shared_ptr<const FoModel> m, std::shared_ptr<const FoModel> n, int budget,
                  FamilyOptions options = {});

  const FoModel& model(Side s) const { return s == Side::M ? *m_ : *n_; }
  std::shared_ptr<const FoModel> model_ptr(Side s) const { return s == Side::M ? m_ : n_; }
  int budget() const { return budget_; }
  AtomMode mode() const { return options_.mode; }
  bool exact(int arity, int grade) const { return arity >= 0 && grade >= 0 && arity + grade <= budget_; }

  std::size_t point_count(int arity) const;
  std::size_t point_index(Side side, Element world, const Tuple& objects) const;
  /// Which model an evaluation point lives in; M wins when both models are the same object.
  Side side_of(const EvalPoint& pt) const;
  std::size_t point_index(const EvalPoint& pt) const;
  EvalPoint point(int arity, std::size_t index) const;
  std::string point_name(int arity, std::size_t index) const;

  /// The generating values at (arity, grade); throws FamilyError outside the exact region.
  const std::vector<SemanticValue>& generators(int arity, int grade) const;
  /// The least value containing the point, or nothing if no value contains it.
  std::optional<PointSet> principal(int arity, int grade, std::size_t point) const;
  /// A witness for principal(); top when no value contains the point.
  IntFormula principal_witness(int arity, int grade, std::size_t point) const;

  /// Whether `set` is one of the values at (arity, grade).
  bool is_value(int arity, int grade, const PointSet& set) const;
  /// Every value at (arity, grade), closed under union and intersection,
  /// smallest witness first. Throws FamilyError past the value cap.
  std::vector<SemanticValue> values(int arity, int grade) const;

  /// Denotation of ST(i, x) over the points of the given arity.
  PointSet value_of(const IntFormula& i, int arity) const;

  /// p <= q at (arity, grade).
  bool leq(int arity, int grade, std::size_t p, std::size_t q) const;
  /// Whether the preorder and covered set at (arity, grade) coincide with those at (arity, other).
  bool same_order(int arity, int grade, int other) const;

 private:
  struct Layer {
    std::vector<SemanticValue> gens;
    std::vector<char> covered;
    std::vector<PointSet> up;
    std::vector<std::optional<IntFormula>> up_witness;
  };

  const Layer& layer(int arity, int grade) const;
  void build();
  Layer make_layer(int arity, int grade);
  void finish_layer(Layer& layer, int arity);
  IntFormula up_witness(const Layer& layer, std::size_t point) const;
  IntFormula union_witness(const Layer& layer, const PointSet& set) const;
  PointSet up_closure(const Layer& layer, const PointSet& set) const;

  std::shared_ptr<const FoModel> m_;
  std::shared_ptr<const FoModel> n_;
  int budget_;
  FamilyOptions options_;
  // layers_[arity][grade], grade <= budget - arity
  std::vector<std::vector<Layer>> layers_;
};

/// (ptL) <= (ptR) at grade k: every value of the points' arity and grade k
/// containing ptL contains ptR. Throws FamilyError if the family does not
/// cover (arity, k) exactly.
bool theory_leq(const EvalPoint& pt_l, const EvalPoint& pt_r, int k, const DefinableFamily& family);

/// ST(c, x) for a conjunction c of family witnesses that holds exactly at the
/// points sharing pt's grade-k values; ST(_|_ -> _|_, x) when none contains pt.
FoFormula complete_conjunction(const EvalPoint& pt, int k, const DefinableFamily& family);

/// The relation {(m, a', b', c', d') | m + l <= n + k, (a'; b') <= (c'; d') at
/// grade n + k + 2 - m - l}, or nothing when the seed itself is not included.
std::optional<AsimRelation> asimulation_from_theory(const EvalPoint& pt_m, const EvalPoint& pt_n, int k,
                                                    FamilyOptions options = {});

struct TheoryOrderResult {
  /// Empty when inclusion fails at the seed.
  std::optional<QuotientRelation> relation;
  /// Grade at which every needed preorder had stopped changing.
  int grade = 0;
  int budget = 0;
  /// Largest pair-set among the reachable quotient states.
  int max_pairs = 0;
};

/// The quotient relation "theory of (a'; b') is included in the theory of
/// (c'; d')" over the quotient states reachable from the seed. The theory is
/// approximated by the grade at which the graded orders of every arity in
/// use stay unchanged for three consecutive grades.
TheoryOrderResult theory_order_asimulation(const EvalPoint& pt_m, const EvalPoint& pt_n, int max_budget = 10,
                                           FamilyOptions options = {});

struct Saturation {
  /// Least g with the orders at grades g, g+1, g+2 equal for every arity <= L.
  int grade = 0;
  int budget = 0;
};

/// Throws FamilyError when no such grade is found within `max_budget`.
Saturation saturation_grade(std::shared_ptr<const FoModel> m, std::shared_ptr<const FoModel> n, int max_arity,
                            int max_budget = 10, FamilyOptions options = {});

}  // namespace asimkit
