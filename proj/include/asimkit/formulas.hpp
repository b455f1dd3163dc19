#pragma once

// Abstract syntax for the two object languages: intuitionistic predicate
// formulas (the source of the standard translation) and classical first-order
// formulas with identity over the vocabulary {R, E, P', ...}.
//
// Formula values are immutable trees with shared subterms; copying a formula
// copies a pointer.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace asimkit {

using Variable = std::string;

inline constexpr const char* kAccessLetter = "R";
inline constexpr const char* kExistenceLetter = "E";

bool is_reserved_letter(const std::string& letter);

/// Image of an intuitionistic letter under the letter map: `P` becomes `P'`.
std::string classical_letter(const std::string& intuitionistic);

/// Inverse of classical_letter(); empty for R, E and names without a trailing prime.
std::optional<std::string> intuitionistic_letter(const std::string& classical);

/// Classical predicate letters with their arities. R and E are always present
/// with arity 2; every other letter has arity at least 1.
class Vocabulary {
 public:
  Vocabulary();

  void add(const std::string& letter, int arity);
  /// Declares the intuitionistic letter `letter` of arity `arity` (>= 0), which
  /// is stored as its classical image of arity `arity + 1`.
  void add_intuitionistic(const std::string& letter, int arity);

  std::optional<int> arity(const std::string& letter) const;
  std::optional<int> intuitionistic_arity(const std::string& letter) const;
  bool contains(const std::string& letter) const { return letters_.count(letter) != 0; }

  const std::map<std::string, int>& letters() const { return letters_; }
  /// Letters other than R and E, in name order.
  std::vector<std::string> proper_letters() const;

  /// Union; throws VocabularyError when the two disagree on an arity.
  void merge(const Vocabulary& other);

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::map<std::string, int> letters_;
};

class IntFormula {
 public:
  enum class Kind : std::uint8_t { Atom, Bottom, And, Or, Implies, Exists, Forall };

  static IntFormula atom(std::string letter, std::vector<Variable> args = {});
  static IntFormula bottom();
  static IntFormula conj(IntFormula lhs, IntFormula rhs);
  static IntFormula disj(IntFormula lhs, IntFormula rhs);
  static IntFormula implies(IntFormula lhs, IntFormula rhs);
  static IntFormula exists(Variable var, IntFormula body);
  static IntFormula forall(Variable var, IntFormula body);
  /// `_|_ -> _|_`, the canonical tautology.
  static IntFormula top();

  Kind kind() const { return node_->kind; }
  const std::string& letter() const { return node_->letter; }
  const std::vector<Variable>& args() const { return node_->args; }
  const Variable& var() const { return node_->var; }
  IntFormula lhs() const { return IntFormula(node_->lhs); }
  IntFormula rhs() const { return IntFormula(node_->rhs); }
  IntFormula body() const { return IntFormula(node_->lhs); }

  bool is_binary() const;
  bool is_quantifier() const { return kind() == Kind::Exists || kind() == Kind::Forall; }

  /// Number of nodes, counting shared subterms once per occurrence (saturating).
  std::size_t size() const { return node_->size; }
  int depth() const { return node_->depth; }

  friend bool operator==(const IntFormula& a, const IntFormula& b);

 private:
  struct Node {
    Kind kind;
    std::string letter;
    std::vector<Variable> args;
    Variable var;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t size = 1;
    int depth = 0;
  };

  explicit IntFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static IntFormula make(Node node);

  std::shared_ptr<const Node> node_;
};

class FoFormula {
 public:
  enum class Kind : std::uint8_t { Atom, Eq, Not, And, Or, Implies, Iff, Exists, Forall };

  static FoFormula atom(std::string letter, std::vector<Variable> args);
  static FoFormula eq(Variable lhs, Variable rhs);
  static FoFormula negation(FoFormula operand);
  static FoFormula conj(FoFormula lhs, FoFormula rhs);
  static FoFormula disj(FoFormula lhs, FoFormula rhs);
  static FoFormula implies(FoFormula lhs, FoFormula rhs);
  static FoFormula iff(FoFormula lhs, FoFormula rhs);
  static FoFormula exists(Variable var, FoFormula body);
  static FoFormula forall(Variable var, FoFormula body);

  Kind kind() const { return node_->kind; }
  /// For Atom: the letter. Eq nodes carry their two variables in args().
  const std::string& letter() const { return node_->letter; }
  const std::vector<Variable>& args() const { return node_->args; }
  const Variable& var() const { return node_->var; }
  FoFormula lhs() const { return FoFormula(node_->lhs); }
  FoFormula rhs() const { return FoFormula(node_->rhs); }
  FoFormula body() const { return FoFormula(node_->lhs); }
  FoFormula operand() const { return FoFormula(node_->lhs); }

  bool is_binary() const;
  bool is_quantifier() const { return kind() == Kind::Exists || kind() == Kind::Forall; }

  std::size_t size() const { return node_->size; }

  friend bool operator==(const FoFormula& a, const FoFormula& b);

 private:
  struct Node {
    Kind kind;
    std::string letter;
    std::vector<Variable> args;
    Variable var;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t size = 1;
  };

  explicit FoFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static FoFormula make(Node node);

  std::shared_ptr<const Node> node_;
};

/// Conjunction / disjunction of a list, folded to the left. An empty
/// conjunction is `_|_ -> _|_`, an empty disjunction is `_|_`.
IntFormula conjunction_of(const std::vector<IntFormula>& parts);
IntFormula disjunction_of(const std::vector<IntFormula>& parts);

std::string to_string(const IntFormula& f);
std::string to_string(const FoFormula& f);
std::ostream& operator<<(std::ostream& os, const IntFormula& f);
std::ostream& operator<<(std::ostream& os, const FoFormula& f);

/// Free variables in order of first occurrence.
std::vector<Variable> free_vars(const IntFormula& f);
std::vector<Variable> free_vars(const FoFormula& f);

/// Every variable name occurring in the formula, free or bound.
std::vector<Variable> all_vars(const IntFormula& f);
std::vector<Variable> all_vars(const FoFormula& f);

/// Quantifier nesting depth, with `<->` read as the conjunction of two implications.
int degree(const FoFormula& f);

/// Rewrites every `a <-> b` into `(a -> b) & (b -> a)`.
FoFormula normalize_iff(const FoFormula& f);

/// R and E plus exactly the letters occurring in `f`.
Vocabulary vocabulary_of(const FoFormula& f);

/// Intuitionistic letters occurring in `f` with their arities.
std::map<std::string, int> letters_of(const IntFormula& f);

}  // namespace asimkit
