#pragma once

// Finite classical models over a Vocabulary, evaluation points and Tarski
// evaluation.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "asimkit/formulas.hpp"

namespace asimkit {

using Element = int;
using Tuple = std::vector<Element>;

class FoModel {
 public:
  /// Element ids must be distinct and nonempty; the domain must be nonempty.
  FoModel(std::vector<std::string> domain, Vocabulary vocab);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Element e) const { return names_.at(e); }
  /// Throws ModelError for an unknown id.
  Element element(const std::string& id) const;
  bool has_element(const std::string& id) const { return index_.count(id) != 0; }

  const Vocabulary& vocab() const { return vocab_; }

  void add(const std::string& letter, const Tuple& t);
  void add(const std::string& letter, const std::vector<std::string>& ids);

  bool holds(const std::string& letter, const Tuple& t) const;
  /// Letters are numbered in name order, so models over equal vocabularies agree.
  int letter_id(const std::string& letter) const;
  int letter_count() const { return static_cast<int>(relations_.size()); }
  const std::string& letter_name(int id) const { return letter_names_.at(id); }
  int letter_arity(int id) const { return relations_[id].arity; }
  bool holds(int letter, const Element* args) const;
  /// All tuples of the letter in lexicographic order.
  std::vector<Tuple> tuples(const std::string& letter) const;

  const std::vector<Element>& r_succ(Element e) const { return r_succ_[e]; }
  const std::vector<Element>& e_succ(Element e) const { return e_succ_[e]; }
  bool r(Element a, Element b) const { return holds(r_id_, std::array<Element, 2>{a, b}.data()); }
  bool e(Element a, Element b) const { return holds(e_id_, std::array<Element, 2>{a, b}.data()); }

  friend bool operator==(const FoModel& a, const FoModel& b);

 private:
  struct Relation {
    int arity = 0;
    std::vector<bool> bits;
  };
  std::size_t offset(const Relation& rel, const Element* args) const;

  std::vector<std::string> names_;
  std::map<std::string, Element> index_;
  Vocabulary vocab_;
  std::vector<std::string> letter_names_;
  std::vector<Relation> relations_;
  int r_id_ = -1;
  int e_id_ = -1;
  std::vector<std::vector<Element>> r_succ_;
  std::vector<std::vector<Element>> e_succ_;
};

/// (M, a, b_1 ... b_n).
struct EvalPoint {
  std::shared_ptr<const FoModel> model;
  Element world = 0;
  Tuple objects;

  int arity() const { return static_cast<int>(objects.size()); }
  /// "a;b1,b2" in element ids.
  std::string to_string() const;
  /// Parses "a;b1,b2" (or "a;" / "a" for no objects) against `model`.
  static EvalPoint parse(std::shared_ptr<const FoModel> model, const std::string& text);
};

/// Variable assignment by element id.
using Assignment = std::map<Variable, std::string>;

bool eval_fo(const FoModel& m, const Assignment& assignment, const FoFormula& phi);

/// M, a, b_n |= phi(x, w_n) with vars = (x, w_1, ..., w_n).
bool satisfies_at(const EvalPoint& pt, const FoFormula& phi, const std::vector<Variable>& vars);

/// (x, w1, ..., wn).
std::vector<Variable> point_vars(int n, const Variable& x = "x");

/// A formula compiled to variable slots; evaluating it on many points of
/// models over the same letters avoids repeated name lookups.
class CompiledFormula {
 public:
  /// `params` are the free variables in slot order; every free variable of
  /// `phi` must be among them. Iff is normalized away.
  CompiledFormula(const FoFormula& phi, const std::vector<Variable>& params);

  bool eval(const FoModel& m, const Element* values) const;
  bool eval(const EvalPoint& pt) const;
  int param_count() const { return param_count_; }

 private:
  enum class Op : std::uint8_t { Atom, Eq, Not, And, Or, Implies, Exists, Forall, AllSucc, SomeSucc };
  struct Node {
    explicit Node(Op o) : op(o) {}
    Op op;
    int letter = -1;  // index into letters_, or R/E for the successor forms
    std::vector<int> slots;
    int bound = -1;
    int lhs = -1;
    int rhs = -1;
  };

  int compile(const FoFormula& f, std::map<Variable, int>& scope);
  bool run(int node, const FoModel& m, const std::vector<int>& letters, std::vector<Element>& env) const;

  std::vector<Node> nodes_;
  std::vector<std::string> letters_;
  int root_ = -1;
  int param_count_ = 0;
  int slot_count_ = 0;
};

}  // namespace asimkit
