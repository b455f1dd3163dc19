#include "asimkit/formulas.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "asimkit/error.hpp"

namespace asimkit {

namespace {

std::size_t add_sizes(std::size_t a, std::size_t b) {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  return (a > kMax - b - 1) ? kMax : a + b + 1;
}

void push_unique(std::vector<Variable>& out, std::set<Variable>& seen, const Variable& v) {
  if (seen.insert(v).second) out.push_back(v);
}

}  // namespace

bool is_reserved_letter(const std::string& letter) {
  return letter == kAccessLetter || letter == kExistenceLetter;
}

std::string classical_letter(const std::string& intuitionistic) { return intuitionistic + "'"; }

std::optional<std::string> intuitionistic_letter(const std::string& classical) {
  if (is_reserved_letter(classical) || classical.size() < 2 || classical.back() != '\'') return std::nullopt;
  return classical.substr(0, classical.size() - 1);
}

// --- Vocabulary -------------------------------------------------------------

Vocabulary::Vocabulary() {
  letters_[kAccessLetter] = 2;
  letters_[kExistenceLetter] = 2;
}

void Vocabulary::add(const std::string& letter, int arity) {
  if (letter.empty()) throw VocabularyError("empty letter name");
  if (arity < 1) throw VocabularyError("classical letter '" + letter + "' must have arity >= 1");
  auto [it, inserted] = letters_.emplace(letter, arity);
  if (!inserted && it->second != arity) {
    throw VocabularyError("letter '" + letter + "' declared with arities " + std::to_string(it->second) +
                          " and " + std::to_string(arity));
  }
}

void Vocabulary::add_intuitionistic(const std::string& letter, int arity) {
  if (is_reserved_letter(letter)) throw VocabularyError("'" + letter + "' is reserved and cannot be intuitionistic");
  if (arity < 0) throw VocabularyError("negative arity for '" + letter + "'");
  add(classical_letter(letter), arity + 1);
}

std::optional<int> Vocabulary::arity(const std::string& letter) const {
  auto it = letters_.find(letter);
  if (it == letters_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Vocabulary::intuitionistic_arity(const std::string& letter) const {
  if (is_reserved_letter(letter)) return std::nullopt;
  auto a = arity(classical_letter(letter));
  if (!a) return std::nullopt;
  return *a - 1;
}

std::vector<std::string> Vocabulary::proper_letters() const {
  std::vector<std::string> out;
  for (const auto& [name, ar] : letters_) {
    if (!is_reserved_letter(name)) out.push_back(name);
  }
  return out;
}

void Vocabulary::merge(const Vocabulary& other) {
  for (const auto& [name, ar] : other.letters_) add(name, ar);
}

// --- IntFormula -------------------------------------------------------------

IntFormula IntFormula::make(Node node) {
  if (node.lhs && node.rhs) {
    node.size = add_sizes(node.lhs->size, node.rhs->size);
    node.depth = std::max(node.lhs->depth, node.rhs->depth) + 1;
  } else if (node.lhs) {
    node.size = add_sizes(node.lhs->size, 0);
    node.depth = node.lhs->depth + 1;
  }
  return IntFormula(std::make_shared<const Node>(std::move(node)));
}

IntFormula IntFormula::atom(std::string letter, std::vector<Variable> args) {
  if (is_reserved_letter(letter)) {
    throw VocabularyError("'" + letter + "' cannot be used as an intuitionistic letter");
  }
  Node n{Kind::Atom, std::move(letter), std::move(args), {}, nullptr, nullptr};
  return make(std::move(n));
}

IntFormula IntFormula::bottom() { return make(Node{Kind::Bottom, {}, {}, {}, nullptr, nullptr}); }

IntFormula IntFormula::conj(IntFormula lhs, IntFormula rhs) {
  return make(Node{Kind::And, {}, {}, {}, std::move(lhs.node_), std::move(rhs.node_)});
}

IntFormula IntFormula::disj(IntFormula lhs, IntFormula rhs) {
  return make(Node{Kind::Or, {}, {}, {}, std::move(lhs.node_), std::move(rhs.node_)});
}

IntFormula IntFormula::implies(IntFormula lhs, IntFormula rhs) {
  return make(Node{Kind::Implies, {}, {}, {}, std::move(lhs.node_), std::move(rhs.node_)});
}

IntFormula IntFormula::exists(Variable var, IntFormula body) {
  return make(Node{Kind::Exists, {}, {}, std::move(var), std::move(body.node_), nullptr});
}

IntFormula IntFormula::forall(Variable var, IntFormula body) {
  return make(Node{Kind::Forall, {}, {}, std::move(var), std::move(body.node_), nullptr});
}

IntFormula IntFormula::top() { return implies(bottom(), bottom()); }

bool IntFormula::is_binary() const {
  return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies;
}

bool operator==(const IntFormula& a, const IntFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case IntFormula::Kind::Atom:
      return a.letter() == b.letter() && a.args() == b.args();
    case IntFormula::Kind::Bottom:
      return true;
    case IntFormula::Kind::Exists:
    case IntFormula::Kind::Forall:
      return a.var() == b.var() && a.body() == b.body();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

IntFormula conjunction_of(const std::vector<IntFormula>& parts) {
  if (parts.empty()) return IntFormula::top();
  IntFormula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = IntFormula::conj(acc, parts[i]);
  return acc;
}

IntFormula disjunction_of(const std::vector<IntFormula>& parts) {
  if (parts.empty()) return IntFormula::bottom();
  IntFormula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = IntFormula::disj(acc, parts[i]);
  return acc;
}

// --- FoFormula --------------------------------------------------------------

FoFormula FoFormula::make(Node node) {
  if (node.lhs && node.rhs) {
    node.size = add_sizes(node.lhs->size, node.rhs->size);
  } else if (node.lhs) {
    node.size = add_sizes(node.lhs->size, 0);
  }
  return FoFormula(std::make_shared<const Node>(std::move(node)));
}

FoFormula FoFormula::atom(std::string letter, std::vector<Variable> args) {
  return make(Node{Kind::Atom, std::move(letter), std::move(args), {}, nullptr, nullptr});
}

FoFormula FoFormula::eq(Variable lhs, Variable rhs) {
  return make(Node{Kind::Eq, {}, {std::move(lhs), std::move(rhs)}, {}, nullptr, nullptr});
}

FoFormula FoFormula::negation(FoFormula operand) {
  return make(Node{Kind::Not, {}, {}, {}, std::move(operand.node_), nullptr});
}

FoFormula FoFormula::conj(FoFormula lhs, FoFormula rhs) {
  return make(Node{Kind::And, {}, {}, {}, std::move(lhs.node_), std::move(rhs.node_)});
}

FoFormula FoFormula::disj(FoFormula lhs, FoFormula rhs) {
  return make(Node{Kind::Or, {}, {}, {}, std::move(lhs.node_), std::move(rhs.node_)});
}

FoFormula FoFormula::implies(FoFormula lhs, FoFormula rhs) {
  return make(Node{Kind::Implies, {}, {}, {}, std::move(lhs.node_), std::move(rhs.node_)});
}

FoFormula FoFormula::iff(FoFormula lhs, FoFormula rhs) {
  return make(Node{Kind::Iff, {}, {}, {}, std::move(lhs.node_), std::move(rhs.node_)});
}

FoFormula FoFormula::exists(Variable var, FoFormula body) {
  return make(Node{Kind::Exists, {}, {}, std::move(var), std::move(body.node_), nullptr});
}

FoFormula FoFormula::forall(Variable var, FoFormula body) {
  return make(Node{Kind::Forall, {}, {}, std::move(var), std::move(body.node_), nullptr});
}

bool FoFormula::is_binary() const {
  return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies || kind() == Kind::Iff;
}

bool operator==(const FoFormula& a, const FoFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case FoFormula::Kind::Atom:
      return a.letter() == b.letter() && a.args() == b.args();
    case FoFormula::Kind::Eq:
      return a.args() == b.args();
    case FoFormula::Kind::Not:
      return a.operand() == b.operand();
    case FoFormula::Kind::Exists:
    case FoFormula::Kind::Forall:
      return a.var() == b.var() && a.body() == b.body();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// --- printing ---------------------------------------------------------------

namespace {

constexpr int kQuantPrec = 0;
constexpr int kAtomPrec = 6;

int prec(IntFormula::Kind k) {
  switch (k) {
    case IntFormula::Kind::Exists:
    case IntFormula::Kind::Forall:
      return kQuantPrec;
    case IntFormula::Kind::Implies:
      return 2;
    case IntFormula::Kind::Or:
      return 3;
    case IntFormula::Kind::And:
      return 4;
    default:
      return kAtomPrec;
  }
}

int prec(FoFormula::Kind k) {
  switch (k) {
    case FoFormula::Kind::Exists:
    case FoFormula::Kind::Forall:
      return kQuantPrec;
    case FoFormula::Kind::Iff:
      return 1;
    case FoFormula::Kind::Implies:
      return 2;
    case FoFormula::Kind::Or:
      return 3;
    case FoFormula::Kind::And:
      return 4;
    case FoFormula::Kind::Not:
      return 5;
    default:
      return kAtomPrec;
  }
}

bool right_assoc(IntFormula::Kind k) { return k == IntFormula::Kind::Implies; }

bool right_assoc(FoFormula::Kind k) { return k == FoFormula::Kind::Implies || k == FoFormula::Kind::Iff; }

const char* op_text(IntFormula::Kind k) {
  switch (k) {
    case IntFormula::Kind::And:
      return " & ";
    case IntFormula::Kind::Or:
      return " | ";
    default:
      return " -> ";
  }
}

const char* op_text(FoFormula::Kind k) {
  switch (k) {
    case FoFormula::Kind::And:
      return " & ";
    case FoFormula::Kind::Or:
      return " | ";
    case FoFormula::Kind::Iff:
      return " <-> ";
    default:
      return " -> ";
  }
}

void print_atom(std::ostream& os, const std::string& letter, const std::vector<Variable>& args) {
  os << letter;
  if (args.empty()) return;
  os << '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) os << ',';
    os << args[i];
  }
  os << ')';
}

void print(std::ostream& os, const IntFormula& f, int min_prec) {
  const int p = prec(f.kind());
  if (p < min_prec) {
    os << '(';
    print(os, f, 0);
    os << ')';
    return;
  }
  switch (f.kind()) {
    case IntFormula::Kind::Atom:
      print_atom(os, f.letter(), f.args());
      break;
    case IntFormula::Kind::Bottom:
      os << "_|_";
      break;
    case IntFormula::Kind::Exists:
    case IntFormula::Kind::Forall:
      os << (f.kind() == IntFormula::Kind::Exists ? "exists " : "forall ") << f.var() << ". ";
      print(os, f.body(), 0);
      break;
    default: {
      const bool ra = right_assoc(f.kind());
      print(os, f.lhs(), ra ? p + 1 : p);
      os << op_text(f.kind());
      print(os, f.rhs(), ra ? p : p + 1);
    }
  }
}

void print(std::ostream& os, const FoFormula& f, int min_prec) {
  const int p = prec(f.kind());
  if (p < min_prec) {
    os << '(';
    print(os, f, 0);
    os << ')';
    return;
  }
  switch (f.kind()) {
    case FoFormula::Kind::Atom:
      print_atom(os, f.letter(), f.args());
      break;
    case FoFormula::Kind::Eq:
      os << f.args()[0] << " = " << f.args()[1];
      break;
    case FoFormula::Kind::Not:
      os << '~';
      if (f.operand().kind() == FoFormula::Kind::Eq) {
        os << '(';
        print(os, f.operand(), 0);
        os << ')';
      } else {
        print(os, f.operand(), p);
      }
      break;
    case FoFormula::Kind::Exists:
    case FoFormula::Kind::Forall:
      os << (f.kind() == FoFormula::Kind::Exists ? "exists " : "forall ") << f.var() << ". ";
      print(os, f.body(), 0);
      break;
    default: {
      const bool ra = right_assoc(f.kind());
      print(os, f.lhs(), ra ? p + 1 : p);
      os << op_text(f.kind());
      print(os, f.rhs(), ra ? p : p + 1);
    }
  }
}

}  // namespace

std::string to_string(const IntFormula& f) {
  std::ostringstream os;
  print(os, f, 0);
  return os.str();
}

std::string to_string(const FoFormula& f) {
  std::ostringstream os;
  print(os, f, 0);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntFormula& f) {
  print(os, f, 0);
  return os;
}

std::ostream& operator<<(std::ostream& os, const FoFormula& f) {
  print(os, f, 0);
  return os;
}

// --- variables --------------------------------------------------------------

namespace {

void collect_free(const IntFormula& f, std::vector<Variable>& bound, std::vector<Variable>& out,
                  std::set<Variable>& seen) {
  switch (f.kind()) {
    case IntFormula::Kind::Atom:
      for (const auto& v : f.args()) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end() && seen.insert(v).second) out.push_back(v);
      }
      break;
    case IntFormula::Kind::Bottom:
      break;
    case IntFormula::Kind::Exists:
    case IntFormula::Kind::Forall:
      bound.push_back(f.var());
      collect_free(f.body(), bound, out, seen);
      bound.pop_back();
      break;
    default:
      collect_free(f.lhs(), bound, out, seen);
      collect_free(f.rhs(), bound, out, seen);
  }
}

void collect_free(const FoFormula& f, std::vector<Variable>& bound, std::vector<Variable>& out,
                  std::set<Variable>& seen) {
  switch (f.kind()) {
    case FoFormula::Kind::Atom:
    case FoFormula::Kind::Eq:
      for (const auto& v : f.args()) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end() && seen.insert(v).second) out.push_back(v);
      }
      break;
    case FoFormula::Kind::Not:
      collect_free(f.operand(), bound, out, seen);
      break;
    case FoFormula::Kind::Exists:
    case FoFormula::Kind::Forall:
      bound.push_back(f.var());
      collect_free(f.body(), bound, out, seen);
      bound.pop_back();
      break;
    default:
      collect_free(f.lhs(), bound, out, seen);
      collect_free(f.rhs(), bound, out, seen);
  }
}

void collect_all(const IntFormula& f, std::vector<Variable>& out, std::set<Variable>& seen) {
  switch (f.kind()) {
    case IntFormula::Kind::Atom:
      for (const auto& v : f.args()) push_unique(out, seen, v);
      break;
    case IntFormula::Kind::Bottom:
      break;
    case IntFormula::Kind::Exists:
    case IntFormula::Kind::Forall:
      push_unique(out, seen, f.var());
      collect_all(f.body(), out, seen);
      break;
    default:
      collect_all(f.lhs(), out, seen);
      collect_all(f.rhs(), out, seen);
  }
}

void collect_all(const FoFormula& f, std::vector<Variable>& out, std::set<Variable>& seen) {
  switch (f.kind()) {
    case FoFormula::Kind::Atom:
    case FoFormula::Kind::Eq:
      for (const auto& v : f.args()) push_unique(out, seen, v);
      break;
    case FoFormula::Kind::Not:
      collect_all(f.operand(), out, seen);
      break;
    case FoFormula::Kind::Exists:
    case FoFormula::Kind::Forall:
      push_unique(out, seen, f.var());
      collect_all(f.body(), out, seen);
      break;
    default:
      collect_all(f.lhs(), out, seen);
      collect_all(f.rhs(), out, seen);
  }
}

}  // namespace

std::vector<Variable> free_vars(const IntFormula& f) {
  std::vector<Variable> bound, out;
  std::set<Variable> seen;
  collect_free(f, bound, out, seen);
  return out;
}

std::vector<Variable> free_vars(const FoFormula& f) {
  std::vector<Variable> bound, out;
  std::set<Variable> seen;
  collect_free(f, bound, out, seen);
  return out;
}

std::vector<Variable> all_vars(const IntFormula& f) {
  std::vector<Variable> out;
  std::set<Variable> seen;
  collect_all(f, out, seen);
  return out;
}

std::vector<Variable> all_vars(const FoFormula& f) {
  std::vector<Variable> out;
  std::set<Variable> seen;
  collect_all(f, out, seen);
  return out;
}

// --- degree, normalization, vocabulary --------------------------------------

FoFormula normalize_iff(const FoFormula& f) {
  switch (f.kind()) {
    case FoFormula::Kind::Atom:
    case FoFormula::Kind::Eq:
      return f;
    case FoFormula::Kind::Not:
      return FoFormula::negation(normalize_iff(f.operand()));
    case FoFormula::Kind::Exists:
      return FoFormula::exists(f.var(), normalize_iff(f.body()));
    case FoFormula::Kind::Forall:
      return FoFormula::forall(f.var(), normalize_iff(f.body()));
    case FoFormula::Kind::And:
      return FoFormula::conj(normalize_iff(f.lhs()), normalize_iff(f.rhs()));
    case FoFormula::Kind::Or:
      return FoFormula::disj(normalize_iff(f.lhs()), normalize_iff(f.rhs()));
    case FoFormula::Kind::Implies:
      return FoFormula::implies(normalize_iff(f.lhs()), normalize_iff(f.rhs()));
    case FoFormula::Kind::Iff: {
      FoFormula a = normalize_iff(f.lhs());
      FoFormula b = normalize_iff(f.rhs());
      return FoFormula::conj(FoFormula::implies(a, b), FoFormula::implies(b, a));
    }
  }
  return f;
}

int degree(const FoFormula& f) {
  switch (f.kind()) {
    case FoFormula::Kind::Atom:
    case FoFormula::Kind::Eq:
      return 0;
    case FoFormula::Kind::Not:
      return degree(f.operand());
    case FoFormula::Kind::Exists:
    case FoFormula::Kind::Forall:
      return degree(f.body()) + 1;
    default:
      // Iff expands to two implications over the same operands: no new quantifier.
      return std::max(degree(f.lhs()), degree(f.rhs()));
  }
}

namespace {

void collect_letters(const FoFormula& f, Vocabulary& v) {
  switch (f.kind()) {
    case FoFormula::Kind::Atom:
      v.add(f.letter(), static_cast<int>(f.args().size()));
      break;
    case FoFormula::Kind::Eq:
      break;
    case FoFormula::Kind::Not:
      collect_letters(f.operand(), v);
      break;
    case FoFormula::Kind::Exists:
    case FoFormula::Kind::Forall:
      collect_letters(f.body(), v);
      break;
    default:
      collect_letters(f.lhs(), v);
      collect_letters(f.rhs(), v);
  }
}

void collect_letters(const IntFormula& f, std::map<std::string, int>& out) {
  switch (f.kind()) {
    case IntFormula::Kind::Atom: {
      const int ar = static_cast<int>(f.args().size());
      auto [it, inserted] = out.emplace(f.letter(), ar);
      if (!inserted && it->second != ar) throw ArityError(f.letter(), it->second, ar);
      break;
    }
    case IntFormula::Kind::Bottom:
      break;
    case IntFormula::Kind::Exists:
    case IntFormula::Kind::Forall:
      collect_letters(f.body(), out);
      break;
    default:
      collect_letters(f.lhs(), out);
      collect_letters(f.rhs(), out);
  }
}

}  // namespace

Vocabulary vocabulary_of(const FoFormula& f) {
  Vocabulary v;
  collect_letters(f, v);
  return v;
}

std::map<std::string, int> letters_of(const IntFormula& f) {
  std::map<std::string, int> out;
  collect_letters(f, out);
  return out;
}

}  // namespace asimkit
