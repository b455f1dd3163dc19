#include "asimkit/fo_model.hpp"

#include <algorithm>
#include <sstream>

#include "asimkit/error.hpp"

namespace asimkit {

namespace {

constexpr std::size_t kMaxRelationCells = std::size_t{1} << 26;

}  // namespace

FoModel::FoModel(std::vector<std::string> domain, Vocabulary vocab) : names_(std::move(domain)), vocab_(std::move(vocab)) {
  if (names_.empty()) throw ModelError("model domain must be nonempty");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw ModelError("element ids must be nonempty");
    if (!index_.emplace(names_[i], static_cast<Element>(i)).second) {
      throw ModelError("duplicate element id '" + names_[i] + "'");
    }
  }
  const std::size_t n = names_.size();
  for (const auto& [letter, arity] : vocab_.letters()) {
    std::size_t cells = 1;
    for (int i = 0; i < arity; ++i) {
      if (cells > kMaxRelationCells / n) throw ModelError("relation '" + letter + "' is too large to store densely");
      cells *= n;
    }
    if (letter == kAccessLetter) r_id_ = static_cast<int>(relations_.size());
    if (letter == kExistenceLetter) e_id_ = static_cast<int>(relations_.size());
    letter_names_.push_back(letter);
    relations_.push_back({arity, std::vector<bool>(cells, false)});
  }
  r_succ_.resize(n);
  e_succ_.resize(n);
}

Element FoModel::element(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ModelError("unknown element '" + id + "'");
  return it->second;
}

int FoModel::letter_id(const std::string& letter) const {
  auto it = std::lower_bound(letter_names_.begin(), letter_names_.end(), letter);
  if (it == letter_names_.end() || *it != letter) return -1;
  return static_cast<int>(it - letter_names_.begin());
}

std::size_t FoModel::offset(const Relation& rel, const Element* args) const {
  std::size_t off = 0;
  for (int i = 0; i < rel.arity; ++i) off = off * names_.size() + static_cast<std::size_t>(args[i]);
  return off;
}

void FoModel::add(const std::string& letter, const Tuple& t) {
  const int id = letter_id(letter);
  if (id < 0) throw ModelError("letter '" + letter + "' is not in the model's vocabulary");
  Relation& rel = relations_[id];
  if (static_cast<int>(t.size()) != rel.arity) {
    throw ArityError(letter, rel.arity, static_cast<int>(t.size()));
  }
  for (Element e : t) {
    if (e < 0 || e >= size()) throw ModelError("element index out of range in '" + letter + "' tuple");
  }
  const std::size_t off = offset(rel, t.data());
  if (rel.bits[off]) return;
  rel.bits[off] = true;
  if (id == r_id_ || id == e_id_) {
    auto& succ = (id == r_id_ ? r_succ_ : e_succ_)[t[0]];
    succ.insert(std::upper_bound(succ.begin(), succ.end(), t[1]), t[1]);
  }
}

void FoModel::add(const std::string& letter, const std::vector<std::string>& ids) {
  Tuple t;
  t.reserve(ids.size());
  for (const auto& id : ids) t.push_back(element(id));
  add(letter, t);
}

bool FoModel::holds(int letter, const Element* args) const {
  const Relation& rel = relations_[letter];
  return rel.bits[offset(rel, args)];
}

bool FoModel::holds(const std::string& letter, const Tuple& t) const {
  const int id = letter_id(letter);
  if (id < 0) throw ModelError("letter '" + letter + "' is not in the model's vocabulary");
  if (static_cast<int>(t.size()) != relations_[id].arity) {
    throw ArityError(letter, relations_[id].arity, static_cast<int>(t.size()));
  }
  return holds(id, t.data());
}

std::vector<Tuple> FoModel::tuples(const std::string& letter) const {
  const int id = letter_id(letter);
  if (id < 0) throw ModelError("letter '" + letter + "' is not in the model's vocabulary");
  const Relation& rel = relations_[id];
  std::vector<Tuple> out;
  const std::size_t n = names_.size();
  for (std::size_t off = 0; off < rel.bits.size(); ++off) {
    if (!rel.bits[off]) continue;
    Tuple t(rel.arity);
    std::size_t rest = off;
    for (int i = rel.arity - 1; i >= 0; --i) {
      t[i] = static_cast<Element>(rest % n);
      rest /= n;
    }
    out.push_back(std::move(t));
  }
  return out;
}

bool operator==(const FoModel& a, const FoModel& b) {
  if (a.names_ != b.names_ || !(a.vocab_ == b.vocab_)) return false;
  for (std::size_t i = 0; i < a.relations_.size(); ++i) {
    if (a.relations_[i].bits != b.relations_[i].bits) return false;
  }
  return true;
}

std::string EvalPoint::to_string() const {
  std::string out = model->name(world) + ";";
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (i) out += ",";
    out += model->name(objects[i]);
  }
  return out;
}

EvalPoint EvalPoint::parse(std::shared_ptr<const FoModel> model, const std::string& text) {
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  EvalPoint pt;
  const auto semi = text.find(';');
  const std::string world = trim(text.substr(0, semi));
  if (world.empty()) throw ModelError("evaluation point '" + text + "' has no world");
  pt.world = model->element(world);
  if (semi != std::string::npos) {
    std::stringstream rest(text.substr(semi + 1));
    std::string item;
    std::vector<std::string> items;
    while (std::getline(rest, item, ',')) items.push_back(trim(item));
    if (!(items.size() == 1 && items[0].empty())) {
      for (const auto& id : items) {
        if (id.empty()) throw ModelError("empty object id in evaluation point '" + text + "'");
        pt.objects.push_back(model->element(id));
      }
    }
  }
  pt.model = std::move(model);
  return pt;
}

std::vector<Variable> point_vars(int n, const Variable& x) {
  std::vector<Variable> vars{x};
  for (int i = 1; i <= n; ++i) vars.push_back("w" + std::to_string(i));
  return vars;
}

bool eval_fo(const FoModel& m, const Assignment& assignment, const FoFormula& phi) {
  std::vector<Variable> params;
  std::vector<Element> values;
  for (const auto& v : free_vars(phi)) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw EvalError("free variable '" + v + "' is not assigned");
    params.push_back(v);
    values.push_back(m.element(it->second));
  }
  return CompiledFormula(phi, params).eval(m, values.data());
}

bool satisfies_at(const EvalPoint& pt, const FoFormula& phi, const std::vector<Variable>& vars) {
  if (static_cast<int>(vars.size()) != pt.arity() + 1) {
    throw EvalError("point has " + std::to_string(pt.arity()) + " objects but " + std::to_string(vars.size()) +
                    " variables were given");
  }
  return CompiledFormula(phi, vars).eval(pt);
}

// ---------------------------------------------------------------------------

CompiledFormula::CompiledFormula(const FoFormula& phi, const std::vector<Variable>& params)
    : param_count_(static_cast<int>(params.size())) {
  std::map<Variable, int> scope;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!scope.emplace(params[i], static_cast<int>(i)).second) {
      throw EvalError("variable '" + params[i] + "' listed twice");
    }
  }
  slot_count_ = param_count_;
  root_ = compile(normalize_iff(phi), scope);
}

int CompiledFormula::compile(const FoFormula& f, std::map<Variable, int>& scope) {
  using K = FoFormula::Kind;
  auto slot_of = [&](const Variable& v) {
    auto it = scope.find(v);
    if (it == scope.end()) throw EvalError("free variable '" + v + "' is not assigned");
    return it->second;
  };
  auto letter_index = [&](const std::string& l) {
    auto it = std::find(letters_.begin(), letters_.end(), l);
    if (it != letters_.end()) return static_cast<int>(it - letters_.begin());
    letters_.push_back(l);
    return static_cast<int>(letters_.size()) - 1;
  };
  auto push = [&](Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  };
  auto bind = [&](const Variable& v, auto&& body) {
    const int slot = slot_count_++;
    auto old = scope.find(v);
    std::optional<int> saved;
    if (old != scope.end()) saved = old->second;
    scope[v] = slot;
    const int b = body();
    if (saved) scope[v] = *saved; else scope.erase(v);
    return std::pair{slot, b};
  };
  // Guard atom L(u, v) with L in {R, E}, u bound outside, v the quantified variable.
  auto guard = [&](const FoFormula& g, const Variable& v) -> int {
    if (g.kind() != K::Atom || g.args().size() != 2) return -1;
    if (g.letter() != kAccessLetter && g.letter() != kExistenceLetter) return -1;
    if (g.args()[1] != v || g.args()[0] == v || !scope.count(g.args()[0])) return -1;
    return g.letter() == kAccessLetter ? 0 : 1;
  };

  switch (f.kind()) {
    case K::Atom: {
      Node n{Op::Atom};
      n.letter = letter_index(f.letter());
      for (const auto& v : f.args()) n.slots.push_back(slot_of(v));
      return push(std::move(n));
    }
    case K::Eq: {
      Node n{Op::Eq};
      n.slots = {slot_of(f.args()[0]), slot_of(f.args()[1])};
      return push(std::move(n));
    }
    case K::Not: {
      Node n{Op::Not};
      n.lhs = compile(f.operand(), scope);
      return push(std::move(n));
    }
    case K::And:
    case K::Or:
    case K::Implies: {
      Node n{f.kind() == K::And ? Op::And : f.kind() == K::Or ? Op::Or : Op::Implies};
      n.lhs = compile(f.lhs(), scope);
      n.rhs = compile(f.rhs(), scope);
      return push(std::move(n));
    }
    case K::Iff:
      break;
    case K::Exists: {
      const FoFormula b = f.body();
      if (b.kind() == K::And) {
        const int g = guard(b.lhs(), f.var());
        if (g >= 0) {
          Node n{Op::SomeSucc};
          n.letter = g;
          n.slots = {slot_of(b.lhs().args()[0])};
          auto [slot, body] = bind(f.var(), [&] { return compile(b.rhs(), scope); });
          n.bound = slot;
          n.lhs = body;
          return push(std::move(n));
        }
      }
      Node n{Op::Exists};
      auto [slot, body] = bind(f.var(), [&] { return compile(b, scope); });
      n.bound = slot;
      n.lhs = body;
      return push(std::move(n));
    }
    case K::Forall: {
      const FoFormula b = f.body();
      if (b.kind() == K::Implies) {
        const int g = guard(b.lhs(), f.var());
        if (g >= 0) {
          Node n{Op::AllSucc};
          n.letter = g;
          n.slots = {slot_of(b.lhs().args()[0])};
          auto [slot, body] = bind(f.var(), [&] { return compile(b.rhs(), scope); });
          n.bound = slot;
          n.lhs = body;
          return push(std::move(n));
        }
      }
      // forall y. forall w. (R(u,y) & E(y,w)) -> body
      if (b.kind() == K::Forall && b.body().kind() == K::Implies && b.body().lhs().kind() == K::And &&
          b.var() != f.var()) {
        const FoFormula g = b.body().lhs();
        const FoFormula r = g.lhs();
        const FoFormula e = g.rhs();
        if (guard(r, f.var()) == 0 && r.args()[0] != b.var() && e.kind() == K::Atom && e.letter() == kExistenceLetter &&
            e.args().size() == 2 && e.args()[0] == f.var() && e.args()[1] == b.var()) {
          Node outer{Op::AllSucc};
          outer.letter = 0;
          outer.slots = {slot_of(r.args()[0])};
          auto [yslot, inner] = bind(f.var(), [&] {
            Node n{Op::AllSucc};
            n.letter = 1;
            n.slots = {scope.at(f.var())};
            auto [wslot, body] = bind(b.var(), [&] { return compile(b.body().rhs(), scope); });
            n.bound = wslot;
            n.lhs = body;
            return push(std::move(n));
          });
          outer.bound = yslot;
          outer.lhs = inner;
          return push(std::move(outer));
        }
      }
      Node n{Op::Forall};
      auto [slot, body] = bind(f.var(), [&] { return compile(b, scope); });
      n.bound = slot;
      n.lhs = body;
      return push(std::move(n));
    }
  }
  throw EvalError("unexpected formula node");
}

bool CompiledFormula::eval(const FoModel& m, const Element* values) const {
  std::vector<int> letters(letters_.size());
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    letters[i] = m.letter_id(letters_[i]);
    if (letters[i] < 0) throw EvalError("letter '" + letters_[i] + "' is not in the model's vocabulary");
  }
  for (const Node& n : nodes_) {
    if (n.op == Op::Atom && static_cast<int>(n.slots.size()) != m.letter_arity(letters[n.letter])) {
      throw ArityError(letters_[n.letter], m.letter_arity(letters[n.letter]), static_cast<int>(n.slots.size()));
    }
  }
  std::vector<Element> env(slot_count_, 0);
  for (int i = 0; i < param_count_; ++i) {
    if (values[i] < 0 || values[i] >= m.size()) throw EvalError("assigned element out of range");
    env[i] = values[i];
  }
  return run(root_, m, letters, env);
}

bool CompiledFormula::eval(const EvalPoint& pt) const {
  if (pt.arity() + 1 != param_count_) {
    throw EvalError("point has " + std::to_string(pt.arity()) + " objects but the formula takes " +
                    std::to_string(param_count_ - 1));
  }
  std::vector<Element> values{pt.world};
  values.insert(values.end(), pt.objects.begin(), pt.objects.end());
  return eval(*pt.model, values.data());
}

bool CompiledFormula::run(int idx, const FoModel& m, const std::vector<int>& letters, std::vector<Element>& env) const {
  const Node& n = nodes_[idx];
  switch (n.op) {
    case Op::Atom: {
      Element args[16];
      std::vector<Element> big;
      Element* a = args;
      if (n.slots.size() > 16) {
        big.resize(n.slots.size());
        a = big.data();
      }
      for (std::size_t i = 0; i < n.slots.size(); ++i) a[i] = env[n.slots[i]];
      return m.holds(letters[n.letter], a);
    }
    case Op::Eq:
      return env[n.slots[0]] == env[n.slots[1]];
    case Op::Not:
      return !run(n.lhs, m, letters, env);
    case Op::And:
      return run(n.lhs, m, letters, env) && run(n.rhs, m, letters, env);
    case Op::Or:
      return run(n.lhs, m, letters, env) || run(n.rhs, m, letters, env);
    case Op::Implies:
      return !run(n.lhs, m, letters, env) || run(n.rhs, m, letters, env);
    case Op::Exists:
      for (Element e = 0; e < m.size(); ++e) {
        env[n.bound] = e;
        if (run(n.lhs, m, letters, env)) return true;
      }
      return false;
    case Op::Forall:
      for (Element e = 0; e < m.size(); ++e) {
        env[n.bound] = e;
        if (!run(n.lhs, m, letters, env)) return false;
      }
      return true;
    case Op::SomeSucc:
    case Op::AllSucc: {
      const Element src = env[n.slots[0]];
      const auto& succ = n.letter == 0 ? m.r_succ(src) : m.e_succ(src);
      const bool all = n.op == Op::AllSucc;
      for (Element e : succ) {
        env[n.bound] = e;
        if (run(n.lhs, m, letters, env) != all) return !all;
      }
      return all;
    }
  }
  return false;
}

}  // namespace asimkit
