#include "asimkit/kripke.hpp"

#include <algorithm>
#include <set>

#include "asimkit/error.hpp"

namespace asimkit {

KripkeModel::KripkeModel(std::vector<std::string> worlds, std::vector<std::string> objects,
                         std::map<std::string, int> letters)
    : worlds_(std::move(worlds)), objects_(std::move(objects)), letters_(std::move(letters)) {
  if (worlds_.empty()) throw ModelError("a Kripke model needs at least one world");
  std::set<std::string> seen;
  for (const auto& w : worlds_) {
    if (w.empty() || !seen.insert(w).second) throw ModelError("world ids must be distinct and nonempty");
  }
  seen.clear();
  for (const auto& d : objects_) {
    if (d.empty() || !seen.insert(d).second) throw ModelError("object ids must be distinct and nonempty");
  }
  for (const auto& [letter, arity] : letters_) {
    if (arity < 0) throw ModelError("letter '" + letter + "' has negative arity");
    if (is_reserved_letter(letter)) throw ModelError("'" + letter + "' cannot be an intuitionistic letter");
    val_[letter].assign(worlds_.size(), {});
  }
  const auto n = worlds_.size();
  leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  in_domain_.assign(n, std::vector<bool>(objects_.size(), false));
  rebuild_successors();
}

KripkeModel::World KripkeModel::world(const std::string& id) const {
  auto it = std::find(worlds_.begin(), worlds_.end(), id);
  if (it == worlds_.end()) throw ModelError("unknown world '" + id + "'");
  return static_cast<World>(it - worlds_.begin());
}

KripkeModel::Object KripkeModel::object(const std::string& id) const {
  auto it = std::find(objects_.begin(), objects_.end(), id);
  if (it == objects_.end()) throw ModelError("unknown object '" + id + "'");
  return static_cast<Object>(it - objects_.begin());
}

void KripkeModel::rebuild_successors() {
  succ_.assign(worlds_.size(), {});
  for (std::size_t u = 0; u < worlds_.size(); ++u) {
    for (std::size_t v = 0; v < worlds_.size(); ++v) {
      if (leq_[u][v]) succ_[u].push_back(static_cast<World>(v));
    }
  }
}

void KripkeModel::set_leq(World u, World v, bool value) {
  leq_.at(u).at(v) = value;
  rebuild_successors();
}

void KripkeModel::close_order() {
  const auto n = worlds_.size();
  for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      if (leq_[i][m])
        for (std::size_t j = 0; j < n; ++j)
          if (leq_[m][j]) leq_[i][j] = true;
  rebuild_successors();
}

void KripkeModel::add_to_domain(World w, Object d) { in_domain_.at(w).at(d) = true; }

void KripkeModel::add_fact(const std::string& letter, World w, const std::vector<Object>& args) {
  auto it = letters_.find(letter);
  if (it == letters_.end()) throw ModelError("unknown letter '" + letter + "'");
  if (static_cast<int>(args.size()) != it->second) throw ArityError(letter, it->second, static_cast<int>(args.size()));
  for (Object d : args) {
    if (d < 0 || d >= object_count()) throw ModelError("object index out of range");
  }
  auto& tuples = val_[letter].at(w);
  auto pos = std::lower_bound(tuples.begin(), tuples.end(), args);
  if (pos == tuples.end() || *pos != args) tuples.insert(pos, args);
}

std::vector<KripkeModel::Object> KripkeModel::domain(World w) const {
  std::vector<Object> out;
  for (Object d = 0; d < object_count(); ++d)
    if (in_domain_[w][d]) out.push_back(d);
  return out;
}

bool KripkeModel::fact(const std::string& letter, World w, const std::vector<Object>& args) const {
  auto it = val_.find(letter);
  if (it == val_.end()) throw ModelError("unknown letter '" + letter + "'");
  const auto& tuples = it->second.at(w);
  return std::binary_search(tuples.begin(), tuples.end(), args);
}

std::vector<std::vector<KripkeModel::Object>> KripkeModel::facts(const std::string& letter, World w) const {
  auto it = val_.find(letter);
  if (it == val_.end()) throw ModelError("unknown letter '" + letter + "'");
  return it->second.at(w);
}

void KripkeModel::validate() const {
  const int n = world_count();
  for (int u = 0; u < n; ++u) {
    if (!leq_[u][u]) throw ModelError("order is not reflexive at '" + worlds_[u] + "'");
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (leq_[u][v] && leq_[v][w] && !leq_[u][w]) {
          throw ModelError("order is not transitive: '" + worlds_[u] + "' <= '" + worlds_[v] + "' <= '" + worlds_[w] +
                           "'");
        }
  for (int u = 0; u < n; ++u)
    for (int v : succ_[u])
      for (Object d = 0; d < object_count(); ++d)
        if (in_domain_[u][d] && !in_domain_[v][d]) {
          throw ModelError("domains are not increasing: '" + objects_[d] + "' exists at '" + worlds_[u] +
                           "' but not at '" + worlds_[v] + "'");
        }
  for (const auto& [letter, per_world] : val_) {
    for (int u = 0; u < n; ++u) {
      for (const auto& t : per_world[u]) {
        for (Object d : t) {
          if (!in_domain_[u][d]) {
            throw ModelError("'" + letter + "' holds at '" + worlds_[u] + "' of '" + objects_[d] +
                             "', which is not in that world's domain");
          }
        }
        for (int v : succ_[u]) {
          if (!std::binary_search(per_world[v].begin(), per_world[v].end(), t)) {
            throw ModelError("valuation of '" + letter + "' is not persistent from '" + worlds_[u] + "' to '" +
                             worlds_[v] + "'");
          }
        }
      }
    }
  }
}

namespace {

bool force_rec(const KripkeModel& k, KripkeModel::World w, std::map<Variable, KripkeModel::Object>& env,
               const IntFormula& i) {
  using K = IntFormula::Kind;
  switch (i.kind()) {
    case K::Atom: {
      auto it = k.letters().find(i.letter());
      if (it == k.letters().end()) throw EvalError("letter '" + i.letter() + "' is not interpreted by the model");
      if (it->second != static_cast<int>(i.args().size())) {
        throw ArityError(i.letter(), it->second, static_cast<int>(i.args().size()));
      }
      std::vector<KripkeModel::Object> args;
      for (const auto& v : i.args()) {
        auto a = env.find(v);
        if (a == env.end()) throw EvalError("free variable '" + v + "' is not assigned");
        args.push_back(a->second);
      }
      return k.fact(i.letter(), w, args);
    }
    case K::Bottom:
      return false;
    case K::And:
      return force_rec(k, w, env, i.lhs()) && force_rec(k, w, env, i.rhs());
    case K::Or:
      return force_rec(k, w, env, i.lhs()) || force_rec(k, w, env, i.rhs());
    case K::Implies:
      for (auto v : k.successors(w)) {
        if (force_rec(k, v, env, i.lhs()) && !force_rec(k, v, env, i.rhs())) return false;
      }
      return true;
    case K::Exists:
    case K::Forall: {
      const bool exists = i.kind() == K::Exists;
      auto saved = env.find(i.var());
      std::optional<KripkeModel::Object> old;
      if (saved != env.end()) old = saved->second;
      bool result = !exists;
      if (exists) {
        for (KripkeModel::Object d = 0; d < k.object_count() && !result; ++d) {
          if (!k.in_domain(w, d)) continue;
          env[i.var()] = d;
          result = force_rec(k, w, env, i.body());
        }
      } else {
        for (auto v : k.successors(w)) {
          for (KripkeModel::Object d = 0; d < k.object_count() && result; ++d) {
            if (!k.in_domain(v, d)) continue;
            env[i.var()] = d;
            result = force_rec(k, v, env, i.body());
          }
          if (!result) break;
        }
      }
      if (old) env[i.var()] = *old; else env.erase(i.var());
      return result;
    }
  }
  return false;
}

}  // namespace

bool force(const KripkeModel& k, KripkeModel::World w, const KripkeAssignment& assignment, const IntFormula& i) {
  if (w < 0 || w >= k.world_count()) throw EvalError("world index out of range");
  std::map<Variable, KripkeModel::Object> env;
  for (const auto& [var, id] : assignment) {
    const auto d = k.object(id);
    if (!k.in_domain(w, d)) {
      throw EvalError("object '" + id + "' assigned to '" + var + "' is not in the domain of '" + k.worlds()[w] + "'");
    }
    env[var] = d;
  }
  for (const auto& v : free_vars(i)) {
    if (!env.count(v)) throw EvalError("free variable '" + v + "' is not assigned");
  }
  return force_rec(k, w, env, i);
}

bool force(const KripkeModel& k, const std::string& world, const KripkeAssignment& assignment, const IntFormula& i) {
  return force(k, k.world(world), assignment, i);
}

KripkeEncoding kripke_to_fo(const KripkeModel& k) {
  std::vector<std::string> domain = k.worlds();
  std::set<std::string> used(domain.begin(), domain.end());
  std::vector<std::string> object_ids;
  for (const auto& d : k.objects()) {
    std::string id = d;
    while (used.count(id)) id += "#";
    used.insert(id);
    object_ids.push_back(id);
  }
  domain.insert(domain.end(), object_ids.begin(), object_ids.end());

  Vocabulary vocab;
  for (const auto& [letter, arity] : k.letters()) vocab.add_intuitionistic(letter, arity);

  auto model = std::make_shared<FoModel>(domain, vocab);
  KripkeEncoding enc;
  const int nw = k.world_count();
  for (int w = 0; w < nw; ++w) enc.world_element.push_back(w);
  for (int d = 0; d < k.object_count(); ++d) enc.object_element.push_back(nw + d);

  for (int u = 0; u < nw; ++u) {
    for (int v : k.successors(u)) model->add(kAccessLetter, Tuple{u, v});
    bool any = false;
    for (int d = 0; d < k.object_count(); ++d) {
      if (k.in_domain(u, d)) {
        model->add(kExistenceLetter, Tuple{u, nw + d});
        any = true;
      }
    }
    if (!any) enc.issues.push_back("world '" + k.worlds()[u] + "' has an empty domain");
    for (const auto& [letter, arity] : k.letters()) {
      for (const auto& t : k.facts(letter, u)) {
        Tuple args{u};
        for (int d : t) args.push_back(nw + d);
        model->add(classical_letter(letter), args);
      }
    }
  }  for (int d = 0; d < k.object_count(); ++d) {
    bool used = false;
    for (int u = 0; u < nw && !used; ++u) used = k.in_domain(u, d);
    if (!used) enc.issues.push_back("object '" + k.objects()[d] + "' lies in no domain");
  }

  enc.model = std::move(model);
  return enc;
}

EvalPoint encoded_point(const KripkeEncoding& enc, KripkeModel::World w, const std::vector<KripkeModel::Object>& objs) {
  EvalPoint pt;
  pt.model = enc.model;
  pt.world = enc.world_element.at(w);
  for (auto d : objs) pt.objects.push_back(enc.object_element.at(d));
  return pt;
}

}  // namespace asimkit
