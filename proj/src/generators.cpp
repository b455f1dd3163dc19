#include "asimkit/generators.hpp"

#include <algorithm>

#include "asimkit/error.hpp"

namespace asimkit {

void GenConfig::validate() const {
  if (max_domain < 1 || max_worlds < 1 || max_objects < 1 || max_arity < 0 || max_k < 0 || depth < 0) {
    throw Error("generator bounds must be positive");
  }
  if (!(density >= 0 && density <= 1)) throw Error("density must lie in [0, 1]");
  const double total = weights.atom + weights.bottom + weights.conj + weights.disj + weights.implies +
                       weights.exists + weights.forall;
  if (weights.atom < 0 || weights.bottom < 0 || weights.conj < 0 || weights.disj < 0 || weights.implies < 0 ||
      weights.exists < 0 || weights.forall < 0 || total <= 0) {
    throw Error("connective weights must be nonnegative and not all zero");
  }
  if (weights.atom + weights.bottom <= 0) throw Error("atoms or _|_ must have positive weight");
  for (const auto& [letter, arity] : letters) {
    if (arity < 0) throw Error("letter '" + letter + "' has negative arity");
    if (is_reserved_letter(letter)) throw Error("'" + letter + "' cannot be an intuitionistic letter");
  }
}

Vocabulary GenConfig::vocabulary() const {
  Vocabulary v;
  for (const auto& [letter, arity] : letters) v.add_intuitionistic(letter, arity);
  return v;
}

Generator::Generator(GenConfig cfg) : cfg_(std::move(cfg)), rng_(cfg_.seed) { cfg_.validate(); }

int Generator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool Generator::coin(double p) {
  if (p <= 0) return false;
  if (p >= 1) return true;
  return std::bernoulli_distribution(p)(rng_);
}

FoModel Generator::fo_model() { return fo_model(cfg_.vocabulary(), uniform(1, cfg_.max_domain)); }

FoModel Generator::fo_model(const Vocabulary& vocab, int domain_size) {
  std::vector<std::string> names;
  for (int i = 0; i < domain_size; ++i) names.push_back("e" + std::to_string(i));
  FoModel m(names, vocab);
  for (const auto& [letter, arity] : vocab.letters()) {
    Tuple t(arity, 0);
    for (;;) {
      if (coin(cfg_.density)) m.add(letter, t);
      int i = arity;
      while (i > 0 && t[i - 1] == domain_size - 1) t[--i] = 0;
      if (i == 0) break;
      ++t[i - 1];
    }
  }
  return m;
}

KripkeModel Generator::kripke() {
  const int nw = uniform(1, cfg_.max_worlds);
  const int no = cfg_.max_objects;
  // Edges only go from lower to higher index, so the closure is a partial order.
  std::vector<std::vector<bool>> leq(nw, std::vector<bool>(nw, false));
  for (int u = 0; u < nw; ++u) leq[u][u] = true;
  for (int u = 0; u < nw; ++u)
    for (int v = u + 1; v < nw; ++v)
      if (coin(0.5)) leq[u][v] = true;
  for (int v = 0; v < nw; ++v)
    for (int u = 0; u < nw; ++u)
      for (int w = 0; w < nw; ++w)
        if (leq[u][v] && leq[v][w]) leq[u][w] = true;
  std::vector<std::vector<bool>> dom(nw, std::vector<bool>(no, false));
  for (int u = 0; u < nw; ++u) {
    bool any = false;
    for (int d = 0; d < no; ++d) {
      bool here = coin(cfg_.density);
      for (int p = 0; p < u && !here; ++p) here = leq[p][u] && dom[p][d];
      dom[u][d] = here;
      any = any || here;
    }
    if (!any) dom[u][uniform(0, no - 1)] = true;
  }
  // Only objects that exist somewhere are kept.
  std::vector<int> index(no, -1);
  std::vector<std::string> worlds, objects;
  for (int u = 0; u < nw; ++u) worlds.push_back("u" + std::to_string(u));
  for (int d = 0; d < no; ++d) {
    bool used = false;
    for (int u = 0; u < nw; ++u) used = used || dom[u][d];
    if (used) {
      index[d] = static_cast<int>(objects.size());
      objects.push_back("d" + std::to_string(d));
    }
  }
  KripkeModel k(worlds, objects, cfg_.letters);
  for (int u = 0; u < nw; ++u)
    for (int v = 0; v < nw; ++v)
      if (leq[u][v]) k.set_leq(u, v);
  k.close_order();
  for (int u = 0; u < nw; ++u)
    for (int d = 0; d < no; ++d)
      if (dom[u][d]) k.add_to_domain(u, index[d]);
  for (const auto& [letter, arity] : cfg_.letters) {
    for (int u = 0; u < nw; ++u) {
      const auto here = k.domain(u);
      std::vector<int> idx(arity, 0);
      for (;;) {
        std::vector<KripkeModel::Object> t;
        for (int i : idx) t.push_back(here[i]);
        bool on = coin(cfg_.density);
        for (int p = 0; p < u && !on; ++p) on = leq[p][u] && k.fact(letter, p, t);
        if (on) k.add_fact(letter, u, t);
        int i = arity;
        while (i > 0 && idx[i - 1] == static_cast<int>(here.size()) - 1) idx[--i] = 0;
        if (i == 0) break;
        ++idx[i - 1];
      }
    }
  }
  k.validate();
  return k;
}

IntFormula Generator::int_formula(int free_vars) { return int_formula(free_vars, cfg_.depth); }

IntFormula Generator::int_formula(int free_vars, int depth) { return formula_rec(depth, free_vars); }

IntFormula Generator::formula_rec(int depth, int bound) {
  const auto& w = cfg_.weights;
  // Letters usable with the variables w1..w<bound>.
  std::vector<std::pair<std::string, int>> usable;
  for (const auto& [letter, arity] : cfg_.letters) {
    if (arity == 0 || bound > 0) usable.emplace_back(letter, arity);
  }
  auto leaf = [&]() {
    const double atom_w = usable.empty() ? 0 : w.atom;
    if (atom_w + w.bottom <= 0 || !coin(atom_w / (atom_w + w.bottom))) return IntFormula::bottom();
    const auto& [letter, arity] = usable[uniform(0, static_cast<int>(usable.size()) - 1)];
    std::vector<Variable> args;
    for (int i = 0; i < arity; ++i) args.push_back("w" + std::to_string(uniform(1, bound)));
    return IntFormula::atom(letter, args);
  };
  if (depth == 0) return leaf();
  const double weights[] = {usable.empty() ? 0 : w.atom, w.bottom, w.conj, w.disj, w.implies, w.exists, w.forall};
  std::discrete_distribution<int> pick(std::begin(weights), std::end(weights));
  const int choice = pick(rng_);
  switch (choice) {
    case 0:
    case 1:
      return leaf();
    case 2:
    case 3:
    case 4: {
      IntFormula lhs = formula_rec(depth - 1, bound);
      IntFormula rhs = formula_rec(depth - 1, bound);
      if (choice == 2) return IntFormula::conj(lhs, rhs);
      if (choice == 3) return IntFormula::disj(lhs, rhs);
      return IntFormula::implies(lhs, rhs);
    }
    case 5:
      return IntFormula::exists("w" + std::to_string(bound + 1), formula_rec(depth - 1, bound + 1));
    default:
      return IntFormula::forall("w" + std::to_string(bound + 1), formula_rec(depth - 1, bound + 1));
  }
}

FoModel gen_fo_model(const GenConfig& cfg) { return Generator(cfg).fo_model(); }
KripkeModel gen_kripke(const GenConfig& cfg) { return Generator(cfg).kripke(); }
IntFormula gen_int_formula(const GenConfig& cfg) { return Generator(cfg).int_formula(0); }

}  // namespace asimkit
