// One line per criterion: PASS/FAIL, counts, wall time.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "asimkit/asimulation.hpp"
#include "asimkit/classify.hpp"
#include "asimkit/corpus.hpp"
#include "asimkit/generators.hpp"
#include "asimkit/kripke.hpp"
#include "asimkit/model_io.hpp"
#include "asimkit/parser.hpp"
#include "asimkit/search.hpp"
#include "asimkit/theory.hpp"
#include "asimkit/translation.hpp"
#include "fixtures.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace asimkit;

namespace {

// Wall-clock budgets in seconds.
constexpr double kGoldenBudget = 1;
constexpr double kDegreeBudget = 10;
constexpr double kAdequacyBudget = 300;
constexpr double kPreservationBudget = 300;
constexpr double kOracleBudget = 600;

constexpr std::size_t kDegreeFormulas = 10000;
constexpr int kDegreeDepth = 6;
constexpr std::size_t kPreservationPairs = 1000;
constexpr std::size_t kFixpointRuns = 200;
constexpr std::size_t kReadded = 20;
constexpr std::size_t kLiftRuns = 200;
constexpr std::size_t kTheoryPairs = 200;
constexpr int kTupleCap = 3;
constexpr std::size_t kSearchCases = 10000;

using ModelPtr = std::shared_ptr<const FoModel>;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, double budget, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget > 0 && secs > budget) {
    o.ok = false;
    o.detail += "; over budget";
  }
  if (!o.ok) ++failures;
  std::printf("%s %2d %-28s %s [%.2fs]\n", o.ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string count(const char* what, std::size_t n) { return std::string(what) + "=" + std::to_string(n); }

// Model number `index` over `vocab` with domain {a, b, ...}: one bit per cell,
// letters in name order, tuples lexicographic.
ModelPtr nth_model(const Vocabulary& vocab, int size, std::uint64_t index) {
  std::vector<std::string> names;
  for (int i = 0; i < size; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  auto m = std::make_shared<FoModel>(names, vocab);
  for (const auto& [letter, arity] : vocab.letters()) {
    for (const auto& t : oracle::tuples(size, arity)) {
      if (index & 1) m->add(letter, t);
      index >>= 1;
    }
  }
  return m;
}

std::uint64_t model_count(const Vocabulary& vocab, int size) {
  int bits = 0;
  for (const auto& [letter, arity] : vocab.letters()) {
    (void)letter;
    int cells = 1;
    for (int i = 0; i < arity; ++i) cells *= size;
    bits += cells;
  }
  return std::uint64_t{1} << bits;
}

Outcome golden_corpus() {
  std::size_t bad = 0;
  std::string first;
  for (const auto& g : golden::kTranslations) {
    const auto got = to_string(standard_translation(parse_int(g.formula), g.var));
    if (got != g.translation) {
      if (!bad++) first = std::string(g.formula) + " gave " + got;
    }
  }
  return {bad == 0 && std::size(golden::kTranslations) == 12,
          count("formulas", std::size(golden::kTranslations)) + " " + count("mismatches", bad) + (bad ? "; " + first : "")};
}

Outcome degrees() {
  GenConfig cfg;
  cfg.depth = kDegreeDepth;
  cfg.seed = 2024;
  cfg.letters = {{"P", 1}, {"Q", 0}, {"S", 2}};
  Generator gen(cfg);
  std::size_t bad = 0, deep = 0;
  int max_degree = 0;
  for (std::size_t c = 0; c < kDegreeFormulas; ++c) {
    const auto i = gen.int_formula(2, gen.uniform(0, kDegreeDepth));
    if (i.depth() > kDegreeDepth) ++deep;
    const int d = translation_degree(i);
    max_degree = std::max(max_degree, d);
    if (d != degree(standard_translation(i, "x"))) ++bad;
  }
  return {bad == 0 && deep == 0, count("formulas", kDegreeFormulas) + " " + count("mismatches", bad) + " " +
                                     count("max_degree", static_cast<std::size_t>(max_degree))};
}

// Every Kripke model with <= 3 worlds and <= 2 objects per world, one unary
// and one 0-ary letter, objects named in order of first appearance.
void each_kripke(const std::function<void(const KripkeModel&)>& visit) {
  for (int w = 1; w <= 3; ++w) {
    const int pairs = w * (w - 1);
    for (int bits = 0; bits < (1 << pairs); ++bits) {
      std::vector<std::vector<bool>> leq(w, std::vector<bool>(w, false));
      int b = 0;
      for (int u = 0; u < w; ++u)
        for (int v = 0; v < w; ++v) leq[u][v] = u == v || ((bits >> b++) & 1);
      bool transitive = true;
      for (int u = 0; u < w; ++u)
        for (int v = 0; v < w; ++v)
          for (int x = 0; x < w; ++x)
            if (leq[u][v] && leq[v][x] && !leq[u][x]) transitive = false;
      if (!transitive) continue;
      for (int objects = 1; objects <= 2 * w; ++objects) {
        std::vector<std::vector<int>> subsets;
        for (int o = 0; o < objects; ++o) {
          subsets.push_back({o});
          for (int p = o + 1; p < objects; ++p) subsets.push_back({o, p});
        }
        std::vector<std::size_t> pick(w, 0);
        for (;;) {
          // increasing domains, canonical object order
          bool ok = true;
          for (int u = 0; u < w && ok; ++u)
            for (int v = 0; v < w && ok; ++v)
              if (leq[u][v])
                for (int o : subsets[pick[u]])
                  if (std::find(subsets[pick[v]].begin(), subsets[pick[v]].end(), o) == subsets[pick[v]].end())
                    ok = false;
          int next = 0;
          for (int u = 0; u < w && ok; ++u)
            for (int o : subsets[pick[u]]) {
              if (o > next) ok = false;
              if (o == next) ++next;
            }
          if (ok && next == objects) {
            // Valuations: Q an up-set of worlds, P(d) an up-set inside d's worlds.
            std::vector<int> upsets;
            for (int s = 0; s < (1 << w); ++s) {
              bool up = true;
              for (int u = 0; u < w; ++u)
                for (int v = 0; v < w; ++v)
                  if (((s >> u) & 1) && leq[u][v] && !((s >> v) & 1)) up = false;
              if (up) upsets.push_back(s);
            }
            std::vector<int> home(objects, 0);
            for (int u = 0; u < w; ++u)
              for (int o : subsets[pick[u]]) home[o] |= 1 << u;
            std::vector<std::vector<int>> choices(objects + 1);
            for (int o = 0; o < objects; ++o)
              for (int s : upsets)
                if ((s & ~home[o]) == 0) choices[o].push_back(s);
            choices[objects] = upsets;
            std::vector<std::size_t> val(objects + 1, 0);
            for (;;) {
              std::vector<std::string> wn, on;
              for (int u = 0; u < w; ++u) wn.push_back("u" + std::to_string(u));
              for (int o = 0; o < objects; ++o) on.push_back("d" + std::to_string(o));
              KripkeModel k(wn, on, {{"P", 1}, {"Q", 0}});
              for (int u = 0; u < w; ++u) {
                for (int v = 0; v < w; ++v)
                  if (leq[u][v]) k.set_leq(u, v);
                for (int o : subsets[pick[u]]) k.add_to_domain(u, o);
                for (int o = 0; o < objects; ++o)
                  if ((choices[o][val[o]] >> u) & 1) k.add_fact("P", u, {o});
                if ((choices[objects][val[objects]] >> u) & 1) k.add_fact("Q", u, {});
              }
              visit(k);
              int i = objects + 1;
              while (i > 0 && val[i - 1] + 1 == choices[i - 1].size()) val[--i] = 0;
              if (i == 0) break;
              ++val[i - 1];
            }
          }
          int i = w;
          while (i > 0 && pick[i - 1] + 1 == subsets.size()) pick[--i] = 0;
          if (i == 0) break;
          ++pick[i - 1];
        }
      }
    }
  }
}

Outcome adequacy() {
  const auto corpus = formula_corpus({{"P", 1}, {"Q", 0}}, 1, 3);
  std::vector<FoFormula> st;
  for (const auto& i : corpus) st.push_back(standard_translation(i, "x"));
  const auto vars = point_vars(1);
  std::size_t models = 0, checks = 0, bad = 0, invalid = 0;
  std::string first;
  each_kripke([&](const KripkeModel& k) {
    ++models;
    try {
      k.validate();
    } catch (const std::exception&) {
      ++invalid;
      return;
    }
    const auto enc = kripke_to_fo(k);
    if (!enc.issues.empty()) ++invalid;
    for (int w = 0; w < k.world_count(); ++w) {
      for (int d : k.domain(w)) {
        const EvalPoint pt = encoded_point(enc, w, {d});
        const KripkeAssignment asg{{"w1", k.objects()[d]}};
        for (std::size_t f = 0; f < corpus.size(); ++f) {
          ++checks;
          if (force(k, w, asg, corpus[f]) != satisfies_at(pt, st[f], vars)) {
            if (!bad++) first = to_string(corpus[f]) + " at " + k.worlds()[w];
          }
        }
      }
    }
  });
  return {bad == 0 && invalid == 0, count("models", models) + " " + count("formulas", corpus.size()) + " " +
                                        count("checks", checks) + " " + count("mismatches", bad) + " " +
                                        count("invalid", invalid) + (bad ? "; " + first : "")};
}

// N is M with cells flipped half of the time, so that related pairs are common.
std::pair<ModelPtr, ModelPtr> model_pair(Generator& gen, const Vocabulary& vocab, int max_domain) {
  auto m = std::make_shared<FoModel>(gen.fo_model(vocab, gen.uniform(1, max_domain)));
  if (!gen.coin(0.5)) return {m, std::make_shared<FoModel>(gen.fo_model(vocab, gen.uniform(1, max_domain)))};
  auto n = std::make_shared<FoModel>(m->names(), vocab);
  for (const auto& [letter, arity] : vocab.letters())
    for (const auto& t : oracle::tuples(m->size(), arity))
      if (m->holds(letter, t) != gen.coin(0.1)) n->add(letter, t);
  return {m, n};
}

EvalPoint random_point(Generator& gen, const ModelPtr& m, int n) {
  EvalPoint p{m, gen.uniform(0, m->size() - 1), {}};
  for (int i = 0; i < n; ++i) p.objects.push_back(gen.uniform(0, m->size() - 1));
  return p;
}

GenConfig pair_config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.density = 0.4;
  cfg.letters = {{"P", 1}, {"Q", 0}};
  return cfg;
}

Outcome preservation() {
  GenConfig cfg = pair_config(41);
  Generator gen(cfg);
  const auto vocab = cfg.vocabulary();
  std::vector<std::vector<std::pair<int, FoFormula>>> corpora;
  for (int n = 0; n <= 2; ++n) {
    corpora.emplace_back();
    for (const auto& i : formula_corpus(cfg.letters, n, 4)) corpora.back().emplace_back(translation_degree(i), standard_translation(i, "x"));
  }
  std::size_t related = 0, checks = 0, bad = 0;
  std::string first;
  for (std::size_t c = 0; c < kPreservationPairs; ++c) {
    auto [m, nm] = model_pair(gen, vocab, 4);
    const int n = gen.uniform(0, 2);
    const int k = gen.uniform(0, 3);
    const EvalPoint l = random_point(gen, m, n), r = random_point(gen, nm, n);
    if (!max_k_asimulation(l, r, k, AtomMode::Full)) continue;
    ++related;
    for (const auto& [d, phi] : corpora[n]) {
      if (d > k) continue;
      ++checks;
      if (satisfies_at(l, phi, point_vars(n)) && !satisfies_at(r, phi, point_vars(n))) {
        if (!bad++) first = to_string(phi);
      }
    }
  }
  return {bad == 0 && related > 0, count("pairs", kPreservationPairs) + " " + count("related", related) + " " +
                                       count("checks", checks) + " " + count("violations", bad) +
                                       (bad ? "; " + first : "")};
}

Outcome fixpoint() {
  GenConfig cfg = pair_config(42);
  Generator gen(cfg);
  const auto vocab = cfg.vocabulary();
  std::size_t found = 0, readded = 0, bad = 0;
  for (std::size_t c = 0; c < kFixpointRuns; ++c) {
    auto [m, nm] = model_pair(gen, vocab, 3);
    const int n = gen.uniform(0, 2);
    const int k = gen.uniform(0, 3);
    const EvalPoint l = random_point(gen, m, n), r = random_point(gen, nm, n);
    auto out = compute_k_asimulation(l, r, k, AtomMode::Full);
    AsimRelation base{l, r, n, k, AtomMode::Full, {}};
    if (out.relation) {
      ++found;
      if (is_k_asimulation(*out.relation, k)) ++bad;
      base = *out.relation;
    }
    auto deleted = out.deleted;
    std::shuffle(deleted.begin(), deleted.end(), gen.rng());
    if (deleted.size() > kReadded) deleted.resize(kReadded);
    for (const auto& s : deleted) {
      AsimRelation grown = base;
      grown.states.insert(std::lower_bound(grown.states.begin(), grown.states.end(), s), s);
      ++readded;
      if (!is_k_asimulation(grown, k)) ++bad;
    }
  }
  return {bad == 0 && found > 0, count("runs", kFixpointRuns) + " " + count("found", found) + " " +
                                     count("readded", readded) + " " + count("exceptions", bad)};
}

Outcome lifting() {
  GenConfig cfg = pair_config(43);
  Generator gen(cfg);
  const auto vocab = cfg.vocabulary();
  std::size_t runs = 0, attempts = 0, bad = 0;
  while (runs < kLiftRuns && attempts < 100 * kLiftRuns) {
    ++attempts;
    auto [m, nm] = model_pair(gen, vocab, 3);
    const int n = gen.uniform(0, 2);
    const EvalPoint l = random_point(gen, m, n), r = random_point(gen, nm, n);
    auto q = max_asimulation_quotient(l, r);
    if (!q) continue;
    ++runs;
    if (is_asimulation_quotient(*q)) ++bad;
    for (int k = 0; k <= 4; ++k)
      if (is_k_asimulation(lift_to_k(*q, k), k)) ++bad;
  }
  return {bad == 0 && runs == kLiftRuns,
          count("runs", runs) + " " + count("attempts", attempts) + " " + count("exceptions", bad)};
}

Outcome theory() {
  GenConfig cfg = pair_config(44);
  Generator gen(cfg);
  const auto vocab = cfg.vocabulary();
  std::size_t from_theory = 0, order = 0, attempts = 0, bad = 0;
  while ((from_theory < kTheoryPairs || order < kTheoryPairs) && attempts < 100 * kTheoryPairs) {
    ++attempts;
    auto [m, nm] = model_pair(gen, vocab, 2);
    const int n = gen.uniform(0, 1);
    const int k = gen.uniform(0, 1);
    const EvalPoint l = random_point(gen, m, n), r = random_point(gen, nm, n);
    if (from_theory < kTheoryPairs) {
      if (auto a = asimulation_from_theory(l, r, k)) {
        ++from_theory;
        if (!a->contains(a->seed()) || is_k_asimulation(*a, k)) ++bad;
      }
    }
    if (order < kTheoryPairs) {
      const auto t = theory_order_asimulation(l, r);
      if (t.relation) {
        ++order;
        if (!t.relation->contains(t.relation->seed()) || is_asimulation_quotient(*t.relation)) ++bad;
      }
    }
  }
  return {bad == 0 && from_theory == kTheoryPairs && order == kTheoryPairs,
          count("from_theory", from_theory) + " " + count("order", order) + " " + count("attempts", attempts) + " " +
              count("exceptions", bad)};
}

// All pairs over R, E and a unary P' with domains of one or two elements,
// every seed of arity 0 and 1, both orientations.
Outcome quotient_oracle() {
  Vocabulary vocab;
  vocab.add_intuitionistic("P", 0);
  std::vector<ModelPtr> models;
  for (int s = 1; s <= 2; ++s)
    for (std::uint64_t i = 0; i < model_count(vocab, s); ++i) models.push_back(nth_model(vocab, s, i));
  std::size_t pairs = 0, seeds = 0, related = 0, states = 0, bad = 0;
  std::string first;
  auto compare = [&](const ModelPtr& m, const ModelPtr& n, int side, const oracle::BoundedTupleOracle& o) {
    for (int arity = 0; arity <= 1; ++arity)
      for (Element a = 0; a < m->size(); ++a)
        for (Element c = 0; c < n->size(); ++c)
          for (const auto& b : oracle::tuples(m->size(), arity))
            for (const auto& d : oracle::tuples(n->size(), arity)) {
              ++seeds;
              const auto q = max_asimulation_quotient(EvalPoint{m, a, b}, EvalPoint{n, c, d});
              const bool expect = o.relates(side, a, b, c, d);
              if (q.has_value() != expect) {
                if (!bad++) first = fo_model_to_json(*m).dump() + " vs " + fo_model_to_json(*n).dump();
              }
              if (!q) continue;
              ++related;
              // every surviving state with a short pair list is alive in the oracle
              for (const auto& s : q->states) {
                if (s.pairs.size() > static_cast<std::size_t>(kTupleCap)) continue;
                Tuple lt, rt;
                for (const auto& [x, y] : s.pairs) {
                  lt.push_back(x);
                  rt.push_back(y);
                }
                const int sd = s.left == Side::M ? side : 1 - side;
                ++states;
                if (!o.relates(sd, s.left_world, lt, s.right_world, rt)) {
                  if (!bad++) first = "state of " + fo_model_to_json(*m).dump() + " vs " + fo_model_to_json(*n).dump();
                }
              }
            }
  };
  for (std::size_t i = 0; i < models.size(); ++i)
    for (std::size_t j = i; j < models.size(); ++j) {
      ++pairs;
      const oracle::BoundedTupleOracle o(*models[i], *models[j], kTupleCap);
      compare(models[i], models[j], 0, o);
      if (i != j) compare(models[j], models[i], 1, o);
    }
  return {bad == 0, count("models", models.size()) + " " + count("pairs", pairs) + " " + count("seeds", seeds) + " " +
                        count("related", related) + " " + count("states", states) + " " +
                        count("disagreements", bad) + (bad ? "; " + first : "")};
}

Outcome witnesses() {
  GenConfig bounds;
  bounds.letters = {{"P", 0}};
  const auto phi = parse_fo("~P'(x)");
  const auto a = search_noninvariance(phi, bounds, kSearchCases);
  const auto b = search_noninvariance(phi, bounds, kSearchCases);
  bool ok = a.witness && b.witness && a.witness->left.model->size() <= 1 && a.witness->right.model->size() <= 1 &&
            replay(*a.witness) && witness_to_json(*a.witness) == witness_to_json(*b.witness);
  GenConfig unary;
  unary.letters = {{"P", 1}, {"Q", 1}};
  const auto st = standard_translation(parse_int("P(w1) -> Q(w1)"), "x");
  const auto none = search_noninvariance(st, unary, kSearchCases);
  ok = ok && !none.witness && none.cases == kSearchCases;
  return {ok, std::string("negated atom: ") + (a.witness ? "witness at case " + std::to_string(a.witness->case_index) : "none") +
                  "; translation: " + (none.witness ? "witness" : "none") + " over " + std::to_string(none.cases)};
}

std::string flags(const ModelClassReport& r) {
  std::string s;
  for (bool f : {r.rt, r.mon, r.er, r.type_ok, r.cd}) s += f ? '1' : '0';
  return s;
}

Outcome classifier() {
  const auto unary = fixtures::vocab({{"P", 1}});
  struct Case {
    const char* name;
    ModelPtr model;
    const char* expect;  // rt mon er type cd
  };
  const std::vector<Case> cases{
      {"all", fixtures::reflexive_world(), "11111"},
      {"rt", fixtures::model({"w", "d"}, unary, {{"E", {"w", "d"}}, {"P'", {"w", "d"}}}), "01111"},
      {"mon",
       fixtures::model({"u", "v", "d"}, unary,
                       {{"R", {"u", "u"}}, {"R", {"u", "v"}}, {"R", {"v", "v"}}, {"E", {"u", "d"}}, {"E", {"v", "d"}}, {"P'", {"u", "d"}}}),
       "10111"},
      {"er", fixtures::model({"w", "d"}, unary, {{"R", {"w", "w"}}, {"E", {"w", "d"}}, {"E", {"d", "d"}}}), "11011"},
      {"type", fixtures::model({"w", "d"}, unary, {{"R", {"w", "w"}}, {"E", {"w", "d"}}, {"P'", {"w", "w"}}}), "11101"},
      {"cd",
       fixtures::model({"u", "v", "d1", "d2"}, unary,
                       {{"R", {"u", "u"}}, {"R", {"v", "v"}}, {"E", {"u", "d1"}}, {"E", {"v", "d2"}}}),
       "11110"},
      {"K2", kripke_to_fo(fixtures::k2()).model, "11110"},
      {"K2 constant", kripke_to_fo(fixtures::k2_constant()).model, "11111"},
  };
  std::size_t bad = 0;
  std::string detail;
  for (const auto& c : cases) {
    const auto got = flags(classify_model(*c.model));
    const oracle::Flags o = oracle::classify(*c.model);
    const std::string brute{o.rt ? '1' : '0', o.mon ? '1' : '0', o.er ? '1' : '0', o.type_ok ? '1' : '0', o.cd ? '1' : '0'};
    if (got != c.expect || brute != c.expect) {
      ++bad;
      detail += std::string("; ") + c.name + " gave " + got + "/" + brute;
    }
  }
  return {bad == 0, count("models", cases.size()) + " " + count("mismatches", bad) + detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto run = [&](int id, const char* name, double budget, Outcome (*f)()) {
    if (only.empty() || only.count(id)) report(id, name, budget, f);
  };
  run(1, "golden translations", kGoldenBudget, golden_corpus);
  run(2, "translation degree", kDegreeBudget, degrees);
  run(3, "forcing vs translation", kAdequacyBudget, adequacy);
  run(4, "preservation", kPreservationBudget, preservation);
  run(5, "fixpoint soundness", 0, fixpoint);
  run(6, "lifting quotients", 0, lifting);
  run(7, "theory relations", 0, theory);
  run(8, "quotient vs oracle", kOracleBudget, quotient_oracle);
  run(9, "non-invariance search", 0, witnesses);
  run(10, "classifier fixtures", 0, classifier);
  return failures == 0 ? 0 : 1;
}
