#include "asimkit/suites.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "asimkit/asimulation.hpp"
#include "asimkit/corpus.hpp"
#include "asimkit/error.hpp"
#include "asimkit/kripke.hpp"
#include "asimkit/model_io.hpp"
#include "asimkit/theory.hpp"
#include "asimkit/translation.hpp"

namespace asimkit {

std::string SuiteReport::status() const {
  if (cases == 0) return "empty";
  return failures.empty() ? "ok" : "failed";
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json fs = nlohmann::json::array();
  for (const auto& f : failures) fs.push_back({{"case", f.case_index}, {"what", f.what}, {"record", f.record}});
  return {{"suite", suite}, {"seed", seed},         {"cases", cases},       {"checks", checks},
          {"hits", hits},   {"status", status()}, {"failures", failures.size()}, {"records", fs}};
}

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  os << "suite " << suite << " seed " << seed << ": " << cases << " cases, " << checks << " checks, " << hits
     << " hits, " << failures.size() << " failures [" << status() << "]\n";
  for (const auto& f : failures) os << "  case " << f.case_index << ": " << f.what << "\n    " << f.record.dump() << "\n";
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"adequacy", "degree", "fixpoint", "lift", "preservation", "quotient",
                                              "theory"};
  return names;
}

namespace {

using ModelPtr = std::shared_ptr<const FoModel>;

struct CompiledEntry {
  IntFormula formula;
  int degree;
  CompiledFormula st;
};

std::vector<CompiledEntry> compile_corpus(const GenConfig& cfg, int n) {
  std::vector<CompiledEntry> out;
  for (const auto& i : formula_corpus(cfg.letters, n, cfg.depth)) {
    out.push_back({i, translation_degree(i), CompiledFormula(standard_translation(i, "x"), point_vars(n))});
  }
  return out;
}

class Runner {
 public:
  Runner(const std::string& name, const GenConfig& cfg) : cfg_(cfg), gen_(cfg) {
    report_.suite = name;
    report_.seed = cfg.seed;
  }

  SuiteReport run() {
    const auto& s = report_.suite;
    for (std::size_t c = 0; c < cfg_.cases; ++c) {
      case_ = c;
      ++report_.cases;
      if (s == "adequacy") adequacy();
      else if (s == "preservation") preservation();
      else if (s == "degree") degree_case();
      else if (s == "fixpoint") fixpoint();
      else if (s == "lift") lift();
      else if (s == "theory") theory();
      else quotient();
    }
    std::stable_sort(report_.failures.begin(), report_.failures.end(),
                     [](const SuiteFailure& a, const SuiteFailure& b) { return a.case_index < b.case_index; });
    return std::move(report_);
  }

 private:
  void fail(std::string what, nlohmann::json record) {
    report_.failures.push_back({case_, std::move(what), std::move(record)});
  }

  ModelPtr model(int max_domain) {
    return std::make_shared<FoModel>(gen_.fo_model(cfg_.vocabulary(), gen_.uniform(1, max_domain)));
  }

  // Half of the time N is M with a few cells flipped, so that related pairs are common.
  std::pair<ModelPtr, ModelPtr> model_pair(int max_domain) {
    ModelPtr m = model(max_domain);
    if (!gen_.coin(0.5)) return {m, model(max_domain)};
    auto n = std::make_shared<FoModel>(m->names(), m->vocab());
    for (int id = 0; id < m->letter_count(); ++id) {
      const int arity = m->letter_arity(id);
      Tuple t(arity, 0);
      for (;;) {
        if (m->holds(id, t.data()) != gen_.coin(0.1)) n->add(m->letter_name(id), t);
        int i = arity;
        while (i > 0 && t[i - 1] == m->size() - 1) t[--i] = 0;
        if (i == 0) break;
        ++t[i - 1];
      }
    }
    return {m, n};
  }

  EvalPoint point(const ModelPtr& m, int n) {
    EvalPoint p{m, gen_.uniform(0, m->size() - 1), {}};
    for (int i = 0; i < n; ++i) p.objects.push_back(gen_.uniform(0, m->size() - 1));
    return p;
  }

  nlohmann::json pair_record(const EvalPoint& l, const EvalPoint& r, int k) const {
    return {{"M", fo_model_to_json(*l.model)}, {"N", fo_model_to_json(*r.model)},
            {"left", l.to_string()},           {"right", r.to_string()},
            {"k", k}};
  }

  const std::vector<CompiledEntry>& corpus(int n) {
    while (static_cast<int>(corpora_.size()) <= n) corpora_.push_back(compile_corpus(cfg_, static_cast<int>(corpora_.size())));
    return corpora_[n];
  }

  void adequacy() {
    const KripkeModel k = gen_.kripke();
    const auto enc = kripke_to_fo(k);
    const int n = cfg_.max_arity;
    const auto& entries = corpus(n);
    bool hit = false;
    for (int w = 0; w < k.world_count(); ++w) {
      const auto dom = k.domain(w);
      if (dom.empty() && n > 0) continue;
      std::vector<std::size_t> idx(n, 0);
      for (;;) {
        std::vector<KripkeModel::Object> objs;
        KripkeAssignment asg;
        for (int i = 0; i < n; ++i) {
          objs.push_back(dom[idx[i]]);
          asg["w" + std::to_string(i + 1)] = k.objects()[dom[idx[i]]];
        }
        const EvalPoint pt = encoded_point(enc, w, objs);
        for (const auto& e : entries) {
          const bool forced = force(k, w, asg, e.formula);
          const bool st = e.st.eval(pt);
          ++report_.checks;
          hit = true;
          if (forced != st) {
            fail("forcing and ST disagree", {{"kripke", kripke_to_json(k)},
                                             {"world", k.worlds()[w]},
                                             {"assignment", asg},
                                             {"formula", to_string(e.formula)},
                                             {"force", forced}});
          }
          if (!forced) continue;
          for (int v : k.successors(w)) {
            ++report_.checks;
            if (!force(k, v, asg, e.formula)) {
              fail("persistence", {{"kripke", kripke_to_json(k)},
                                   {"world", k.worlds()[w]},
                                   {"later", k.worlds()[v]},
                                   {"assignment", asg},
                                   {"formula", to_string(e.formula)}});
            }
          }
        }
        int i = n;
        while (i > 0 && idx[i - 1] + 1 == dom.size()) idx[--i] = 0;
        if (i == 0) break;
        ++idx[i - 1];
      }
    }
    if (hit) ++report_.hits;
  }

  void preservation() {
    auto [m, nm] = model_pair(cfg_.max_domain);
    const int n = gen_.uniform(0, cfg_.max_arity);
    const int k = gen_.uniform(0, cfg_.max_k);
    const EvalPoint l = point(m, n), r = point(nm, n);
    auto rel = max_k_asimulation(l, r, k, AtomMode::Full);
    if (!rel) return;
    ++report_.hits;
    for (const auto& e : corpus(n)) {
      if (e.degree > k) continue;
      ++report_.checks;
      if (e.st.eval(l) && !e.st.eval(r)) {
        auto rec = pair_record(l, r, k);
        rec["formula"] = to_string(e.formula);
        fail("truth of a translation not preserved", rec);
      }
    }
  }

  void degree_case() {
    const IntFormula i = gen_.int_formula(cfg_.max_arity, gen_.uniform(0, cfg_.depth));
    const FoFormula st = standard_translation(i, "x");
    ++report_.checks;
    ++report_.hits;
    if (translation_degree(i) != degree(st)) {
      fail("degree mismatch", {{"formula", to_string(i)},
                               {"translation", to_string(st)},
                               {"translation_degree", translation_degree(i)},
                               {"degree", degree(st)}});
    }
  }

  void fixpoint() {
    auto [m, nm] = model_pair(cfg_.max_domain);
    const int n = gen_.uniform(0, cfg_.max_arity);
    const int k = gen_.uniform(0, cfg_.max_k);
    const EvalPoint l = point(m, n), r = point(nm, n);
    auto out = compute_k_asimulation(l, r, k, AtomMode::Full);
    AsimRelation base;
    if (out.relation) {
      ++report_.hits;
      ++report_.checks;
      if (auto v = is_k_asimulation(*out.relation, k)) {
        auto rec = pair_record(l, r, k);
        rec["violation"] = to_string(*v, *out.relation);
        fail("fixpoint is not a k-asimulation", rec);
        return;
      }
      base = *out.relation;
    } else {
      base = AsimRelation{l, r, n, k, AtomMode::Full, {}};
    }
    std::vector<PairState> deleted = out.deleted;
    std::shuffle(deleted.begin(), deleted.end(), gen_.rng());
    if (deleted.size() > 20) deleted.resize(20);
    for (const auto& s : deleted) {
      AsimRelation grown = base;
      grown.states.insert(std::lower_bound(grown.states.begin(), grown.states.end(), s), s);
      ++report_.checks;
      if (!is_k_asimulation(grown, k)) {
        auto rec = pair_record(l, r, k);
        rec["state"] = to_string(s, *l.model, *r.model);
        fail("deleted state can be added back", rec);
      }
    }
  }

  void lift() {
    auto [m, nm] = model_pair(std::min(cfg_.max_domain, 3));
    const int n = gen_.uniform(0, std::min(cfg_.max_arity, 2));
    const EvalPoint l = point(m, n), r = point(nm, n);
    auto q = max_asimulation_quotient(l, r);
    if (!q) return;
    ++report_.hits;
    ++report_.checks;
    if (auto v = is_asimulation_quotient(*q)) {
      auto rec = pair_record(l, r, 0);
      rec["violation"] = to_string(*v, *q);
      fail("quotient fixpoint is not an asimulation", rec);
      return;
    }
    for (int k = 0; k <= 4; ++k) {
      ++report_.checks;
      const AsimRelation a = lift_to_k(*q, k);
      if (auto v = is_k_asimulation(a, k)) {
        auto rec = pair_record(l, r, k);
        rec["violation"] = to_string(*v, a);
        fail("lift is not a k-asimulation", rec);
      }
    }
  }

  void theory() {
    auto [m, nm] = model_pair(std::min(cfg_.max_domain, 2));
    const int n = gen_.uniform(0, std::min(cfg_.max_arity, 1));
    const int k = gen_.uniform(0, std::min(cfg_.max_k, 1));
    const EvalPoint l = point(m, n), r = point(nm, n);
    if (auto a = asimulation_from_theory(l, r, k)) {
      ++report_.hits;
      ++report_.checks;
      if (auto v = is_k_asimulation(*a, k)) {
        auto rec = pair_record(l, r, k);
        rec["violation"] = to_string(*v, *a);
        fail("theory-inclusion relation is not a k-asimulation", rec);
      }
    }
    const auto t = theory_order_asimulation(l, r);
    if (t.relation) {
      ++report_.hits;
      ++report_.checks;
      if (auto v = is_asimulation_quotient(*t.relation)) {
        auto rec = pair_record(l, r, 0);
        rec["violation"] = to_string(*v, *t.relation);
        rec["grade"] = t.grade;
        fail("theory order is not an asimulation", rec);
      }
    }
  }

  // An asimulation gives a k-asimulation for every k.
  void quotient() {
    auto [m, nm] = model_pair(std::min(cfg_.max_domain, 3));
    const int n = gen_.uniform(0, std::min(cfg_.max_arity, 2));
    const EvalPoint l = point(m, n), r = point(nm, n);
    auto q = max_asimulation_quotient(l, r);
    if (!q) return;
    ++report_.hits;
    for (int k = 0; k <= cfg_.max_k; ++k) {
      ++report_.checks;
      if (!max_k_asimulation(l, r, k, AtomMode::Full)) fail("asimulation without a k-asimulation", pair_record(l, r, k));
    }
  }

  GenConfig cfg_;
  Generator gen_;
  SuiteReport report_;
  std::size_t case_ = 0;
  std::vector<std::vector<CompiledEntry>> corpora_;
};

}  // namespace

SuiteReport run_property_suite(const std::string& name, const GenConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw Error("unknown suite '" + name + "'");
  return Runner(name, cfg).run();
}

}  // namespace asimkit
