#include "asimkit/search.hpp"

#include <algorithm>
#include <memory>

#include "asimkit/error.hpp"
#include "asimkit/model_io.hpp"
#include "asimkit/parser.hpp"

namespace asimkit {

namespace {

// Total number of relation cells over a domain of size s.
std::size_t cell_count(const Vocabulary& vocab, int s) {
  std::size_t total = 0;
  for (const auto& [letter, arity] : vocab.letters()) {
    std::size_t c = 1;
    for (int i = 0; i < arity; ++i) c *= static_cast<std::size_t>(s);
    total += c;
  }
  return total;
}

// Model number `index` among the 2^cells models of size s; bit j is the j-th
// cell with letters in name order and tuples in lexicographic order.
std::shared_ptr<const FoModel> nth_model(const Vocabulary& vocab, int s, std::uint64_t index) {
  std::vector<std::string> names;
  for (int i = 0; i < s; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  auto m = std::make_shared<FoModel>(names, vocab);
  int bit = 0;
  for (const auto& [letter, arity] : vocab.letters()) {
    Tuple t(arity, 0);
    for (;;) {
      if ((index >> bit) & 1U) m->add(letter, t);
      ++bit;
      int i = arity;
      while (i > 0 && t[i - 1] == s - 1) t[--i] = 0;
      if (i == 0) break;
      ++t[i - 1];
    }
  }
  return m;
}

std::vector<EvalPoint> all_points(const std::shared_ptr<const FoModel>& m, int n) {
  std::vector<EvalPoint> out;
  const int s = m->size();
  for (Element a = 0; a < s; ++a) {
    Tuple t(n, 0);
    for (;;) {
      out.push_back(EvalPoint{m, a, t});
      int i = n;
      while (i > 0 && t[i - 1] == s - 1) t[--i] = 0;
      if (i == 0) break;
      ++t[i - 1];
    }
  }
  return out;
}

class Search {
 public:
  Search(const FoFormula& phi, const GenConfig& bounds, std::size_t budget, AtomMode mode)
      : phi_(phi),
        n_(point_arity_of(phi)),
        k_(degree(phi)),
        vocab_(vocabulary_of(phi)),
        compiled_(phi, point_vars(n_)),
        bounds_(bounds),
        budget_(budget),
        mode_(mode) {}

  SearchResult run() {
    for (int s = 1; s <= 2 && !done(); ++s) {
      const std::size_t cells = cell_count(vocab_, s);
      if (cells > 40) break;
      std::vector<std::pair<int, std::uint64_t>> models;
      for (int size = 1; size <= s; ++size) {
        const std::uint64_t count = std::uint64_t{1} << cell_count(vocab_, size);
        for (std::uint64_t i = 0; i < count; ++i) models.emplace_back(size, i);
      }
      // Pairs along anti-diagonals so that both sides vary early; pairs already
      // seen at a smaller size are skipped.
      const std::uint64_t total = models.size();
      for (std::uint64_t t = 0; t + 1 < 2 * total && !done(); ++t) {
        const std::uint64_t lo = t >= total ? t - total + 1 : 0;
        const std::uint64_t hi = std::min(t, total - 1);
        for (std::uint64_t i = lo; i <= hi && !done(); ++i) {
          const auto& a = models[i];
          const auto& b = models[t - i];
          if (a.first < s && b.first < s) continue;
          try_pair(nth_model(vocab_, a.first, a.second), nth_model(vocab_, b.first, b.second));
        }
      }
      if (s == 2 && !done()) result_.small_exhausted = true;
    }
    if (!done()) {
      GenConfig cfg = bounds_;
      cfg.validate();
      Generator gen(cfg);
      while (!done()) {
        auto m = std::make_shared<FoModel>(gen.fo_model(vocab_, gen.uniform(1, cfg.max_domain)));
        auto n = std::make_shared<FoModel>(gen.fo_model(vocab_, gen.uniform(1, cfg.max_domain)));
        const auto lp = all_points(m, n_);
        const auto rp = all_points(n, n_);
        const auto& l = lp[gen.uniform(0, static_cast<int>(lp.size()) - 1)];
        const auto& r = rp[gen.uniform(0, static_cast<int>(rp.size()) - 1)];
        try_case(l, r);
      }
    }
    return std::move(result_);
  }

 private:
  bool done() const { return result_.witness.has_value() || result_.cases >= budget_; }

  void try_pair(const std::shared_ptr<const FoModel>& m, const std::shared_ptr<const FoModel>& n) {
    const auto lp = all_points(m, n_);
    const auto rp = all_points(n, n_);
    for (const auto& l : lp) {
      for (const auto& r : rp) {
        if (done()) return;
        try_case(l, r);
      }
    }
  }

  void try_case(const EvalPoint& l, const EvalPoint& r) {
    const std::size_t index = result_.cases++;
    if (!compiled_.eval(l) || compiled_.eval(r)) return;
    auto rel = max_k_asimulation(l, r, k_, mode_);
    if (!rel) return;
    Witness w{phi_, l, r, k_, mode_, std::move(*rel), true, false, index};
    result_.witness = std::move(w);
  }

  FoFormula phi_;
  int n_;
  int k_;
  Vocabulary vocab_;
  CompiledFormula compiled_;
  GenConfig bounds_;
  std::size_t budget_;
  AtomMode mode_;
  SearchResult result_;
};

}  // namespace

int point_arity_of(const FoFormula& phi) {
  int n = 0;
  for (const auto& v : free_vars(phi)) {
    if (v == "x") continue;
    bool ok = v.size() >= 2 && v[0] == 'w' && v[1] != '0' &&
              std::all_of(v.begin() + 1, v.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (!ok || v.size() > 6) throw Error("free variable '" + v + "' is neither x nor w1, w2, ...");
    n = std::max(n, std::stoi(v.substr(1)));
  }
  return n;
}

SearchResult search_noninvariance(const FoFormula& phi, const GenConfig& bounds, std::size_t budget, AtomMode mode) {
  return Search(phi, bounds, budget, mode).run();
}

std::optional<Witness> find_noninvariance_witness(const FoFormula& phi, const GenConfig& bounds, std::size_t budget,
                                                  AtomMode mode) {
  return search_noninvariance(phi, bounds, budget, mode).witness;
}

bool replay(const Witness& w) {
  const int n = w.left.arity();
  if (w.right.arity() != n || point_arity_of(w.formula) > n) return false;
  if (w.relation.k != w.k || w.relation.n != n || w.relation.mode != w.mode) return false;
  if (!w.relation.contains(w.relation.seed())) return false;
  if (w.relation.seed_left.world != w.left.world || w.relation.seed_left.objects != w.left.objects ||
      w.relation.seed_right.world != w.right.world || w.relation.seed_right.objects != w.right.objects) {
    return false;
  }
  try {
    if (is_k_asimulation(w.relation, w.k)) return false;
  } catch (const RelationError&) {
    return false;
  }
  const auto vars = point_vars(n);
  return satisfies_at(w.left, w.formula, vars) == w.left_value &&
         satisfies_at(w.right, w.formula, vars) == w.right_value && w.left_value && !w.right_value;
}

namespace {

nlohmann::json state_to_json(const PairState& s, const FoModel& m, const FoModel& n) {
  const FoModel& l = s.left == Side::M ? m : n;
  const FoModel& r = s.left == Side::M ? n : m;
  nlohmann::json lo = nlohmann::json::array(), ro = nlohmann::json::array();
  for (Element e : s.left_objects) lo.push_back(l.name(e));
  for (Element e : s.right_objects) ro.push_back(r.name(e));
  return {{"left", s.left == Side::M ? "M" : "N"},
          {"m", s.hist_len},
          {"a", l.name(s.left_world)},
          {"b", lo},
          {"c", r.name(s.right_world)},
          {"d", ro}};
}

PairState state_from_json(const nlohmann::json& j, const FoModel& m, const FoModel& n) {
  PairState s;
  s.left = j.at("left").get<std::string>() == "M" ? Side::M : Side::N;
  const FoModel& l = s.left == Side::M ? m : n;
  const FoModel& r = s.left == Side::M ? n : m;
  s.hist_len = j.at("m").get<int>();
  s.left_world = l.element(j.at("a").get<std::string>());
  s.right_world = r.element(j.at("c").get<std::string>());
  for (const auto& e : j.at("b")) s.left_objects.push_back(l.element(e.get<std::string>()));
  for (const auto& e : j.at("d")) s.right_objects.push_back(r.element(e.get<std::string>()));
  return s;
}

}  // namespace

nlohmann::json witness_to_json(const Witness& w) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : w.relation.states) states.push_back(state_to_json(s, *w.left.model, *w.right.model));
  return {{"formula", to_string(w.formula)},
          {"k", w.k},
          {"atom_mode", atom_mode_name(w.mode)},
          {"M", fo_model_to_json(*w.left.model)},
          {"N", fo_model_to_json(*w.right.model)},
          {"left", w.left.to_string()},
          {"right", w.right.to_string()},
          {"left_value", w.left_value},
          {"right_value", w.right_value},
          {"case", w.case_index},
          {"relation", states}};
}

Witness witness_from_json(const nlohmann::json& j) {
  auto phi = parse_fo(j.at("formula").get<std::string>());
  auto m = std::make_shared<const FoModel>(fo_model_from_json(j.at("M")));
  auto n = std::make_shared<const FoModel>(fo_model_from_json(j.at("N")));
  Witness w{phi,
            EvalPoint::parse(m, j.at("left").get<std::string>()),
            EvalPoint::parse(n, j.at("right").get<std::string>()),
            j.at("k").get<int>(),
            parse_atom_mode(j.at("atom_mode").get<std::string>()),
            AsimRelation{},
            j.at("left_value").get<bool>(),
            j.at("right_value").get<bool>(),
            j.value("case", std::size_t{0})};
  w.relation.seed_left = w.left;
  w.relation.seed_right = w.right;
  w.relation.n = w.left.arity();
  w.relation.k = w.k;
  w.relation.mode = w.mode;
  for (const auto& s : j.at("relation")) w.relation.states.push_back(state_from_json(s, *m, *n));
  std::sort(w.relation.states.begin(), w.relation.states.end());
  w.relation.states.erase(std::unique(w.relation.states.begin(), w.relation.states.end()), w.relation.states.end());
  return w;
}

}  // namespace asimkit
