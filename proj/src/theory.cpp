#include "asimkit/theory.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "asimkit/error.hpp"
#include "asimkit/translation.hpp"

namespace asimkit {

namespace {

constexpr std::size_t kMaxPoints = std::size_t{1} << 20;
constexpr std::size_t kCompareTextBelow = 64;

std::size_t power(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > kMaxPoints) return kMaxPoints + 1;
    r *= base;
  }
  return r;
}

Variable wvar(int i) { return "w" + std::to_string(i); }

bool better_witness(const IntFormula& a, const IntFormula& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.size() >= kCompareTextBelow) return false;
  return to_string(a) < to_string(b);
}

}  // namespace

DefinableFamily::DefinableFamily(std::shared_ptr<const FoModel> m, std::shared_ptr<const FoModel> n, int budget,
                                 FamilyOptions options)
    : m_(std::move(m)), n_(std::move(n)), budget_(budget), options_(options) {
  if (!m_ || !n_) throw FamilyError("family needs two models");
  if (budget_ < 0) throw FamilyError("budget must be nonnegative");
  if (m_->vocab().letters() != n_->vocab().letters()) throw FamilyError("the two models must share a vocabulary");
  for (const auto& [letter, arity] : m_->vocab().letters()) {
    (void)arity;
    if (!is_reserved_letter(letter) && !intuitionistic_letter(letter)) {
      throw VocabularyError("letter '" + letter + "' is not the image of an intuitionistic letter");
    }
  }
  for (int l = 0; l <= budget_; ++l) {
    if (power(m_->size(), l + 1) + power(n_->size(), l + 1) > kMaxPoints) {
      throw FamilyError("point space at arity " + std::to_string(l) + " is too large");
    }
  }
  build();
}

std::size_t DefinableFamily::point_count(int arity) const {
  return power(m_->size(), arity + 1) + power(n_->size(), arity + 1);
}

std::size_t DefinableFamily::point_index(Side side, Element world, const Tuple& objects) const {
  const int l = static_cast<int>(objects.size());
  const std::size_t s = model(side).size();
  std::size_t idx = static_cast<std::size_t>(world);
  for (Element e : objects) idx = idx * s + static_cast<std::size_t>(e);
  return (side == Side::N ? power(m_->size(), l + 1) : 0) + idx;
}

Side DefinableFamily::side_of(const EvalPoint& pt) const {
  if (pt.model == m_) return Side::M;
  if (pt.model == n_) return Side::N;
  if (*pt.model == *m_) return Side::M;
  if (*pt.model == *n_) return Side::N;
  throw FamilyError("evaluation point does not belong to either model of the family");
}

std::size_t DefinableFamily::point_index(const EvalPoint& pt) const {
  return point_index(side_of(pt), pt.world, pt.objects);
}

EvalPoint DefinableFamily::point(int arity, std::size_t index) const {
  const std::size_t m_points = power(m_->size(), arity + 1);
  const Side side = index < m_points ? Side::M : Side::N;
  std::size_t rest = side == Side::M ? index : index - m_points;
  const std::size_t s = model(side).size();
  EvalPoint pt;
  pt.model = model_ptr(side);
  pt.objects.assign(arity, 0);
  for (int i = arity - 1; i >= 0; --i) {
    pt.objects[i] = static_cast<Element>(rest % s);
    rest /= s;
  }
  pt.world = static_cast<Element>(rest);
  return pt;
}

std::string DefinableFamily::point_name(int arity, std::size_t index) const {
  const bool left = index < power(m_->size(), arity + 1);
  return std::string(left ? "M:" : "N:") + point(arity, index).to_string();
}

const DefinableFamily::Layer& DefinableFamily::layer(int arity, int grade) const {
  if (!exact(arity, grade)) {
    throw FamilyError("family too small: arity " + std::to_string(arity) + " at grade " + std::to_string(grade) +
                      " needs budget " + std::to_string(arity + grade) + ", have " + std::to_string(budget_));
  }
  return layers_[arity][grade];
}

const std::vector<SemanticValue>& DefinableFamily::generators(int arity, int grade) const {
  return layer(arity, grade).gens;
}

std::optional<PointSet> DefinableFamily::principal(int arity, int grade, std::size_t point) const {
  const Layer& ly = layer(arity, grade);
  if (!ly.covered.at(point)) return std::nullopt;
  return ly.up[point];
}

IntFormula DefinableFamily::principal_witness(int arity, int grade, std::size_t point) const {
  const Layer& ly = layer(arity, grade);
  if (!ly.covered.at(point)) return IntFormula::top();
  return *ly.up_witness[point];
}

bool DefinableFamily::leq(int arity, int grade, std::size_t p, std::size_t q) const {
  const Layer& ly = layer(arity, grade);
  if (!ly.covered.at(p)) return true;
  return ly.up[p].test(q);
}

bool DefinableFamily::same_order(int arity, int grade, int other) const {
  const Layer& a = layer(arity, grade);
  const Layer& b = layer(arity, other);
  if (a.covered != b.covered) return false;
  for (std::size_t p = 0; p < a.covered.size(); ++p) {
    if (a.covered[p] && !(a.up[p] == b.up[p])) return false;
  }
  return true;
}

bool DefinableFamily::is_value(int arity, int grade, const PointSet& set) const {
  const Layer& ly = layer(arity, grade);
  if (set.universe() != point_count(arity)) return false;
  bool ok = true;
  set.for_each([&](std::size_t p) {
    if (ok && (!ly.covered[p] || !ly.up[p].subset_of(set))) ok = false;
  });
  return ok;
}

std::vector<SemanticValue> DefinableFamily::values(int arity, int grade) const {
  const Layer& ly = layer(arity, grade);
  const std::size_t n = point_count(arity);
  // distinct principal up-sets, each with its witness
  std::vector<std::pair<PointSet, IntFormula>> cones;
  {
    std::unordered_map<PointSet, int, PointSetHash> seen;
    for (std::size_t p = 0; p < n; ++p) {
      if (!ly.covered[p]) continue;
      if (seen.emplace(ly.up[p], static_cast<int>(cones.size())).second) cones.emplace_back(ly.up[p], *ly.up_witness[p]);
    }
  }
  std::unordered_map<PointSet, std::size_t, PointSetHash> index;
  std::vector<SemanticValue> out;
  auto offer = [&](PointSet set, IntFormula w) {
    auto it = index.find(set);
    if (it == index.end()) {
      if (out.size() >= options_.value_cap) {
        throw FamilyError("more than " + std::to_string(options_.value_cap) + " values at arity " +
                          std::to_string(arity) + ", grade " + std::to_string(grade));
      }
      index.emplace(set, out.size());
      out.push_back({arity, grade, std::move(set), std::move(w)});
    } else if (better_witness(w, out[it->second].witness)) {
      out[it->second].witness = std::move(w);
    }
  };
  offer(PointSet(n), IntFormula::bottom());
  for (const auto& g : ly.gens) offer(g.members, g.witness);
  for (const auto& [cone, w] : cones) {
    const std::size_t existing = out.size();
    for (std::size_t i = 0; i < existing; ++i) {
      if (cone.subset_of(out[i].members)) continue;
      const IntFormula joined =
          out[i].members.empty() ? w : IntFormula::disj(out[i].witness, w);
      offer(out[i].members | cone, joined);
    }
  }
  std::sort(out.begin(), out.end(), [](const SemanticValue& a, const SemanticValue& b) {
    if (a.witness.size() != b.witness.size()) return a.witness.size() < b.witness.size();
    return a.members < b.members;
  });
  return out;
}

PointSet DefinableFamily::value_of(const IntFormula& i, int arity) const {
  const CompiledFormula compiled(standard_translation(i, "x"), point_vars(arity));
  const std::size_t n = point_count(arity);
  PointSet out(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (compiled.eval(point(arity, p))) out.set(p);
  }
  return out;
}

PointSet DefinableFamily::up_closure(const Layer& ly, const PointSet& set) const {
  PointSet out(set.universe());
  set.for_each([&](std::size_t p) { out |= ly.up[p]; });
  return out;
}

IntFormula DefinableFamily::union_witness(const Layer& ly, const PointSet& set) const {
  PointSet acc(set.universe());
  std::vector<IntFormula> parts;
  set.for_each([&](std::size_t p) {
    if (acc.test(p)) return;
    acc |= ly.up[p];
    parts.push_back(*ly.up_witness[p]);
  });
  return disjunction_of(parts);
}

void DefinableFamily::finish_layer(Layer& ly, int arity) {
  const std::size_t n = point_count(arity);
  ly.covered.assign(n, 0);
  ly.up.assign(n, PointSet());
  ly.up_witness.assign(n, std::nullopt);
  for (const auto& g : ly.gens) {
    g.members.for_each([&](std::size_t p) {
      if (!ly.covered[p]) {
        ly.covered[p] = 1;
        ly.up[p] = g.members;
      } else {
        ly.up[p] &= g.members;
      }
    });
  }
  // Greedy witnesses, shared between points with the same principal up-set.
  std::vector<std::size_t> order(ly.gens.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ca = ly.gens[a].members.count(), cb = ly.gens[b].members.count();
    if (ca != cb) return ca < cb;
    return ly.gens[a].witness.size() < ly.gens[b].witness.size();
  });
  std::unordered_map<PointSet, IntFormula, PointSetHash> memo;
  for (std::size_t p = 0; p < n; ++p) {
    if (!ly.covered[p]) continue;
    auto it = memo.find(ly.up[p]);
    if (it != memo.end()) {
      ly.up_witness[p] = it->second;
      continue;
    }
    if (ly.up[p].count() == n) {
      memo.emplace(ly.up[p], IntFormula::top());
      ly.up_witness[p] = IntFormula::top();
      continue;
    }
    std::optional<PointSet> cur;
    std::vector<IntFormula> parts;
    for (std::size_t gi : order) {
      const auto& g = ly.gens[gi];
      if (!g.members.test(p)) continue;
      if (cur && cur->subset_of(g.members)) continue;
      if (cur) {
        *cur &= g.members;
      } else {
        cur = g.members;
      }
      parts.push_back(g.witness);
      if (*cur == ly.up[p]) break;
    }
    IntFormula w = conjunction_of(parts);
    memo.emplace(ly.up[p], w);
    ly.up_witness[p] = w;
  }
}

DefinableFamily::Layer DefinableFamily::make_layer(int l, int g) {
  Layer ly;
  const std::size_t n = point_count(l);
  std::unordered_map<PointSet, std::size_t, PointSetHash> index;
  auto offer = [&](PointSet set, IntFormula w, int grade) {
    auto it = index.find(set);
    if (it == index.end()) {
      if (ly.gens.size() >= options_.value_cap) {
        throw FamilyError("more than " + std::to_string(options_.value_cap) + " generating values at arity " +
                          std::to_string(l) + ", grade " + std::to_string(g));
      }
      index.emplace(set, ly.gens.size());
      ly.gens.push_back({l, grade, std::move(set), std::move(w)});
    } else {
      auto& old = ly.gens[it->second];
      if (better_witness(w, old.witness)) {
        old.witness = std::move(w);
        old.grade = std::min(old.grade, grade);
      }
    }
  };
  const FoModel* models[2] = {m_.get(), n_.get()};
  auto for_points = [&](auto&& f) {
    for (int side = 0; side < 2; ++side) {
      const std::size_t s = models[side]->size();
      const std::size_t stride = power(s, l);
      const std::size_t off = side == 0 ? 0 : power(m_->size(), l + 1);
      for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t t = 0; t < stride; ++t) f(side, static_cast<Element>(a), t, off, stride, s);
      }
    }
  };

  if (g == 0) {
    offer(PointSet(n), IntFormula::bottom(), 0);
    int letter_id = 0;
    for (const auto& [letter, arity] : m_->vocab().letters()) {
      const int id = letter_id++;
      if (is_reserved_letter(letter)) continue;
      const int slots = arity - 1;
      const std::string name = *intuitionistic_letter(letter);
      std::vector<std::vector<int>> patterns;
      if (options_.mode == AtomMode::Literal) {
        if (slots == l) {
          std::vector<int> idx(slots);
          for (int i = 0; i < slots; ++i) idx[i] = i;
          patterns.push_back(idx);
        }
      } else if (slots == 0 || l > 0) {
        std::vector<int> idx(slots, 0);
        for (;;) {
          patterns.push_back(idx);
          int i = slots;
          while (i > 0 && idx[i - 1] == l - 1) idx[--i] = 0;
          if (i == 0) break;
          ++idx[i - 1];
        }
      }
      for (const auto& idx : patterns) {
        PointSet set(n);
        std::vector<Element> args(arity);
        for_points([&](int side, Element a, std::size_t t, std::size_t off, std::size_t stride, std::size_t s) {
          Tuple objs(l);
          std::size_t rest = t;
          for (int i = l - 1; i >= 0; --i) {
            objs[i] = static_cast<Element>(rest % s);
            rest /= s;
          }
          args[0] = a;
          for (int i = 0; i < slots; ++i) args[i + 1] = objs[idx[i]];
          if (models[side]->holds(id, args.data())) set.set(off + a * stride + t);
        });
        std::vector<Variable> vars;
        for (int i : idx) vars.push_back(wvar(i + 1));
        offer(std::move(set), IntFormula::atom(name, vars), 0);
      }
    }
    return ly;
  }

  const Layer& prev = layers_[l][g - 1];
  for (const auto& v : prev.gens) offer(v.members, v.witness, v.grade);
  offer(PointSet::full(n), IntFormula::top(), 1);

  // Implication: for each principal up-set Q and point p, the least value of
  // the form Q -> V containing p takes V = up-closure of (R-successors of p) in Q.
  {
    std::unordered_map<PointSet, std::size_t, PointSetHash> classes;
    std::vector<std::size_t> reps;
    for (std::size_t q = 0; q < n; ++q) {
      if (prev.covered[q] && classes.emplace(prev.up[q], reps.size()).second) reps.push_back(q);
    }
    for (std::size_t q : reps) {
      const PointSet& cone = prev.up[q];
      std::unordered_map<PointSet, char, PointSetHash> done;
      for_points([&](int side, Element a, std::size_t t, std::size_t off, std::size_t stride, std::size_t) {
        PointSet s(n);
        for (Element y : models[side]->r_succ(a)) {
          const std::size_t r = off + y * stride + t;
          if (cone.test(r)) s.set(r);
        }
        if (!done.emplace(s, 1).second) return;
        const PointSet target = up_closure(prev, s);
        PointSet value(n);
        for_points([&](int side2, Element a2, std::size_t t2, std::size_t off2, std::size_t stride2, std::size_t) {
          for (Element y : models[side2]->r_succ(a2)) {
            const std::size_t r = off2 + y * stride2 + t2;
            if (cone.test(r) && !target.test(r)) return;
          }
          value.set(off2 + a2 * stride2 + t2);
        });
        offer(std::move(value), IntFormula::implies(*prev.up_witness[q], union_witness(prev, s)), g);
      });
    }
  }

  const Variable bound = wvar(l + 1);
  // Existential step: exists distributes over unions, so principal up-sets suffice.
  {
    const Layer& next = layers_[l + 1][g - 1];
    const std::size_t n1 = point_count(l + 1);
    std::unordered_map<PointSet, char, PointSetHash> seen;
    for (std::size_t q = 0; q < n1; ++q) {
      if (!next.covered[q] || !seen.emplace(next.up[q], 1).second) continue;
      const PointSet& cone = next.up[q];
      PointSet value(n);
      for_points([&](int side, Element a, std::size_t t, std::size_t, std::size_t stride, std::size_t s) {
        const std::size_t off1 = side == 0 ? 0 : power(m_->size(), l + 2);
        const std::size_t stride1 = stride * s;
        for (Element b : models[side]->e_succ(a)) {
          if (cone.test(off1 + a * stride1 + t * s + b)) {
            const std::size_t off = side == 0 ? 0 : power(m_->size(), l + 1);
            value.set(off + a * stride + t);
            return;
          }
        }
      });
      offer(std::move(value), IntFormula::exists(bound, *next.up_witness[q]), g);
    }
  }

  // Universal step: the least value forall V containing p takes V = up-closure
  // of the (R;E)-extensions of p.
  if (g >= 2) {
    const Layer& next = layers_[l + 1][g - 2];
    const std::size_t n1 = point_count(l + 1);
    auto extensions = [&](int side, Element a, std::size_t t, std::size_t stride, std::size_t s) {
      const std::size_t off1 = side == 0 ? 0 : power(m_->size(), l + 2);
      const std::size_t stride1 = stride * s;
      PointSet ext(n1);
      for (Element y : models[side]->r_succ(a)) {
        for (Element b : models[side]->e_succ(y)) ext.set(off1 + y * stride1 + t * s + b);
      }
      return ext;
    };
    std::unordered_map<PointSet, char, PointSetHash> done;
    for_points([&](int side, Element a, std::size_t t, std::size_t, std::size_t stride, std::size_t s) {
      const PointSet ext = extensions(side, a, t, stride, s);
      bool covered = true;
      ext.for_each([&](std::size_t r) { covered = covered && next.covered[r]; });
      if (!covered) return;
      const PointSet target = up_closure(next, ext);
      if (!done.emplace(target, 1).second) return;
      PointSet value(n);
      for_points([&](int side2, Element a2, std::size_t t2, std::size_t off2, std::size_t stride2, std::size_t s2) {
        if (extensions(side2, a2, t2, stride2, s2).subset_of(target)) value.set(off2 + a2 * stride2 + t2);
      });
      offer(std::move(value), IntFormula::forall(bound, union_witness(next, ext)), g);
    });
  }
  return ly;
}

void DefinableFamily::build() {
  layers_.assign(budget_ + 1, {});
  for (int l = 0; l <= budget_; ++l) layers_[l].resize(budget_ - l + 1);
  for (int g = 0; g <= budget_; ++g) {
    for (int l = 0; l + g <= budget_; ++l) {
      Layer ly = make_layer(l, g);
      finish_layer(ly, l);
      layers_[l][g] = std::move(ly);
    }
  }
}

bool theory_leq(const EvalPoint& pt_l, const EvalPoint& pt_r, int k, const DefinableFamily& family) {
  if (pt_l.arity() != pt_r.arity()) throw FamilyError("points of different arity");
  const int n = pt_l.arity();
  if (!family.exact(n, k)) {
    throw FamilyError("family too small for arity " + std::to_string(n) + " at grade " + std::to_string(k));
  }
  return family.leq(n, k, family.point_index(pt_l), family.point_index(pt_r));
}

FoFormula complete_conjunction(const EvalPoint& pt, int k, const DefinableFamily& family) {
  return standard_translation(family.principal_witness(pt.arity(), k, family.point_index(pt)), "x");
}

std::optional<AsimRelation> asimulation_from_theory(const EvalPoint& pt_m, const EvalPoint& pt_n, int k,
                                                    FamilyOptions options) {
  check_compatible(pt_m, pt_n);
  if (k < 0) throw FamilyError("k must be nonnegative");
  const int n = pt_m.arity();
  const int top = n + k;
  const DefinableFamily family(pt_m.model, pt_n.model, top + 2, options);
  if (!family.leq(n, k + 2, family.point_index(Side::M, pt_m.world, pt_m.objects),
                  family.point_index(Side::N, pt_n.world, pt_n.objects))) {
    return std::nullopt;
  }
  AsimRelation rel;
  rel.seed_left = pt_m;
  rel.seed_right = pt_n;
  rel.n = n;
  rel.k = k;
  rel.mode = options.mode;
  for (Side side : {Side::M, Side::N}) {
    const FoModel& lm = family.model(side);
    const FoModel& rm = family.model(other(side));
    for (int l = 0; l <= top; ++l) {
      const std::size_t lcount = power(lm.size(), l);
      const std::size_t rcount = power(rm.size(), l);
      auto unpack = [l](std::size_t code, std::size_t s) {
        Tuple t(l);
        for (int i = l - 1; i >= 0; --i) {
          t[i] = static_cast<Element>(code % s);
          code /= s;
        }
        return t;
      };
      for (Element a = 0; a < lm.size(); ++a) {
        for (std::size_t bt = 0; bt < lcount; ++bt) {
          const Tuple b = unpack(bt, lm.size());
          const std::size_t p = family.point_index(side, a, b);
          for (Element c = 0; c < rm.size(); ++c) {
            for (std::size_t dt = 0; dt < rcount; ++dt) {
              const Tuple d = unpack(dt, rm.size());
              const std::size_t q = family.point_index(other(side), c, d);
              for (int m = 0; m + l <= top; ++m) {
                if (family.leq(l, top + 2 - m - l, p, q)) rel.states.push_back(PairState{side, m, a, c, b, d});
              }
            }
          }
        }
      }
    }
  }
  std::sort(rel.states.begin(), rel.states.end());
  return rel;
}

namespace {

bool stable_upto(const DefinableFamily& family, int max_arity) {
  const int b = family.budget();
  for (int l = 0; l <= max_arity; ++l) {
    const int g = b - l;
    if (g < 2) return false;
    if (!family.same_order(l, g, g - 1) || !family.same_order(l, g - 1, g - 2)) return false;
  }
  return true;
}

}  // namespace

Saturation saturation_grade(std::shared_ptr<const FoModel> m, std::shared_ptr<const FoModel> n, int max_arity,
                            int max_budget, FamilyOptions options) {
  for (int b = max_arity + 2; b <= max_budget; ++b) {
    const DefinableFamily family(m, n, b, options);
    if (stable_upto(family, max_arity)) return Saturation{b - max_arity - 2, b};
  }
  throw FamilyError("graded orders did not settle within budget " + std::to_string(max_budget));
}

TheoryOrderResult theory_order_asimulation(const EvalPoint& pt_m, const EvalPoint& pt_n, int max_budget,
                                           FamilyOptions options) {
  check_compatible(pt_m, pt_n);
  options.mode = AtomMode::Full;
  const auto reachable = reachable_quotient_states(pt_m, pt_n);
  TheoryOrderResult result;
  for (const auto& s : reachable) result.max_pairs = std::max(result.max_pairs, static_cast<int>(s.pairs.size()));
  const int max_arity = result.max_pairs;
  for (int b = max_arity + 2; b <= max_budget; ++b) {
    const DefinableFamily family(pt_m.model, pt_n.model, b, options);
    if (!stable_upto(family, max_arity)) continue;
    result.budget = b;
    result.grade = b - max_arity - 2;
    QuotientRelation rel;
    rel.seed_left = pt_m;
    rel.seed_right = pt_n;
    for (const auto& s : reachable) {
      Tuple lb, rd;
      for (auto [x, y] : s.pairs) {
        lb.push_back(x);
        rd.push_back(y);
      }
      const int l = static_cast<int>(lb.size());
      if (family.leq(l, b - l, family.point_index(s.left, s.left_world, lb),
                     family.point_index(other(s.left), s.right_world, rd))) {
        rel.states.push_back(s);
      }
    }
    if (rel.contains(rel.seed())) result.relation = std::move(rel);
    return result;
  }
  throw FamilyError("graded orders did not settle within budget " + std::to_string(max_budget));
}

}  // namespace asimkit
