#include <algorithm>
#include <set>

#include "asimkit/asimulation.hpp"
#include "asimkit/error.hpp"
#include "atoms.hpp"
#include "gfp.hpp"

namespace asimkit {

namespace {

struct QKey {
  std::uint64_t mask = 0;
  std::uint32_t head = 0;  // side | a << 1 | c << 9
  bool operator==(const QKey& o) const { return mask == o.mask && head == o.head; }
};

struct QKeyHash {
  std::size_t operator()(const QKey& k) const {
    return std::hash<std::uint64_t>()(k.mask * 0x9E3779B97F4A7C15ULL ^ k.head);
  }
};

class QuotientSpace {
 public:
  QuotientSpace(const EvalPoint& pt_m, const EvalPoint& pt_n) : size_{pt_m.model->size(), pt_n.model->size()} {
    if (size_[0] * size_[1] > 64) throw RelationError("quotient search needs |D(M)| * |D(N)| <= 64");
  }

  int width(Side left) const { return size_[1 - static_cast<int>(left)]; }

  std::uint64_t bit(Side left, Element b, Element d) const {
    return std::uint64_t{1} << (b * width(left) + d);
  }

  std::uint64_t transpose(Side left, std::uint64_t mask) const {
    std::uint64_t out = 0;
    const int w = width(left);
    for (int i = 0; i < 64; ++i) {
      if (mask >> i & 1) out |= bit(other(left), i % w, i / w);
    }
    return out;
  }

  QKey key(Side left, Element a, Element c, std::uint64_t mask) const {
    return QKey{mask, static_cast<std::uint32_t>(static_cast<int>(left) | a << 1 | c << 9)};
  }

  QuotientState decode(const QKey& k) const {
    QuotientState s;
    s.left = static_cast<Side>(k.head & 1);
    s.left_world = static_cast<Element>(k.head >> 1 & 0xFF);
    s.right_world = static_cast<Element>(k.head >> 9 & 0xFF);
    const int w = width(s.left);
    for (int i = 0; i < 64; ++i) {
      if (k.mask >> i & 1) s.pairs.emplace_back(i / w, i % w);
    }
    return s;
  }

  QKey encode(const QuotientState& s) const {
    std::uint64_t mask = 0;
    for (auto [b, d] : s.pairs) mask |= bit(s.left, b, d);
    return key(s.left, s.left_world, s.right_world, mask);
  }

 private:
  int size_[2];
};

void split(const std::vector<std::pair<Element, Element>>& pairs, Tuple& b, Tuple& d) {
  b.clear();
  d.clear();
  for (auto [x, y] : pairs) {
    b.push_back(x);
    d.push_back(y);
  }
}

// Explores from the seed; with `prune`, states failing the atom test are not expanded.
void explore(detail::Gfp<QKey, QKeyHash>& g, const QuotientSpace& space, const EvalPoint& pt_m, const EvalPoint& pt_n,
             bool prune) {
  const FoModel* models[2] = {pt_m.model.get(), pt_n.model.get()};
  const detail::AtomTest atoms(pt_m.model->vocab());
  Tuple b, d;
  auto expand = [&](int id, const QKey& key) {
    const QuotientState s = space.decode(key);
    const Side side = s.left;
    const FoModel& lm = *models[static_cast<int>(side)];
    const FoModel& rm = *models[1 - static_cast<int>(side)];
    const Element a = s.left_world;
    const Element c = s.right_world;
    if (prune) {
      split(s.pairs, b, d);
      if (atoms.failure(AtomMode::Full, lm, a, b.data(), rm, c, d.data(), static_cast<int>(b.size()))) return false;
    }
    const std::uint64_t mask = key.mask;
    const std::uint64_t flipped = space.transpose(side, mask);
    for (Element c2 : rm.r_succ(c)) {
      g.begin_demand(id);
      for (Element a2 : lm.r_succ(a)) {
        g.add_alternative(g.intern(space.key(other(side), c2, a2, flipped)), g.intern(space.key(side, a2, c2, mask)));
      }
    }
    for (Element b2 : lm.e_succ(a)) {
      g.begin_demand(id);
      for (Element d2 : rm.e_succ(c)) {
        g.add_alternative(g.intern(space.key(side, a, c, mask | space.bit(side, b2, d2))));
      }
    }
    for (Element c2 : rm.r_succ(c)) {
      for (Element d2 : rm.e_succ(c2)) {
        g.begin_demand(id);
        for (Element a2 : lm.r_succ(a)) {
          for (Element b2 : lm.e_succ(a2)) {
            g.add_alternative(g.intern(space.key(side, a2, c2, mask | space.bit(side, b2, d2))));
          }
        }
      }
    }
    return true;
  };
  std::uint64_t seed_mask = 0;
  for (int i = 0; i < pt_m.arity(); ++i) seed_mask |= space.bit(Side::M, pt_m.objects[i], pt_n.objects[i]);
  g.explore(space.key(Side::M, pt_m.world, pt_n.world, seed_mask), expand);
}

std::vector<std::pair<Element, Element>> with_pair(std::vector<std::pair<Element, Element>> pairs, Element b,
                                                   Element d) {
  const std::pair<Element, Element> p{b, d};
  auto pos = std::lower_bound(pairs.begin(), pairs.end(), p);
  if (pos == pairs.end() || *pos != p) pairs.insert(pos, p);
  return pairs;
}

std::vector<std::pair<Element, Element>> swapped(const std::vector<std::pair<Element, Element>>& pairs) {
  std::vector<std::pair<Element, Element>> out;
  for (auto [b, d] : pairs) out.emplace_back(d, b);
  std::sort(out.begin(), out.end());
  return out;
}

std::string pairs_text(const std::vector<std::pair<Element, Element>>& pairs, const FoModel& left,
                       const FoModel& right) {
  std::string out = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out += (i ? "," : "") + std::string("(") + left.name(pairs[i].first) + "," + right.name(pairs[i].second) + ")";
  }
  return out + "}";
}

}  // namespace

QuotientState QuotientRelation::seed() const {
  QuotientState s{Side::M, seed_left.world, seed_right.world, {}};
  for (int i = 0; i < seed_left.arity(); ++i) s.pairs = with_pair(s.pairs, seed_left.objects[i], seed_right.objects[i]);
  return s;
}

bool QuotientRelation::contains(const QuotientState& s) const {
  return std::binary_search(states.begin(), states.end(), s);
}

std::string to_string(const QuotientState& s, const FoModel& left, const FoModel& right) {
  return std::string(s.left == Side::M ? "M>N " : "N>M ") + left.name(s.left_world) + " | " +
         right.name(s.right_world) + " " + pairs_text(s.pairs, left, right);
}

std::string to_string(const QuotientViolation& v, const QuotientRelation& a) {
  return std::string(condition_name(v.condition)) + " fails at " +
         to_string(v.state, a.model(v.state.left), a.model(other(v.state.left))) +
         (v.detail.empty() ? "" : ": " + v.detail);
}

std::optional<QuotientViolation> is_asimulation_quotient(const QuotientRelation& a) {
  check_compatible(a.seed_left, a.seed_right);
  std::set<QuotientState> members;
  for (const auto& s : a.states) {
    const FoModel& l = a.model(s.left);
    const FoModel& r = a.model(other(s.left));
    auto in = [](const FoModel& m, Element e) { return e >= 0 && e < m.size(); };
    bool ok = in(l, s.left_world) && in(r, s.right_world) && std::is_sorted(s.pairs.begin(), s.pairs.end()) &&
              std::adjacent_find(s.pairs.begin(), s.pairs.end()) == s.pairs.end();
    for (auto [b, d] : s.pairs) ok = ok && in(l, b) && in(r, d);
    if (!ok) throw RelationError("malformed quotient state");
    members.insert(s);
  }
  if (!members.count(a.seed())) return QuotientViolation{a.seed(), Condition::MissingSeed, ""};

  const detail::AtomTest atoms(a.seed_left.model->vocab());
  Tuple b, d;
  for (const auto& s : members) {
    const FoModel& lm = a.model(s.left);
    const FoModel& rm = a.model(other(s.left));
    split(s.pairs, b, d);
    if (auto f = atoms.failure(AtomMode::Full, lm, s.left_world, b.data(), rm, s.right_world, d.data(),
                               static_cast<int>(b.size()))) {
      return QuotientViolation{s, Condition::Atoms, *f};
    }
    const auto flipped = swapped(s.pairs);
    for (Element c2 : rm.r_succ(s.right_world)) {
      bool found = false;
      for (Element a2 : lm.r_succ(s.left_world)) {
        if (members.count(QuotientState{other(s.left), c2, a2, flipped}) &&
            members.count(QuotientState{s.left, a2, c2, s.pairs})) {
          found = true;
          break;
        }
      }
      if (!found) return QuotientViolation{s, Condition::RStep, "c''=" + rm.name(c2)};
    }
    for (Element b2 : lm.e_succ(s.left_world)) {
      bool found = false;
      for (Element d2 : rm.e_succ(s.right_world)) {
        if (members.count(QuotientState{s.left, s.left_world, s.right_world, with_pair(s.pairs, b2, d2)})) {
          found = true;
          break;
        }
      }
      if (!found) return QuotientViolation{s, Condition::EStep, "b''=" + lm.name(b2)};
    }
    for (Element c2 : rm.r_succ(s.right_world)) {
      for (Element d2 : rm.e_succ(c2)) {
        bool found = false;
        for (Element a2 : lm.r_succ(s.left_world)) {
          for (Element b2 : lm.e_succ(a2)) {
            if (members.count(QuotientState{s.left, a2, c2, with_pair(s.pairs, b2, d2)})) {
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (!found) return QuotientViolation{s, Condition::REStep, "c''=" + rm.name(c2) + ", d''=" + rm.name(d2)};
      }
    }
  }
  return std::nullopt;
}

std::optional<QuotientRelation> max_asimulation_quotient(const EvalPoint& pt_m, const EvalPoint& pt_n,
                                                         std::size_t state_cap) {
  check_compatible(pt_m, pt_n);
  const QuotientSpace space(pt_m, pt_n);
  detail::Gfp<QKey, QKeyHash> g(state_cap);
  explore(g, space, pt_m, pt_n, true);
  g.solve();
  if (!g.alive(0)) return std::nullopt;
  QuotientRelation rel;
  rel.seed_left = pt_m;
  rel.seed_right = pt_n;
  for (std::size_t id = 0; id < g.size(); ++id) {
    if (g.alive(static_cast<int>(id))) rel.states.push_back(space.decode(g.key(static_cast<int>(id))));
  }
  std::sort(rel.states.begin(), rel.states.end());
  return rel;
}

std::vector<QuotientState> reachable_quotient_states(const EvalPoint& pt_m, const EvalPoint& pt_n,
                                                     std::size_t state_cap) {
  check_compatible(pt_m, pt_n);
  const QuotientSpace space(pt_m, pt_n);
  detail::Gfp<QKey, QKeyHash> g(state_cap);
  explore(g, space, pt_m, pt_n, false);
  std::vector<QuotientState> out;
  for (std::size_t id = 0; id < g.size(); ++id) out.push_back(space.decode(g.key(static_cast<int>(id))));
  std::sort(out.begin(), out.end());
  return out;
}

AsimRelation lift_to_k(const QuotientRelation& a, int k) {
  if (k < 0) throw RelationError("k must be nonnegative");
  if (auto v = is_asimulation_quotient(a)) {
    throw RelationError("input is not an asimulation: " + to_string(*v, a));
  }
  AsimRelation out;
  out.seed_left = a.seed_left;
  out.seed_right = a.seed_right;
  out.n = a.seed_left.arity();
  out.k = k;
  out.mode = AtomMode::Full;
  const int budget = out.n + k;
  std::vector<int> idx;
  for (const auto& q : a.states) {
    const int s = static_cast<int>(q.pairs.size());
    for (int l = s; l <= budget; ++l) {
      if (s == 0 && l > 0) break;
      // every listing of length l that uses each pair at least once
      idx.assign(l, 0);
      for (;;) {
        std::vector<bool> used(s, false);
        int distinct = 0;
        for (int i : idx) {
          if (!used[i]) {
            used[i] = true;
            ++distinct;
          }
        }
        if (distinct == s) {
          PairState p{q.left, 0, q.left_world, q.right_world, {}, {}};
          for (int i : idx) {
            p.left_objects.push_back(q.pairs[i].first);
            p.right_objects.push_back(q.pairs[i].second);
          }
          for (int m = 0; m + l <= budget; ++m) {
            p.hist_len = m;
            out.states.push_back(p);
          }
        }
        int i = l;
        while (i > 0 && idx[i - 1] == s - 1) idx[--i] = 0;
        if (i == 0) break;
        ++idx[i - 1];
      }
    }
  }
  std::sort(out.states.begin(), out.states.end());
  out.states.erase(std::unique(out.states.begin(), out.states.end()), out.states.end());
  return out;
}

}  // namespace asimkit
