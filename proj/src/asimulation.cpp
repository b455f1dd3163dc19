#include "asimkit/asimulation.hpp"

#include <algorithm>
#include <set>

#include "asimkit/error.hpp"
#include "atoms.hpp"
#include "gfp.hpp"

namespace asimkit {

namespace detail {

AtomTest::AtomTest(const Vocabulary& vocab) {
  int id = 0;
  for (const auto& [letter, arity] : vocab.letters()) {
    if (!is_reserved_letter(letter)) letters_.push_back({id, arity, letter});
    ++id;
  }
}

std::optional<std::string> AtomTest::failure(AtomMode mode, const FoModel& left, Element a, const Element* b,
                                             const FoModel& right, Element c, const Element* d, int l) const {
  std::vector<Element> la, ra;
  std::vector<int> idx;
  for (const Letter& p : letters_) {
    const int slots = p.arity - 1;
    if (mode == AtomMode::Literal && slots != l) continue;
    if (slots > 0 && l == 0) continue;
    la.assign(p.arity, 0);
    ra.assign(p.arity, 0);
    la[0] = a;
    ra[0] = c;
    idx.assign(slots, 0);
    if (mode == AtomMode::Literal) {
      for (int i = 0; i < slots; ++i) idx[i] = i;
    }
    for (;;) {
      for (int i = 0; i < slots; ++i) {
        la[i + 1] = b[idx[i]];
        ra[i + 1] = d[idx[i]];
      }
      if (left.holds(p.id, la.data()) && !right.holds(p.id, ra.data())) {
        std::string out = p.name + "(" + left.name(a);
        for (int i = 0; i < slots; ++i) out += "," + left.name(la[i + 1]);
        return out + ")";
      }
      if (mode == AtomMode::Literal) break;
      int i = slots;
      while (i > 0 && idx[i - 1] == l - 1) idx[--i] = 0;
      if (i == 0) break;
      ++idx[i - 1];
    }
  }
  return std::nullopt;
}

}  // namespace detail

const char* atom_mode_name(AtomMode m) { return m == AtomMode::Literal ? "literal" : "full"; }

AtomMode parse_atom_mode(const std::string& s) {
  if (s == "literal") return AtomMode::Literal;
  if (s == "full") return AtomMode::Full;
  throw Error("unknown atom mode '" + s + "' (expected literal or full)");
}

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::MissingSeed: return "seed";
    case Condition::Atoms: return "atoms";
    case Condition::RStep: return "R-step";
    case Condition::EStep: return "E-step";
    case Condition::REStep: return "RE-step";
  }
  return "?";
}

void check_compatible(const EvalPoint& pt_m, const EvalPoint& pt_n) {
  if (!pt_m.model || !pt_n.model) throw RelationError("evaluation point without a model");
  if (pt_m.model->vocab().letters() != pt_n.model->vocab().letters()) {
    throw RelationError("the two models must share a vocabulary");
  }
  if (pt_m.arity() != pt_n.arity()) {
    throw RelationError("object tuples differ in length (" + std::to_string(pt_m.arity()) + " vs " +
                        std::to_string(pt_n.arity()) + ")");
  }
}

namespace {

const char* side_tag(Side s) { return s == Side::M ? "M>N" : "N>M"; }

std::string point_text(const FoModel& m, Element w, const Tuple& objs) {
  std::string out = m.name(w) + ";";
  for (std::size_t i = 0; i < objs.size(); ++i) out += (i ? "," : "") + m.name(objs[i]);
  return out;
}

// [side, m, a, c, l, b..., d...], one byte each.
std::string encode(Side side, int m, Element a, Element c, const Tuple& b, const Tuple& d) {
  std::string key;
  key.reserve(5 + 2 * b.size());
  key.push_back(static_cast<char>(side));
  key.push_back(static_cast<char>(m));
  key.push_back(static_cast<char>(a));
  key.push_back(static_cast<char>(c));
  key.push_back(static_cast<char>(b.size()));
  for (Element e : b) key.push_back(static_cast<char>(e));
  for (Element e : d) key.push_back(static_cast<char>(e));
  return key;
}

PairState decode(const std::string& key) {
  auto at = [&](std::size_t i) { return static_cast<int>(static_cast<unsigned char>(key[i])); };
  PairState s;
  s.left = static_cast<Side>(at(0));
  s.hist_len = at(1);
  s.left_world = at(2);
  s.right_world = at(3);
  const int l = at(4);
  for (int i = 0; i < l; ++i) s.left_objects.push_back(at(5 + i));
  for (int i = 0; i < l; ++i) s.right_objects.push_back(at(5 + l + i));
  return s;
}

Tuple extended(const Tuple& t, Element e) {
  Tuple out = t;
  out.push_back(e);
  return out;
}

}  // namespace

PairState AsimRelation::seed() const {
  return PairState{Side::M, 0, seed_left.world, seed_right.world, seed_left.objects, seed_right.objects};
}

bool AsimRelation::contains(const PairState& s) const { return std::binary_search(states.begin(), states.end(), s); }

std::string to_string(const PairState& s, const FoModel& left, const FoModel& right) {
  return std::string(side_tag(s.left)) + " m=" + std::to_string(s.hist_len) + " " +
         point_text(left, s.left_world, s.left_objects) + " | " + point_text(right, s.right_world, s.right_objects);
}

std::string to_string(const ViolationReport& v, const AsimRelation& a) {
  return std::string(condition_name(v.condition)) + " fails at " +
         to_string(v.state, a.model(v.state.left), a.model(other(v.state.left))) +
         (v.detail.empty() ? "" : ": " + v.detail);
}

std::optional<ViolationReport> is_k_asimulation(const AsimRelation& a, int k) {
  if (k < 0) throw RelationError("k must be nonnegative");
  check_compatible(a.seed_left, a.seed_right);
  const int budget = a.n + k;
  if (a.seed_left.arity() != a.n) throw RelationError("seed length differs from n");
  std::set<PairState> members;
  for (const auto& s : a.states) {
    if (s.left != Side::M && s.left != Side::N) throw RelationError("bad orientation");
    if (s.left_objects.size() != s.right_objects.size()) throw RelationError("object tuples of unequal length");
    if (s.hist_len < 0 || s.hist_len + s.length() > budget) {
      throw RelationError("state exceeds m + l <= n + k: " + to_string(s, a.model(s.left), a.model(other(s.left))));
    }
    const FoModel& l = a.model(s.left);
    const FoModel& r = a.model(other(s.left));
    auto in = [](const FoModel& m, Element e) { return e >= 0 && e < m.size(); };
    bool ok = in(l, s.left_world) && in(r, s.right_world);
    for (Element e : s.left_objects) ok = ok && in(l, e);
    for (Element e : s.right_objects) ok = ok && in(r, e);
    if (!ok) throw RelationError("state element out of range");
    members.insert(s);
  }
  if (!members.count(a.seed())) return ViolationReport{a.seed(), Condition::MissingSeed, ""};

  const detail::AtomTest atoms(a.seed_left.model->vocab());
  for (const auto& s : members) {
    const FoModel& lm = a.model(s.left);
    const FoModel& rm = a.model(other(s.left));
    const int l = s.length();
    const int m = s.hist_len;
    if (auto f = atoms.failure(a.mode, lm, s.left_world, s.left_objects.data(), rm, s.right_world,
                               s.right_objects.data(), l)) {
      return ViolationReport{s, Condition::Atoms, *f};
    }
    if (m + l < budget) {
      for (Element c2 : rm.r_succ(s.right_world)) {
        bool found = false;
        for (Element a2 : lm.r_succ(s.left_world)) {
          const PairState back{other(s.left), m + 1, c2, a2, s.right_objects, s.left_objects};
          const PairState forth{s.left, m + 1, a2, c2, s.left_objects, s.right_objects};
          if (members.count(back) && members.count(forth)) {
            found = true;
            break;
          }
        }
        if (!found) return ViolationReport{s, Condition::RStep, "c''=" + rm.name(c2)};
      }
      for (Element b2 : lm.e_succ(s.left_world)) {
        bool found = false;
        for (Element d2 : rm.e_succ(s.right_world)) {
          const PairState ext{s.left, m, s.left_world, s.right_world, extended(s.left_objects, b2),
                              extended(s.right_objects, d2)};
          if (members.count(ext)) {
            found = true;
            break;
          }
        }
        if (!found) return ViolationReport{s, Condition::EStep, "b''=" + lm.name(b2)};
      }
    }
    if (m + l + 1 < budget) {
      for (Element c2 : rm.r_succ(s.right_world)) {
        for (Element d2 : rm.e_succ(c2)) {
          bool found = false;
          for (Element a2 : lm.r_succ(s.left_world)) {
            for (Element b2 : lm.e_succ(a2)) {
              const PairState ext{s.left, m + 1, a2, c2, extended(s.left_objects, b2), extended(s.right_objects, d2)};
              if (members.count(ext)) {
                found = true;
                break;
              }
            }
            if (found) break;
          }
          if (!found) return ViolationReport{s, Condition::REStep, "c''=" + rm.name(c2) + ", d''=" + rm.name(d2)};
        }
      }
    }
  }
  return std::nullopt;
}

KAsimOutcome compute_k_asimulation(const EvalPoint& pt_m, const EvalPoint& pt_n, int k, AtomMode mode,
                                   std::size_t state_cap) {
  check_compatible(pt_m, pt_n);
  if (k < 0) throw RelationError("k must be nonnegative");
  const int n = pt_m.arity();
  const int budget = n + k;
  if (pt_m.model->size() > 255 || pt_n.model->size() > 255 || budget > 255) {
    throw RelationError("models or tuple lengths too large for k-asimulation search");
  }
  const FoModel* models[2] = {pt_m.model.get(), pt_n.model.get()};
  const detail::AtomTest atoms(pt_m.model->vocab());
  detail::Gfp<std::string> g(state_cap);

  auto expand = [&](int id, const std::string& key) {
    const PairState s = decode(key);
    const Side side = s.left;
    const FoModel& lm = *models[static_cast<int>(side)];
    const FoModel& rm = *models[1 - static_cast<int>(side)];
    const int l = s.length();
    const int m = s.hist_len;
    const Element a = s.left_world;
    const Element c = s.right_world;
    if (atoms.failure(mode, lm, a, s.left_objects.data(), rm, c, s.right_objects.data(), l)) return false;
    if (m + l < budget) {
      for (Element c2 : rm.r_succ(c)) {
        g.begin_demand(id);
        for (Element a2 : lm.r_succ(a)) {
          const int back = g.intern(encode(other(side), m + 1, c2, a2, s.right_objects, s.left_objects));
          const int forth = g.intern(encode(side, m + 1, a2, c2, s.left_objects, s.right_objects));
          g.add_alternative(back, forth);
        }
      }
      for (Element b2 : lm.e_succ(a)) {
        g.begin_demand(id);
        const Tuple b = extended(s.left_objects, b2);
        for (Element d2 : rm.e_succ(c)) {
          g.add_alternative(g.intern(encode(side, m, a, c, b, extended(s.right_objects, d2))));
        }
      }
    }
    if (m + l + 1 < budget) {
      for (Element c2 : rm.r_succ(c)) {
        for (Element d2 : rm.e_succ(c2)) {
          g.begin_demand(id);
          const Tuple d = extended(s.right_objects, d2);
          for (Element a2 : lm.r_succ(a)) {
            for (Element b2 : lm.e_succ(a2)) {
              g.add_alternative(g.intern(encode(side, m + 1, a2, c2, extended(s.left_objects, b2), d)));
            }
          }
        }
      }
    }
    return true;
  };

  g.explore(encode(Side::M, 0, pt_m.world, pt_n.world, pt_m.objects, pt_n.objects), expand);
  g.solve();

  KAsimOutcome out;
  out.explored = g.size();
  std::vector<PairState> kept;
  for (std::size_t id = 0; id < g.size(); ++id) {
    (g.alive(static_cast<int>(id)) ? kept : out.deleted).push_back(decode(g.key(static_cast<int>(id))));
  }
  std::sort(out.deleted.begin(), out.deleted.end());
  if (g.alive(0)) {
    std::sort(kept.begin(), kept.end());
    AsimRelation rel;
    rel.seed_left = pt_m;
    rel.seed_right = pt_n;
    rel.n = n;
    rel.k = k;
    rel.mode = mode;
    rel.states = std::move(kept);
    out.relation = std::move(rel);
  }
  return out;
}

std::optional<AsimRelation> max_k_asimulation(const EvalPoint& pt_m, const EvalPoint& pt_n, int k, AtomMode mode) {
  return compute_k_asimulation(pt_m, pt_n, k, mode).relation;
}

}  // namespace asimkit
