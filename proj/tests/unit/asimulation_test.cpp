#include "doctest.h"

#include <random>

#include "asimkit/asimulation.hpp"
#include "asimkit/error.hpp"
#include "asimkit/generators.hpp"
#include "asimkit/parser.hpp"
#include "asimkit/translation.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace asimkit;

namespace {

EvalPoint pt(std::shared_ptr<const FoModel> m, const std::string& s) { return EvalPoint::parse(std::move(m), s); }

AsimRelation single(const EvalPoint& l, const EvalPoint& r, int k, AtomMode mode = AtomMode::Literal) {
  AsimRelation a{l, r, l.arity(), k, mode, {}};
  a.states.push_back(a.seed());
  return a;
}

// One world w seeing itself, P' = {w}, no objects.
std::shared_ptr<const FoModel> loop_world() {
  return fixtures::model({"w"}, fixtures::vocab({{"P", 0}}), {{"R", {"w", "w"}}, {"P'", {"w"}}});
}

}  // namespace

TEST_CASE("checker on the fixture pair") {
  const auto a = pt(fixtures::m_minus(), "a");
  const auto c = pt(fixtures::n_plus(), "c");
  for (int k = 0; k <= 4; ++k) CHECK_FALSE(is_k_asimulation(single(a, c, k), k).has_value());
  AsimRelation empty{a, c, 0, 1, AtomMode::Literal, {}};
  const auto v = is_k_asimulation(empty, 1);
  REQUIRE(v.has_value());
  CHECK(v->condition == Condition::MissingSeed);
}

TEST_CASE("bare seed on a reflexive world needs the R-step state") {
  const auto w = pt(loop_world(), "w");
  CHECK_FALSE(is_k_asimulation(single(w, w, 0), 0).has_value());
  const auto v = is_k_asimulation(single(w, w, 1), 1);
  REQUIRE(v.has_value());
  CHECK(v->condition == Condition::RStep);
  CHECK(to_string(*v, single(w, w, 1)).find("M>N m=0 w; | w;") != std::string::npos);
}

TEST_CASE("malformed states are rejected") {
  const auto a = pt(fixtures::m_minus(), "a");
  const auto c = pt(fixtures::n_plus(), "c");
  auto rel = single(a, c, 1);
  rel.states.push_back(PairState{Side::M, 3, 0, 0, {}, {}});
  CHECK_THROWS_AS(is_k_asimulation(rel, 1), RelationError);
  auto bad = single(a, c, 1);
  bad.states.push_back(PairState{Side::M, 0, 0, 0, {0}, {}});
  CHECK_THROWS_AS(is_k_asimulation(bad, 1), RelationError);
}

TEST_CASE("greatest k-asimulations on fixtures") {
  const auto a = pt(fixtures::m_minus(), "a");
  const auto c = pt(fixtures::n_plus(), "c");
  const auto fwd = max_k_asimulation(a, c, 1);
  REQUIRE(fwd.has_value());
  CHECK(fwd->states.size() == 1);
  CHECK_FALSE(max_k_asimulation(c, a, 0).has_value());

  const auto m = fixtures::reflexive_world();
  const auto p = pt(m, "w;");
  for (int k = 0; k <= 3; ++k) {
    const auto rel = max_k_asimulation(p, p, k, AtomMode::Full);
    REQUIRE(rel.has_value());
    CHECK_FALSE(is_k_asimulation(*rel, k).has_value());
    // Every diagonal state within the bound is present; states with the
    // left side in N only arise through an R-step, so they have m >= 1.
    const Element w = m->element("w"), d = m->element("d");
    for (int l = 0; l <= k; ++l) {
      for (int h = 0; h + l <= k; ++h) {
        for (Side s : {Side::M, Side::N}) {
          if (s == Side::N && h == 0) continue;
          PairState st{s, h, w, w, Tuple(l, d), Tuple(l, d)};
          CHECK(rel->contains(st));
        }
      }
    }
  }
}

TEST_CASE("a relation found in literal mode can miss atoms on repeated objects") {
  const auto v = fixtures::vocab({{"P", 1}});
  const auto m = fixtures::model({"a", "b"}, v, {{"P'", {"a", "b"}}});
  const auto n = fixtures::model({"c", "d"}, v, {});
  const auto l = pt(m, "a;b,b");
  const auto r = pt(n, "c;d,d");
  const auto lit = max_k_asimulation(l, r, 0, AtomMode::Literal);
  REQUIRE(lit.has_value());
  CHECK_FALSE(max_k_asimulation(l, r, 0, AtomMode::Full).has_value());
  // P(w1) has degree 0, holds on the left and fails on the right.
  const auto st = standard_translation(parse_int("P(w1)"), "x");
  CHECK(satisfies_at(l, st, point_vars(2)));
  CHECK_FALSE(satisfies_at(r, st, point_vars(2)));
}

TEST_CASE("agreement with the history-keeping oracle") {
  GenConfig cfg;
  cfg.letters = {{"P", 1}, {"Q", 0}};
  cfg.max_domain = 2;
  cfg.density = 0.4;
  cfg.seed = 21;
  Generator gen(cfg);
  int related = 0;
  for (int round = 0; round < 60; ++round) {
    auto m = std::make_shared<const FoModel>(gen.fo_model());
    auto n = std::make_shared<const FoModel>(round % 3 == 0 ? *m : gen.fo_model());
    const int arity = gen.uniform(0, 1);
    const int k = gen.uniform(0, 2 - arity);
    for (AtomMode mode : {AtomMode::Literal, AtomMode::Full}) {
      const oracle::HistoryOracle ref(*m, *n, arity, k, mode == AtomMode::Full);
      for (const auto& lt : oracle::tuples(m->size(), arity + 1)) {
        for (const auto& rt : oracle::tuples(n->size(), arity + 1)) {
          const EvalPoint l{m, lt[0], Tuple(lt.begin() + 1, lt.end())};
          const EvalPoint r{n, rt[0], Tuple(rt.begin() + 1, rt.end())};
          const auto rel = max_k_asimulation(l, r, k, mode);
          CHECK(rel.has_value() == ref.relates_seed(l.world, l.objects, r.world, r.objects));
          if (!rel) continue;
          ++related;
          // Histories are irrelevant: any choice of them is accepted by the oracle.
          for (const auto& s : rel->states) {
            const int ls = s.left == Side::M ? m->size() : n->size();
            const int rs = s.left == Side::M ? n->size() : m->size();
            Tuple hl(s.hist_len), hr(s.hist_len);
            for (auto& e : hl) e = gen.uniform(0, ls - 1);
            for (auto& e : hr) e = gen.uniform(0, rs - 1);
            CHECK(ref.relates(s.left == Side::M ? 0 : 1, hl, s.left_world, s.left_objects, hr, s.right_world,
                              s.right_objects));
          }
        }
      }
    }
  }
  CHECK(related > 0);
}

TEST_CASE("monotonicity in k") {
  GenConfig cfg;
  cfg.max_domain = 3;
  cfg.density = 0.35;
  cfg.seed = 4;
  Generator gen(cfg);
  for (int round = 0; round < 80; ++round) {
    auto m = std::make_shared<const FoModel>(gen.fo_model());
    auto n = std::make_shared<const FoModel>(gen.fo_model());
    const EvalPoint l{m, gen.uniform(0, m->size() - 1), {}};
    const EvalPoint r{n, gen.uniform(0, n->size() - 1), {}};
    for (int k = 0; k < 3; ++k) {
      const auto hi = max_k_asimulation(l, r, k + 1, AtomMode::Full);
      const auto lo = max_k_asimulation(l, r, k, AtomMode::Full);
      if (!hi) continue;
      REQUIRE(lo.has_value());
      for (const auto& s : hi->states) {
        if (s.hist_len + s.length() <= k) CHECK(lo->contains(s));
      }
    }
  }
}

TEST_CASE("quotient checker") {
  const auto a = pt(fixtures::m_minus(), "a");
  const auto c = pt(fixtures::n_plus(), "c");
  QuotientRelation q{a, c, {}};
  CHECK(is_asimulation_quotient(q)->condition == Condition::MissingSeed);
  q.states.push_back(q.seed());
  CHECK_FALSE(is_asimulation_quotient(q).has_value());

  const auto m = fixtures::reflexive_world();
  const auto w = pt(m, "w");
  const auto diag = max_asimulation_quotient(w, w);
  REQUIRE(diag.has_value());
  CHECK_FALSE(is_asimulation_quotient(*diag).has_value());
  const Element ww = m->element("w"), d = m->element("d");
  for (const auto& s : diag->states) {
    CHECK(s.left_world == ww);
    CHECK(s.right_world == ww);
    for (const auto& [b, e] : s.pairs) CHECK(b == e);
  }
  (void)d;

  // The left world sees an object, the right one sees none.
  const auto v = fixtures::vocab({{"P", 1}});
  const auto left = fixtures::model({"u", "o"}, v, {{"E", {"u", "o"}}});
  const auto right = fixtures::model({"u"}, v, {});
  QuotientRelation e{pt(left, "u"), pt(right, "u"), {}};
  e.states.push_back(e.seed());
  const auto viol = is_asimulation_quotient(e);
  REQUIRE(viol.has_value());
  CHECK(viol->condition == Condition::EStep);
}

TEST_CASE("greatest quotient relations") {
  const auto a = pt(fixtures::m_minus(), "a");
  const auto c = pt(fixtures::n_plus(), "c");
  CHECK(max_asimulation_quotient(a, c).has_value());
  CHECK_FALSE(max_asimulation_quotient(c, a).has_value());
}

TEST_CASE("lifting quotient relations") {
  const auto a = pt(fixtures::m_minus(), "a");
  const auto c = pt(fixtures::n_plus(), "c");
  const auto q = max_asimulation_quotient(a, c);
  REQUIRE(q.has_value());
  const auto lifted = lift_to_k(*q, 3);
  std::vector<PairState> expected;
  for (int m = 0; m <= 3; ++m) expected.push_back(PairState{Side::M, m, 0, 0, {}, {}});
  CHECK(lifted.states == expected);
  CHECK_FALSE(is_k_asimulation(lifted, 3).has_value());

  QuotientRelation empty{a, c, {}};
  CHECK_THROWS_AS(lift_to_k(empty, 1), RelationError);

  const auto w = pt(fixtures::reflexive_world(), "w");
  const auto diag = max_asimulation_quotient(w, w);
  REQUIRE(diag.has_value());
  CHECK_FALSE(is_k_asimulation(lift_to_k(*diag, 1), 1).has_value());
}

TEST_CASE("isomorphic copies are related") {
  const auto v = fixtures::vocab({{"P", 1}});
  const auto m = fixtures::model({"u", "v", "o"}, v,
                                 {{"R", {"u", "u"}}, {"R", {"u", "v"}}, {"R", {"v", "v"}}, {"E", {"u", "o"}},
                                  {"E", {"v", "o"}}, {"P'", {"v", "o"}}});
  const auto n = fixtures::model({"o", "v", "u"}, v,
                                 {{"R", {"u", "u"}}, {"R", {"u", "v"}}, {"R", {"v", "v"}}, {"E", {"u", "o"}},
                                  {"E", {"v", "o"}}, {"P'", {"v", "o"}}});
  const auto q = max_asimulation_quotient(pt(m, "u;o"), pt(n, "u;o"));
  REQUIRE(q.has_value());
  // The isomorphism maps each element to the element of the same name.
  for (const char* world : {"u", "v"}) {
    QuotientState s{Side::M, m->element(world), n->element(world), {{m->element("o"), n->element("o")}}};
    CHECK(q->contains(s));
  }
}
