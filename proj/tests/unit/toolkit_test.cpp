#include "doctest.h"

#include <set>

#include "asimkit/corpus.hpp"
#include "asimkit/error.hpp"
#include "asimkit/generators.hpp"
#include "asimkit/model_io.hpp"
#include "asimkit/parser.hpp"
#include "asimkit/search.hpp"
#include "asimkit/suites.hpp"
#include "asimkit/translation.hpp"

using namespace asimkit;

TEST_CASE("sparse generation gives a single bare point") {
  GenConfig cfg;
  cfg.max_domain = 1;
  cfg.density = 0;
  cfg.letters = {{"P", 0}};
  Generator gen(cfg);
  const FoModel m = gen.fo_model();
  CHECK(m.size() == 1);
  for (const auto& [letter, arity] : m.vocab().letters()) {
    (void)arity;
    CHECK(m.tuples(letter).empty());
  }
}

TEST_CASE("depth zero formulas are atoms or bottom") {
  GenConfig cfg;
  cfg.depth = 0;
  Generator gen(cfg);
  for (int i = 0; i < 200; ++i) {
    const auto f = gen.int_formula(1);
    CHECK((f.kind() == IntFormula::Kind::Atom || f.kind() == IntFormula::Kind::Bottom));
  }
}

TEST_CASE("generation is a function of the seed") {
  GenConfig cfg;
  cfg.seed = 99;
  Generator a(cfg), b(cfg);
  for (int i = 0; i < 20; ++i) {
    CHECK(fo_model_to_json(a.fo_model()) == fo_model_to_json(b.fo_model()));
    CHECK(kripke_to_json(a.kripke()) == kripke_to_json(b.kripke()));
    CHECK(a.int_formula(1) == b.int_formula(1));
  }
  cfg.seed = 100;
  Generator c(cfg);
  Generator d(GenConfig{});
  bool differs = false;
  for (int i = 0; i < 20; ++i) differs |= !(c.int_formula(1) == d.int_formula(1));
  CHECK(differs);
}

TEST_CASE("generated formulas respect the bounds") {
  GenConfig cfg;
  cfg.depth = 4;
  cfg.seed = 3;
  Generator gen(cfg);
  for (int i = 0; i < 500; ++i) {
    const auto f = gen.int_formula(2);
    CHECK(f.depth() <= 4);
    for (const auto& v : free_vars(f)) CHECK((v == "w1" || v == "w2"));
  }
}

TEST_CASE("invalid configurations") {
  GenConfig cfg;
  cfg.density = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = GenConfig{};
  cfg.max_domain = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("corpus") {
  const auto c = formula_corpus({{"P", 1}, {"Q", 0}}, 1, 3);
  std::set<std::string> printed;
  for (const auto& f : c) {
    CHECK(f.depth() <= 3);
    CHECK(printed.insert(to_string(f)).second);
    for (const auto& v : free_vars(f)) CHECK(v == "w1");
  }
  CHECK(printed.count("P(w1) -> Q"));
  CHECK(printed.count("_|_"));
  CHECK(c == formula_corpus({{"P", 1}, {"Q", 0}}, 1, 3));
  for (const auto& f : formula_corpus({{"P", 1}, {"Q", 0}}, 0, 3)) CHECK(free_vars(f).empty());
}

TEST_CASE("a negated atom is not preserved") {
  const auto phi = parse_fo("~P'(x)");
  GenConfig bounds;
  bounds.letters = {{"P", 0}};
  const auto r = search_noninvariance(phi, bounds, 1000);
  REQUIRE(r.witness.has_value());
  const Witness& w = *r.witness;
  CHECK(w.k == 0);
  CHECK(w.left.model->size() == 1);
  CHECK(w.right.model->size() == 1);
  CHECK(satisfies_at(w.left, phi, point_vars(0)));
  CHECK_FALSE(satisfies_at(w.right, phi, point_vars(0)));
  CHECK(w.relation.contains(w.relation.seed()));
  CHECK(replay(w));

  const auto back = witness_from_json(witness_to_json(w));
  CHECK(replay(back));
  CHECK(witness_to_json(back) == witness_to_json(w));

  // A doctored witness fails replay.
  Witness bad = w;
  bad.right = w.left;
  CHECK_FALSE(replay(bad));
}

TEST_CASE("translations admit no witness") {
  GenConfig bounds;
  for (const char* text : {"P(w1) -> Q", "exists w2. P(w2)", "forall w2. P(w2) | Q"}) {
    const auto i = parse_int(text);
    const auto r = search_noninvariance(standard_translation(i, "x"), bounds, 3000);
    CAPTURE(text);
    CHECK_FALSE(r.witness.has_value());
    CHECK(r.cases == 3000);
  }
  const auto r = search_noninvariance(parse_fo("~(x = x)"), bounds, 500);
  CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("point arity of formulas") {
  CHECK(point_arity_of(parse_fo("P'(x,w2)")) == 2);
  CHECK(point_arity_of(parse_fo("R(x,x)")) == 0);
  CHECK_THROWS_AS(point_arity_of(parse_fo("R(x,y)")), Error);
}

TEST_CASE("suites") {
  GenConfig cfg;
  cfg.cases = 20;
  cfg.seed = 5;
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    const auto a = run_property_suite(name, cfg);
    const auto b = run_property_suite(name, cfg);
    CHECK(a.status() == "ok");
    CHECK(a.exit_code() == 0);
    CHECK(a.cases == 20);
    CHECK(a.to_json() == b.to_json());
  }
  cfg.cases = 0;
  const auto e = run_property_suite("adequacy", cfg);
  CHECK(e.status() == "empty");
  CHECK(e.exit_code() == 1);
  CHECK_THROWS_AS(run_property_suite("nonsense", GenConfig{}), Error);
}
