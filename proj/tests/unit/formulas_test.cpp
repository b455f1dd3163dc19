#include "doctest.h"

#include "asimkit/error.hpp"
#include "asimkit/formulas.hpp"
#include "asimkit/parser.hpp"

using namespace asimkit;

TEST_CASE("intuitionistic parsing") {
  const auto f = parse_int("P(w1) -> Q(w1)");
  REQUIRE(f.kind() == IntFormula::Kind::Implies);
  CHECK(f.lhs() == IntFormula::atom("P", {"w1"}));
  CHECK(f.rhs() == IntFormula::atom("Q", {"w1"}));
  CHECK(parse_int("_|_") == IntFormula::bottom());
  CHECK(parse_int("Q") == IntFormula::atom("Q"));
}

TEST_CASE("declared arity is enforced") {
  Vocabulary v;
  v.add_intuitionistic("P", 1);
  CHECK_THROWS_AS(parse_int("forall w2. P(w1,w2)", &v), ArityError);
  Vocabulary c;
  c.add("P'", 2);
  CHECK_THROWS_AS(parse_fo("P'(x)", &c), ArityError);
  CHECK_THROWS_AS(parse_int("P(w1) & P(w1,w2)"), ArityError);
  CHECK_THROWS_AS(parse_fo("R(x)"), ArityError);
}

TEST_CASE("first-order parsing") {
  const auto f = parse_fo("forall y. (R(x,y) -> P'(y,w1))");
  REQUIRE(f.kind() == FoFormula::Kind::Forall);
  CHECK(f.var() == "y");
  CHECK(f.body() == FoFormula::implies(FoFormula::atom("R", {"x", "y"}), FoFormula::atom("P'", {"y", "w1"})));
  CHECK(parse_fo("x = x") == FoFormula::eq("x", "x"));
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_int("P(w1) -> ");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 9);
  }
  CHECK_THROWS_AS(parse_int("~P"), ParseError);
  CHECK_THROWS_AS(parse_fo("_|_"), ParseError);
  CHECK_THROWS_AS(parse_fo("P'"), ParseError);
  CHECK_THROWS_AS(parse_int("R(w1,w2)"), ParseError);
  CHECK_THROWS_AS(parse_int("(P"), ParseError);
  CHECK_THROWS_AS(parse_int("P $ Q"), ParseError);
  CHECK_THROWS_AS(parse_int("forall . P"), ParseError);
}

TEST_CASE("printing round-trips") {
  const char* texts[] = {
      "P(w1) -> Q(w1) -> P(w1)",
      "(P(w1) -> Q(w1)) -> P(w1)",
      "P(w1) & Q | _|_",
      "P(w1) & (Q | _|_)",
      "forall w2. P(w2) -> (exists w3. P(w3))",
      "(forall w2. P(w2)) -> Q",
      "P(w1) & (forall w2. P(w2))",
  };
  for (const char* t : texts) {
    const auto f = parse_int(t);
    CHECK(to_string(f) == t);
    CHECK(parse_int(to_string(f)) == f);
  }
  const char* fo[] = {
      "forall y0. R(x,y0) -> P'(y0,w1) -> Q'(y0,w1)",
      "~(x = x)",
      "(exists y. E(x,y)) <-> ~(exists y. E(y,x))",
      "~P'(x) & R(x,x) | E(x,x)",
  };
  for (const char* t : fo) {
    const auto f = parse_fo(t);
    CHECK(to_string(f) == t);
    CHECK(parse_fo(to_string(f)) == f);
  }
  // A quantifier as the right operand of -> may be written bare; it prints parenthesized.
  CHECK(to_string(parse_int("P(w1) -> forall w2. P(w2)")) == "P(w1) -> (forall w2. P(w2))");
}

TEST_CASE("quantifier degree") {
  CHECK(degree(parse_fo("P'(x,w1)")) == 0);
  CHECK(degree(parse_fo("forall y. forall w. P'(y,w)")) == 2);
  CHECK(degree(parse_fo("~(exists y. R(x,y))")) == 1);
  CHECK(degree(parse_fo("(exists y. R(x,y)) & forall z. forall u. R(z,u)")) == 2);
  CHECK(degree(parse_fo("(exists y. R(x,y)) <-> R(x,x)")) == 1);
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse_fo("P'(x,w1)")) == std::vector<Variable>{"x", "w1"});
  CHECK(free_vars(parse_fo("forall y. R(x,y)")) == std::vector<Variable>{"x"});
  CHECK(free_vars(IntFormula::bottom()).empty());
  CHECK(free_vars(parse_fo("R(x,y) & exists y. R(y,z)")) == std::vector<Variable>{"x", "y", "z"});
}

TEST_CASE("vocabularies") {
  Vocabulary expected;
  expected.add("P'", 2);
  CHECK(vocabulary_of(parse_fo("P'(x,w1)")) == expected);
  CHECK(vocabulary_of(parse_fo("R(x,y)")) == Vocabulary());
  CHECK(Vocabulary().letters() == std::map<std::string, int>{{"E", 2}, {"R", 2}});

  Vocabulary a, b;
  a.add("P'", 2);
  b.add("P'", 3);
  CHECK_THROWS_AS(a.merge(b), VocabularyError);
  CHECK_THROWS_AS(a.add("R", 3), VocabularyError);
  CHECK(a.intuitionistic_arity("P") == 1);
}

TEST_CASE("letter images") {
  CHECK(classical_letter("P") == "P'");
  CHECK(intuitionistic_letter("P'") == "P");
  CHECK_FALSE(intuitionistic_letter("P").has_value());
  CHECK(is_reserved_letter("R"));
  CHECK(is_reserved_letter("E"));
  CHECK_FALSE(is_reserved_letter("P"));
}

TEST_CASE("list folds") {
  CHECK(conjunction_of({}) == IntFormula::top());
  CHECK(disjunction_of({}) == IntFormula::bottom());
  const auto p = IntFormula::atom("P", {"w1"});
  CHECK(conjunction_of({p}) == p);
  CHECK(to_string(conjunction_of({p, p, p})) == "P(w1) & P(w1) & P(w1)");
}
