#include "asimkit/corpus.hpp"

#include <algorithm>
#include <set>

#include "asimkit/generators.hpp"
#include "asimkit/parser.hpp"

namespace asimkit {

namespace {

const char* const kFixed[] = {
    "_|_",
    "Q",
    "P(w1)",
    "P(w2)",
    "_|_ -> _|_",
    "Q -> _|_",
    "P(w1) -> _|_",
    "(P(w1) -> _|_) -> _|_",
    "P(w1) & Q",
    "P(w1) | Q",
    "P(w1) | (P(w1) -> _|_)",
    "Q | (Q -> _|_)",
    "P(w1) -> Q",
    "Q -> P(w1)",
    "P(w1) -> P(w2)",
    "(P(w1) -> Q) -> P(w1)",
    "((Q -> _|_) -> _|_) -> Q",
    "(P(w1) -> Q) | (Q -> P(w1))",
    "exists w1. P(w1)",
    "forall w1. P(w1)",
    "exists w2. P(w2)",
    "forall w2. P(w2)",
    "exists w2. P(w2) -> Q",
    "forall w2. P(w2) -> Q",
    "(exists w2. P(w2)) -> Q",
    "(forall w2. P(w2)) -> Q",
    "forall w2. P(w2) | Q",
    "(forall w2. P(w2)) | Q",
    "forall w2. P(w2) -> _|_",
    "(exists w2. P(w2)) -> _|_",
    "exists w2. P(w2) -> _|_",
    "forall w2. (P(w2) -> _|_) -> _|_",
    "((forall w2. P(w2)) -> _|_) -> _|_",
    "exists w2. P(w2) & Q",
    "forall w2. exists w3. P(w3)",
    "exists w2. forall w3. P(w3)",
    "forall w2. P(w2) -> P(w1)",
    "exists w2. P(w1) -> P(w2)",
    "P(w1) -> forall w2. P(w2)",
    "P(w1) -> exists w2. P(w2)",
    "forall w2. P(w1) | (P(w1) -> _|_)",
    "(forall w2. P(w2) | Q) -> (forall w2. P(w2)) | Q",
};

bool free_among(const IntFormula& f, int n) {
  for (const auto& v : asimkit::free_vars(f)) {
    bool ok = false;
    for (int i = 1; i <= n && !ok; ++i) ok = v == "w" + std::to_string(i);
    if (!ok) return false;
  }
  return true;
}

}  // namespace

std::vector<IntFormula> formula_corpus(const std::map<std::string, int>& letters, int free_vars, int max_depth,
                                       std::size_t generated, std::uint64_t seed) {
  std::vector<IntFormula> out;
  std::set<std::string> seen;
  auto admit = [&](const IntFormula& f) {
    if (f.depth() > max_depth || !free_among(f, free_vars)) return;
    for (const auto& [letter, arity] : letters_of(f)) {
      auto it = letters.find(letter);
      if (it == letters.end() || it->second != arity) return;
    }
    if (seen.insert(to_string(f)).second) out.push_back(f);
  };
  for (const char* text : kFixed) admit(parse_int(text));
  if (generated > 0 && !letters.empty()) {
    GenConfig cfg;
    cfg.letters = letters;
    cfg.seed = seed;
    cfg.depth = std::max(0, max_depth);
    Generator gen(cfg);
    for (std::size_t i = 0; i < generated; ++i) admit(gen.int_formula(free_vars, gen.uniform(0, cfg.depth)));
  }
  return out;
}

}  // namespace asimkit
