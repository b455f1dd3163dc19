#pragma once

// Hand-derived standard translations, one or more per clause.

namespace golden {

struct Case {
  const char* formula;
  const char* var;
  const char* translation;
};

inline constexpr Case kTranslations[] = {
    {"P(w1)", "x", "P'(x,w1)"},
    {"P(w1)", "z", "P'(z,w1)"},
    {"_|_", "x", "~(x = x)"},
    {"P(w1) & Q", "x", "P'(x,w1) & Q'(x)"},
    {"(P(w1) -> Q) | (Q -> P(w1))", "x",
     "(forall y0. R(x,y0) -> P'(y0,w1) -> Q'(y0)) | (forall y1. R(x,y1) -> Q'(y1) -> P'(y1,w1))"},
    {"P(w1) -> Q", "x", "forall y0. R(x,y0) -> P'(y0,w1) -> Q'(y0)"},
    {"_|_ -> _|_", "x", "forall y0. R(x,y0) -> ~(y0 = y0) -> ~(y0 = y0)"},
    {"exists w2. P(w2)", "x", "exists w2. E(x,w2) & P'(x,w2)"},
    {"forall w2. P(w2)", "x", "forall y0. forall w2. R(x,y0) & E(y0,w2) -> P'(y0,w2)"},
    {"(P(w1) -> Q) -> P(w1)", "x",
     "forall y0. R(x,y0) -> (forall y1. R(y0,y1) -> P'(y1,w1) -> Q'(y1)) -> P'(y0,w1)"},
    {"forall w2. exists w3. P(w3)", "x",
     "forall y0. forall w2. R(x,y0) & E(y0,w2) -> (exists w3. E(y0,w3) & P'(y0,w3))"},
    {"P(y0) -> Q", "x", "forall y1. R(x,y1) -> P'(y1,y0) -> Q'(y1)"},
};

}  // namespace golden
