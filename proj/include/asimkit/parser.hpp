#pragma once

// Concrete syntax shared by both languages:
//
//   formula := quant var "." formula | iff
//   iff     := impl [ "<->" iff ]                      (classical only)
//   impl    := disj [ "->" impl ]
//   disj    := conj { "|" conj }
//   conj    := unary { "&" unary }
//   unary   := "~" unary | primary                      ("~" classical only)
//   primary := "(" formula ")" | "_|_" | letter "(" var {"," var} ")"
//            | letter                                   (0-ary, intuitionistic only)
//            | var "=" var                              (classical only)
//            | quant var "." formula
//
// A quantifier body extends as far to the right as possible.

#include <string>

#include "asimkit/formulas.hpp"

namespace asimkit {

/// Arities come from `vocab` when it declares the letter (as P' for an
/// intuitionistic P) and are otherwise inferred from first use.
IntFormula parse_int(const std::string& text, const Vocabulary* vocab = nullptr);
FoFormula parse_fo(const std::string& text, const Vocabulary* vocab = nullptr);

}  // namespace asimkit
