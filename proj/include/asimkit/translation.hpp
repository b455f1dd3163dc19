#pragma once

#include "asimkit/formulas.hpp"

namespace asimkit {

/// ST(i, x). World variables introduced by the -> and forall clauses are named
/// y0, y1, ... in depth-first order, skipping every name that occurs in `i`.
/// Throws TranslationError when `x` occurs in `i` (free or bound) or a letter
/// of `i` is R or E.
FoFormula standard_translation(const IntFormula& i, const Variable& x);

/// degree(standard_translation(i, x)), computed without building the translation.
int translation_degree(const IntFormula& i);

}  // namespace asimkit
