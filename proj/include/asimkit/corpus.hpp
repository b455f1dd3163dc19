#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "asimkit/formulas.hpp"

namespace asimkit {

/// A fixed list of formulas over P (unary) and Q (0-ary) that exercises every
/// connective and quantifier nesting, followed by `generated` random formulas
/// drawn with `seed`. Only formulas whose letters agree with `letters`, whose
/// free variables lie among w1..w<free_vars> and whose depth is at most
/// `max_depth` are kept. No two entries print the same.
std::vector<IntFormula> formula_corpus(const std::map<std::string, int>& letters, int free_vars, int max_depth,
                                       std::size_t generated = 200, std::uint64_t seed = 7);

}  // namespace asimkit
