#include "asimkit/translation.hpp"

#include <algorithm>
#include <set>

#include "asimkit/error.hpp"

namespace asimkit {

namespace {

class Translator {
 public:
  explicit Translator(const IntFormula& i) {
    for (const auto& v : all_vars(i)) taken_.insert(v);
  }

  void fresh_skip(const Variable& v) { taken_.insert(v); }

  Variable fresh() {
    for (;;) {
      Variable v = "y" + std::to_string(counter_++);
      if (!taken_.count(v)) return v;
    }
  }

  FoFormula run(const IntFormula& i, const Variable& x) {
    using K = IntFormula::Kind;
    switch (i.kind()) {
      case K::Atom: {
        if (is_reserved_letter(i.letter())) {
          throw TranslationError("letter '" + i.letter() + "' collides with the reserved classical letters");
        }
        std::vector<Variable> args{x};
        args.insert(args.end(), i.args().begin(), i.args().end());
        return FoFormula::atom(classical_letter(i.letter()), std::move(args));
      }
      case K::Bottom:
        return FoFormula::negation(FoFormula::eq(x, x));
      case K::And:
      case K::Or: {
        FoFormula lhs = run(i.lhs(), x);
        FoFormula rhs = run(i.rhs(), x);
        return i.kind() == K::And ? FoFormula::conj(lhs, rhs) : FoFormula::disj(lhs, rhs);
      }
      case K::Implies: {
        const Variable y = fresh();
        FoFormula lhs = run(i.lhs(), y);
        FoFormula rhs = run(i.rhs(), y);
        return FoFormula::forall(
            y, FoFormula::implies(FoFormula::atom(kAccessLetter, {x, y}), FoFormula::implies(lhs, rhs)));
      }
      case K::Exists:
        return FoFormula::exists(
            i.var(), FoFormula::conj(FoFormula::atom(kExistenceLetter, {x, i.var()}), run(i.body(), x)));
      case K::Forall: {
        const Variable y = fresh();
        FoFormula guard =
            FoFormula::conj(FoFormula::atom(kAccessLetter, {x, y}), FoFormula::atom(kExistenceLetter, {y, i.var()}));
        return FoFormula::forall(y, FoFormula::forall(i.var(), FoFormula::implies(guard, run(i.body(), y))));
      }
    }
    throw TranslationError("unknown formula kind");
  }

 private:
  std::set<Variable> taken_;
  int counter_ = 0;
};

}  // namespace

FoFormula standard_translation(const IntFormula& i, const Variable& x) {
  if (x.empty()) throw TranslationError("translation variable must be nonempty");
  const auto vars = all_vars(i);
  if (std::find(vars.begin(), vars.end(), x) != vars.end()) {
    const auto fv = free_vars(i);
    const bool free = std::find(fv.begin(), fv.end(), x) != fv.end();
    throw TranslationError("variable '" + x + "' occurs " + (free ? "free" : "bound") + " in the formula");
  }
  Translator t(i);
  t.fresh_skip(x);
  return t.run(i, x);
}

int translation_degree(const IntFormula& i) {
  using K = IntFormula::Kind;
  switch (i.kind()) {
    case K::Atom:
    case K::Bottom:
      return 0;
    case K::And:
    case K::Or:
      return std::max(translation_degree(i.lhs()), translation_degree(i.rhs()));
    case K::Implies:
      return std::max(translation_degree(i.lhs()), translation_degree(i.rhs())) + 1;
    case K::Exists:
      return translation_degree(i.body()) + 1;
    case K::Forall:
      return translation_degree(i.body()) + 2;
  }
  return 0;
}

}  // namespace asimkit
