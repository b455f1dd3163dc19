#include "asimkit/classify.hpp"

#include "asimkit/parser.hpp"

namespace asimkit {

namespace {

std::string vars(const std::string& stem, int n) {
  std::string out;
  for (int i = 1; i <= n; ++i) out += "," + stem + std::to_string(i);
  return out;
}

std::string binders(const std::string& stem, int n) {
  std::string out;
  for (int i = 1; i <= n; ++i) out += "forall " + stem + std::to_string(i) + ". ";
  return out;
}

// First falsifying assignment of the universal prefix, if any.
std::optional<AxiomViolation> check(const FoModel& m, const FoFormula& sentence) {
  std::vector<Variable> prefix;
  FoFormula body = sentence;
  while (body.kind() == FoFormula::Kind::Forall) {
    prefix.push_back(body.var());
    body = body.body();
  }
  CompiledFormula compiled(body, prefix);
  std::vector<Element> values(prefix.size(), 0);
  for (;;) {
    if (!compiled.eval(m, values.data())) {
      AxiomViolation v{to_string(sentence), {}};
      for (std::size_t i = 0; i < prefix.size(); ++i) v.assignment.emplace_back(prefix[i], m.name(values[i]));
      return v;
    }
    std::size_t i = prefix.size();
    while (i > 0 && values[i - 1] == m.size() - 1) values[--i] = 0;
    if (i == 0) return std::nullopt;
    ++values[i - 1];
  }
}

}  // namespace

const char* axiom_group_name(AxiomGroup g) {
  switch (g) {
    case AxiomGroup::RT: return "RT";
    case AxiomGroup::Mon: return "Mon";
    case AxiomGroup::ER: return "ER";
    case AxiomGroup::Type: return "Type";
    case AxiomGroup::CD: return "CD";
  }
  return "?";
}

std::vector<AxiomSentence> axiom_sentences(const Vocabulary& vocab) {
  std::vector<AxiomSentence> out;
  auto add = [&](AxiomGroup g, const std::string& text) { out.push_back({g, parse_fo(text, &vocab)}); };

  add(AxiomGroup::RT, "forall y. ~(exists z. E(z,y)) -> R(y,y)");
  add(AxiomGroup::RT, "forall y. forall z. forall w. R(y,z) & R(z,w) -> R(y,w)");
  for (const auto& [letter, arity] : vocab.letters()) {
    if (letter == kAccessLetter) continue;
    const int n = arity - 1;
    add(AxiomGroup::Mon, "forall y. forall z. " + binders("w", n) + letter + "(y" + vars("w", n) + ") & R(y,z) -> " +
                             letter + "(z" + vars("w", n) + ")");
  }
  add(AxiomGroup::ER, "forall x. (exists y. E(x,y)) <-> ~(exists y. E(y,x))");
  add(AxiomGroup::ER, "forall x. forall y. R(x,y) -> (exists z. exists w. E(x,z) & E(y,w))");
  for (const auto& [letter, arity] : vocab.letters()) {
    if (letter == kAccessLetter || arity < 2) continue;
    const int n = arity - 1;
    std::string conj;
    for (int i = 1; i <= n; ++i) conj += (i > 1 ? " & " : "") + std::string("E(y,z") + std::to_string(i) + ")";
    add(AxiomGroup::Type, "forall y. " + binders("z", n) + letter + "(y" + vars("z", n) + ") -> " + conj);
  }
  add(AxiomGroup::CD, "forall x. (exists y. E(y,x)) -> (forall y. ~(exists z. E(z,y)) -> E(y,x))");
  return out;
}

ModelClassReport classify_model(const FoModel& m) {
  ModelClassReport report;
  for (const auto& ax : axiom_sentences(m.vocab())) {
    const std::string key = axiom_group_name(ax.group);
    if (report.witnesses.count(key)) continue;
    auto violation = check(m, ax.sentence);
    if (!violation) continue;
    report.witnesses.emplace(key, std::move(*violation));
    switch (ax.group) {
      case AxiomGroup::RT: report.rt = false; break;
      case AxiomGroup::Mon: report.mon = false; break;
      case AxiomGroup::ER: report.er = false; break;
      case AxiomGroup::Type: report.type_ok = false; break;
      case AxiomGroup::CD: report.cd = false; break;
    }
  }
  return report;
}

}  // namespace asimkit
