#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "asimkit/fo_model.hpp"

namespace asimkit {

enum class AxiomGroup { RT, Mon, ER, Type, CD };

const char* axiom_group_name(AxiomGroup g);

struct AxiomSentence {
  AxiomGroup group;
  FoFormula sentence;
};

/// The sentences of every group instantiated for the letters of `vocab`.
///
/// Reflexivity and the universal half of CD are read over worlds, i.e. over
/// elements that are not E-targets, so that encodings of Kripke models
/// (whose objects are not R-reflexive) belong to the intended classes.
/// Mon and Type range over every letter other than R, E included; Type
/// instances for unary letters are vacuous and omitted.
std::vector<AxiomSentence> axiom_sentences(const Vocabulary& vocab);

struct AxiomViolation {
  std::string sentence;
  /// First falsifying assignment of the sentence's universal prefix, by element id.
  std::vector<std::pair<Variable, std::string>> assignment;
};

struct ModelClassReport {
  bool rt = true;
  bool mon = true;
  bool er = true;
  bool type_ok = true;
  bool cd = true;
  /// Keyed by group name ("RT", "Mon", "ER", "Type", "CD") for each false flag.
  std::map<std::string, AxiomViolation> witnesses;
};

ModelClassReport classify_model(const FoModel& m);

}  // namespace asimkit
