#pragma once

// JSON reading and writing for vocabularies, classical models and Kripke models.
//
//   vocabulary: {"P": 1, "Q'": 2}   unprimed letters other than R/E are
//               intuitionistic and stand for their primed image
//   FoModel:    {"domain": [...], "rel": {"R": [[..]], "P'": [[..]]}, "vocab": {...}}
//   Kripke:     {"worlds": [...], "leq": [[u,v]..], "domains": {w: [..]},
//                "val": {P: {w: [[..]]}}, "letters": {P: n}}
//
// Arities not fixed by a vocabulary are read off the tuples. The Kripke
// order is closed reflexively and transitively on load.

#include <string>

#include "json.hpp"
#include "asimkit/fo_model.hpp"
#include "asimkit/kripke.hpp"

namespace asimkit {

Vocabulary vocabulary_from_json(const nlohmann::json& j);
nlohmann::json vocabulary_to_json(const Vocabulary& v);

/// `extra` is merged into the letters found in the document.
FoModel fo_model_from_json(const nlohmann::json& j, const Vocabulary* extra = nullptr);
nlohmann::json fo_model_to_json(const FoModel& m);

KripkeModel kripke_from_json(const nlohmann::json& j);
nlohmann::json kripke_to_json(const KripkeModel& k);

/// Reads a whole file as JSON; throws ModelError with the path on failure.
nlohmann::json read_json_file(const std::string& path);

}  // namespace asimkit
