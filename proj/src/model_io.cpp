#include "asimkit/model_io.hpp"

#include <fstream>
#include <set>

#include "asimkit/error.hpp"

namespace asimkit {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ModelError(what + " must be a list");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ModelError(what + " must contain strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::vector<std::string>> tuple_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ModelError(what + " must be a list of tuples");
  std::vector<std::vector<std::string>> out;
  for (const auto& t : j) out.push_back(string_list(t, what + " tuple"));
  return out;
}

}  // namespace

Vocabulary vocabulary_from_json(const json& j) {
  if (!j.is_object()) throw VocabularyError("vocabulary must be an object mapping letters to arities");
  Vocabulary v;
  for (const auto& [letter, arity] : j.items()) {
    if (!arity.is_number_integer()) throw VocabularyError("arity of '" + letter + "' must be an integer");
    const int a = arity.get<int>();
    if (is_reserved_letter(letter) || intuitionistic_letter(letter)) {
      v.add(letter, a);
    } else {
      v.add_intuitionistic(letter, a);
    }
  }
  return v;
}

json vocabulary_to_json(const Vocabulary& v) {
  json j = json::object();
  for (const auto& [letter, arity] : v.letters()) j[letter] = arity;
  return j;
}

FoModel fo_model_from_json(const json& j, const Vocabulary* extra) {
  if (!j.is_object() || !j.contains("domain")) throw ModelError("model needs a \"domain\" list");
  const auto domain = string_list(j.at("domain"), "domain");
  Vocabulary vocab;
  if (j.contains("vocab")) vocab.merge(vocabulary_from_json(j.at("vocab")));
  if (extra) vocab.merge(*extra);
  std::map<std::string, std::vector<std::vector<std::string>>> rel;
  if (j.contains("rel")) {
    if (!j.at("rel").is_object()) throw ModelError("\"rel\" must be an object");
    for (const auto& [letter, tuples] : j.at("rel").items()) {
      rel[letter] = tuple_list(tuples, "relation '" + letter + "'");
      if (!vocab.contains(letter)) {
        if (rel[letter].empty()) throw ModelError("arity of '" + letter + "' is unknown; declare it in a vocabulary");
        Vocabulary one;
        one.add(letter, static_cast<int>(rel[letter].front().size()));
        vocab.merge(one);
      }
    }
  }
  FoModel m(domain, vocab);
  for (const auto& [letter, tuples] : rel) {
    for (const auto& t : tuples) m.add(letter, t);
  }
  return m;
}

json fo_model_to_json(const FoModel& m) {
  json rel = json::object();
  for (const auto& [letter, arity] : m.vocab().letters()) {
    json tuples = json::array();
    for (const auto& t : m.tuples(letter)) {
      json row = json::array();
      for (Element e : t) row.push_back(m.name(e));
      tuples.push_back(row);
    }
    rel[letter] = tuples;
  }
  return json{{"domain", m.names()}, {"rel", rel}, {"vocab", vocabulary_to_json(m.vocab())}};
}

KripkeModel kripke_from_json(const json& j) {
  if (!j.is_object() || !j.contains("worlds")) throw ModelError("Kripke model needs a \"worlds\" list");
  const auto worlds = string_list(j.at("worlds"), "worlds");
  std::vector<std::string> objects;
  std::set<std::string> seen;
  auto note = [&](const std::string& d) {
    if (seen.insert(d).second) objects.push_back(d);
  };
  if (j.contains("objects")) {
    for (const auto& d : string_list(j.at("objects"), "objects")) note(d);
  }
  std::map<std::string, std::vector<std::string>> domains;
  if (j.contains("domains")) {
    if (!j.at("domains").is_object()) throw ModelError("\"domains\" must map worlds to object lists");
    for (const auto& [w, ds] : j.at("domains").items()) {
      domains[w] = string_list(ds, "domain of '" + w + "'");
      for (const auto& d : domains[w]) note(d);
    }
  }
  std::map<std::string, int> letters;
  if (j.contains("letters")) {
    for (const auto& [p, a] : j.at("letters").items()) letters[p] = a.get<int>();
  }
  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> val;
  if (j.contains("val")) {
    if (!j.at("val").is_object()) throw ModelError("\"val\" must be an object");
    for (const auto& [p, per_world] : j.at("val").items()) {
      if (!per_world.is_object()) throw ModelError("valuation of '" + p + "' must map worlds to tuple lists");
      auto& slot = val[p];
      for (const auto& [w, tuples] : per_world.items()) {
        slot[w] = tuple_list(tuples, "valuation of '" + p + "' at '" + w + "'");
        for (const auto& t : slot[w]) {
          auto it = letters.find(p);
          if (it == letters.end()) {
            letters[p] = static_cast<int>(t.size());
          } else if (it->second != static_cast<int>(t.size())) {
            throw ArityError(p, it->second, static_cast<int>(t.size()));
          }
        }
      }
      if (!letters.count(p)) throw ModelError("arity of '" + p + "' is unknown; declare it under \"letters\"");
    }
  }
  KripkeModel k(worlds, objects, letters);
  if (j.contains("leq")) {
    for (const auto& pair : tuple_list(j.at("leq"), "leq")) {
      if (pair.size() != 2) throw ModelError("leq entries must be pairs");
      k.set_leq(k.world(pair[0]), k.world(pair[1]));
    }
  }
  k.close_order();
  for (const auto& [w, ds] : domains) {
    for (const auto& d : ds) k.add_to_domain(k.world(w), k.object(d));
  }
  for (const auto& [p, per_world] : val) {
    for (const auto& [w, tuples] : per_world) {
      for (const auto& t : tuples) {
        std::vector<KripkeModel::Object> args;
        for (const auto& d : t) args.push_back(k.object(d));
        k.add_fact(p, k.world(w), args);
      }
    }
  }
  k.validate();
  return k;
}

json kripke_to_json(const KripkeModel& k) {
  json leq = json::array();
  json domains = json::object();
  json val = json::object();
  for (int u = 0; u < k.world_count(); ++u) {
    for (int v : k.successors(u)) leq.push_back({k.worlds()[u], k.worlds()[v]});
    json ds = json::array();
    for (int d : k.domain(u)) ds.push_back(k.objects()[d]);
    domains[k.worlds()[u]] = ds;
  }
  for (const auto& [p, arity] : k.letters()) {
    json per_world = json::object();
    for (int u = 0; u < k.world_count(); ++u) {
      json tuples = json::array();
      for (const auto& t : k.facts(p, u)) {
        json row = json::array();
        for (int d : t) row.push_back(k.objects()[d]);
        tuples.push_back(row);
      }
      per_world[k.worlds()[u]] = tuples;
    }
    val[p] = per_world;
  }
  return json{{"worlds", k.worlds()}, {"objects", k.objects()}, {"leq", leq},
              {"domains", domains},   {"val", val},             {"letters", k.letters()}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ModelError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace asimkit
