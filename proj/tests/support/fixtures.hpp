#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "asimkit/fo_model.hpp"
#include "asimkit/kripke.hpp"

namespace fixtures {

using asimkit::FoModel;
using asimkit::KripkeModel;
using asimkit::Vocabulary;

using Facts = std::vector<std::pair<std::string, std::vector<std::string>>>;

inline Vocabulary vocab(const std::map<std::string, int>& intuitionistic) {
  Vocabulary v;
  for (const auto& [letter, arity] : intuitionistic) v.add_intuitionistic(letter, arity);
  return v;
}

inline std::shared_ptr<const FoModel> model(std::vector<std::string> domain, const Vocabulary& v, const Facts& facts) {
  auto m = std::make_shared<FoModel>(std::move(domain), v);
  for (const auto& [letter, ids] : facts) m->add(letter, ids);
  return m;
}

// Domain {a}, everything empty, one 0-ary letter P.
inline std::shared_ptr<const FoModel> m_minus() { return model({"a"}, vocab({{"P", 0}}), {}); }

// Domain {c}, P' = {c}.
inline std::shared_ptr<const FoModel> n_plus() { return model({"c"}, vocab({{"P", 0}}), {{"P'", {"c"}}}); }

// One world w seeing itself, one object d with P(d) at w.
inline std::shared_ptr<const FoModel> reflexive_world() {
  return model({"w", "d"}, vocab({{"P", 1}}), {{"R", {"w", "w"}}, {"E", {"w", "d"}}, {"P'", {"w", "d"}}});
}

// u <= v, D(u) = {d1}, D(v) = {d1, d2}, P(d1) at v only.
inline KripkeModel k2() {
  KripkeModel k({"u", "v"}, {"d1", "d2"}, {{"P", 1}});
  k.set_leq(0, 1);
  k.close_order();
  k.add_to_domain(0, 0);
  k.add_to_domain(1, 0);
  k.add_to_domain(1, 1);
  k.add_fact("P", 1, {0});
  k.validate();
  return k;
}

// As k2 but with D(u) = D(v) = {d1}.
inline KripkeModel k2_constant() {
  KripkeModel k({"u", "v"}, {"d1"}, {{"P", 1}});
  k.set_leq(0, 1);
  k.close_order();
  k.add_to_domain(0, 0);
  k.add_to_domain(1, 0);
  k.add_fact("P", 1, {0});
  k.validate();
  return k;
}

}  // namespace fixtures
