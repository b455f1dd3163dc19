#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "asimkit/fo_model.hpp"
#include "asimkit/formulas.hpp"

namespace asimkit {

/// Finite intuitionistic Kripke model with increasing domains. Worlds and
/// objects are addressed by index; ids are kept for I/O.
class KripkeModel {
 public:
  using World = int;
  using Object = int;

  /// `letters` maps intuitionistic letters to arities (0 allowed).
  KripkeModel(std::vector<std::string> worlds, std::vector<std::string> objects, std::map<std::string, int> letters);

  int world_count() const { return static_cast<int>(worlds_.size()); }
  int object_count() const { return static_cast<int>(objects_.size()); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::map<std::string, int>& letters() const { return letters_; }
  World world(const std::string& id) const;
  Object object(const std::string& id) const;

  void set_leq(World u, World v, bool value = true);
  void add_to_domain(World w, Object d);
  void add_fact(const std::string& letter, World w, const std::vector<Object>& args);
  /// Closes leq reflexively and transitively.
  void close_order();

  bool leq(World u, World v) const { return leq_[u][v]; }
  const std::vector<World>& successors(World w) const { return succ_[w]; }
  bool in_domain(World w, Object d) const { return in_domain_[w][d]; }
  std::vector<Object> domain(World w) const;
  bool fact(const std::string& letter, World w, const std::vector<Object>& args) const;
  /// Tuples of `letter` at `w` in lexicographic order.
  std::vector<std::vector<Object>> facts(const std::string& letter, World w) const;

  /// Checks reflexivity, transitivity, increasing domains, that facts lie in
  /// the world's domain, and persistence. Throws ModelError naming the first failure.
  void validate() const;

 private:
  std::vector<std::string> worlds_;
  std::vector<std::string> objects_;
  std::map<std::string, int> letters_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<World>> succ_;
  std::vector<std::vector<bool>> in_domain_;
  // letter -> world -> sorted tuples
  std::map<std::string, std::vector<std::vector<std::vector<Object>>>> val_;

  void rebuild_successors();
};

/// Assignment of object ids to variables.
using KripkeAssignment = std::map<Variable, std::string>;

bool force(const KripkeModel& k, KripkeModel::World w, const KripkeAssignment& assignment, const IntFormula& i);
bool force(const KripkeModel& k, const std::string& world, const KripkeAssignment& assignment, const IntFormula& i);

struct KripkeEncoding {
  std::shared_ptr<const FoModel> model;
  std::vector<Element> world_element;   // by world index
  std::vector<Element> object_element;  // by object index
  /// Departures from the intended class, e.g. worlds with an empty domain.
  std::vector<std::string> issues;
};

/// Domain = worlds followed by objects; an object id equal to a world id is
/// renamed by appending '#'. R = leq, E = {(w,d) | d in D(w)}, P' = {(w,d..) | P(d..) at w}.
KripkeEncoding kripke_to_fo(const KripkeModel& k);

/// The point (encoding, w, objects) for object indices `objs`.
EvalPoint encoded_point(const KripkeEncoding& enc, KripkeModel::World w, const std::vector<KripkeModel::Object>& objs);

}  // namespace asimkit
