#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>

#include "asimkit/fo_model.hpp"
#include "asimkit/formulas.hpp"
#include "asimkit/kripke.hpp"

namespace asimkit {

struct ConnectiveWeights {
  double atom = 3;
  double bottom = 1;
  double conj = 2;
  double disj = 2;
  double implies = 2;
  double exists = 1;
  double forall = 1;
};

struct GenConfig {
  int max_domain = 3;
  int max_worlds = 3;
  /// Objects available to Kripke models.
  int max_objects = 2;
  /// Largest intuitionistic arity used by random letters and points.
  int max_arity = 1;
  /// Largest k for suites that sample k-asimulations.
  int max_k = 3;
  double density = 0.3;
  int depth = 3;
  ConnectiveWeights weights;
  std::uint64_t seed = 1;
  /// Intuitionistic letters and arities.
  std::map<std::string, int> letters{{"P", 1}, {"Q", 0}};
  /// Number of cases for suites and searches; zero is allowed.
  std::size_t cases = 1000;

  /// Throws Error when a bound is not positive or the density is outside [0, 1].
  void validate() const;
  /// R, E and the classical images of `letters`.
  Vocabulary vocabulary() const;
};

class Generator {
 public:
  explicit Generator(GenConfig cfg);

  std::mt19937_64& rng() { return rng_; }
  const GenConfig& config() const { return cfg_; }

  int uniform(int lo, int hi);
  bool coin(double p);

  /// Domain size in [1, max_domain], every tuple present with probability `density`.
  FoModel fo_model();
  FoModel fo_model(const Vocabulary& vocab, int domain_size);
  /// Order, domains and valuation are closed upward, so the result validates.
  /// Every world gets a nonempty domain.
  KripkeModel kripke();
  /// Free variables among w1..w<free_vars>; depth bounds the nesting of connectives.
  IntFormula int_formula(int free_vars);
  IntFormula int_formula(int free_vars, int depth);

 private:
  IntFormula formula_rec(int depth, int bound);

  GenConfig cfg_;
  std::mt19937_64 rng_;
};

FoModel gen_fo_model(const GenConfig& cfg);
KripkeModel gen_kripke(const GenConfig& cfg);
IntFormula gen_int_formula(const GenConfig& cfg);

}  // namespace asimkit
