#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "asimkit/asimulation.hpp"
#include "asimkit/classify.hpp"
#include "asimkit/error.hpp"
#include "asimkit/fo_model.hpp"
#include "asimkit/formulas.hpp"
#include "asimkit/kripke.hpp"
#include "asimkit/model_io.hpp"
#include "asimkit/parser.hpp"
#include "asimkit/search.hpp"
#include "asimkit/suites.hpp"
#include "asimkit/theory.hpp"
#include "asimkit/translation.hpp"

using namespace asimkit;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string vocab_file;
  std::string atom_mode;
  bool json = false;

  std::optional<Vocabulary> vocab;

  const Vocabulary* vocabulary() {
    if (!vocab && !vocab_file.empty()) vocab = vocabulary_from_json(read_json_file(vocab_file));
    return vocab ? &*vocab : nullptr;
  }

  AtomMode mode(AtomMode fallback) const { return atom_mode.empty() ? fallback : parse_atom_mode(atom_mode); }
};

std::shared_ptr<const FoModel> load_model(Globals& g, const std::string& path) {
  return std::make_shared<const FoModel>(fo_model_from_json(read_json_file(path), g.vocabulary()));
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  }
}

std::pair<std::string, std::string> split_pair(const std::string& s) {
  const auto bar = s.find('|');
  if (bar == std::string::npos) throw Error("expected two points separated by '|', got '" + s + "'");
  return {s.substr(0, bar), s.substr(bar + 1)};
}

// parse ---------------------------------------------------------------------

int cmd_parse(Globals& g, const std::string& text, bool classical) {
  if (classical) {
    const auto f = parse_fo(text, g.vocabulary());
    json j{{"formula", to_string(f)}, {"free_vars", free_vars(f)}, {"degree", degree(f)}};
    emit(g, j, to_string(f));
  } else {
    const auto f = parse_int(text, g.vocabulary());
    json j{{"formula", to_string(f)},
           {"free_vars", free_vars(f)},
           {"depth", f.depth()},
           {"translation_degree", translation_degree(f)}};
    emit(g, j, to_string(f));
  }
  return kOk;
}

int cmd_translate(Globals& g, const std::string& text, const std::string& var) {
  const auto i = parse_int(text, g.vocabulary());
  const auto st = standard_translation(i, var);
  json j{{"formula", to_string(i)}, {"translation", to_string(st)}, {"degree", translation_degree(i)}};
  emit(g, j, to_string(st));
  return kOk;
}

int cmd_eval(Globals& g, const std::string& model_path, const std::string& text, const std::string& point,
             const std::string& var) {
  auto m = load_model(g, model_path);
  const auto phi = parse_fo(text, g.vocabulary());
  const auto pt = EvalPoint::parse(m, point);
  const bool v = satisfies_at(pt, phi, point_vars(pt.arity(), var));
  emit(g, {{"formula", to_string(phi)}, {"point", pt.to_string()}, {"value", v}}, v ? "true" : "false");
  return v ? kOk : kNegative;
}

int cmd_force(Globals& g, const std::string& path, const std::string& text, const std::string& world,
              const std::vector<std::string>& assigns) {
  const auto k = kripke_from_json(read_json_file(path));
  const auto i = parse_int(text, g.vocabulary());
  KripkeAssignment asg;
  for (const auto& a : assigns) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw Error("assignment '" + a + "' is not of the form var=object");
    asg[a.substr(0, eq)] = a.substr(eq + 1);
  }
  const bool v = force(k, world, asg, i);
  emit(g, {{"formula", to_string(i)}, {"world", world}, {"value", v}}, v ? "true" : "false");
  return v ? kOk : kNegative;
}

int cmd_encode(Globals& g, const std::string& path) {
  const auto k = kripke_from_json(read_json_file(path));
  const auto enc = kripke_to_fo(k);
  json j = fo_model_to_json(*enc.model);
  j["issues"] = enc.issues;
  if (g.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fo_model_to_json(*enc.model).dump(2) << "\n";
    for (const auto& issue : enc.issues) std::cerr << "warning: " << issue << "\n";
  }
  return kOk;
}

int cmd_classify(Globals& g, const std::string& path) {
  auto m = load_model(g, path);
  const auto r = classify_model(*m);
  json j{{"rt", r.rt}, {"mon", r.mon}, {"er", r.er}, {"type_ok", r.type_ok}, {"cd", r.cd}};
  json w = json::object();
  std::ostringstream os;
  const std::pair<const char*, bool> flags[] = {{"RT", r.rt}, {"Mon", r.mon}, {"ER", r.er}, {"Type", r.type_ok}, {"CD", r.cd}};
  for (const auto& [name, ok] : flags) {
    os << name << ": " << (ok ? "yes" : "no");
    auto it = r.witnesses.find(name);
    if (it != r.witnesses.end()) {
      json a = json::object();
      os << "  (";
      bool first = true;
      for (const auto& [var, id] : it->second.assignment) {
        a[var] = id;
        os << (first ? "" : ", ") << var << "=" << id;
        first = false;
      }
      os << " falsifies " << it->second.sentence << ")";
      w[name] = {{"sentence", it->second.sentence}, {"assignment", a}};
    }
    os << "\n";
  }
  j["witnesses"] = w;
  emit(g, j, os.str());
  return r.rt && r.mon && r.er && r.type_ok && r.cd ? kOk : kNegative;
}

// asim ----------------------------------------------------------------------

json relation_json(const AsimRelation& a) {
  json states = json::array();
  for (const auto& s : a.states) states.push_back(to_string(s, a.model(s.left), a.model(other(s.left))));
  return {{"seed", a.seed_left.to_string() + "|" + a.seed_right.to_string()},
          {"n", a.n},
          {"k", a.k},
          {"atom_mode", atom_mode_name(a.mode)},
          {"states", states}};
}

json relation_json(const QuotientRelation& a) {
  json states = json::array();
  for (const auto& s : a.states) states.push_back(to_string(s, a.model(s.left), a.model(other(s.left))));
  return {{"seed", a.seed_left.to_string() + "|" + a.seed_right.to_string()}, {"states", states}};
}

std::string relation_text(const json& j) {
  std::ostringstream os;
  os << "seed " << j["seed"].get<std::string>() << "\n";
  if (j.contains("k")) {
    os << "n " << j["n"] << " k " << j["k"] << " atom-mode " << j["atom_mode"].get<std::string>() << "\n";
  }
  os << "states " << j["states"].size() << "\n";
  for (const auto& s : j["states"]) os << s.get<std::string>() << "\n";
  return os.str();
}

int cmd_asim(Globals& g, const std::string& pm, const std::string& pn, int k, const std::string& seed,
             const std::string& dump, bool quotient) {
  auto m = load_model(g, pm);
  auto n = load_model(g, pn);
  const auto [sl, sr] = split_pair(seed);
  const auto l = EvalPoint::parse(m, sl);
  const auto r = EvalPoint::parse(n, sr);
  json j{{"seed", seed}};
  std::optional<json> rel;
  if (quotient) {
    if (auto q = max_asimulation_quotient(l, r)) rel = relation_json(*q);
  } else {
    if (auto a = max_k_asimulation(l, r, k, g.mode(AtomMode::Literal))) rel = relation_json(*a);
  }
  j["found"] = rel.has_value();
  if (rel) j["size"] = (*rel)["states"].size();
  if (rel && !dump.empty()) {
    std::ofstream out(dump);
    if (!out) throw Error("cannot write '" + dump + "'");
    out << (g.json ? rel->dump(2) + "\n" : relation_text(*rel));
  }
  std::string text = rel ? "relation found, " + std::to_string((*rel)["states"].size()) + " states" : "no relation";
  emit(g, j, text);
  return rel ? kOk : kNegative;
}

// theory --------------------------------------------------------------------

int cmd_theory(Globals& g, const std::string& pm, const std::string& pn, int k, int arity, const std::string& leq,
               const std::string& complete) {
  auto m = load_model(g, pm);
  auto n = load_model(g, pn);
  FamilyOptions opts;
  opts.mode = g.mode(AtomMode::Full);
  auto parse_point = [&](const std::string& s) {
    const auto bar = s.find('@');
    // "N@c;d" selects the second model; plain points are looked up in M first.
    if (bar != std::string::npos) return EvalPoint::parse(s.substr(0, bar) == "N" ? n : m, s.substr(bar + 1));
    try {
      return EvalPoint::parse(m, s);
    } catch (const ModelError&) {
      return EvalPoint::parse(n, s);
    }
  };
  int budget = arity + k;
  std::optional<EvalPoint> leq_l, leq_r, comp;
  if (!leq.empty()) {
    const auto [a, b] = split_pair(leq);
    leq_l = parse_point(a);
    leq_r = parse_point(b);
    budget = std::max(budget, leq_l->arity() + k);
  }
  if (!complete.empty()) {
    comp = parse_point(complete);
    budget = std::max(budget, comp->arity() + k);
  }
  DefinableFamily fam(m, n, budget, opts);
  json j{{"k", k}, {"arity", arity}, {"budget", budget}, {"atom_mode", atom_mode_name(opts.mode)}};
  std::ostringstream os;
  int code = kOk;
  if (leq_l) {
    const bool v = theory_leq(*leq_l, *leq_r, k, fam);
    j["leq"] = v;
    os << "leq " << (v ? "true" : "false") << "\n";
    if (!v) code = kNegative;
  }
  if (comp) {
    const auto c = complete_conjunction(*comp, k, fam);
    j["complete"] = to_string(c);
    os << "complete " << to_string(c) << "\n";
  }
  if (!leq_l && !comp) {
    json layers = json::array();
    for (int l = 0; l <= arity; ++l) {
      for (int gr = 0; gr <= k; ++gr) {
        json vals = json::array();
        os << "arity " << l << " grade " << gr << "\n";
        for (const auto& v : fam.values(l, gr)) {
          std::vector<std::string> pts;
          v.members.for_each([&](std::size_t p) { pts.push_back(fam.point_name(l, p)); });
          vals.push_back({{"witness", to_string(v.witness)}, {"points", pts}});
          os << "  " << to_string(v.witness) << " : {";
          for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? ", " : "") << pts[i];
          os << "}\n";
        }
        layers.push_back({{"arity", l}, {"grade", gr}, {"values", vals}});
      }
    }
    j["family"] = layers;
  }
  emit(g, j, os.str());
  return code;
}

// search / suite ------------------------------------------------------------

struct GenFlags {
  GenConfig cfg;
  void add(CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--max-domain", cfg.max_domain, "largest sampled domain")->capture_default_str();
    sub->add_option("--max-worlds", cfg.max_worlds, "largest sampled Kripke model")->capture_default_str();
    sub->add_option("--max-arity", cfg.max_arity, "largest point arity")->capture_default_str();
    sub->add_option("--max-k", cfg.max_k, "largest k")->capture_default_str();
    sub->add_option("--density", cfg.density, "probability of each tuple")->capture_default_str();
    sub->add_option("--depth", cfg.depth, "formula depth")->capture_default_str();
    sub->add_option("--cases", cfg.cases, "number of cases")->capture_default_str();
  }
};

int cmd_search(Globals& g, const std::string& text, const GenConfig& cfg, const std::string& dump) {
  const auto phi = parse_fo(text, g.vocabulary());
  const auto res = search_noninvariance(phi, cfg, cfg.cases, g.mode(AtomMode::Full));
  json j{{"formula", to_string(phi)}, {"cases", res.cases}, {"found", res.witness.has_value()}};
  std::ostringstream os;
  if (res.witness) {
    const auto& w = *res.witness;
    j["witness"] = witness_to_json(w);
    os << "witness at case " << w.case_index << ", k = " << w.k << "\n"
       << "M: " << fo_model_to_json(*w.left.model).dump() << "\n"
       << "N: " << fo_model_to_json(*w.right.model).dump() << "\n"
       << "left " << w.left.to_string() << " satisfies, right " << w.right.to_string() << " does not\n"
       << w.relation.states.size() << " related states\n";
    if (!dump.empty()) {
      std::ofstream out(dump);
      if (!out) throw Error("cannot write '" + dump + "'");
      out << witness_to_json(w).dump(2) << "\n";
    }
  } else {
    os << "no witness in " << res.cases << " cases" << (res.small_exhausted ? " (all pairs with domains <= 2 tried)" : "")
       << "\n";
  }
  emit(g, j, os.str());
  return res.witness ? kNegative : kOk;
}

int cmd_suite(Globals& g, const std::string& name, const GenConfig& cfg) {
  const auto report = run_property_suite(name, cfg);
  emit(g, report.to_json(), report.to_text());
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asimkit: asimulations, standard translations and intuitionistic predicate logic"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--vocab", g.vocab_file, "JSON vocabulary file")->check(CLI::ExistingFile);
  app.add_option("--atom-mode", g.atom_mode, "literal or full")->check(CLI::IsMember({"literal", "full"}));
  app.add_flag("--json", g.json, "machine-readable output");

  std::string formula, model_a, model_b, point, var = "x", world, seed, dump, leq, complete, suite_name;
  std::vector<std::string> assigns;
  bool classical = false, quotient = false;
  int k = 0, arity = 0;

  auto* parse = app.add_subcommand("parse", "parse and print a formula");
  parse->add_option("formula", formula)->required();
  parse->add_flag("--fo", classical, "first-order formula");

  auto* translate = app.add_subcommand("translate", "standard translation of an intuitionistic formula");
  translate->add_option("formula", formula)->required();
  translate->add_option("--var", var, "world variable")->capture_default_str();

  auto* eval = app.add_subcommand("eval", "evaluate a first-order formula at a point");
  eval->add_option("model", model_a)->required()->check(CLI::ExistingFile);
  eval->add_option("formula", formula)->required();
  eval->add_option("--point", point, "a;b1,b2")->required();
  eval->add_option("--var", var, "world variable")->capture_default_str();

  auto* forcec = app.add_subcommand("force", "Kripke forcing");
  forcec->add_option("model", model_a)->required()->check(CLI::ExistingFile);
  forcec->add_option("formula", formula)->required();
  forcec->add_option("--world", world)->required();
  forcec->add_option("--assign", assigns, "var=object");

  auto* encode = app.add_subcommand("encode", "first-order encoding of a Kripke model");
  encode->add_option("model", model_a)->required()->check(CLI::ExistingFile);

  auto* classify = app.add_subcommand("classify", "check the axioms of intended models");
  classify->add_option("model", model_a)->required()->check(CLI::ExistingFile);

  auto* asim = app.add_subcommand("asim", "greatest k-asimulation between two points");
  asim->add_option("modelM", model_a)->required()->check(CLI::ExistingFile);
  asim->add_option("modelN", model_b)->required()->check(CLI::ExistingFile);
  asim->add_option("--k", k)->capture_default_str()->check(CLI::NonNegativeNumber);
  asim->add_option("--seed", seed, "\"a;b1|c;d1\"")->required();
  asim->add_option("--dump", dump, "write the relation to this file");
  asim->add_flag("--quotient", quotient, "asimulation over tuple-free states");

  auto* theory = app.add_subcommand("theory", "graded families of translation values");
  theory->add_option("modelM", model_a)->required()->check(CLI::ExistingFile);
  theory->add_option("modelN", model_b)->required()->check(CLI::ExistingFile);
  theory->add_option("--k", k)->capture_default_str()->check(CLI::NonNegativeNumber);
  theory->add_option("--arity", arity)->capture_default_str()->check(CLI::NonNegativeNumber);
  theory->add_option("--leq", leq, "\"ptL|ptR\"; prefix a point with N@ to pick the second model");
  theory->add_option("--complete", complete, "point whose complete conjunction is printed");

  GenFlags search_flags, suite_flags;
  search_flags.cfg.cases = 10000;
  auto* search = app.add_subcommand("search", "look for a k-asimulation that does not preserve a formula");
  search->add_option("formula", formula)->required();
  search->add_option("--dump", dump, "write the witness to this file");
  search_flags.add(search);

  auto* suite = app.add_subcommand("suite", "run a property suite");
  suite->add_option("name", suite_name)->required()->check(CLI::IsMember(suite_names()));
  suite_flags.add(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) return cmd_parse(g, formula, classical);
    if (*translate) return cmd_translate(g, formula, var);
    if (*eval) return cmd_eval(g, model_a, formula, point, var);
    if (*forcec) return cmd_force(g, model_a, formula, world, assigns);
    if (*encode) return cmd_encode(g, model_a);
    if (*classify) return cmd_classify(g, model_a);
    if (*asim) return cmd_asim(g, model_a, model_b, k, seed, dump, quotient);
    if (*theory) return cmd_theory(g, model_a, model_b, k, arity, leq, complete);
    if (*search) return cmd_search(g, formula, search_flags.cfg, dump);
    if (*suite) return cmd_suite(g, suite_name, suite_flags.cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
