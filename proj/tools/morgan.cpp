#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "morgan/duality.hpp"
#include "morgan/error.hpp"
#include "morgan/io.hpp"
#include "morgan/projectivity.hpp"
#include "morgan/unification.hpp"

using namespace morgan;
using io::Json;

namespace {

enum Exit { ok = 0, malformed = 1, unsolvable = 2, precondition = 3, size_guard = 4 };

struct Options {
  std::string file;
  std::string direction;
  std::string variety;
  std::string family;
  std::string check;
  std::size_t n = 1;
  std::size_t bound = 3;
  bool with_schema = false;
  bool prune = false;
};

Variety variety_of(const std::string& s) {
  auto v = parse_variety(s);
  if (!v) throw PreconditionError("unknown variety " + s);
  return *v;
}

// Posets stand in for bdl instances; algebras are dualized first.
InvPoset as_invposet(const io::Document& d) {
  if (const auto* p = std::get_if<InvPoset>(&d)) return *p;
  if (const auto* a = std::get_if<FiniteAlgebra>(&d)) {
    if (a->has_neg()) return demorgan_dual(*a);
    throw PreconditionError("algebra has no negation");
  }
  throw PreconditionError("an involutive poset is required");
}

Poset as_poset(const io::Document& d) {
  if (const auto* p = std::get_if<Poset>(&d)) return *p;
  if (const auto* p = std::get_if<InvPoset>(&d)) return p->base();
  return join_irreducibles(std::get<FiniteAlgebra>(d));
}

int emit(const Json& j, int code = ok) {
  std::cout << io::dump(j);
  return code;
}

int cmd_validate(const Options& o) { return emit(io::to_json(io::read_document(o.file))); }

int cmd_dualize(const Options& o) {
  io::Document d = io::read_document(o.file);
  if (o.direction == "to-dual") {
    const auto* a = std::get_if<FiniteAlgebra>(&d);
    if (!a) throw PreconditionError("to-dual expects an algebra");
    return a->has_neg() ? emit(io::to_json(demorgan_dual(*a))) : emit(io::to_json(join_irreducibles(*a)));
  }
  if (const auto* p = std::get_if<InvPoset>(&d)) return emit(io::to_json(demorgan_from_dual(*p)));
  if (const auto* p = std::get_if<Poset>(&d)) return emit(io::to_json(downset_algebra(*p)));
  throw PreconditionError("to-algebra expects a poset or an involutive poset");
}

int cmd_free(const Options& o) {
  return emit(io::to_json(free_dual(variety_of(o.variety), o.n)));
}

int cmd_projective(const Options& o) {
  io::Document d = io::read_document(o.file);
  Variety v = variety_of(o.variety);
  Json j;
  if (v == Variety::bdl) {
    Poset p = as_poset(d);
    Projectivity r = is_projective_dual(p);
    j["projective"] = r.projective;
    j["conditions"] = io::to_json(r.report, p);
  } else {
    InvPoset p = as_invposet(d);
    Projectivity r = is_projective_dual(p, v);
    j["projective"] = r.projective;
    j["conditions"] = io::to_json(r.report, p.base());
  }
  return emit(j);
}

int cmd_classify(const Options& o) {
  io::Document d = io::read_document(o.file);
  Variety v = variety_of(o.variety);
  if (v == Variety::bdl) {
    Poset p = as_poset(d);
    UnifClassification c = classify(p);
    return emit(io::to_json(c, p), c.solvable ? ok : unsolvable);
  }
  InvPoset p = as_invposet(d);
  UnifClassification c = classify(p, v);
  return emit(io::to_json(c, p.base()), c.solvable ? ok : unsolvable);
}

int cmd_core(const Options& o) {
  InvPoset p = as_invposet(io::read_document(o.file));
  Variety v = variety_of(o.variety);
  if (v == Variety::bdl) throw PreconditionError("cores are defined for kleene and dm");
  Core c = v == Variety::kleene ? kleene_core(p) : demorgan_core(p);
  return emit(io::to_json(c.structure));
}

int cmd_witness(const Options& o) {
  auto f = parse_family(o.family);
  if (!f) throw PreconditionError("unknown family " + o.family);
  Witness w = witness_family(*f, o.n);
  Json doc = w.structure ? io::to_json(*w.structure) : io::to_json(w.poset);
  if (!o.with_schema) return emit(doc);
  const auto slots = pattern_slots(*f);
  Json schema = Json::object();
  for (Elem t = 0; t < w.schema.size(); ++t)
    schema[w.poset.name(t)] = (w.schema[t].inverted ? "~" : "") + slots[w.schema[t].slot];
  Json j;
  j["structure"] = doc;
  j["slots"] = slots;
  j["schema"] = schema;
  return emit(j);
}

Json coords_json(const InvPoset& p, const Embedding& e) {
  Json coords = Json::object();
  for (Elem x = 0; x < p.size(); ++x) coords[p.name(x)] = coordinate_name(e.coords[x]);
  return coords;
}

int cmd_embed(const Options& o) {
  InvPoset p = as_invposet(io::read_document(o.file));
  Embedding e = canonical_embedding(p, o.prune);
  Json j;
  j["n"] = e.n;
  j["coords"] = coords_json(p, e);
  return emit(j);
}

int cmd_retract(const Options& o) {
  InvPoset p = as_invposet(io::read_document(o.file));
  Variety v = variety_of(o.variety);
  Retraction r = build_retraction(p, v, o.prune);
  Json j;
  j["n"] = r.embedding.cod.size() == 0 ? 0 : r.embedding.cod.name(0).size();
  j["embedding"] = io::map_json(p.base().names(), r.embedding.cod.base().names(), r.embedding.map);
  j["retraction"] = io::map_json(r.retraction.dom.base().names(), p.base().names(), r.retraction.map);
  return emit(j);
}

int cmd_oracle(const Options& o) {
  io::Document d = io::read_document(o.file);
  Variety v = variety_of(o.variety);
  Json j;
  if (o.check == "retraction") {
    bool theorem, oracle;
    if (v == Variety::bdl) {
      Poset p = as_poset(d);
      if (p.size() > 4) throw SizeGuardError("oracle search limited to 4 elements");
      theorem = is_projective_dual(p).projective;
      oracle = oracle_lattice_retraction(p).has_value();
    } else {
      InvPoset p = as_invposet(d);
      theorem = is_projective_dual(p, v).projective;
      oracle = oracle_retraction_search(p, v).has_value();
    }
    j["theorem"] = theorem;
    j["oracle"] = oracle;
    j["agree"] = theorem == oracle;
    return emit(j);
  }
  if (o.check != "unifiers") throw PreconditionError("unknown check " + o.check);
  Audit a = v == Variety::bdl ? audit_classification(as_poset(d), o.bound)
                              : audit_classification(as_invposet(d), v, o.bound);
  j["solvable"] = a.solvable;
  if (a.type) j["type"] = to_string(*a.type);
  j["unifiers"] = a.unifiers;
  j["failures"] = a.failures;
  j["agree"] = a.failures.empty();
  return emit(j);
}

int report(int code, const std::string& kind, const std::string& message,
           const std::vector<std::string>& witness = {}) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  if (!witness.empty()) j["witness"] = witness;
  std::cerr << io::dump(j);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projectivity and unification type for finite distributive, Kleene and De Morgan algebras"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> varieties{"bdl", "kleene", "dm", "demorgan"};

  auto* validate = app.add_subcommand("validate", "Check a document and print its canonical form");
  validate->add_option("file", o.file)->required();

  auto* dualize = app.add_subcommand("dualize", "Pass between an algebra and its dual");
  dualize->add_option("file", o.file)->required();
  dualize->add_option("--direction", o.direction)->required()->check(CLI::IsMember({"to-dual", "to-algebra"}));

  auto* free = app.add_subcommand("free", "Dual of the free algebra on n generators");
  free->add_option("--variety", o.variety)->required()->check(CLI::IsMember({"dm", "demorgan", "kleene"}));
  free->add_option("--n", o.n)->required();

  auto* projective = app.add_subcommand("projective", "Decide projectivity through the dual");
  projective->add_option("file", o.file)->required();
  projective->add_option("--variety", o.variety)->required()->check(CLI::IsMember(varieties));

  auto* classify_cmd = app.add_subcommand("classify", "Unification type with a certificate");
  classify_cmd->add_option("file", o.file)->required();
  classify_cmd->add_option("--variety", o.variety)->required()->check(CLI::IsMember(varieties));

  auto* core = app.add_subcommand("core", "Unification core");
  core->add_option("file", o.file)->required();
  core->add_option("--variety", o.variety)->required()->check(CLI::IsMember({"kleene", "dm", "demorgan"}));

  auto* witness = app.add_subcommand("witness", "Witness structure T_n of a nullarity pattern");
  witness->add_option("--family", o.family)->required()->check(CLI::IsMember({"bdl", "k1", "k2", "m1", "m2", "m3"}));
  witness->add_option("--n", o.n)->required();
  witness->add_flag("--with-schema", o.with_schema, "Also print the anchor of every element");

  auto* embed = app.add_subcommand("embed", "Canonical embedding into a power of the diamond");
  embed->add_option("file", o.file)->required();
  embed->add_flag("--prune", o.prune, "Drop redundant coordinates");

  auto* retract = app.add_subcommand("retract", "Retraction of the power onto the embedded structure");
  retract->add_option("file", o.file)->required();
  retract->add_option("--variety", o.variety)->required()->check(CLI::IsMember({"kleene", "dm", "demorgan"}));
  retract->add_flag("--prune", o.prune, "Drop redundant coordinates");

  auto* oracle = app.add_subcommand("oracle", "Cross-check against brute force");
  oracle->add_option("file", o.file)->required();
  oracle->add_option("--check", o.check)->required()->check(CLI::IsMember({"retraction", "unifiers"}));
  oracle->add_option("--variety", o.variety)->default_val("dm")->check(CLI::IsMember(varieties));
  oracle->add_option("--bound", o.bound)->default_val(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return malformed;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*dualize) return cmd_dualize(o);
    if (*free) return cmd_free(o);
    if (*projective) return cmd_projective(o);
    if (*classify_cmd) return cmd_classify(o);
    if (*core) return cmd_core(o);
    if (*witness) return cmd_witness(o);
    if (*embed) return cmd_embed(o);
    if (*retract) return cmd_retract(o);
    if (*oracle) return cmd_oracle(o);
  } catch (const ValidationError& e) {
    return report(malformed, "malformed", e.what(), e.witness());
  } catch (const PreconditionError& e) {
    return report(precondition, "precondition", e.what());
  } catch (const SizeGuardError& e) {
    return report(size_guard, "size_guard", e.what());
  } catch (const InternalError& e) {
    return report(70, "internal", e.what());
  }
  return malformed;
}
