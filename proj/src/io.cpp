#include "morgan/io.hpp"

#include <fstream>
#include <sstream>

#include "morgan/error.hpp"

namespace morgan::io {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw ValidationError("malformed document: " + what);
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing \"") + key + "\"");
  return *it;
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::vector<std::pair<std::string, std::string>> pairs_of(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string("\"") + what + "\" must be an array of pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (const Json& p : j) {
    if (!p.is_array() || p.size() != 2) malformed(std::string("\"") + what + "\" entries must be pairs");
    out.emplace_back(as_string(p[0], what), as_string(p[1], what));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> mapping_of(const Json& j, const char* what) {
  if (j.is_array()) return pairs_of(j, what);
  if (!j.is_object()) malformed(std::string("\"") + what + "\" must be an object");
  std::vector<std::pair<std::string, std::string>> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.emplace_back(it.key(), as_string(it.value(), what));
  return out;
}

RawPoset raw_of(const Json& j) {
  RawPoset raw;
  const Json& elements = field(j, "elements");
  if (!elements.is_array()) malformed("\"elements\" must be an array");
  for (const Json& e : elements) raw.elements.push_back(as_string(e, "element"));
  const bool has_covers = j.contains("covers"), has_le = j.contains("le");
  if (has_covers == has_le) malformed("exactly one of \"covers\" and \"le\" is required");
  raw.closure = has_covers ? Closure::cover_relation : Closure::full_relation;
  raw.pairs = pairs_of(j[has_covers ? "covers" : "le"], has_covers ? "covers" : "le");
  return raw;
}

Json covers_json(const Poset& p) {
  Json covers = Json::array();
  for (auto [x, y] : p.covers()) covers.push_back({p.name(x), p.name(y)});
  return covers;
}

Json head(const char* kind, const Poset& p) {
  Json j;
  j["kind"] = kind;
  j["elements"] = p.names();
  j["covers"] = covers_json(p);
  return j;
}

}  // namespace

Document parse_document(const Json& j) {
  if (!j.is_object()) malformed("top level must be an object");
  const std::string kind = as_string(field(j, "kind"), "\"kind\"");
  if (kind == "poset") return validate_poset(raw_of(j));
  if (kind == "invposet") return validate_involutive(validate_poset(raw_of(j)), mapping_of(field(j, "inv"), "inv"));
  if (kind == "algebra") {
    std::optional<std::vector<std::pair<std::string, std::string>>> neg;
    if (j.contains("neg")) neg = mapping_of(j["neg"], "neg");
    return validate_algebra(raw_of(j), neg);
  }
  malformed("unknown kind \"" + kind + "\"");
}

Document parse_document_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(e.what());
  }
  return parse_document(j);
}

Document read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_document_text(buffer.str());
}

Json to_json(const Poset& p) { return head("poset", p); }

Json to_json(const InvPoset& p) {
  Json j = head("invposet", p.base());
  j["inv"] = map_json(p.base().names(), p.base().names(), p.inv());
  return j;
}

Json to_json(const FiniteAlgebra& a) {
  Json j = head("algebra", a.carrier());
  if (a.has_neg()) j["neg"] = map_json(a.carrier().names(), a.carrier().names(), *a.negation());
  return j;
}

Json to_json(const Document& d) {
  return std::visit([](const auto& x) { return to_json(x); }, d);
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

Json map_json(const std::vector<std::string>& dom_names, const std::vector<std::string>& cod_names,
              const std::vector<Elem>& map) {
  Json j = Json::object();
  for (Elem x = 0; x < map.size(); ++x) j[dom_names[x]] = cod_names[map[x]];
  return j;
}

Json to_json(const Unifier& u) {
  return std::visit(
      [](const auto& m) {
        Json j;
        j["domain"] = to_json(m.dom);
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, MonotoneMap>)
          j["map"] = map_json(m.dom.names(), m.cod.names(), m.map);
        else
          j["map"] = map_json(m.dom.base().names(), m.cod.base().names(), m.map);
        return j;
      },
      u);
}

Json to_json(const ConditionReport& r, const Poset& names) {
  Json j;
  const std::pair<const char*, std::pair<bool, const std::optional<ElemSet>*>> rows[] = {
      {"m1", {r.m1, &r.m1_witness}}, {"m2", {r.m2, &r.m2_witness}}, {"m3", {r.m3, &r.m3_witness}},
      {"k1", {r.k1, &r.k1_witness}}, {"k2", {r.k2, &r.k2_witness}}};
  Json witnesses = Json::object();
  for (const auto& [key, row] : rows) {
    j[key] = row.first;
    if (*row.second) {
      Json w = Json::array();
      for (Elem e : **row.second) w.push_back(names.name(e));
      witnesses[key] = w;
    }
  }
  j["witnesses"] = witnesses;
  return j;
}

Json to_json(const UnifClassification& c, const Poset& instance) {
  Json j;
  j["solvable"] = c.solvable;
  if (!c.solvable) return j;
  j["type"] = to_string(*c.type);
  Json cert;
  if (const auto* mg = std::get_if<MostGeneral>(&*c.certificate)) {
    cert["most_general"] = to_json(mg->unifier);
  } else if (const auto* mu = std::get_if<MuSet>(&*c.certificate)) {
    Json list = Json::array();
    for (const Unifier& u : mu->unifiers) list.push_back(to_json(u));
    cert["mu_set"] = list;
  } else {
    const auto& np = std::get<NullPattern>(*c.certificate);
    cert["family"] = to_string(np.family);
    Json tuple = Json::array();
    for (Elem e : np.tuple) tuple.push_back(instance.name(e));
    cert["tuple"] = tuple;
  }
  j["certificate"] = cert;
  if (c.core) j["core"] = to_json(c.core->structure);
  return j;
}

}  // namespace morgan::io
