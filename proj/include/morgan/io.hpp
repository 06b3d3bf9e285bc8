#pragma once

#include <string>
#include <variant>

#include "json.hpp"
#include "morgan/algebra.hpp"
#include "morgan/involutive.hpp"
#include "morgan/poset.hpp"
#include "morgan/projectivity.hpp"
#include "morgan/unification.hpp"

namespace morgan::io {

using Json = nlohmann::ordered_json;
using Document = std::variant<Poset, InvPoset, FiniteAlgebra>;

/// Reads {"kind", "elements", "covers" | "le", "inv" | "neg"}. Throws
/// ValidationError on malformed or invalid input.
Document parse_document(const Json& j);
Document parse_document_text(const std::string& text);
Document read_document(const std::string& path);

/// Canonical form: kind, elements, covers, then inv or neg, in element order.
Json to_json(const Poset& p);
Json to_json(const InvPoset& p);
Json to_json(const FiniteAlgebra& a);
Json to_json(const Document& d);
/// Compact dump with a trailing newline.
std::string dump(const Json& j);

Json map_json(const std::vector<std::string>& dom_names, const std::vector<std::string>& cod_names,
              const std::vector<Elem>& map);
Json to_json(const Unifier& u);
Json to_json(const ConditionReport& r, const Poset& names);
Json to_json(const UnifClassification& c, const Poset& instance);

}  // namespace morgan::io
