#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace morgan {

enum class Variety { bdl, kleene, demorgan };

inline std::string to_string(Variety v) {
  switch (v) {
    case Variety::bdl: return "bdl";
    case Variety::kleene: return "kleene";
    case Variety::demorgan: return "dm";
  }
  return "?";
}

/// Accepts "bdl", "kleene", and "dm" or "demorgan".
inline std::optional<Variety> parse_variety(std::string_view s) {
  if (s == "bdl") return Variety::bdl;
  if (s == "kleene") return Variety::kleene;
  if (s == "dm" || s == "demorgan") return Variety::demorgan;
  return std::nullopt;
}

}  // namespace morgan
