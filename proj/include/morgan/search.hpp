#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "morgan/bitset.hpp"
#include "morgan/poset.hpp"

namespace morgan {

/// A constraint problem over maps dom -> cod: monotone, optionally commuting
/// with involutions on both sides, optionally restricted per element.
struct MapProblem {
  const Poset* dom = nullptr;
  const Poset* cod = nullptr;
  const std::vector<Elem>* dom_inv = nullptr;
  const std::vector<Elem>* cod_inv = nullptr;
  /// Allowed images per domain element; empty means unrestricted.
  std::vector<Bitset> allowed;
};

/// Backtracking with forward checking over comparable pairs and involution
/// partners. Branches on the most constrained element, ties broken by the
/// domain's linear extension, so the solution order is deterministic.
/// `visit` returns false to stop. Returns true if the search was stopped.
bool search_maps(const MapProblem& problem,
                 const std::function<bool(const std::vector<Elem>&)>& visit);

std::optional<std::vector<Elem>> find_map(const MapProblem& problem);

}  // namespace morgan
