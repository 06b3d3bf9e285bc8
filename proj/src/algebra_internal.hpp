#pragma once

#include "morgan/algebra.hpp"

namespace morgan {

/// Builds the derived tables. Always checks the lattice property; checks
/// distributivity and the neg laws only when `check_laws` is set.
FiniteAlgebra assemble_algebra(Poset carrier, std::optional<std::vector<Elem>> neg, bool check_laws);

}  // namespace morgan
