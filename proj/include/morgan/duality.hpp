#pragma once

#include <vector>

#include "morgan/algebra.hpp"
#include "morgan/involutive.hpp"
#include "morgan/poset.hpp"
#include "morgan/variety.hpp"

namespace morgan {

/// Nonzero x such that x = a v b forces x in {a, b}; ascending.
ElemSet join_irreducible_elements(const FiniteAlgebra& a);
/// The join-irreducibles with inherited order; names are those of `a`.
Poset join_irreducibles(const FiniteAlgebra& a);

/// All downsets of `p`, ordered by size then by their sorted element lists.
std::vector<Bitset> downsets(const Poset& p);
/// "{a,b}" with elements in the poset's canonical order.
std::string downset_name(const Poset& p, const Bitset& set);

/// Downsets under inclusion. Throws SizeGuardError above 1024 downsets.
FiniteAlgebra downset_algebra(const Poset& p);

/// Join-irreducibles with i(x) = meet(A \ {a' | a >= x}). Requires a negation.
InvPoset demorgan_dual(const FiniteAlgebra& a);
/// Downset algebra of the base with X' = P \ i(X).
FiniteAlgebra demorgan_from_dual(const InvPoset& p);

/// x -> meet{y in dom | h(y) >= x}, from the join-irreducibles of cod h to
/// those of dom h.
MonotoneMap dual_of_hom(const Homomorphism& h);
/// The same formula between De Morgan duals; requires negations on both sides.
InvMorphism dual_of_demorgan_hom(const Homomorphism& h);

/// Preimage map D(cod f) -> D(dom f) between downset algebras.
Homomorphism hom_of_map(const MonotoneMap& f);
/// Preimage map between the De Morgan algebras of the involutive posets.
Homomorphism hom_of_morphism(const InvMorphism& f);

/// Canonical isomorphism A -> D(J(A)): a maps to the index of {j <= a}.
std::vector<Elem> representation_map(const FiniteAlgebra& a);
/// Canonical isomorphism P -> J(D(P)): p maps to the index of (p] in the
/// downset algebra.
std::vector<Elem> principal_downset_map(const Poset& p);

/// Dual of the free algebra on n generators: D^n for dm, its Kleene part for
/// kleene. Throws SizeGuardError when n > max_n.
InvPoset free_dual(Variety v, std::size_t n, std::size_t max_n = 3);

}  // namespace morgan
