#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "morgan/involutive.hpp"
#include "morgan/poset.hpp"
#include "morgan/variety.hpp"

namespace morgan {

/// Conditions M1-M3 and K1-K2. Each witness is present exactly when its flag
/// is false; an empty witness means "the structure (or S) is empty" for M1
/// and K1, and the empty set for M3. Witness elements index the input.
struct ConditionReport {
  bool m1 = true, m2 = true, m3 = true, k1 = true, k2 = true;
  std::optional<ElemSet> m1_witness;  // pair lacking a join or a meet
  std::optional<ElemSet> m2_witness;  // {x} with x <= i(x) and no fixed point above
  std::optional<ElemSet> m3_witness;  // pairwise bounded set without supremum in S
  std::optional<ElemSet> k1_witness;  // pair of S lacking a meet in S
  std::optional<ElemSet> k2_witness;  // pair with no common upper bound z <= i(z)
};

/// S = {x | x <= i(x)}, ascending.
ElemSet lower_half(const InvPoset& p);

struct ConditionOptions {
  /// Evaluate M3 by the triple-wise first-order statement when M1 holds.
  bool m3_first_order = false;
};

ConditionReport condition_report(const InvPoset& p, ConditionOptions options = {});

/// Triple (x, y, z) violating: pairwise joins below their involutions imply
/// the triple join is below its involution. Requires a lattice base.
std::optional<std::array<Elem, 3>> m3_first_order_violation(const InvPoset& p);

struct Projectivity {
  bool projective = false;
  ConditionReport report;
};

/// bdl: M1 on the bare poset.
Projectivity is_projective_dual(const Poset& p);
/// bdl: M1; demorgan: M1, M2, M3; kleene: M2, M3, K1, K2 (requires a Kleene
/// object, else PreconditionError).
Projectivity is_projective_dual(const InvPoset& p, Variety v);

/// Coordinates over D = {0,1,2,3}, one digit string per element of P.
struct Embedding {
  std::size_t n = 0;
  std::vector<std::vector<std::uint8_t>> coords;
};

/// One coordinate per element q, from X = (q] and X' = P \ i(X). With
/// `prune`, coordinates are dropped greedily while the contract holds.
Embedding canonical_embedding(const InvPoset& p, bool prune = false);
/// Injective, monotone, inv-commuting and order-reflecting.
bool is_valid_embedding(const InvPoset& p, const Embedding& e);
std::string coordinate_name(const std::vector<std::uint8_t>& digits);

/// The embedding as a morphism into D^n, or into its Kleene part when
/// `kleene_target`. Throws SizeGuardError for n > 6.
InvMorphism embedding_morphism(const InvPoset& p, const Embedding& e, bool kleene_target);

struct Retraction {
  InvMorphism embedding;  // P -> target
  InvMorphism retraction;  // target -> P
};

/// Constructive retraction onto the canonically embedded P. Throws
/// PreconditionError when P is not projective for the variety.
Retraction build_retraction(const InvPoset& p, Variety v, bool prune = false);
/// Same, for an explicit embedding into D^n or its Kleene part whose element
/// names are digit strings.
Retraction build_retraction(const InvMorphism& embedding, Variety v);

/// Exhaustive search for a retraction of `embedding`. Throws SizeGuardError
/// when the power exceeds D^4.
std::optional<InvMorphism> oracle_retraction_search(const InvMorphism& embedding);
/// Embeds canonically (target D^n or its Kleene part) and searches.
std::optional<InvMorphism> oracle_retraction_search(const InvPoset& p, Variety v);

/// 2^n with bit-string names, n <= 6.
Poset boolean_power(std::size_t n);
/// p -> (q <= p)_q into 2^|P|.
MonotoneMap boolean_embedding(const Poset& p);
/// Monotone retraction of 2^|P| onto the embedded P, if one exists.
std::optional<MonotoneMap> oracle_lattice_retraction(const Poset& p);

}  // namespace morgan
