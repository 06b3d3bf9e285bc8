#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "morgan/involutive.hpp"
#include "morgan/poset.hpp"
#include "morgan/variety.hpp"

namespace morgan {

enum class UnifType { unitary, finitary, nullary };
std::string to_string(UnifType t);

enum class Family { bdl, k1, k2, m1, m2, m3 };
std::string to_string(Family f);
std::optional<Family> parse_family(std::string_view s);

/// Monotone maps for bdl, involution morphisms for kleene and dm.
using Unifier = std::variant<MonotoneMap, InvMorphism>;

std::size_t domain_size(const Unifier& u);
std::size_t codomain_size(const Unifier& u);
Elem apply(const Unifier& u, Elem x);
/// Sorted image.
ElemSet image(const Unifier& u);

struct MostGeneral {
  Unifier unifier;
};
struct MuSet {
  std::vector<Unifier> unifiers;
};
/// `tuple` indexes the classified instance, slots in the order the pattern
/// lists them.
struct NullPattern {
  Family family;
  ElemSet tuple;
};
using Certificate = std::variant<MostGeneral, MuSet, NullPattern>;

/// A unification core: the substructure with its own order, and the
/// positions of its elements in the instance.
struct Core {
  InvPoset structure;
  ElemSet selected;
  /// Kleene only: the order clauses needed transitive closure.
  bool closure_extended = false;
};

struct UnifClassification {
  bool solvable = false;
  std::optional<UnifType> type;
  std::optional<Certificate> certificate;
  std::optional<Core> core;
};

/// bdl: nonempty; kleene and dm: some fixed point.
bool is_solvable(const Poset& q);
bool is_solvable(const InvPoset& q, Variety v);

/// Elements x, i(x) with x below a fixed point; x <=' y when x <= y and
/// both are below their involutions, or both above, or a fixed point lies
/// between them. Requires a Kleene object.
Core kleene_core(const InvPoset& q);
/// Elements x, i(x) with a single y below x, i(x) and some fixed point;
/// order restricted from q.
Core demorgan_core(const InvPoset& q);

UnifClassification classify(const Poset& q);
/// For Variety::bdl the involution is ignored.
UnifClassification classify(const InvPoset& q, Variety v);

/// Throws PreconditionError unless the instance is finitary.
std::vector<Unifier> mu_set(const Poset& q);
std::vector<Unifier> mu_set(const InvPoset& q, Variety v);

/// First tuple, in canonical order, satisfying every clause of the family's
/// pattern. bdl reads only the order.
std::optional<ElemSet> find_null_pattern(const InvPoset& q, Family f);
std::optional<ElemSet> find_null_pattern(const Poset& q, Family f);
/// Re-checks every clause, the negative one by exhaustive search.
bool verify_null_pattern(const InvPoset& q, Family f, const ElemSet& tuple);
bool verify_null_pattern(const Poset& q, Family f, const ElemSet& tuple);
std::size_t pattern_arity(Family f);
std::vector<std::string> pattern_slots(Family f);

/// u_n(t) is tuple[slot], or its involution when `inverted`.
struct AnchorRef {
  std::size_t slot = 0;
  bool inverted = false;
};

struct Witness {
  Family family;
  std::size_t n = 0;
  /// T_n; for bdl the involution is absent and `poset` carries the order.
  Poset poset;
  std::optional<InvPoset> structure;
  std::vector<AnchorRef> schema;
};

/// T_n and the schema of u_n. m3 shares the k2 construction. Throws
/// PreconditionError below the family minimum (and for even n in m2).
Witness witness_family(Family f, std::size_t n);
/// u_n against a pattern tuple in q; validated.
Unifier instantiate(const Witness& w, const InvPoset& q, const ElemSet& tuple);
Unifier instantiate(const Witness& w, const Poset& q, const ElemSet& tuple);
/// Closed-form |T_n|.
std::size_t witness_size(Family f, std::size_t n);

/// u1 is more general than u2: some morphism g from dom u2 to dom u1 with
/// u1 after g equal to u2. Throws PreconditionError on codomain mismatch.
bool more_general(const Unifier& u1, const Unifier& u2);

/// Projective-dual domains with at most k elements, one per isomorphism
/// class. Throws SizeGuardError for k > 5.
std::vector<Poset> projective_lattice_domains(std::size_t k);
std::vector<InvPoset> projective_domains(Variety v, std::size_t k);
/// Every unifier from the given domains.
std::vector<Unifier> unifiers_from(const Poset& q, const std::vector<Poset>& domains);
std::vector<Unifier> unifiers_from(const InvPoset& q, const std::vector<InvPoset>& domains);
std::vector<Unifier> enumerate_unifiers_bounded(const Poset& q, std::size_t k);
std::vector<Unifier> enumerate_unifiers_bounded(const InvPoset& q, Variety v, std::size_t k);

/// Brute-force audit of a classification against every unifier whose domain
/// has at most `bound` elements: certificate shape, projective domains,
/// pairwise incomparable and dominating mu-sets, re-checked patterns, and
/// unifiers landing in the core. `failures` is empty when all checks pass.
struct Audit {
  bool solvable = false;
  std::optional<UnifType> type;
  std::size_t unifiers = 0;
  std::vector<std::string> failures;
};
Audit audit_classification(const Poset& q, std::size_t bound);
Audit audit_classification(const InvPoset& q, Variety v, std::size_t bound);

}  // namespace morgan
