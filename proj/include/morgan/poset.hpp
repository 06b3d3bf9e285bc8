#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "morgan/bitset.hpp"

namespace morgan {

/// Index of an element in its structure's canonical (input) order.
using Elem = std::size_t;
/// Element set, sorted ascending in canonical order.
using ElemSet = std::vector<Elem>;

enum class Closure { full_relation, cover_relation };

/// Unvalidated poset description, as read from a document.
struct RawPoset {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> pairs;
  Closure closure = Closure::cover_relation;
};

/// Finite partial order over named elements. Immutable; copies share storage.
class Poset {
 public:
  Poset();

  /// Builds a poset from its full order relation, given as "up" rows
  /// (`up[x]` holds every y with x <= y). Throws ValidationError unless the
  /// relation is reflexive, antisymmetric and transitive.
  static Poset from_up_rows(std::vector<std::string> names, std::vector<Bitset> up);

  /// Reflexive-transitive closure of `pairs`, then validation.
  static Poset from_pairs(std::vector<std::string> names,
                          const std::vector<std::pair<Elem, Elem>>& pairs);

  std::size_t size() const { return rep_->names.size(); }
  bool empty() const { return size() == 0; }

  const std::string& name(Elem x) const { return rep_->names[x]; }
  const std::vector<std::string>& names() const { return rep_->names; }
  std::optional<Elem> find(std::string_view name) const;
  /// Like find(), but throws ValidationError for unknown names.
  Elem at(std::string_view name) const;

  bool le(Elem x, Elem y) const { return rep_->up[x].test(y); }
  bool lt(Elem x, Elem y) const { return x != y && le(x, y); }
  bool comparable(Elem x, Elem y) const { return le(x, y) || le(y, x); }

  /// {y | x <= y} and {y | y <= x}.
  const Bitset& up(Elem x) const { return rep_->up[x]; }
  const Bitset& down(Elem x) const { return rep_->down[x]; }

  /// Hasse diagram, pairs sorted in canonical order.
  std::vector<std::pair<Elem, Elem>> covers() const;
  /// Full relation including reflexive pairs, sorted.
  std::vector<std::pair<Elem, Elem>> relation() const;

  /// A linear extension (each element after everything below it); ties by index.
  const std::vector<Elem>& linear_extension() const { return rep_->linear; }

  ElemSet minimals() const;
  ElemSet maximals() const;

  Poset dual() const;
  /// Induced order on `subset` (which must be sorted); element i of the result
  /// is subset[i].
  Poset induced(const ElemSet& subset) const;
  Poset renamed(std::vector<std::string> names) const;

  Bitset empty_set() const { return Bitset(size()); }

 private:
  struct Rep {
    std::vector<std::string> names;
    std::vector<Bitset> up;
    std::vector<Bitset> down;
    std::vector<Elem> linear;
  };
  explicit Poset(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

  std::shared_ptr<const Rep> rep_;
};

/// Checks and closes a raw description. Errors: duplicate element, dangling
/// pair, antisymmetry violation (the witness lists the cycle).
Poset validate_poset(const RawPoset& raw);

struct Explicit { ElemSet elements; };
struct DownsetOf { ElemSet generators; };
struct UpsetOf { ElemSet generators; };
struct IntervalOf { Elem lower; Elem upper; };
struct Minimals {};
struct Maximals {};
using Selector = std::variant<Explicit, DownsetOf, UpsetOf, IntervalOf, Minimals, Maximals>;

struct Subposet {
  Poset poset;
  ElemSet selected;
};

ElemSet downset(const Poset& p, const ElemSet& generators);
ElemSet upset(const Poset& p, const ElemSet& generators);
ElemSet interval(const Poset& p, Elem lower, Elem upper);
ElemSet select(const Poset& p, const Selector& selector);
Subposet subposet(const Poset& p, const Selector& selector);

Bitset upper_bounds(const Poset& p, const ElemSet& xs);
Bitset lower_bounds(const Poset& p, const ElemSet& xs);
/// Least element of `candidates`, if one exists.
std::optional<Elem> least_of(const Poset& p, const Bitset& candidates);
std::optional<Elem> greatest_of(const Poset& p, const Bitset& candidates);

/// Least upper bound of `xs`; the join of the empty set is the bottom.
std::optional<Elem> join_of(const Poset& p, const ElemSet& xs);
std::optional<Elem> meet_of(const Poset& p, const ElemSet& xs);

struct LatticeReport {
  bool is_nonempty_lattice = false;
  bool is_meet_semilattice = false;
  /// First pair lacking a join or a meet.
  std::optional<std::pair<Elem, Elem>> witness;
  /// First pair lacking a meet.
  std::optional<std::pair<Elem, Elem>> meet_witness;
};

LatticeReport lattice_report(const Poset& p);
bool is_nonempty_lattice(const Poset& p);
bool is_nonempty_meet_semilattice(const Poset& p);

struct ThreeCompleteness {
  bool holds = true;
  /// A set whose subsets of size < 3 are bounded but which has no supremum.
  std::optional<ElemSet> counterexample;
};

/// Definitional check: every X whose subsets of size < 3 have an upper bound
/// has a supremum. Enumerates pairwise-bounded antichains; the empty set is
/// checked last.
ThreeCompleteness is_three_complete(const Poset& p);

/// Calls `visit` with each downset of `p`; stops early when it returns false.
void for_each_downset(const Poset& p, const std::function<bool(const Bitset&)>& visit);

/// Canonical code: equal iff the (optionally involutive) posets are isomorphic.
std::vector<std::uint8_t> canonical_code(const Poset& p, const std::vector<Elem>* inv = nullptr);

/// One poset per isomorphism class with exactly n elements, named "0".."n-1".
std::vector<Poset> enumerate_posets_of_size(std::size_t n);
/// All classes with at most k elements, ordered by size.
std::vector<Poset> enumerate_posets_upto(std::size_t k);

/// Order isomorphism p -> q (as the image of each element of p).
std::optional<std::vector<Elem>> find_isomorphism(const Poset& p, const Poset& q);

struct MonotoneMap {
  Poset dom;
  Poset cod;
  std::vector<Elem> map;

  Elem operator()(Elem x) const { return map[x]; }
};

/// Throws ValidationError (witness pair) unless `map` is total and monotone.
MonotoneMap validate_monotone_map(const Poset& dom, const Poset& cod, std::vector<Elem> map);
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);  // g after f
MonotoneMap identity_map(const Poset& p);

void for_each_monotone_map(const Poset& dom, const Poset& cod,
                           const std::function<bool(const std::vector<Elem>&)>& visit);
std::vector<MonotoneMap> enumerate_monotone_maps(const Poset& dom, const Poset& cod);

}  // namespace morgan
