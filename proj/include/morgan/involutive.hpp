#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morgan/poset.hpp"

namespace morgan {

/// A finite poset with an antitone involution. Kleene when every x is
/// comparable to inv(x).
class InvPoset {
 public:
  InvPoset() = default;

  const Poset& base() const { return base_; }
  const std::vector<Elem>& inv() const { return inv_; }
  Elem inv(Elem x) const { return inv_[x]; }
  bool is_kleene() const { return kleene_; }

  std::size_t size() const { return base_.size(); }
  bool empty() const { return base_.empty(); }
  bool le(Elem x, Elem y) const { return base_.le(x, y); }
  const std::string& name(Elem x) const { return base_.name(x); }
  bool is_fixed(Elem x) const { return inv_[x] == x; }
  ElemSet fixed_points() const;

  /// Induced substructure on an inv-closed, sorted subset.
  InvPoset induced(const ElemSet& subset) const;
  InvPoset renamed(std::vector<std::string> names) const;

 private:
  friend InvPoset validate_involutive(const Poset& base, std::vector<Elem> inv);
  InvPoset(Poset base, std::vector<Elem> inv, bool kleene)
      : base_(std::move(base)), inv_(std::move(inv)), kleene_(kleene) {}

  Poset base_;
  std::vector<Elem> inv_;
  bool kleene_ = true;
};

/// Throws ValidationError: inv not total, not involutive (witness x), or not
/// antitone (witness pair x <= y with inv(y) not below inv(x)).
InvPoset validate_involutive(const Poset& base, std::vector<Elem> inv);
InvPoset validate_involutive(const Poset& base,
                             const std::vector<std::pair<std::string, std::string>>& inv_pairs);

/// The four-element diamond: 2 <= 0,1 <= 3; inv fixes 0 and 1, swaps 2 and 3.
const InvPoset& diamond();

/// Coordinatewise product; element names are `p + separator + q`.
InvPoset product(const InvPoset& p, const InvPoset& q, const std::string& separator = ",");
/// D^n with digit-string names in lexicographic order ("00", "01", ...).
/// power(D, 0) is the one-point fixed structure named "".
InvPoset power(const InvPoset& d, std::size_t n);

/// Largest Kleene substructure: {x | x comparable to inv(x)}.
struct KleenePart {
  InvPoset part;
  ElemSet selected;
};
KleenePart kleene_part(const InvPoset& p);

struct InvMorphism {
  InvPoset dom;
  InvPoset cod;
  std::vector<Elem> map;

  Elem operator()(Elem x) const { return map[x]; }
};

/// Throws ValidationError on a monotonicity violation (witness pair) or a
/// commutation violation (witness element).
InvMorphism validate_inv_morphism(const InvPoset& dom, const InvPoset& cod, std::vector<Elem> map);
InvMorphism compose(const InvMorphism& g, const InvMorphism& f);  // g after f
InvMorphism identity_morphism(const InvPoset& p);

void for_each_inv_morphism(const InvPoset& dom, const InvPoset& cod,
                           const std::function<bool(const std::vector<Elem>&)>& visit);
std::vector<InvMorphism> enumerate_inv_morphisms(const InvPoset& dom, const InvPoset& cod);

/// One involutive poset per isomorphism class with exactly n elements.
std::vector<InvPoset> enumerate_inv_posets_of_size(std::size_t n);
std::vector<InvPoset> enumerate_inv_posets_upto(std::size_t k);

std::optional<std::vector<Elem>> find_inv_isomorphism(const InvPoset& p, const InvPoset& q);

}  // namespace morgan
