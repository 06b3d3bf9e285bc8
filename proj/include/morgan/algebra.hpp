#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morgan/poset.hpp"

namespace morgan {

enum class VarietyTag : std::uint8_t { bounded_distributive, de_morgan, kleene, boolean };

std::string to_string(VarietyTag tag);

/// A finite bounded distributive lattice, optionally with a De Morgan
/// negation. Stored by order; meet and join tables are derived once.
class FiniteAlgebra {
 public:
  const Poset& carrier() const { return rep_->carrier; }
  std::size_t size() const { return rep_->carrier.size(); }
  const std::string& name(Elem x) const { return rep_->carrier.name(x); }
  bool le(Elem x, Elem y) const { return rep_->carrier.le(x, y); }

  Elem meet(Elem x, Elem y) const { return rep_->meet[x * size() + y]; }
  Elem join(Elem x, Elem y) const { return rep_->join[x * size() + y]; }
  Elem bottom() const { return rep_->bottom; }
  Elem top() const { return rep_->top; }

  bool has_neg() const { return rep_->neg.has_value(); }
  Elem neg(Elem x) const { return (*rep_->neg)[x]; }
  const std::optional<std::vector<Elem>>& negation() const { return rep_->neg; }

  bool has_tag(VarietyTag tag) const;
  const std::vector<VarietyTag>& tags() const { return rep_->tags; }

 private:
  struct Rep {
    Poset carrier;
    std::optional<std::vector<Elem>> neg;
    std::vector<std::uint32_t> meet;
    std::vector<std::uint32_t> join;
    Elem bottom = 0;
    Elem top = 0;
    std::vector<VarietyTag> tags;
  };
  explicit FiniteAlgebra(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  friend FiniteAlgebra assemble_algebra(Poset, std::optional<std::vector<Elem>>, bool);

  std::shared_ptr<const Rep> rep_;
};

/// Checks lattice, distributivity (witness triple) and, when present, that
/// neg is an antitone involution; computes the variety tags.
FiniteAlgebra validate_algebra(const Poset& carrier, std::optional<std::vector<Elem>> neg = {});
FiniteAlgebra validate_algebra(const RawPoset& carrier,
                               const std::optional<std::vector<std::pair<std::string, std::string>>>& neg);

struct Homomorphism {
  FiniteAlgebra dom;
  FiniteAlgebra cod;
  std::vector<Elem> map;

  Elem operator()(Elem x) const { return map[x]; }
};

/// Preservation of 0, 1, meet, join, and neg when both sides carry one.
/// Errors name the operation and the witness.
Homomorphism validate_homomorphism(const FiniteAlgebra& dom, const FiniteAlgebra& cod,
                                   std::vector<Elem> map);
Homomorphism compose(const Homomorphism& g, const Homomorphism& f);  // g after f
Homomorphism identity_hom(const FiniteAlgebra& a);

}  // namespace morgan
