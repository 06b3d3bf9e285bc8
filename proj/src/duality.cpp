#include "morgan/duality.hpp"

#include <algorithm>
#include <unordered_map>

#include "algebra_internal.hpp"
#include "morgan/error.hpp"

namespace morgan {

namespace {

constexpr std::size_t kMaxDownsets = 1024;

using DownsetIndex = std::unordered_map<Bitset, Elem, BitsetHash>;

DownsetIndex index_of(const std::vector<Bitset>& sets) {
  DownsetIndex idx;
  for (Elem i = 0; i < sets.size(); ++i) idx.emplace(sets[i], i);
  return idx;
}

Poset inclusion_order(const Poset& p, const std::vector<Bitset>& sets) {
  const std::size_t n = sets.size();
  std::vector<std::string> names(n);
  std::vector<Bitset> up(n, Bitset(n));
  for (Elem i = 0; i < n; ++i) {
    names[i] = downset_name(p, sets[i]);
    for (Elem j = 0; j < n; ++j)
      if (sets[i].is_subset_of(sets[j])) up[i].set(j);
  }
  return Poset::from_up_rows(std::move(names), std::move(up));
}

Elem meet_all(const FiniteAlgebra& a, const std::vector<Elem>& xs) {
  Elem acc = a.top();
  for (Elem x : xs) acc = a.meet(acc, x);
  return acc;
}

}  // namespace

ElemSet join_irreducible_elements(const FiniteAlgebra& a) {
  const std::size_t n = a.size();
  ElemSet out;
  for (Elem x = 0; x < n; ++x) {
    if (x == a.bottom()) continue;
    bool irreducible = true;
    for (Elem p = 0; p < n && irreducible; ++p)
      for (Elem q = 0; q < n && irreducible; ++q)
        if (a.join(p, q) == x && p != x && q != x) irreducible = false;
    if (irreducible) out.push_back(x);
  }
  return out;
}

Poset join_irreducibles(const FiniteAlgebra& a) {
  return a.carrier().induced(join_irreducible_elements(a));
}

std::vector<Bitset> downsets(const Poset& p) {
  std::vector<Bitset> out;
  for_each_downset(p, [&](const Bitset& d) {
    out.push_back(d);
    if (out.size() > kMaxDownsets) throw SizeGuardError("more than 1024 downsets");
    return true;
  });
  std::sort(out.begin(), out.end(), [](const Bitset& x, const Bitset& y) {
    if (x.count() != y.count()) return x.count() < y.count();
    return x.to_vector() < y.to_vector();
  });
  return out;
}

std::string downset_name(const Poset& p, const Bitset& set) {
  std::string s = "{";
  bool first = true;
  set.for_each([&](Elem x) {
    if (!first) s += ",";
    s += p.name(x);
    first = false;
  });
  return s + "}";
}

FiniteAlgebra downset_algebra(const Poset& p) {
  return assemble_algebra(inclusion_order(p, downsets(p)), std::nullopt, false);
}

InvPoset demorgan_dual(const FiniteAlgebra& a) {
  if (!a.has_neg()) throw PreconditionError("algebra has no negation");
  const ElemSet j = join_irreducible_elements(a);
  std::vector<Elem> position(a.size(), a.size());
  for (Elem k = 0; k < j.size(); ++k) position[j[k]] = k;

  std::vector<Elem> inv(j.size());
  for (Elem k = 0; k < j.size(); ++k) {
    std::vector<bool> excluded(a.size(), false);
    a.carrier().up(j[k]).for_each([&](Elem above) { excluded[a.neg(above)] = true; });
    std::vector<Elem> rest;
    for (Elem y = 0; y < a.size(); ++y)
      if (!excluded[y]) rest.push_back(y);
    Elem m = meet_all(a, rest);
    if (position[m] == a.size())
      throw InternalError("involution formula left the join-irreducibles at " + a.name(j[k]));
    inv[k] = position[m];
  }
  try {
    return validate_involutive(a.carrier().induced(j), std::move(inv));
  } catch (const ValidationError& e) {
    throw InternalError(std::string("dual involution invalid: ") + e.what());
  }
}

FiniteAlgebra demorgan_from_dual(const InvPoset& p) {
  auto sets = downsets(p.base());
  auto idx = index_of(sets);
  std::vector<Elem> neg(sets.size());
  for (Elem k = 0; k < sets.size(); ++k) {
    Bitset image(p.size());
    sets[k].for_each([&](Elem x) { image.set(p.inv(x)); });
    neg[k] = idx.at(~image);
  }
  return assemble_algebra(inclusion_order(p.base(), sets), std::move(neg), false);
}

namespace {

std::vector<Elem> dual_formula(const Homomorphism& h, const ElemSet& j_dom, const ElemSet& j_cod) {
  const FiniteAlgebra& a = h.dom;
  std::vector<Elem> position(a.size(), a.size());
  for (Elem k = 0; k < j_dom.size(); ++k) position[j_dom[k]] = k;
  std::vector<Elem> map(j_cod.size());
  for (Elem k = 0; k < j_cod.size(); ++k) {
    std::vector<Elem> ys;
    for (Elem y = 0; y < a.size(); ++y)
      if (h.cod.le(j_cod[k], h.map[y])) ys.push_back(y);
    Elem m = meet_all(a, ys);
    if (position[m] == a.size())
      throw InternalError("dual map lands on a join-reducible element " + a.name(m));
    map[k] = position[m];
  }
  return map;
}

}  // namespace

MonotoneMap dual_of_hom(const Homomorphism& h) {
  ElemSet j_dom = join_irreducible_elements(h.dom);
  ElemSet j_cod = join_irreducible_elements(h.cod);
  auto map = dual_formula(h, j_dom, j_cod);
  return validate_monotone_map(h.cod.carrier().induced(j_cod), h.dom.carrier().induced(j_dom),
                               std::move(map));
}

InvMorphism dual_of_demorgan_hom(const Homomorphism& h) {
  if (!h.dom.has_neg() || !h.cod.has_neg())
    throw PreconditionError("both algebras need a negation");
  ElemSet j_dom = join_irreducible_elements(h.dom);
  ElemSet j_cod = join_irreducible_elements(h.cod);
  auto map = dual_formula(h, j_dom, j_cod);
  return validate_inv_morphism(demorgan_dual(h.cod), demorgan_dual(h.dom), std::move(map));
}

namespace {

std::vector<Elem> preimage_map(const std::vector<Elem>& f, const std::vector<Bitset>& cod_sets,
                               const std::vector<Bitset>& dom_sets, std::size_t dom_size) {
  auto idx = index_of(dom_sets);
  std::vector<Elem> map(cod_sets.size());
  for (Elem k = 0; k < cod_sets.size(); ++k) {
    Bitset pre(dom_size);
    for (Elem x = 0; x < dom_size; ++x)
      if (cod_sets[k].test(f[x])) pre.set(x);
    map[k] = idx.at(pre);
  }
  return map;
}

}  // namespace

Homomorphism hom_of_map(const MonotoneMap& f) {
  auto map = preimage_map(f.map, downsets(f.cod), downsets(f.dom), f.dom.size());
  return validate_homomorphism(downset_algebra(f.cod), downset_algebra(f.dom), std::move(map));
}

Homomorphism hom_of_morphism(const InvMorphism& f) {
  auto map =
      preimage_map(f.map, downsets(f.cod.base()), downsets(f.dom.base()), f.dom.size());
  return validate_homomorphism(demorgan_from_dual(f.cod), demorgan_from_dual(f.dom), std::move(map));
}

std::vector<Elem> representation_map(const FiniteAlgebra& a) {
  const ElemSet j = join_irreducible_elements(a);
  Poset jp = a.carrier().induced(j);
  auto idx = index_of(downsets(jp));
  std::vector<Elem> map(a.size());
  for (Elem x = 0; x < a.size(); ++x) {
    Bitset below(j.size());
    for (Elem k = 0; k < j.size(); ++k)
      if (a.le(j[k], x)) below.set(k);
    map[x] = idx.at(below);
  }
  return map;
}

std::vector<Elem> principal_downset_map(const Poset& p) {
  auto idx = index_of(downsets(p));
  std::vector<Elem> map(p.size());
  for (Elem x = 0; x < p.size(); ++x) map[x] = idx.at(p.down(x));
  return map;
}

InvPoset free_dual(Variety v, std::size_t n, std::size_t max_n) {
  if (v == Variety::bdl) throw PreconditionError("free duals are built for dm and kleene");
  if (n > max_n) throw SizeGuardError("free dual requested for n = " + std::to_string(n));
  InvPoset p = power(diamond(), n);
  return v == Variety::kleene ? kleene_part(p).part : p;
}

}  // namespace morgan
