#include "morgan/algebra.hpp"

#include <algorithm>

#include "algebra_internal.hpp"
#include "morgan/error.hpp"

namespace morgan {

std::string to_string(VarietyTag tag) {
  switch (tag) {
    case VarietyTag::bounded_distributive: return "bounded-distributive";
    case VarietyTag::de_morgan: return "de-morgan";
    case VarietyTag::kleene: return "kleene";
    case VarietyTag::boolean: return "boolean";
  }
  return "?";
}

bool FiniteAlgebra::has_tag(VarietyTag tag) const {
  return std::find(rep_->tags.begin(), rep_->tags.end(), tag) != rep_->tags.end();
}

namespace {

// Least element of `bounds`, using that it has the largest upset among them.
std::optional<Elem> least_by_upset(const Poset& p, const std::vector<std::size_t>& up_count,
                                   const Bitset& bounds) {
  Elem best = p.size();
  bounds.for_each([&](Elem u) {
    if (best == p.size() || up_count[u] > up_count[best]) best = u;
  });
  if (best == p.size() || !bounds.is_subset_of(p.up(best))) return std::nullopt;
  return best;
}

}  // namespace

FiniteAlgebra assemble_algebra(Poset carrier, std::optional<std::vector<Elem>> neg, bool check_laws) {
  const std::size_t n = carrier.size();
  if (n == 0) throw ValidationError("algebra carrier is empty");
  auto rep = std::make_shared<FiniteAlgebra::Rep>();

  std::vector<std::size_t> up_count(n), down_count(n);
  for (Elem x = 0; x < n; ++x) {
    up_count[x] = carrier.up(x).count();
    down_count[x] = carrier.down(x).count();
  }
  Poset dual = carrier.dual();
  rep->meet.resize(n * n);
  rep->join.resize(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x; y < n; ++y) {
      auto j = least_by_upset(carrier, up_count, carrier.up(x) & carrier.up(y));
      auto m = least_by_upset(dual, down_count, carrier.down(x) & carrier.down(y));
      if (!j || !m) throw ValidationError("not a lattice", {carrier.name(x), carrier.name(y)});
      rep->join[x * n + y] = rep->join[y * n + x] = static_cast<std::uint32_t>(*j);
      rep->meet[x * n + y] = rep->meet[y * n + x] = static_cast<std::uint32_t>(*m);
    }
  auto bottom = least_of(carrier, Bitset(n, true));
  auto top = greatest_of(carrier, Bitset(n, true));
  if (!bottom || !top) throw ValidationError("lattice lacks a bound");
  rep->bottom = *bottom;
  rep->top = *top;

  auto meet = [&](Elem a, Elem b) -> Elem { return rep->meet[a * n + b]; };
  auto join = [&](Elem a, Elem b) -> Elem { return rep->join[a * n + b]; };

  if (check_laws) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c)))
            throw ValidationError("not distributive",
                                  {carrier.name(a), carrier.name(b), carrier.name(c)});
    if (neg) {
      if (neg->size() != n) throw ValidationError("neg is not total");
      for (Elem a = 0; a < n; ++a)
        if ((*neg)[a] >= n) throw ValidationError("neg leaves the carrier", {carrier.name(a)});
      for (Elem a = 0; a < n; ++a)
        if ((*neg)[(*neg)[a]] != a) throw ValidationError("neg is not an involution", {carrier.name(a)});
      for (Elem a = 0; a < n; ++a)
        for (Elem b = carrier.up(a).first(); b < n; b = carrier.up(a).next(b + 1))
          if (!carrier.le((*neg)[b], (*neg)[a]))
            throw ValidationError("neg is not antitone", {carrier.name(a), carrier.name(b)});
    }
  }

  rep->tags.push_back(VarietyTag::bounded_distributive);
  if (neg) {
    rep->tags.push_back(VarietyTag::de_morgan);
    const auto& ng = *neg;
    bool kleene = true;
    for (Elem a = 0; a < n && kleene; ++a)
      for (Elem b = 0; b < n && kleene; ++b)
        kleene = carrier.le(meet(a, ng[a]), join(b, ng[b]));
    if (kleene) rep->tags.push_back(VarietyTag::kleene);
    bool boolean = kleene;
    for (Elem a = 0; a < n && boolean; ++a) boolean = meet(a, ng[a]) == rep->bottom;
    if (boolean) rep->tags.push_back(VarietyTag::boolean);
  }
  rep->carrier = std::move(carrier);
  rep->neg = std::move(neg);
  return FiniteAlgebra(std::move(rep));
}

FiniteAlgebra validate_algebra(const Poset& carrier, std::optional<std::vector<Elem>> neg) {
  return assemble_algebra(carrier, std::move(neg), true);
}

FiniteAlgebra validate_algebra(
    const RawPoset& carrier,
    const std::optional<std::vector<std::pair<std::string, std::string>>>& neg_pairs) {
  Poset p = validate_poset(carrier);
  std::optional<std::vector<Elem>> neg;
  if (neg_pairs) {
    const std::size_t n = p.size();
    std::vector<Elem> m(n, n);
    for (const auto& [a, b] : *neg_pairs) {
      auto ia = p.find(a), ib = p.find(b);
      if (!ia || !ib) throw ValidationError("neg names an unknown element", {a, b});
      if (m[*ia] != n && m[*ia] != *ib) throw ValidationError("neg is not a function", {a});
      m[*ia] = *ib;
    }
    for (Elem x = 0; x < n; ++x)
      if (m[x] == n) throw ValidationError("neg is not total", {p.name(x)});
    neg = std::move(m);
  }
  return validate_algebra(p, std::move(neg));
}

Homomorphism validate_homomorphism(const FiniteAlgebra& dom, const FiniteAlgebra& cod,
                                   std::vector<Elem> map) {
  const std::size_t n = dom.size();
  if (map.size() != n) throw ValidationError("map is not total");
  for (Elem x = 0; x < n; ++x)
    if (map[x] >= cod.size()) throw ValidationError("map leaves the codomain", {dom.name(x)});
  if (map[dom.bottom()] != cod.bottom())
    throw ValidationError("bottom not preserved", {dom.name(dom.bottom())});
  if (map[dom.top()] != cod.top()) throw ValidationError("top not preserved", {dom.name(dom.top())});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b) {
      if (map[dom.meet(a, b)] != cod.meet(map[a], map[b]))
        throw ValidationError("meet not preserved", {dom.name(a), dom.name(b)});
      if (map[dom.join(a, b)] != cod.join(map[a], map[b]))
        throw ValidationError("join not preserved", {dom.name(a), dom.name(b)});
    }
  if (dom.has_neg() && cod.has_neg())
    for (Elem a = 0; a < n; ++a)
      if (map[dom.neg(a)] != cod.neg(map[a]))
        throw ValidationError("neg not preserved", {dom.name(a)});
  return {dom, cod, std::move(map)};
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f) {
  std::vector<Elem> m(f.map.size());
  for (Elem x = 0; x < m.size(); ++x) m[x] = g.map[f.map[x]];
  return {f.dom, g.cod, std::move(m)};
}

Homomorphism identity_hom(const FiniteAlgebra& a) {
  std::vector<Elem> m(a.size());
  for (Elem x = 0; x < m.size(); ++x) m[x] = x;
  return {a, a, std::move(m)};
}

}  // namespace morgan
