#include "morgan/involutive.hpp"

#include <set>
#include <unordered_map>

#include "morgan/error.hpp"
#include "morgan/search.hpp"

namespace morgan {

ElemSet InvPoset::fixed_points() const {
  ElemSet out;
  for (Elem x = 0; x < size(); ++x)
    if (inv_[x] == x) out.push_back(x);
  return out;
}

InvPoset InvPoset::induced(const ElemSet& subset) const {
  std::vector<Elem> index(size(), size());
  for (Elem i = 0; i < subset.size(); ++i) index[subset[i]] = i;
  std::vector<Elem> inv(subset.size());
  for (Elem i = 0; i < subset.size(); ++i) {
    Elem partner = index[inv_[subset[i]]];
    if (partner == size()) throw PreconditionError("subset is not closed under inv");
    inv[i] = partner;
  }
  return validate_involutive(base_.induced(subset), std::move(inv));
}

InvPoset InvPoset::renamed(std::vector<std::string> names) const {
  return InvPoset(base_.renamed(std::move(names)), inv_, kleene_);
}

InvPoset validate_involutive(const Poset& base, std::vector<Elem> inv) {
  const std::size_t n = base.size();
  if (inv.size() != n) throw ValidationError("inv is not total");
  for (Elem x = 0; x < n; ++x)
    if (inv[x] >= n) throw ValidationError("inv leaves the carrier", {base.name(x)});
  for (Elem x = 0; x < n; ++x)
    if (inv[inv[x]] != x) throw ValidationError("inv is not involutive", {base.name(x)});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = base.up(x).first(); y < n; y = base.up(x).next(y + 1))
      if (!base.le(inv[y], inv[x]))
        throw ValidationError("inv is not antitone", {base.name(x), base.name(y)});
  bool kleene = true;
  for (Elem x = 0; x < n && kleene; ++x) kleene = base.comparable(x, inv[x]);
  return InvPoset(base, std::move(inv), kleene);
}

InvPoset validate_involutive(const Poset& base,
                             const std::vector<std::pair<std::string, std::string>>& inv_pairs) {
  const std::size_t n = base.size();
  std::vector<Elem> inv(n, n);
  for (const auto& [a, b] : inv_pairs) {
    auto ia = base.find(a), ib = base.find(b);
    if (!ia || !ib) throw ValidationError("inv names an unknown element", {a, b});
    if (inv[*ia] != n && inv[*ia] != *ib) throw ValidationError("inv is not a function", {a});
    inv[*ia] = *ib;
  }
  for (Elem x = 0; x < n; ++x)
    if (inv[x] == n) throw ValidationError("inv is not total", {base.name(x)});
  return validate_involutive(base, std::move(inv));
}

const InvPoset& diamond() {
  static const InvPoset d = [] {
    Poset base = Poset::from_pairs({"0", "1", "2", "3"}, {{2, 0}, {2, 1}, {0, 3}, {1, 3}});
    return validate_involutive(base, std::vector<Elem>{0, 1, 3, 2});
  }();
  return d;
}

InvPoset product(const InvPoset& p, const InvPoset& q, const std::string& separator) {
  const std::size_t m = q.size();
  const std::size_t n = p.size() * m;
  std::vector<std::string> names(n);
  std::vector<Bitset> up(n, Bitset(n));
  std::vector<Elem> inv(n);
  for (Elem a = 0; a < p.size(); ++a)
    for (Elem b = 0; b < m; ++b) {
      Elem x = a * m + b;
      names[x] = p.name(a) + separator + q.name(b);
      inv[x] = p.inv(a) * m + q.inv(b);
      p.base().up(a).for_each([&](Elem a2) {
        q.base().up(b).for_each([&](Elem b2) { up[x].set(a2 * m + b2); });
      });
    }
  return validate_involutive(Poset::from_up_rows(std::move(names), std::move(up)), std::move(inv));
}

InvPoset power(const InvPoset& d, std::size_t n) {
  InvPoset acc = validate_involutive(Poset::from_pairs({""}, {}), std::vector<Elem>{0});
  for (std::size_t i = 0; i < n; ++i) acc = product(acc, d, "");
  return acc;
}

KleenePart kleene_part(const InvPoset& p) {
  ElemSet keep;
  for (Elem x = 0; x < p.size(); ++x)
    if (p.base().comparable(x, p.inv(x))) keep.push_back(x);
  return {p.induced(keep), keep};
}

InvMorphism validate_inv_morphism(const InvPoset& dom, const InvPoset& cod, std::vector<Elem> map) {
  if (map.size() != dom.size()) throw ValidationError("map is not total");
  for (Elem x = 0; x < dom.size(); ++x)
    if (map[x] >= cod.size()) throw ValidationError("map leaves the codomain", {dom.name(x)});
  for (Elem x = 0; x < dom.size(); ++x)
    if (map[dom.inv(x)] != cod.inv(map[x]))
      throw ValidationError("involution commutation violation", {dom.name(x)});
  MonotoneMap checked = validate_monotone_map(dom.base(), cod.base(), std::move(map));
  return {dom, cod, std::move(checked.map)};
}

InvMorphism compose(const InvMorphism& g, const InvMorphism& f) {
  std::vector<Elem> m(f.map.size());
  for (Elem x = 0; x < m.size(); ++x) m[x] = g.map[f.map[x]];
  return {f.dom, g.cod, std::move(m)};
}

InvMorphism identity_morphism(const InvPoset& p) {
  std::vector<Elem> m(p.size());
  for (Elem x = 0; x < m.size(); ++x) m[x] = x;
  return {p, p, std::move(m)};
}

void for_each_inv_morphism(const InvPoset& dom, const InvPoset& cod,
                           const std::function<bool(const std::vector<Elem>&)>& visit) {
  MapProblem problem{&dom.base(), &cod.base(), &dom.inv(), &cod.inv(), {}};
  search_maps(problem, visit);
}

std::vector<InvMorphism> enumerate_inv_morphisms(const InvPoset& dom, const InvPoset& cod) {
  std::vector<InvMorphism> out;
  for_each_inv_morphism(dom, cod, [&](const std::vector<Elem>& m) {
    out.push_back({dom, cod, m});
    return true;
  });
  return out;
}

std::vector<InvPoset> enumerate_inv_posets_of_size(std::size_t n) {
  std::vector<InvPoset> out;
  for (const Poset& base : enumerate_posets_of_size(n)) {
    std::set<std::vector<std::uint8_t>> seen;
    std::vector<Elem> inv(n, n);
    std::function<void()> rec = [&] {
      Elem x = 0;
      while (x < n && inv[x] != n) ++x;
      if (x == n) {
        for (Elem a = 0; a < n; ++a)
          for (Elem b = base.up(a).first(); b < n; b = base.up(a).next(b + 1))
            if (!base.le(inv[b], inv[a])) return;
        if (seen.insert(canonical_code(base, &inv)).second)
          out.push_back(validate_involutive(base, inv));
        return;
      }
      for (Elem y = x; y < n; ++y) {
        if (inv[y] != n) continue;
        inv[x] = y;
        inv[y] = x;
        rec();
        inv[x] = n;
        inv[y] = n;
      }
    };
    rec();
  }
  return out;
}

std::vector<InvPoset> enumerate_inv_posets_upto(std::size_t k) {
  std::vector<InvPoset> out;
  for (std::size_t n = 0; n <= k; ++n) {
    auto level = enumerate_inv_posets_of_size(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::optional<std::vector<Elem>> find_inv_isomorphism(const InvPoset& p, const InvPoset& q) {
  if (p.size() != q.size()) return std::nullopt;
  const std::size_t n = p.size();
  auto key = [](const InvPoset& s, Elem x) {
    return std::tuple{s.base().down(x).count(), s.base().up(x).count(), s.is_fixed(x)};
  };
  MapProblem problem{&p.base(), &q.base(), &p.inv(), &q.inv(),
                     std::vector<Bitset>(n, Bitset(n))};
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (key(p, x) == key(q, y)) problem.allowed[x].set(y);
  std::optional<std::vector<Elem>> found;
  search_maps(problem, [&](const std::vector<Elem>& f) {
    std::vector<bool> hit(n, false);
    for (Elem y : f) {
      if (hit[y]) return true;
      hit[y] = true;
    }
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (q.le(f[a], f[b]) && !p.le(a, b)) return true;
    found = f;
    return false;
  });
  return found;
}

}  // namespace morgan
