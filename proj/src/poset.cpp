#include "morgan/poset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "morgan/error.hpp"
#include "morgan/search.hpp"

namespace morgan {

namespace {

std::vector<Bitset> transpose(const std::vector<Bitset>& rows) {
  const std::size_t n = rows.size();
  std::vector<Bitset> cols(n, Bitset(n));
  for (Elem x = 0; x < n; ++x) rows[x].for_each([&](Elem y) { cols[y].set(x); });
  return cols;
}

// Warshall closure over row bitsets.
void close_transitively(std::vector<Bitset>& up) {
  const std::size_t n = up.size();
  for (Elem k = 0; k < n; ++k)
    for (Elem x = 0; x < n; ++x)
      if (up[x].test(k)) up[x] |= up[k];
}

}  // namespace

Poset::Poset() : rep_(std::make_shared<Rep>()) {}

Poset Poset::from_up_rows(std::vector<std::string> names, std::vector<Bitset> up) {
  const std::size_t n = names.size();
  if (up.size() != n) throw ValidationError("relation size does not match element count");
  for (Elem x = 0; x < n; ++x) {
    if (up[x].size() != n) throw ValidationError("relation size does not match element count");
    if (!up[x].test(x)) throw ValidationError("relation is not reflexive", {names[x]});
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = up[x].first(); y < n; y = up[x].next(y + 1)) {
      if (y != x && up[y].test(x))
        throw ValidationError("antisymmetry violation", {names[x], names[y], names[x]});
      if (!up[y].is_subset_of(up[x])) {
        Elem z = (up[y] & ~up[x]).first();
        throw ValidationError("relation is not transitive", {names[x], names[y], names[z]});
      }
    }
  }
  auto rep = std::make_shared<Rep>();
  rep->names = std::move(names);
  rep->down = transpose(up);
  rep->up = std::move(up);
  rep->linear.resize(n);
  std::iota(rep->linear.begin(), rep->linear.end(), Elem{0});
  std::stable_sort(rep->linear.begin(), rep->linear.end(), [&](Elem a, Elem b) {
    return rep->down[a].count() < rep->down[b].count();
  });
  return Poset(std::move(rep));
}

Poset Poset::from_pairs(std::vector<std::string> names,
                        const std::vector<std::pair<Elem, Elem>>& pairs) {
  const std::size_t n = names.size();
  std::vector<Bitset> up(n, Bitset(n));
  for (Elem x = 0; x < n; ++x) up[x].set(x);
  for (auto [a, b] : pairs) up[a].set(b);
  close_transitively(up);
  return from_up_rows(std::move(names), std::move(up));
}

std::optional<Elem> Poset::find(std::string_view name) const {
  for (Elem x = 0; x < size(); ++x)
    if (rep_->names[x] == name) return x;
  return std::nullopt;
}

Elem Poset::at(std::string_view name) const {
  if (auto x = find(name)) return *x;
  throw ValidationError("unknown element", {std::string(name)});
}

std::vector<std::pair<Elem, Elem>> Poset::covers() const {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem x = 0; x < size(); ++x) {
    up(x).for_each([&](Elem y) {
      if (y == x) return;
      // y covers x iff nothing strictly between.
      Bitset between = up(x) & down(y);
      if (between.count() == 2) out.emplace_back(x, y);
    });
  }
  return out;
}

std::vector<std::pair<Elem, Elem>> Poset::relation() const {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem x = 0; x < size(); ++x) up(x).for_each([&](Elem y) { out.emplace_back(x, y); });
  return out;
}

ElemSet Poset::minimals() const {
  ElemSet out;
  for (Elem x = 0; x < size(); ++x)
    if (down(x).count() == 1) out.push_back(x);
  return out;
}

ElemSet Poset::maximals() const {
  ElemSet out;
  for (Elem x = 0; x < size(); ++x)
    if (up(x).count() == 1) out.push_back(x);
  return out;
}

Poset Poset::dual() const {
  auto rep = std::make_shared<Rep>(*rep_);
  std::swap(rep->up, rep->down);
  std::reverse(rep->linear.begin(), rep->linear.end());
  return Poset(std::move(rep));
}

Poset Poset::induced(const ElemSet& subset) const {
  const std::size_t m = subset.size();
  std::vector<std::string> names;
  std::vector<Bitset> up_rows(m, Bitset(m));
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(name(subset[i]));
    for (std::size_t j = 0; j < m; ++j)
      if (le(subset[i], subset[j])) up_rows[i].set(j);
  }
  return from_up_rows(std::move(names), std::move(up_rows));
}

Poset Poset::renamed(std::vector<std::string> names) const {
  if (names.size() != size()) throw ValidationError("renaming has the wrong length");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw ValidationError("renaming is not injective");
  auto rep = std::make_shared<Rep>(*rep_);
  rep->names = std::move(names);
  return Poset(std::move(rep));
}

Poset validate_poset(const RawPoset& raw) {
  const std::size_t n = raw.elements.size();
  std::unordered_map<std::string, Elem> index;
  for (Elem x = 0; x < n; ++x)
    if (!index.emplace(raw.elements[x], x).second)
      throw ValidationError("duplicate element", {raw.elements[x]});

  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& [a, b] : raw.pairs) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end()) throw ValidationError("dangling pair", {a, b});
    pairs.emplace_back(ia->second, ib->second);
  }

  std::vector<Bitset> up(n, Bitset(n));
  for (Elem x = 0; x < n; ++x) up[x].set(x);
  for (auto [a, b] : pairs) up[a].set(b);

  if (raw.closure == Closure::full_relation) {
    for (auto [a, b] : pairs)
      if (a != b && up[b].test(a))
        throw ValidationError("antisymmetry violation",
                              {raw.elements[a], raw.elements[b], raw.elements[a]});
    return Poset::from_up_rows(raw.elements, std::move(up));
  }

  std::vector<std::vector<Elem>> succ(n);
  for (auto [a, b] : pairs) succ[a].push_back(b);
  close_transitively(up);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = up[x].first(); y < n; y = up[x].next(y + 1)) {
      if (y == x || !up[y].test(x)) continue;
      // Report the cycle x -> ... -> y -> ... -> x along input pairs.
      auto path = [&](Elem from, Elem to) {
        std::vector<Elem> parent(n, n);
        std::deque<Elem> queue{from};
        while (!queue.empty() && parent[to] == n) {
          Elem v = queue.front();
          queue.pop_front();
          for (Elem w : succ[v])
            if (parent[w] == n) {
              parent[w] = v;
              queue.push_back(w);
            }
        }
        std::vector<Elem> out;
        for (Elem v = to; v != from; v = parent[v]) out.push_back(v);
        std::reverse(out.begin(), out.end());
        return out;
      };
      std::vector<std::string> cycle{raw.elements[x]};
      for (Elem v : path(x, y)) cycle.push_back(raw.elements[v]);
      for (Elem v : path(y, x)) cycle.push_back(raw.elements[v]);
      throw ValidationError("antisymmetry violation", std::move(cycle));
    }
  }
  return Poset::from_up_rows(raw.elements, std::move(up));
}

ElemSet downset(const Poset& p, const ElemSet& generators) {
  Bitset acc = p.empty_set();
  for (Elem g : generators) acc |= p.down(g);
  return acc.to_vector();
}

ElemSet upset(const Poset& p, const ElemSet& generators) {
  Bitset acc = p.empty_set();
  for (Elem g : generators) acc |= p.up(g);
  return acc.to_vector();
}

ElemSet interval(const Poset& p, Elem lower, Elem upper) {
  return (p.up(lower) & p.down(upper)).to_vector();
}

ElemSet select(const Poset& p, const Selector& selector) {
  auto check = [&](const ElemSet& xs) {
    for (Elem x : xs)
      if (x >= p.size())
        throw ValidationError("unknown element", {"#" + std::to_string(x)});
  };
  return std::visit(
      [&](const auto& s) -> ElemSet {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Explicit>) {
          check(s.elements);
          ElemSet out = s.elements;
          std::sort(out.begin(), out.end());
          out.erase(std::unique(out.begin(), out.end()), out.end());
          return out;
        } else if constexpr (std::is_same_v<S, DownsetOf>) {
          check(s.generators);
          return downset(p, s.generators);
        } else if constexpr (std::is_same_v<S, UpsetOf>) {
          check(s.generators);
          return upset(p, s.generators);
        } else if constexpr (std::is_same_v<S, IntervalOf>) {
          check({s.lower, s.upper});
          return interval(p, s.lower, s.upper);
        } else if constexpr (std::is_same_v<S, Minimals>) {
          return p.minimals();
        } else {
          return p.maximals();
        }
      },
      selector);
}

Subposet subposet(const Poset& p, const Selector& selector) {
  ElemSet chosen = select(p, selector);
  return {p.induced(chosen), chosen};
}

Bitset upper_bounds(const Poset& p, const ElemSet& xs) {
  Bitset acc(p.size(), true);
  for (Elem x : xs) acc &= p.up(x);
  return acc;
}

Bitset lower_bounds(const Poset& p, const ElemSet& xs) {
  Bitset acc(p.size(), true);
  for (Elem x : xs) acc &= p.down(x);
  return acc;
}

std::optional<Elem> least_of(const Poset& p, const Bitset& candidates) {
  std::optional<Elem> found;
  candidates.for_each([&](Elem c) {
    if (!found && candidates.is_subset_of(p.up(c))) found = c;
  });
  return found;
}

std::optional<Elem> greatest_of(const Poset& p, const Bitset& candidates) {
  std::optional<Elem> found;
  candidates.for_each([&](Elem c) {
    if (!found && candidates.is_subset_of(p.down(c))) found = c;
  });
  return found;
}

std::optional<Elem> join_of(const Poset& p, const ElemSet& xs) {
  return least_of(p, upper_bounds(p, xs));
}

std::optional<Elem> meet_of(const Poset& p, const ElemSet& xs) {
  return greatest_of(p, lower_bounds(p, xs));
}

LatticeReport lattice_report(const Poset& p) {
  LatticeReport r;
  bool lattice = !p.empty();
  bool meets = true;
  for (Elem a = 0; a < p.size(); ++a) {
    for (Elem b = a + 1; b < p.size(); ++b) {
      const bool has_meet = meet_of(p, {a, b}).has_value();
      const bool has_join = join_of(p, {a, b}).has_value();
      if (!has_meet && meets) {
        meets = false;
        r.meet_witness = {a, b};
      }
      if ((!has_meet || !has_join) && !r.witness) {
        lattice = false;
        r.witness = {a, b};
      }
    }
  }
  r.is_nonempty_lattice = lattice;
  r.is_meet_semilattice = meets;
  return r;
}

bool is_nonempty_lattice(const Poset& p) { return lattice_report(p).is_nonempty_lattice; }

bool is_nonempty_meet_semilattice(const Poset& p) {
  return !p.empty() && lattice_report(p).is_meet_semilattice;
}

ThreeCompleteness is_three_complete(const Poset& p) {
  const std::size_t n = p.size();
  // bounded[x][y]: x and y share an upper bound.
  std::vector<Bitset> bounded(n, Bitset(n));
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if ((p.up(x) & p.up(y)).any()) bounded[x].set(y);

  ThreeCompleteness result;
  ElemSet chain;
  // Extends the antichain `chain` with elements of larger index that are
  // incomparable to, and pairwise bounded with, every current member.
  std::function<bool(const Bitset&, Elem)> extend = [&](const Bitset& eligible, Elem from) {
    for (Elem x = eligible.next(from); x < n; x = eligible.next(x + 1)) {
      chain.push_back(x);
      if (chain.size() >= 2 && !join_of(p, chain)) {
        result.holds = false;
        result.counterexample = chain;
        return false;
      }
      Bitset next = eligible & bounded[x] & ~(p.up(x) | p.down(x));
      if (!extend(next, x + 1)) return false;
      chain.pop_back();
    }
    return true;
  };
  extend(Bitset(n, true), 0);
  if (result.holds && n > 0 && !join_of(p, {})) {
    result.holds = false;
    result.counterexample = ElemSet{};
  }
  return result;
}

void for_each_downset(const Poset& p, const std::function<bool(const Bitset&)>& visit) {
  const std::size_t n = p.size();
  const auto& order = p.linear_extension();
  // Decide elements from the top of the linear extension down: excluding x
  // forces nothing upward (already decided), including x forces its downset.
  std::vector<int> state(n, 0);  // 0 undecided, 1 in, -1 out
  std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
    if (pos == 0) {
      Bitset in(n);
      for (Elem x = 0; x < n; ++x)
        if (state[x] == 1) in.set(x);
      return visit(in);
    }
    Elem x = order[pos - 1];
    if (state[x] != 0) return rec(pos - 1);
    // Out.
    state[x] = -1;
    if (!rec(pos - 1)) return false;
    // In: everything below joins. Lower elements are undecided or already in.
    state[x] = 0;
    std::vector<Elem> forced;
    p.down(x).for_each([&](Elem y) {
      if (state[y] == 0) forced.push_back(y);
    });
    for (Elem y : forced) state[y] = 1;
    const bool cont = rec(pos - 1);
    for (Elem y : forced) state[y] = 0;
    return cont;
  };
  rec(n);
}

std::vector<std::uint8_t> canonical_code(const Poset& p, const std::vector<Elem>* inv) {
  const std::size_t n = p.size();
  // Vertex invariants; permutations only within invariant classes.
  std::vector<std::tuple<std::size_t, std::size_t, bool, std::size_t>> key(n);
  for (Elem x = 0; x < n; ++x) {
    const bool fixed = inv && (*inv)[x] == x;
    const std::size_t partner = inv ? p.down((*inv)[x]).count() : 0;
    key[x] = {p.down(x).count(), p.up(x).count(), fixed, partner};
  }
  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), Elem{0});
  std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) { return key[a] < key[b]; });

  std::vector<std::uint8_t> best;
  std::vector<Elem> perm(n);  // position -> element
  std::vector<Elem> pos_of(n);
  std::vector<bool> used(n, false);
  std::vector<std::uint8_t> code;
  code.reserve(n * n + n);

  auto encode = [&]() {
    code.clear();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) code.push_back(p.le(perm[i], perm[j]) ? 1 : 0);
    if (inv)
      for (std::size_t i = 0; i < n; ++i)
        code.push_back(static_cast<std::uint8_t>(pos_of[(*inv)[perm[i]]]));
    if (best.empty() || code < best) best = code;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == n) {
      encode();
      return;
    }
    for (Elem x : order) {
      if (used[x] || key[x] != key[order[pos]]) continue;
      used[x] = true;
      perm[pos] = x;
      pos_of[x] = pos;
      rec(pos + 1);
      used[x] = false;
    }
  };
  rec(0);
  // Prefix with the invariant multiset so the code is class-complete.
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(n));
  for (Elem x : order) {
    out.push_back(static_cast<std::uint8_t>(std::get<0>(key[x])));
    out.push_back(static_cast<std::uint8_t>(std::get<1>(key[x])));
  }
  out.insert(out.end(), best.begin(), best.end());
  return out;
}

std::vector<Poset> enumerate_posets_of_size(std::size_t n) {
  auto numbered = [](std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back(std::to_string(i));
    return names;
  };
  std::vector<Poset> level{Poset()};
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<Poset> next;
    std::set<std::vector<std::uint8_t>> seen;
    for (const Poset& base : level) {
      // Adjoin a new maximal element above each downset of `base`.
      for_each_downset(base, [&](const Bitset& below) {
        std::vector<Bitset> up(size, Bitset(size));
        for (Elem x = 0; x + 1 < size; ++x) {
          base.up(x).for_each([&](Elem y) { up[x].set(y); });
          if (below.test(x)) up[x].set(size - 1);
        }
        up[size - 1].set(size - 1);
        Poset candidate = Poset::from_up_rows(numbered(size), std::move(up));
        if (seen.insert(canonical_code(candidate)).second) next.push_back(candidate);
        return true;
      });
    }
    level = std::move(next);
  }
  return level;
}

std::vector<Poset> enumerate_posets_upto(std::size_t k) {
  std::vector<Poset> out;
  for (std::size_t n = 0; n <= k; ++n) {
    auto level = enumerate_posets_of_size(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::optional<std::vector<Elem>> find_isomorphism(const Poset& p, const Poset& q) {
  if (p.size() != q.size()) return std::nullopt;
  const std::size_t n = p.size();
  auto key = [](const Poset& s, Elem x) {
    return std::pair{s.down(x).count(), s.up(x).count()};
  };
  MapProblem problem{&p, &q, nullptr, nullptr, std::vector<Bitset>(n, Bitset(n))};
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

MonotoneMap validate_monotone_map(const Poset& dom, const Poset& cod, std::vector<Elem> map) {
  if (map.size() != dom.size()) throw ValidationError("map is not total");
  for (Elem x = 0; x < dom.size(); ++x)
    if (map[x] >= cod.size()) throw ValidationError("map leaves the codomain", {dom.name(x)});
  for (Elem x = 0; x < dom.size(); ++x)
    for (Elem y = dom.up(x).first(); y < dom.size(); y = dom.up(x).next(y + 1))
      if (!cod.le(map[x], map[y]))
        throw ValidationError("monotonicity violation", {dom.name(x), dom.name(y)});
  return {dom, cod, std::move(map)};
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  std::vector<Elem> m(f.map.size());
  for (Elem x = 0; x < m.size(); ++x) m[x] = g.map[f.map[x]];
  return {f.dom, g.cod, std::move(m)};
}

MonotoneMap identity_map(const Poset& p) {
  std::vector<Elem> m(p.size());
  std::iota(m.begin(), m.end(), Elem{0});
  return {p, p, std::move(m)};
}

void for_each_monotone_map(const Poset& dom, const Poset& cod,
                           const std::function<bool(const std::vector<Elem>&)>& visit) {
  MapProblem problem{&dom, &cod, nullptr, nullptr, {}};
  search_maps(problem, visit);
}

std::vector<MonotoneMap> enumerate_monotone_maps(const Poset& dom, const Poset& cod) {
  std::vector<MonotoneMap> out;
  for_each_monotone_map(dom, cod, [&](const std::vector<Elem>& m) {
    out.push_back({dom, cod, m});
    return true;
  });
  return out;
}

}  // namespace morgan
