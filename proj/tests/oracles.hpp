#pragma once

// Brute-force references. Deliberately naive: no pruning, no shared code
// with the library beyond the value types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "morgan/involutive.hpp"
#include "morgan/poset.hpp"

namespace oracle {

using morgan::Elem;
using Relation = std::vector<std::vector<bool>>;

inline Relation relation_of(const morgan::Poset& p) {
  Relation r(p.size(), std::vector<bool>(p.size()));
  for (Elem x = 0; x < p.size(); ++x)
    for (Elem y = 0; y < p.size(); ++y) r[x][y] = p.le(x, y);
  return r;
}

inline bool is_partial_order(const Relation& r) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!r[x][x]) return false;
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && r[x][y] && r[y][x]) return false;
      for (std::size_t z = 0; z < n; ++z)
        if (r[x][y] && r[y][z] && !r[x][z]) return false;
    }
  }
  return true;
}

inline std::vector<std::size_t> identity_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Lexicographically least relabelling of the relation (and involution).
inline std::vector<int> canonical_form(const Relation& r, const std::vector<Elem>* inv = nullptr) {
  const std::size_t n = r.size();
  auto perm = identity_perm(n);
  std::vector<int> best;
  do {
    std::vector<int> code;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) code.push_back(r[perm[x]][perm[y]]);
    if (inv) {
      std::vector<std::size_t> where(n);
      for (std::size_t k = 0; k < n; ++k) where[perm[k]] = k;
      for (std::size_t x = 0; x < n; ++x) code.push_back(static_cast<int>(where[(*inv)[perm[x]]]));
    }
    if (best.empty() || code < best) best = code;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Unlabelled posets with exactly n elements, by filtering every relation.
inline std::size_t count_posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> offdiag;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y) offdiag.emplace_back(x, y);
  std::set<std::vector<int>> classes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << offdiag.size()); ++mask) {
    Relation r(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x) r[x][x] = true;
    for (std::size_t k = 0; k < offdiag.size(); ++k)
      if ((mask >> k) & 1U) r[offdiag[k].first][offdiag[k].second] = true;
    if (is_partial_order(r)) classes.insert(canonical_form(r));
  }
  return classes.size();
}

// Unlabelled involutive posets with exactly n elements.
inline std::size_t count_inv_posets(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> offdiag;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y) offdiag.emplace_back(x, y);
  std::vector<std::vector<Elem>> involutions;
  auto perm = identity_perm(n);
  do {
    bool ok = true;
    for (std::size_t x = 0; x < n; ++x) ok = ok && perm[perm[x]] == x;
    if (ok) involutions.emplace_back(perm.begin(), perm.end());
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::set<std::vector<int>> classes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << offdiag.size()); ++mask) {
    Relation r(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x) r[x][x] = true;
    for (std::size_t k = 0; k < offdiag.size(); ++k)
      if ((mask >> k) & 1U) r[offdiag[k].first][offdiag[k].second] = true;
    if (!is_partial_order(r)) continue;
    for (const auto& inv : involutions) {
      bool antitone = true;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (r[x][y] && !r[inv[y]][inv[x]]) antitone = false;
      if (antitone) classes.insert(canonical_form(r, &inv));
    }
  }
  return classes.size();
}

inline bool isomorphic(const morgan::Poset& p, const morgan::Poset& q) {
  if (p.size() != q.size()) return false;
  auto perm = identity_perm(p.size());
  do {
    bool ok = true;
    for (Elem x = 0; x < p.size() && ok; ++x)
      for (Elem y = 0; y < p.size() && ok; ++y) ok = p.le(x, y) == q.le(perm[x], perm[y]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline bool inv_isomorphic(const morgan::InvPoset& p, const morgan::InvPoset& q) {
  if (p.size() != q.size()) return false;
  auto perm = identity_perm(p.size());
  do {
    bool ok = true;
    for (Elem x = 0; x < p.size() && ok; ++x) {
      ok = perm[p.inv(x)] == q.inv(perm[x]);
      for (Elem y = 0; y < p.size() && ok; ++y) ok = p.le(x, y) == q.le(perm[x], perm[y]);
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Calls visit with every total map dom -> cod.
inline void for_each_total_map(std::size_t dom, std::size_t cod,
                               const std::function<void(const std::vector<Elem>&)>& visit) {
  if (dom > 0 && cod == 0) return;
  std::vector<Elem> m(dom, 0);
  while (true) {
    visit(m);
    std::size_t k = 0;
    while (k < dom && ++m[k] == cod) m[k++] = 0;
    if (k == dom) return;
  }
}

inline std::size_t count_monotone(const morgan::Poset& p, const morgan::Poset& q) {
  std::size_t count = 0;
  for_each_total_map(p.size(), q.size(), [&](const std::vector<Elem>& m) {
    for (Elem x = 0; x < p.size(); ++x)
      for (Elem y = 0; y < p.size(); ++y)
        if (p.le(x, y) && !q.le(m[x], m[y])) return;
    ++count;
  });
  return count;
}

inline std::size_t count_inv_morphisms(const morgan::InvPoset& p, const morgan::InvPoset& q) {
  std::size_t count = 0;
  for_each_total_map(p.size(), q.size(), [&](const std::vector<Elem>& m) {
    for (Elem x = 0; x < p.size(); ++x) {
      if (m[p.inv(x)] != q.inv(m[x])) return;
      for (Elem y = 0; y < p.size(); ++y)
        if (p.le(x, y) && !q.le(m[x], m[y])) return;
    }
    ++count;
  });
  return count;
}

inline std::size_t count_downsets(const morgan::Poset& p) {
  std::size_t count = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << p.size()); ++s) {
    bool closed = true;
    for (Elem x = 0; x < p.size() && closed; ++x)
      for (Elem y = 0; y < p.size() && closed; ++y)
        if (((s >> x) & 1U) && p.le(y, x) && !((s >> y) & 1U)) closed = false;
    count += closed ? 1 : 0;
  }
  return count;
}

// Definitional 3-completeness over every subset.
inline bool three_complete(const morgan::Poset& p) {
  const std::size_t n = p.size();
  auto upper = [&](std::uint64_t s) {
    std::vector<Elem> out;
    for (Elem u = 0; u < n; ++u) {
      bool ok = true;
      for (Elem x = 0; x < n; ++x)
        if (((s >> x) & 1U) && !p.le(x, u)) ok = false;
      if (ok) out.push_back(u);
    }
    return out;
  };
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    // Every subset of size < 3, the empty one included, needs an upper bound.
    bool hypothesis = !upper(0).empty();
    for (Elem x = 0; x < n && hypothesis; ++x)
      for (Elem y = x; y < n && hypothesis; ++y) {
        std::uint64_t sub = 0;
        if ((s >> x) & 1U) sub |= std::uint64_t{1} << x;
        if ((s >> y) & 1U) sub |= std::uint64_t{1} << y;
        if (upper(sub).empty()) hypothesis = false;
      }
    if (!hypothesis) continue;
    auto ub = upper(s);
    bool has_least = false;
    for (Elem u : ub) {
      bool least = true;
      for (Elem v : ub) least = least && p.le(u, v);
      has_least = has_least || least;
    }
    if (!has_least) return false;
  }
  return true;
}

}  // namespace oracle
