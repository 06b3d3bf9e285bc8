#include "morgan/unification.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

#include "morgan/error.hpp"
#include "morgan/projectivity.hpp"
#include "morgan/search.hpp"

namespace morgan {

std::string to_string(UnifType t) {
  switch (t) {
    case UnifType::unitary: return "unitary";
    case UnifType::finitary: return "finitary";
    case UnifType::nullary: return "nullary";
  }
  return "?";
}

std::string to_string(Family f) {
  switch (f) {
    case Family::bdl: return "bdl";
    case Family::k1: return "k1";
    case Family::k2: return "k2";
    case Family::m1: return "m1";
    case Family::m2: return "m2";
    case Family::m3: return "m3";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view s) {
  for (Family f : {Family::bdl, Family::k1, Family::k2, Family::m1, Family::m2, Family::m3})
    if (s == to_string(f)) return f;
  return std::nullopt;
}

std::size_t domain_size(const Unifier& u) {
  return std::visit([](const auto& m) { return m.dom.size(); }, u);
}

std::size_t codomain_size(const Unifier& u) {
  return std::visit([](const auto& m) { return m.cod.size(); }, u);
}

Elem apply(const Unifier& u, Elem x) {
  return std::visit([x](const auto& m) { return m.map[x]; }, u);
}

ElemSet image(const Unifier& u) {
  ElemSet out = std::visit([](const auto& m) { return m.map; }, u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_solvable(const Poset& q) { return !q.empty(); }

bool is_solvable(const InvPoset& q, Variety v) {
  if (v == Variety::bdl) return is_solvable(q.base());
  if (v == Variety::kleene && !q.is_kleene())
    throw PreconditionError("kleene variety requested on a non-Kleene object");
  return !q.fixed_points().empty();
}

namespace {

bool has_fixed_between(const InvPoset& q, Elem x, Elem y) {
  bool found = false;
  (q.base().up(x) & q.base().down(y)).for_each([&](Elem z) { found = found || q.is_fixed(z); });
  return found;
}

ElemSet inv_closure(const InvPoset& q, const std::vector<bool>& member) {
  ElemSet out;
  for (Elem x = 0; x < q.size(); ++x)
    if (member[x] || member[q.inv(x)]) out.push_back(x);
  return out;
}

}  // namespace

Core kleene_core(const InvPoset& q) {
  if (!q.is_kleene()) throw PreconditionError("kleene core needs a Kleene object");
  const Poset& b = q.base();
  std::vector<bool> member(q.size(), false);
  for (Elem x = 0; x < q.size(); ++x) {
    bool below_fixed = false;
    b.up(x).for_each([&](Elem z) { below_fixed = below_fixed || q.is_fixed(z); });
    member[x] = below_fixed;
  }
  Core core;
  core.selected = inv_closure(q, member);
  const ElemSet& s = core.selected;
  const std::size_t n = s.size();

  std::vector<Bitset> up(n, Bitset(n));
  for (Elem i = 0; i < n; ++i)
    for (Elem j = 0; j < n; ++j) {
      const Elem x = s[i], y = s[j];
      if (!b.le(x, y)) continue;
      const bool a = b.le(x, q.inv(x)) && b.le(y, q.inv(y));
      const bool bb = b.le(q.inv(x), x) && b.le(q.inv(y), y);
      if (a || bb || has_fixed_between(q, x, y)) up[i].set(j);
    }
  const std::vector<Bitset> direct = up;
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (up[i].test(k)) up[i] |= up[k];
  core.closure_extended = up != direct;

  std::vector<std::string> names;
  std::vector<Elem> inv(n);
  for (Elem i = 0; i < n; ++i) {
    names.push_back(q.name(s[i]));
    inv[i] = static_cast<Elem>(std::lower_bound(s.begin(), s.end(), q.inv(s[i])) - s.begin());
  }
  try {
    core.structure = validate_involutive(Poset::from_up_rows(std::move(names), std::move(up)), inv);
  } catch (const ValidationError& e) {
    throw InternalError(std::string("kleene core is not an involutive poset: ") + e.what());
  }
  return core;
}

Core demorgan_core(const InvPoset& q) {
  const Poset& b = q.base();
  std::vector<bool> member(q.size(), false);
  for (Elem x = 0; x < q.size(); ++x) {
    Bitset below = b.down(x) & b.down(q.inv(x));
    below.for_each([&](Elem y) {
      if (member[x]) return;
      b.up(y).for_each([&](Elem z) { member[x] = member[x] || q.is_fixed(z); });
    });
  }
  Core core;
  core.selected = inv_closure(q, member);
  core.structure = q.induced(core.selected);
  return core;
}

namespace {

const std::vector<std::string>& slots_of(Family f) {
  static const std::vector<std::string> bdl{"x", "a", "b", "c", "d", "y"};
  static const std::vector<std::string> k1{"x", "a", "b", "c", "d", "y", "z"};
  static const std::vector<std::string> k2{"x", "a", "b", "c", "d", "e", "f", "y", "z", "w"};
  static const std::vector<std::string> m2{"x", "a", "b"};
  switch (f) {
    case Family::bdl:
    case Family::m1: return bdl;
    case Family::k1: return k1;
    case Family::k2:
    case Family::m3: return k2;
    case Family::m2: return m2;
  }
  return bdl;
}

// The order and, when present, the involution the clauses read.
struct View {
  const Poset& p;
  const InvPoset* q;
  bool le(Elem x, Elem y) const { return p.le(x, y); }
  Elem inv(Elem x) const { return q->inv(x); }
  bool fixed(Elem x) const { return q->is_fixed(x); }
  const Bitset& up(Elem x) const { return p.up(x); }
  const Bitset& down(Elem x) const { return p.down(x); }
  std::optional<Elem> first_fixed_above(Elem x) const {
    std::optional<Elem> out;
    up(x).for_each([&](Elem z) {
      if (!out && fixed(z)) out = z;
    });
    return out;
  }
};

// Something e with a, b <= e <= c, d.
bool has_between(const View& v, Elem a, Elem b, Elem c, Elem d) {
  return (v.up(a) & v.up(b) & v.down(c) & v.down(d)).any();
}

// Something g with a, b, c <= g <= i(g).
bool has_lower_bound_point(const View& v, Elem a, Elem b, Elem c) {
  bool found = false;
  (v.up(a) & v.up(b) & v.up(c)).for_each([&](Elem g) { found = found || v.le(g, v.inv(g)); });
  return found;
}

std::optional<ElemSet> search_crown(const View& v, Family f) {
  const std::size_t n = v.p.size();
  for (Elem x = 0; x < n; ++x) {
    std::optional<Elem> y_m1;
    if (f == Family::m1) {
      y_m1 = v.first_fixed_above(x);
      if (!y_m1) continue;
    }
    const Bitset& ux = v.up(x);
    for (Elem a = 0; a < n; ++a) {
      if (!ux.test(a)) continue;
      for (Elem b = 0; b < n; ++b) {
        if (!ux.test(b)) continue;
        Bitset cd = v.up(a) & v.up(b);
        if (f == Family::m1) cd &= v.down(v.inv(x));
        for (Elem c = 0; c < n; ++c) {
          if (!cd.test(c)) continue;
          if (f == Family::k1 && !v.first_fixed_above(c)) continue;
          for (Elem d = 0; d < n; ++d) {
            if (!cd.test(d) || has_between(v, a, b, c, d)) continue;
            switch (f) {
              case Family::bdl: {
                Bitset ys = v.up(c) & v.up(d);
                if (ys.any()) return ElemSet{x, a, b, c, d, ys.first()};
                break;
              }
              case Family::k1: {
                auto y = v.first_fixed_above(c);
                auto z = v.first_fixed_above(d);
                if (y && z) return ElemSet{x, a, b, c, d, *y, *z};
                break;
              }
              default: return ElemSet{x, a, b, c, d, *y_m1};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<ElemSet> search_triangle(const View& v) {
  const std::size_t n = v.p.size();
  auto first_with_fixed = [&](const Bitset& candidates) -> std::optional<Elem> {
    std::optional<Elem> out;
    candidates.for_each([&](Elem e) {
      if (!out && v.first_fixed_above(e)) out = e;
    });
    return out;
  };
  for (Elem x = 0; x < n; ++x) {
    const Bitset& ux = v.up(x);
    for (Elem a = 0; a < n; ++a) {
      if (!ux.test(a)) continue;
      for (Elem b = 0; b < n; ++b) {
        if (!ux.test(b)) continue;
        auto d = first_with_fixed(v.up(a) & v.up(b));
        if (!d) continue;
        for (Elem c = 0; c < n; ++c) {
          if (!ux.test(c) || has_lower_bound_point(v, a, b, c)) continue;
          auto e = first_with_fixed(v.up(a) & v.up(c));
          auto f = first_with_fixed(v.up(b) & v.up(c));
          if (!e || !f) continue;
          return ElemSet{x, a, b, c, *d, *e, *f, *v.first_fixed_above(*d),
                         *v.first_fixed_above(*e), *v.first_fixed_above(*f)};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<ElemSet> search_m2(const View& v) {
  const std::size_t n = v.p.size();
  for (Elem x = 0; x < n; ++x)
    for (Elem a = 0; a < n; ++a) {
      if (!v.le(x, a) || !v.le(a, v.inv(a)) || v.first_fixed_above(a)) continue;
      std::optional<Elem> b;
      v.up(x).for_each([&](Elem e) {
        if (!b && v.fixed(e)) b = e;
      });
      if (b) return ElemSet{x, a, *b};
    }
  return std::nullopt;
}

std::optional<ElemSet> find_pattern(const View& v, Family f) {
  switch (f) {
    case Family::bdl:
    case Family::k1:
    case Family::m1: return search_crown(v, f);
    case Family::k2:
    case Family::m3: return search_triangle(v);
    case Family::m2: return search_m2(v);
  }
  return std::nullopt;
}

bool verify_pattern(const View& v, Family f, const ElemSet& t) {
  if (t.size() != slots_of(f).size()) return false;
  for (Elem e : t)
    if (e >= v.p.size()) return false;
  auto le = [&](Elem x, Elem y) { return v.le(x, y); };
  auto fixed_over = [&](Elem x, Elem y) { return le(x, y) && v.fixed(y); };
  // Negative clauses by scanning every element.
  auto none_between = [&](Elem a, Elem b, Elem c, Elem d) {
    for (Elem e = 0; e < v.p.size(); ++e)
      if (le(a, e) && le(b, e) && le(e, c) && le(e, d)) return false;
    return true;
  };
  switch (f) {
    case Family::bdl: {
      auto [x, a, b, c, d, y] = std::array<Elem, 6>{t[0], t[1], t[2], t[3], t[4], t[5]};
      return le(x, a) && le(x, b) && le(a, c) && le(a, d) && le(b, c) && le(b, d) && le(c, y) &&
             le(d, y) && none_between(a, b, c, d);
    }
    case Family::k1: {
      const Elem x = t[0], a = t[1], b = t[2], c = t[3], d = t[4], y = t[5], z = t[6];
      return le(x, a) && le(x, b) && le(a, c) && le(a, d) && le(b, c) && le(b, d) &&
             fixed_over(c, y) && fixed_over(d, z) && none_between(a, b, c, d);
    }
    case Family::m1: {
      const Elem x = t[0], a = t[1], b = t[2], c = t[3], d = t[4], y = t[5];
      return le(x, a) && le(x, b) && le(a, c) && le(a, d) && le(b, c) && le(b, d) &&
             fixed_over(x, y) && le(c, v.inv(x)) && le(d, v.inv(x)) && none_between(a, b, c, d);
    }
    case Family::k2:
    case Family::m3: {
      const Elem x = t[0], a = t[1], b = t[2], c = t[3], d = t[4], e = t[5], f2 = t[6];
      if (!(le(x, a) && le(x, b) && le(x, c) && le(a, d) && le(a, e) && le(b, d) && le(b, f2) &&
            le(c, e) && le(c, f2) && fixed_over(d, t[7]) && fixed_over(e, t[8]) &&
            fixed_over(f2, t[9])))
        return false;
      for (Elem g = 0; g < v.p.size(); ++g)
        if (le(a, g) && le(b, g) && le(c, g) && le(g, v.inv(g))) return false;
      return true;
    }
    case Family::m2: {
      const Elem x = t[0], a = t[1], b = t[2];
      if (!(le(x, a) && le(x, b) && le(a, v.inv(a)) && v.fixed(b))) return false;
      for (Elem c = 0; c < v.p.size(); ++c)
        if (fixed_over(a, c)) return false;
      return true;
    }
  }
  return false;
}

void require_involution(Family f) {
  if (f != Family::bdl) throw PreconditionError("pattern " + to_string(f) + " needs an involution");
}

}  // namespace

std::size_t pattern_arity(Family f) { return slots_of(f).size(); }
std::vector<std::string> pattern_slots(Family f) { return slots_of(f); }

std::optional<ElemSet> find_null_pattern(const InvPoset& q, Family f) {
  return find_pattern(View{q.base(), &q}, f);
}

std::optional<ElemSet> find_null_pattern(const Poset& q, Family f) {
  require_involution(f);
  return find_pattern(View{q, nullptr}, f);
}

bool verify_null_pattern(const InvPoset& q, Family f, const ElemSet& tuple) {
  return verify_pattern(View{q.base(), &q}, f, tuple);
}

bool verify_null_pattern(const Poset& q, Family f, const ElemSet& tuple) {
  require_involution(f);
  return verify_pattern(View{q, nullptr}, f, tuple);
}

namespace {

bool every_interval_is_lattice(const Poset& q) {
  for (Elem x = 0; x < q.size(); ++x)
    for (Elem y = 0; y < q.size(); ++y)
      if (q.le(x, y) && !is_nonempty_lattice(q.induced(interval(q, x, y)))) return false;
  return true;
}

std::vector<Unifier> bdl_mu_set(const Poset& q) {
  std::vector<Unifier> out;
  for (Elem x : q.minimals())
    for (Elem y : q.maximals()) {
      if (!q.le(x, y)) continue;
      ElemSet iv = interval(q, x, y);
      out.push_back(validate_monotone_map(q.induced(iv), q, iv));
    }
  return out;
}

// [x, i(x)] in the core for each x <=' i(x).
std::vector<std::pair<Elem, InvPoset>> core_intervals(const InvPoset& c) {
  std::vector<std::pair<Elem, InvPoset>> out;
  for (Elem x = 0; x < c.size(); ++x)
    if (c.le(x, c.inv(x))) out.emplace_back(x, c.induced(interval(c.base(), x, c.inv(x))));
  return out;
}

bool kleene_good(const ConditionReport& r) { return r.k1 && r.m3; }
bool demorgan_good(const ConditionReport& r) { return r.m1 && r.m2 && r.m3; }

InvMorphism inclusion(const InvPoset& q, const Core& core, const ElemSet& within_core) {
  ElemSet map;
  for (Elem k : within_core) map.push_back(core.selected[k]);
  return validate_inv_morphism(core.structure.induced(within_core), q, std::move(map));
}

std::vector<Unifier> core_mu_set(const InvPoset& q, const Core& core) {
  std::vector<Unifier> out;
  const InvPoset& c = core.structure;
  for (Elem x : c.base().minimals())
    out.push_back(inclusion(q, core, interval(c.base(), x, c.inv(x))));
  return out;
}

ElemSet lift(const Core& core, const ElemSet& tuple) {
  ElemSet out;
  for (Elem e : tuple) out.push_back(core.selected[e]);
  return out;
}

// The clauses hold in the core's order; the tuple is lifted to the instance.
NullPattern pattern_certificate(const Core& core, const std::vector<Family>& preference) {
  for (Family f : preference)
    if (auto t = find_null_pattern(core.structure, f)) return NullPattern{f, lift(core, *t)};
  throw InternalError("nullary instance without a pattern");
}

ElemSet all_elements(std::size_t n) {
  ElemSet out(n);
  for (Elem k = 0; k < n; ++k) out[k] = k;
  return out;
}

}  // namespace

UnifClassification classify(const Poset& q) {
  UnifClassification out;
  out.solvable = is_solvable(q);
  if (!out.solvable) return out;
  if (is_nonempty_lattice(q)) {
    out.type = UnifType::unitary;
    out.certificate = MostGeneral{identity_map(q)};
  } else if (every_interval_is_lattice(q)) {
    out.type = UnifType::finitary;
    out.certificate = MuSet{bdl_mu_set(q)};
  } else {
    out.type = UnifType::nullary;
    auto t = find_pattern(View{q, nullptr}, Family::bdl);
    if (!t) throw InternalError("nullary instance without a bdl pattern");
    out.certificate = NullPattern{Family::bdl, *t};
  }
  return out;
}

UnifClassification classify(const InvPoset& q, Variety v) {
  if (v == Variety::bdl) return classify(q.base());
  UnifClassification out;
  out.solvable = is_solvable(q, v);
  if (!out.solvable) return out;
  Core core = v == Variety::kleene ? kleene_core(q) : demorgan_core(q);
  const InvPoset& c = core.structure;
  const ConditionReport whole = condition_report(c);
  const auto intervals = core_intervals(c);

  if (v == Variety::kleene) {
    bool k1_everywhere = true, all_good = true;
    for (const auto& [x, iv] : intervals) {
      ConditionReport r = condition_report(iv);
      k1_everywhere = k1_everywhere && r.k1;
      all_good = all_good && kleene_good(r);
    }
    if (kleene_good(whole)) {
      out.type = UnifType::unitary;
      out.certificate = MostGeneral{inclusion(q, core, all_elements(c.size()))};
    } else if (!whole.k1 && all_good) {
      out.type = UnifType::finitary;
      out.certificate = MuSet{core_mu_set(q, core)};
    } else {
      out.type = UnifType::nullary;
      out.certificate = pattern_certificate(
          core,
          k1_everywhere ? std::vector<Family>{Family::k2, Family::k1}
                        : std::vector<Family>{Family::k1, Family::k2});
    }
  } else {
    bool m1_everywhere = true, m2_everywhere = true, all_good = true;
    for (const auto& [x, iv] : intervals) {
      ConditionReport r = condition_report(iv);
      m1_everywhere = m1_everywhere && r.m1;
      m2_everywhere = m2_everywhere && r.m2;
      all_good = all_good && demorgan_good(r);
    }
    if (demorgan_good(whole)) {
      out.type = UnifType::unitary;
      out.certificate = MostGeneral{inclusion(q, core, all_elements(c.size()))};
    } else if (!whole.m1 && all_good) {
      out.type = UnifType::finitary;
      out.certificate = MuSet{core_mu_set(q, core)};
    } else {
      out.type = UnifType::nullary;
      // M1 in an interval already forces M3 there, so an m3 pattern only
      // shows up beside an M1 failure; report it when present.
      std::vector<Family> order{Family::m3, Family::m1, Family::m2};
      if (m1_everywhere) order = m2_everywhere ? std::vector<Family>{Family::m3, Family::m1, Family::m2}
                                               : std::vector<Family>{Family::m2, Family::m1, Family::m3};
      out.certificate = pattern_certificate(core, order);
    }
  }
  out.core = std::move(core);
  return out;
}

std::vector<Unifier> mu_set(const Poset& q) {
  UnifClassification c = classify(q);
  if (c.type != UnifType::finitary) throw PreconditionError("instance is not finitary");
  return std::get<MuSet>(*c.certificate).unifiers;
}

std::vector<Unifier> mu_set(const InvPoset& q, Variety v) {
  UnifClassification c = classify(q, v);
  if (c.type != UnifType::finitary) throw PreconditionError("instance is not finitary");
  return std::get<MuSet>(*c.certificate).unifiers;
}

namespace {

std::string digits(std::size_t j) { return std::to_string(j); }
std::string dot(std::size_t j, std::size_t k) { return digits(j) + "." + digits(k); }
std::string bar(const std::string& s) { return "~" + s; }

// Incremental builder for witness structures.
struct Builder {
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> covers;
  std::vector<Elem> inv;
  std::vector<AnchorRef> schema;
  std::map<std::string, Elem> index;

  Elem add(const std::string& name, AnchorRef anchor) {
    index[name] = names.size();
    names.push_back(name);
    inv.push_back(names.size() - 1);
    schema.push_back(anchor);
    return names.size() - 1;
  }
  // Adds `name` and its mirror, the mirror anchored to the inverted slot.
  Elem add_pair(const std::string& name, std::size_t slot) {
    Elem a = add(name, {slot, false});
    Elem b = add(bar(name), {slot, true});
    inv[a] = b;
    inv[b] = a;
    return a;
  }
  Elem at(const std::string& name) const { return index.at(name); }
  void cover(const std::string& lo, const std::string& hi) { covers.emplace_back(at(lo), at(hi)); }
  // lo < hi and the mirrored i(hi) < i(lo).
  void mirrored(const std::string& lo, const std::string& hi) {
    cover(lo, hi);
    covers.emplace_back(inv[at(hi)], inv[at(lo)]);
  }
};

bool odd(std::size_t j) { return j % 2 == 1; }

std::vector<std::pair<std::size_t, std::size_t>> odd_sum_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = j + 1; k <= n; ++k)
      if (odd(j + k)) out.emplace_back(j, k);
  return out;
}

Witness finish(Family f, std::size_t n, Builder& b, bool involutive) {
  Witness w;
  w.family = f;
  w.n = n;
  w.poset = Poset::from_pairs(b.names, b.covers);
  if (involutive) w.structure = validate_involutive(w.poset, b.inv);
  w.schema = std::move(b.schema);
  return w;
}

// Slots: x a b c d y.
Witness bdl_family(std::size_t n) {
  Builder b;
  b.add("bot", {0});
  for (std::size_t j = 1; j <= n; ++j) b.add(digits(j), {odd(j) ? 1u : 2u});
  const auto pairs = odd_sum_pairs(n);
  for (auto [j, k] : pairs) b.add(dot(j, k), {odd(j) ? 3u : 4u});
  b.add("top", {5});
  for (std::size_t j = 1; j <= n; ++j) b.cover("bot", digits(j));
  for (auto [j, k] : pairs) {
    b.cover(digits(j), dot(j, k));
    b.cover(digits(k), dot(j, k));
    b.cover(dot(j, k), "top");
  }
  // With a single generator nothing lies between 1 and the top.
  if (pairs.empty())
    for (std::size_t j = 1; j <= n; ++j) b.cover(digits(j), "top");
  return finish(Family::bdl, n, b, false);
}

// Slots: x a b c d y z.
Witness k1_family(std::size_t n) {
  Builder b;
  const auto pairs = odd_sum_pairs(n);
  b.add_pair("bot", 0);
  for (std::size_t j = 1; j <= n; ++j) b.add_pair(digits(j), odd(j) ? 1 : 2);
  for (auto [j, k] : pairs) {
    b.add_pair(dot(j, k), odd(j) ? 3 : 4);
    b.add(digits(j) + "d" + digits(k), {odd(j) ? 5u : 6u});
  }
  for (std::size_t j = 1; j <= n; ++j) b.mirrored("bot", digits(j));
  for (auto [j, k] : pairs) {
    b.mirrored(digits(j), dot(j, k));
    b.mirrored(digits(k), dot(j, k));
    const std::string diamond = digits(j) + "d" + digits(k);
    b.cover(dot(j, k), diamond);
    b.cover(diamond, bar(dot(j, k)));
  }
  return finish(Family::k1, n, b, true);
}

// Slots: x a b c d e f y z w.
Witness k2_family(Family f, std::size_t n) {
  Builder b;
  b.add_pair("bot", 0);
  for (std::size_t j = 1; j <= n; ++j) b.add_pair(digits(j), 1);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = 1; k <= n; ++k)
      if (j != k) b.add_pair(dot(j, k), j < k ? 2 : 3);
  auto circ = [](std::size_t j, std::size_t k) { return digits(j) + "o" + dot(j, k); };
  auto circ2 = [](std::size_t j, std::size_t k) { return dot(j, k) + "o" + dot(k, j); };
  auto dia = [](std::size_t j, std::size_t k) { return digits(j) + "d" + dot(j, k); };
  auto dia2 = [](std::size_t j, std::size_t k) { return dot(j, k) + "d" + dot(k, j); };
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = 1; k <= n; ++k)
      if (j != k) b.add_pair(circ(j, k), j < k ? 4 : 5);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = j + 1; k <= n; ++k) b.add_pair(circ2(j, k), 6);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = 1; k <= n; ++k)
      if (j != k) b.add(dia(j, k), {j < k ? 7u : 8u});
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = j + 1; k <= n; ++k) b.add(dia2(j, k), {9});

  for (std::size_t j = 1; j <= n; ++j) b.mirrored("bot", digits(j));
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = 1; k <= n; ++k) {
      if (j == k) continue;
      b.mirrored("bot", dot(j, k));
      b.mirrored(digits(j), circ(j, k));
      b.mirrored(dot(j, k), circ(j, k));
      b.mirrored(circ(j, k), dia(j, k));
    }
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t k = j + 1; k <= n; ++k) {
      b.mirrored(dot(j, k), circ2(j, k));
      b.mirrored(dot(k, j), circ2(j, k));
      b.mirrored(circ2(j, k), dia2(j, k));
    }
  return finish(f, n, b, true);
}

// Slots: x a b c d y.
Witness m1_family(std::size_t n) {
  Builder b;
  const auto pairs = odd_sum_pairs(n);
  b.add_pair("bot", 0);
  b.add("0", {5});
  for (std::size_t j = 1; j <= n; ++j) b.add_pair(digits(j), odd(j) ? 1 : 2);
  for (auto [j, k] : pairs) b.add_pair(dot(j, k), odd(j) ? 3 : 4);
  for (std::size_t j = 1; j <= n; ++j) b.mirrored("bot", digits(j));
  for (auto [j, k] : pairs) {
    b.mirrored("bot", bar(dot(j, k)));
    b.mirrored(digits(j), dot(j, k));
    b.mirrored(digits(k), dot(j, k));
  }
  b.cover("bot", "0");
  b.cover("0", bar("bot"));
  // Same gap as bdl: without pairs, 1 has nothing above it.
  if (pairs.empty())
    for (std::size_t j = 1; j <= n; ++j) b.mirrored(digits(j), bar("bot"));
  return finish(Family::m1, n, b, true);
}

// Slots: x a b.
Witness m2_family(std::size_t n) {
  Builder b;
  const std::size_t size = std::size_t{1} << n;
  auto word = [n](std::size_t bits) {
    std::string s;
    for (std::size_t m = 0; m < n; ++m) s += ((bits >> (n - 1 - m)) & 1U) ? '1' : '0';
    return s;
  };
  for (std::size_t bits = 0; bits < size; ++bits) {
    const std::size_t weight = static_cast<std::size_t>(__builtin_popcountll(bits));
    AnchorRef anchor = weight == 0       ? AnchorRef{0, false}
                       : weight == n     ? AnchorRef{0, true}
                       : 2 * weight < n ? AnchorRef{1, false}
                                         : AnchorRef{1, true};
    b.add(word(bits), anchor);
  }
  for (std::size_t bits = 0; bits < size; ++bits) b.inv[bits] = (size - 1) ^ bits;
  b.add("d", {2});
  for (std::size_t bits = 0; bits < size; ++bits)
    for (std::size_t m = 0; m < n; ++m)
      if (!((bits >> m) & 1U)) b.covers.emplace_back(bits, bits | (std::size_t{1} << m));
  b.cover(word(0), "d");
  b.cover("d", word(size - 1));
  return finish(Family::m2, n, b, true);
}

}  // namespace

std::size_t witness_size(Family f, std::size_t n) {
  const std::size_t pairs = (n / 2) * ((n + 1) / 2);
  const std::size_t ordered = n * (n - 1), unordered = n * (n - 1) / 2;
  switch (f) {
    case Family::bdl: return n + 2 + pairs;
    case Family::k1: return 2 + 2 * n + 3 * pairs;
    case Family::k2:
    case Family::m3: return 2 * (1 + n + ordered + ordered + unordered) + ordered + unordered;
    case Family::m1: return 3 + 2 * n + 2 * pairs;
    case Family::m2: return (std::size_t{1} << n) + 1;
  }
  return 0;
}

Witness witness_family(Family f, std::size_t n) {
  const std::size_t minimum = (f == Family::k1 || f == Family::k2 || f == Family::m3) ? 2 : 1;
  if (n < minimum)
    throw PreconditionError("family " + to_string(f) + " starts at n = " + std::to_string(minimum));
  switch (f) {
    case Family::bdl: return bdl_family(n);
    case Family::k1: return k1_family(n);
    case Family::k2:
    case Family::m3: return k2_family(f, n);
    case Family::m1: return m1_family(n);
    case Family::m2:
      if (n % 2 == 0) throw PreconditionError("family m2 needs odd n");
      if (n > 15) throw SizeGuardError("family m2 limited to n <= 15");
      return m2_family(n);
  }
  throw InternalError("unknown family");
}

namespace {

std::vector<Elem> schema_map(const Witness& w, const ElemSet& tuple, const InvPoset* q) {
  if (tuple.size() != pattern_arity(w.family))
    throw PreconditionError("tuple arity does not match family " + to_string(w.family));
  std::vector<Elem> map;
  for (const AnchorRef& r : w.schema) {
    Elem e = tuple.at(r.slot);
    if (r.inverted) {
      if (!q) throw InternalError("inverted anchor without an involution");
      e = q->inv(e);
    }
    map.push_back(e);
  }
  return map;
}

}  // namespace

Unifier instantiate(const Witness& w, const InvPoset& q, const ElemSet& tuple) {
  if (!w.structure) return instantiate(w, q.base(), tuple);
  return validate_inv_morphism(*w.structure, q, schema_map(w, tuple, &q));
}

Unifier instantiate(const Witness& w, const Poset& q, const ElemSet& tuple) {
  if (w.structure) throw PreconditionError("family " + to_string(w.family) + " needs an involution");
  return validate_monotone_map(w.poset, q, schema_map(w, tuple, nullptr));
}

bool more_general(const Unifier& u1, const Unifier& u2) {
  if (u1.index() != u2.index()) throw PreconditionError("unifiers of different kinds");
  return std::visit(
      [&](const auto& a) {
        using M = std::decay_t<decltype(a)>;
        const M& b = std::get<M>(u2);
        const std::size_t n = a.dom.size();
        if (a.cod.size() != b.cod.size()) throw PreconditionError("unifiers into different instances");
        MapProblem problem;
        if constexpr (std::is_same_v<M, MonotoneMap>) {
          if (a.cod.names() != b.cod.names()) throw PreconditionError("unifiers into different instances");
          problem.dom = &b.dom;
          problem.cod = &a.dom;
        } else {
          if (a.cod.base().names() != b.cod.base().names())
            throw PreconditionError("unifiers into different instances");
          problem.dom = &b.dom.base();
          problem.cod = &a.dom.base();
          problem.dom_inv = &b.dom.inv();
          problem.cod_inv = &a.dom.inv();
        }
        problem.allowed.assign(b.dom.size(), Bitset(n));
        for (Elem p = 0; p < b.dom.size(); ++p)
          for (Elem k = 0; k < n; ++k)
            if (a.map[k] == b.map[p]) problem.allowed[p].set(k);
        return find_map(problem).has_value();
      },
      u1);
}

namespace {

void guard_bound(std::size_t k) {
  if (k > 5) throw SizeGuardError("unifier enumeration limited to domains of at most 5 elements");
}

}  // namespace

std::vector<Poset> projective_lattice_domains(std::size_t k) {
  guard_bound(k);
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<Poset>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  std::vector<Poset> out;
  for (Poset& p : enumerate_posets_upto(k))
    if (is_nonempty_lattice(p)) out.push_back(std::move(p));
  return cache[k] = out;
}

std::vector<InvPoset> projective_domains(Variety v, std::size_t k) {
  if (v == Variety::bdl) throw PreconditionError("bdl domains are plain lattices");
  guard_bound(k);
  static std::mutex mutex;
  static std::map<std::pair<Variety, std::size_t>, std::vector<InvPoset>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({v, k});
  if (it != cache.end()) return it->second;
  std::vector<InvPoset> out;
  for (InvPoset& p : enumerate_inv_posets_upto(k)) {
    if (v == Variety::kleene && !p.is_kleene()) continue;
    if (is_projective_dual(p, v).projective) out.push_back(std::move(p));
  }
  return cache[{v, k}] = out;
}

std::vector<Unifier> unifiers_from(const Poset& q, const std::vector<Poset>& domains) {
  std::vector<Unifier> out;
  for (const Poset& d : domains)
    for (MonotoneMap& m : enumerate_monotone_maps(d, q)) out.emplace_back(std::move(m));
  return out;
}

std::vector<Unifier> unifiers_from(const InvPoset& q, const std::vector<InvPoset>& domains) {
  std::vector<Unifier> out;
  for (const InvPoset& d : domains)
    for (InvMorphism& m : enumerate_inv_morphisms(d, q)) out.emplace_back(std::move(m));
  return out;
}

std::vector<Unifier> enumerate_unifiers_bounded(const Poset& q, std::size_t k) {
  return unifiers_from(q, projective_lattice_domains(k));
}

std::vector<Unifier> enumerate_unifiers_bounded(const InvPoset& q, Variety v, std::size_t k) {
  if (v == Variety::bdl) return enumerate_unifiers_bounded(q.base(), k);
  if (v == Variety::kleene && !q.is_kleene())
    throw PreconditionError("kleene variety requested on a non-Kleene object");
  return unifiers_from(q, projective_domains(v, k));
}

}  // namespace morgan

namespace morgan {

namespace {

bool domain_projective(const Unifier& u, Variety v) {
  if (const auto* m = std::get_if<MonotoneMap>(&u)) return is_nonempty_lattice(m->dom);
  const auto& m = std::get<InvMorphism>(u);
  if (v == Variety::kleene && !m.dom.is_kleene()) return false;
  return is_projective_dual(m.dom, v).projective;
}

void audit_certificate(Audit& a, const UnifClassification& c, Variety v,
                       const std::vector<Unifier>& all) {
  const Certificate& cert = *c.certificate;
  auto fail = [&](std::string what) { a.failures.push_back(std::move(what)); };
  switch (*c.type) {
    case UnifType::unitary: {
      const auto* mg = std::get_if<MostGeneral>(&cert);
      if (!mg) return fail("unitary without a most general unifier");
      if (!domain_projective(mg->unifier, v)) fail("most general unifier has a non-projective domain");
      for (const Unifier& u : all)
        if (!more_general(mg->unifier, u)) return fail("unifier not below the most general one");
      return;
    }
    case UnifType::finitary: {
      const auto* mu = std::get_if<MuSet>(&cert);
      if (!mu) return fail("finitary without a mu-set");
      if (mu->unifiers.size() < 2) fail("finitary mu-set with fewer than two members");
      for (const Unifier& m : mu->unifiers)
        if (!domain_projective(m, v)) fail("mu-set member with a non-projective domain");
      for (std::size_t i = 0; i < mu->unifiers.size(); ++i)
        for (std::size_t j = 0; j < mu->unifiers.size(); ++j)
          if (i != j && more_general(mu->unifiers[i], mu->unifiers[j]))
            fail("mu-set members " + std::to_string(i) + " and " + std::to_string(j) + " comparable");
      for (const Unifier& u : all) {
        bool dominated = false;
        for (const Unifier& m : mu->unifiers) dominated = dominated || more_general(m, u);
        if (!dominated) return fail("unifier not dominated by the mu-set");
      }
      return;
    }
    case UnifType::nullary:
      if (!std::holds_alternative<NullPattern>(cert)) fail("nullary without a pattern");
      return;
  }
}

}  // namespace

Audit audit_classification(const Poset& q, std::size_t bound) {
  Audit a;
  UnifClassification c = classify(q);
  const std::vector<Unifier> all = enumerate_unifiers_bounded(q, bound);
  a.unifiers = all.size();
  a.solvable = c.solvable;
  if (!c.solvable) {
    if (!all.empty()) a.failures.push_back("unsolvable instance has a unifier");
    return a;
  }
  a.type = c.type;
  audit_certificate(a, c, Variety::bdl, all);
  if (const auto* np = std::get_if<NullPattern>(&*c.certificate))
    if (!verify_null_pattern(q, np->family, np->tuple)) a.failures.push_back("pattern fails its clauses");
  return a;
}

Audit audit_classification(const InvPoset& q, Variety v, std::size_t bound) {
  if (v == Variety::bdl) return audit_classification(q.base(), bound);
  Audit a;
  UnifClassification c = classify(q, v);
  const std::vector<Unifier> all = enumerate_unifiers_bounded(q, v, bound);
  a.unifiers = all.size();
  a.solvable = c.solvable;
  if (!c.solvable) {
    if (!all.empty()) a.failures.push_back("unsolvable instance has a unifier");
    return a;
  }
  a.type = c.type;
  audit_certificate(a, c, v, all);
  const Core& core = *c.core;
  std::vector<Elem> position(q.size(), q.size());
  for (Elem k = 0; k < core.selected.size(); ++k) position[core.selected[k]] = k;
  if (const auto* np = std::get_if<NullPattern>(&*c.certificate)) {
    ElemSet local;
    for (Elem e : np->tuple) local.push_back(position[e]);
    if (!verify_null_pattern(core.structure, np->family, local))
      a.failures.push_back("pattern fails its clauses in the core");
  }
  for (const Unifier& u : all) {
    const auto& m = std::get<InvMorphism>(u);
    std::vector<Elem> into(m.map.size());
    bool inside = true;
    for (Elem x = 0; x < m.map.size(); ++x) {
      into[x] = position[m.map[x]];
      inside = inside && into[x] != q.size();
    }
    if (!inside) {
      a.failures.push_back("unifier leaves the core");
      break;
    }
    try {
      validate_inv_morphism(m.dom, core.structure, into);
    } catch (const ValidationError&) {
      a.failures.push_back("unifier is not a morphism into the core");
      break;
    }
  }
  return a;
}

}  // namespace morgan
