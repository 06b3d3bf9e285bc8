#include "morgan/projectivity.hpp"

#include "morgan/error.hpp"
#include "morgan/search.hpp"

namespace morgan {

ElemSet lower_half(const InvPoset& p) {
  ElemSet s;
  for (Elem x = 0; x < p.size(); ++x)
    if (p.le(x, p.inv(x))) s.push_back(x);
  return s;
}

std::optional<std::array<Elem, 3>> m3_first_order_violation(const InvPoset& p) {
  const Poset& b = p.base();
  if (!is_nonempty_lattice(b)) throw PreconditionError("first-order M3 needs a nonempty lattice");
  const std::size_t n = p.size();
  auto j2 = [&](Elem x, Elem y) { return *join_of(b, {x, y}); };
  auto below_inv = [&](Elem x) { return p.le(x, p.inv(x)); };
  std::vector<Elem> join(n * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) join[x * n + y] = j2(x, y);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (!below_inv(join[x * n + y])) continue;
      for (Elem z = 0; z < n; ++z)
        if (below_inv(join[x * n + z]) && below_inv(join[y * n + z]) &&
            !below_inv(join[join[x * n + y] * n + z]))
          return std::array<Elem, 3>{x, y, z};
    }
  return std::nullopt;
}

ConditionReport condition_report(const InvPoset& p, ConditionOptions options) {
  ConditionReport r;
  const Poset& b = p.base();
  const std::size_t n = p.size();

  LatticeReport lr = lattice_report(b);
  if (!lr.is_nonempty_lattice) {
    r.m1 = false;
    r.m1_witness = lr.witness ? ElemSet{lr.witness->first, lr.witness->second} : ElemSet{};
  }

  const ElemSet s = lower_half(p);
  for (Elem x : s) {
    bool found = false;
    b.up(x).for_each([&](Elem y) { found = found || p.is_fixed(y); });
    if (!found) {
      r.m2 = false;
      r.m2_witness = ElemSet{x};
      break;
    }
  }

  const Poset sp = b.induced(s);
  if (options.m3_first_order && r.m1) {
    if (auto v = m3_first_order_violation(p)) {
      r.m3 = false;
      r.m3_witness = ElemSet{(*v)[0], (*v)[1], (*v)[2]};
    }
  } else {
    ThreeCompleteness tc = is_three_complete(sp);
    if (!tc.holds) {
      r.m3 = false;
      ElemSet w;
      for (Elem k : *tc.counterexample) w.push_back(s[k]);
      r.m3_witness = w;
    }
  }

  LatticeReport sr = lattice_report(sp);
  if (sp.empty() || !sr.is_meet_semilattice) {
    r.k1 = false;
    r.k1_witness =
        sr.meet_witness ? ElemSet{s[sr.meet_witness->first], s[sr.meet_witness->second]} : ElemSet{};
  }

  for (Elem x = 0; x < n && r.k2; ++x)
    for (Elem y = x + 1; y < n && r.k2; ++y) {
      if (!(p.le(x, p.inv(x)) && p.le(x, p.inv(y)) && p.le(y, p.inv(x)) && p.le(y, p.inv(y))))
        continue;
      bool found = false;
      (b.up(x) & b.up(y)).for_each([&](Elem z) { found = found || p.le(z, p.inv(z)); });
      if (!found) {
        r.k2 = false;
        r.k2_witness = ElemSet{x, y};
      }
    }
  return r;
}

Projectivity is_projective_dual(const Poset& p) {
  Projectivity out;
  LatticeReport lr = lattice_report(p);
  out.projective = lr.is_nonempty_lattice;
  if (!out.projective) {
    out.report.m1 = false;
    out.report.m1_witness = lr.witness ? ElemSet{lr.witness->first, lr.witness->second} : ElemSet{};
  }
  return out;
}

Projectivity is_projective_dual(const InvPoset& p, Variety v) {
  if (v == Variety::bdl) return is_projective_dual(p.base());
  if (v == Variety::kleene && !p.is_kleene())
    throw PreconditionError("kleene variety requested on a non-Kleene object");
  Projectivity out;
  out.report = condition_report(p);
  const ConditionReport& r = out.report;
  out.projective = v == Variety::demorgan ? (r.m1 && r.m2 && r.m3) : (r.m2 && r.m3 && r.k1 && r.k2);
  return out;
}

namespace {

// Order on D digits: 2 <= 0,1 <= 3.
bool digit_le(std::uint8_t a, std::uint8_t b) {
  return a == b || a == 2 || b == 3;
}

std::uint8_t digit_inv(std::uint8_t a) {
  return a == 2 ? 3 : a == 3 ? 2 : a;
}

bool vec_le(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b,
            const std::vector<bool>& keep) {
  for (std::size_t m = 0; m < a.size(); ++m)
    if (keep[m] && !digit_le(a[m], b[m])) return false;
  return true;
}

bool contract_holds(const InvPoset& p, const Embedding& e, const std::vector<bool>& keep) {
  const std::size_t n = p.size();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      // Monotone and order-reflecting together; injectivity follows.
      if (p.le(x, y) != vec_le(e.coords[x], e.coords[y], keep)) return false;
    }
  for (Elem x = 0; x < n; ++x)
    for (std::size_t m = 0; m < e.coords[x].size(); ++m)
      if (keep[m] && e.coords[p.inv(x)][m] != digit_inv(e.coords[x][m])) return false;
  return true;
}

Elem power_index(const std::vector<std::uint8_t>& digits) {
  Elem idx = 0;
  for (auto d : digits) idx = idx * 4 + d;
  return idx;
}

}  // namespace

std::string coordinate_name(const std::vector<std::uint8_t>& digits) {
  std::string s;
  for (auto d : digits) s += static_cast<char>('0' + d);
  return s;
}

bool is_valid_embedding(const InvPoset& p, const Embedding& e) {
  if (e.coords.size() != p.size()) return false;
  for (const auto& c : e.coords)
    if (c.size() != e.n) return false;
  return contract_holds(p, e, std::vector<bool>(e.n, true));
}

Embedding canonical_embedding(const InvPoset& p, bool prune) {
  if (p.empty()) throw PreconditionError("cannot embed the empty structure");
  const std::size_t n = p.size();
  const Poset& b = p.base();
  Embedding e;
  e.n = n;
  e.coords.assign(n, std::vector<std::uint8_t>(n));
  for (Elem q = 0; q < n; ++q) {
    const Bitset& x = b.down(q);
    Bitset ix(n);
    x.for_each([&](Elem v) { ix.set(p.inv(v)); });
    const Bitset xp = ~ix;
    for (Elem v = 0; v < n; ++v) {
      const bool in_x = x.test(v), in_xp = xp.test(v);
      e.coords[v][q] = in_x && in_xp ? 2 : in_x ? 0 : in_xp ? 1 : 3;
    }
  }
  std::vector<bool> keep(n, true);
  if (!contract_holds(p, e, keep)) throw InternalError("canonical embedding violates its contract");
  if (prune) {
    for (std::size_t m = 0; m < n; ++m) {
      keep[m] = false;
      if (!contract_holds(p, e, keep)) keep[m] = true;
    }
    Embedding pruned;
    for (std::size_t m = 0; m < n; ++m) pruned.n += keep[m] ? 1 : 0;
    pruned.coords.assign(n, {});
    for (Elem v = 0; v < n; ++v)
      for (std::size_t m = 0; m < n; ++m)
        if (keep[m]) pruned.coords[v].push_back(e.coords[v][m]);
    e = std::move(pruned);
  }
  return e;
}

InvMorphism embedding_morphism(const InvPoset& p, const Embedding& e, bool kleene_target) {
  if (e.n > 6) throw SizeGuardError("D^n materialized only for n <= 6");
  InvPoset target = power(diamond(), e.n);
  std::vector<Elem> map(p.size());
  for (Elem x = 0; x < p.size(); ++x) map[x] = power_index(e.coords[x]);
  if (kleene_target) {
    KleenePart kp = kleene_part(target);
    std::vector<Elem> position(target.size(), target.size());
    for (Elem k = 0; k < kp.selected.size(); ++k) position[kp.selected[k]] = k;
    for (Elem& m : map) {
      if (position[m] == target.size())
        throw PreconditionError("embedding leaves the Kleene part");
      m = position[m];
    }
    target = kp.part;
  }
  return validate_inv_morphism(p, target, std::move(map));
}

namespace {

std::vector<std::uint8_t> parse_digits(const std::string& name) {
  std::vector<std::uint8_t> out;
  for (char c : name) {
    if (c < '0' || c > '3') throw PreconditionError("target element is not a digit string: " + name);
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

// Join of `xs` inside the induced subposet `sub` of p, mapped back to p.
std::optional<Elem> join_within(const Poset& p, const ElemSet& sub, const Poset& sub_poset,
                                const ElemSet& xs) {
  std::vector<Elem> position(p.size(), p.size());
  for (Elem k = 0; k < sub.size(); ++k) position[sub[k]] = k;
  ElemSet local;
  for (Elem x : xs) {
    if (position[x] == p.size()) return std::nullopt;
    local.push_back(position[x]);
  }
  auto j = join_of(sub_poset, local);
  if (!j) return std::nullopt;
  return sub[*j];
}

}  // namespace

Retraction build_retraction(const InvMorphism& embedding, Variety v) {
  const InvPoset& p = embedding.dom;
  const InvPoset& t = embedding.cod;
  if (v == Variety::bdl) throw PreconditionError("build_retraction handles dm and kleene");
  if (!is_projective_dual(p, v).projective)
    throw PreconditionError("structure is not projective for the variety");

  const Poset& b = p.base();
  const std::size_t tn = t.size();
  std::vector<std::vector<std::uint8_t>> digits(tn);
  for (Elem x = 0; x < tn; ++x) digits[x] = parse_digits(t.name(x));

  auto lower = [&](Elem x) {
    ElemSet l;
    for (Elem q = 0; q < p.size(); ++q)
      if (t.le(embedding.map[q], x)) l.push_back(q);
    return l;
  };
  auto upper = [&](Elem x) {
    ElemSet u;
    for (Elem q = 0; q < p.size(); ++q)
      if (t.le(x, embedding.map[q])) u.push_back(q);
    return u;
  };
  auto least_fixed_between = [&](Elem lo, std::optional<Elem> hi) -> Elem {
    for (Elem y = 0; y < p.size(); ++y)
      if (p.is_fixed(y) && b.le(lo, y) && (!hi || b.le(y, *hi))) return y;
    throw InternalError("no fixed point between the bounds");
  };
  auto need = [](std::optional<Elem> e, const char* what) {
    if (!e) throw InternalError(what);
    return *e;
  };

  std::vector<Elem> r(tn, p.size());
  if (v == Variety::demorgan) {
    for (Elem x = 0; x < tn; ++x) {
      const auto& d = digits[x];
      std::size_t m = 0;
      while (m < d.size() && d[m] != 2 && d[m] != 3) ++m;
      if (m == d.size()) {
        Elem lo = need(join_of(b, lower(x)), "missing join");
        Elem hi = need(meet_of(b, upper(x)), "missing meet");
        r[x] = least_fixed_between(lo, hi);
      } else if (d[m] == 2) {
        r[x] = need(join_of(b, lower(x)), "missing join");
      } else {
        r[x] = need(meet_of(b, upper(x)), "missing meet");
      }
    }
  } else {
    const ElemSet s = lower_half(p);
    const Poset sp = b.induced(s);
    auto rule = [&](Elem x) -> Elem {
      const auto& d = digits[x];
      bool fixed = true;
      for (auto c : d) fixed = fixed && (c == 0 || c == 1);
      Elem lo = need(join_within(b, s, sp, lower(x)), "missing join in S");
      return fixed ? least_fixed_between(lo, std::nullopt) : lo;
    };
    for (Elem x = 0; x < tn; ++x) {
      bool below_inv = true;
      for (auto c : digits[x]) below_inv = below_inv && c != 3;
      if (below_inv) r[x] = rule(x);
    }
    for (Elem x = 0; x < tn; ++x)
      if (r[x] == p.size()) {
        Elem ix = t.inv(x);
        if (r[ix] == p.size()) throw InternalError("element outside the Kleene part");
        r[x] = p.inv(r[ix]);
      }
  }

  InvMorphism retraction;
  try {
    retraction = validate_inv_morphism(t, p, r);
  } catch (const ValidationError& e) {
    throw InternalError(std::string("constructed retraction is not a morphism: ") + e.what());
  }
  for (Elem q = 0; q < p.size(); ++q)
    if (r[embedding.map[q]] != q) throw InternalError("retraction does not fix " + p.name(q));
  return {embedding, retraction};
}

Retraction build_retraction(const InvPoset& p, Variety v, bool prune) {
  if (v == Variety::bdl) throw PreconditionError("build_retraction handles dm and kleene");
  if (!is_projective_dual(p, v).projective)
    throw PreconditionError("structure is not projective for the variety");
  Embedding e = canonical_embedding(p, prune);
  return build_retraction(embedding_morphism(p, e, v == Variety::kleene), v);
}

std::optional<InvMorphism> oracle_retraction_search(const InvMorphism& embedding) {
  const InvPoset& p = embedding.dom;
  const InvPoset& t = embedding.cod;
  if (t.size() > 256) throw SizeGuardError("oracle search limited to D^4");
  MapProblem problem{&t.base(), &p.base(), &t.inv(), &p.inv(),
                     std::vector<Bitset>(t.size(), Bitset(p.size(), true))};
  for (Elem q = 0; q < p.size(); ++q) {
    Bitset only(p.size());
    only.set(q);
    problem.allowed[embedding.map[q]] = only;
  }
  auto found = find_map(problem);
  if (!found) return std::nullopt;
  return validate_inv_morphism(t, p, std::move(*found));
}

std::optional<InvMorphism> oracle_retraction_search(const InvPoset& p, Variety v) {
  if (v == Variety::bdl) throw PreconditionError("use oracle_lattice_retraction for bdl");
  if (v == Variety::kleene && !p.is_kleene())
    throw PreconditionError("kleene variety requested on a non-Kleene object");
  if (p.size() > 4) throw SizeGuardError("oracle search limited to 4 elements");
  // Nothing maps a nonempty power onto the empty structure.
  if (p.empty()) return std::nullopt;
  Embedding e = canonical_embedding(p);
  return oracle_retraction_search(embedding_morphism(p, e, v == Variety::kleene));
}

Poset boolean_power(std::size_t n) {
  if (n > 6) throw SizeGuardError("2^n materialized only for n <= 6");
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::string> names(size);
  std::vector<Bitset> up(size, Bitset(size));
  for (Elem x = 0; x < size; ++x) {
    for (std::size_t m = 0; m < n; ++m) names[x] += ((x >> (n - 1 - m)) & 1U) ? '1' : '0';
    for (Elem y = 0; y < size; ++y)
      if ((x & ~y) == 0) up[x].set(y);
  }
  return Poset::from_up_rows(std::move(names), std::move(up));
}

MonotoneMap boolean_embedding(const Poset& p) {
  const std::size_t n = p.size();
  Poset target = boolean_power(n);
  std::vector<Elem> map(n);
  for (Elem x = 0; x < n; ++x) {
    Elem idx = 0;
    for (Elem q = 0; q < n; ++q) idx = idx * 2 + (p.le(q, x) ? 1 : 0);
    map[x] = idx;
  }
  return validate_monotone_map(p, target, std::move(map));
}

std::optional<MonotoneMap> oracle_lattice_retraction(const Poset& p) {
  if (p.empty()) return std::nullopt;
  MonotoneMap e = boolean_embedding(p);
  MapProblem problem{&e.cod, &p, nullptr, nullptr,
                     std::vector<Bitset>(e.cod.size(), Bitset(p.size(), true))};
  for (Elem q = 0; q < p.size(); ++q) {
    Bitset only(p.size());
    only.set(q);
    problem.allowed[e.map[q]] = only;
  }
  auto found = find_map(problem);
  if (!found) return std::nullopt;
  return validate_monotone_map(e.cod, p, std::move(*found));
}

}  // namespace morgan
