// Acceptance suite: one PASS/FAIL line per criterion, each under its time limit.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "morgan/duality.hpp"
#include "morgan/error.hpp"
#include "morgan/io.hpp"
#include "morgan/projectivity.hpp"
#include "morgan/unification.hpp"

#ifndef MORGAN_DATA_DIR
#define MORGAN_DATA_DIR "tests/data"
#endif

using namespace morgan;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; keeps the first few messages.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> messages;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (messages.size() < 5) messages.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << ", " << checks << " checks, " << failures << " failures";
    for (const auto& m : messages) os << "; " << m;
    return {failures == 0, os.str()};
  }
};

std::string path(const std::string& name) { return std::string(MORGAN_DATA_DIR) + "/" + name; }
Poset golden_poset(const std::string& name) { return std::get<Poset>(io::read_document(path(name))); }
InvPoset golden_inv(const std::string& name) { return std::get<InvPoset>(io::read_document(path(name))); }

std::string names(const Poset& p, const ElemSet& t) {
  std::string s;
  for (Elem e : t) s += (s.empty() ? "" : ",") + p.name(e);
  return s;
}

// An algebra with negation, read as an involutive poset on its carrier.
InvPoset as_involutive(const FiniteAlgebra& a) { return validate_involutive(a.carrier(), *a.negation()); }

// Corpora shared by several criteria.
const std::vector<Poset>& posets5() {
  static const std::vector<Poset> c = enumerate_posets_upto(5);
  return c;
}
const std::vector<InvPoset>& inv4() {
  static const std::vector<InvPoset> c = enumerate_inv_posets_upto(4);
  return c;
}

Outcome free_objects() {
  Tally t;
  InvPoset d1 = free_dual(Variety::demorgan, 1);
  t.expect(d1.size() == 4 && find_inv_isomorphism(d1, diamond()).has_value(), "free dm 1 is not D");
  t.expect(d1.base().names() == std::vector<std::string>{"0", "1", "2", "3"}, "free dm 1 labels");
  ElemSet fixed = d1.fixed_points();
  t.expect(names(d1.base(), fixed) == "0,1", "fixed points of D");
  t.expect(d1.name(d1.inv(2)) == "3", "inv swaps 2 and 3");
  FiniteAlgebra fm = demorgan_from_dual(diamond());
  FiniteAlgebra fig = std::get<FiniteAlgebra>(io::read_document(path("fm1.json")));
  t.expect(fm.size() == 6, "F_M(1) has 6 elements");
  t.expect(find_inv_isomorphism(as_involutive(fm), as_involutive(fig)).has_value(), "F_M(1) differs from the figure");
  InvPoset d2 = free_dual(Variety::demorgan, 2);
  t.expect(d2.size() == 16, "free dm 2 size");
  bool labels = true;
  for (Elem x = 0; x < d2.size(); ++x)
    labels = labels && d2.name(x) == std::string{char('0' + x / 4), char('0' + x % 4)};
  t.expect(labels, "free dm 2 labels 00..33");
  InvPoset k2 = free_dual(Variety::kleene, 2);
  t.expect(k2.size() == 14, "free kleene 2 size");
  std::vector<std::string> removed;
  for (Elem x = 0; x < d2.size(); ++x)
    if (!k2.base().find(d2.name(x))) removed.push_back(d2.name(x));
  t.expect(removed == std::vector<std::string>{"23", "32"}, "kleene part removes exactly 23 and 32");
  return t.outcome("D, F_M(1), D^2 and (D^2)_k reproduced");
}

Outcome round_trips() {
  Tally t;
  for (const Poset& p : posets5()) {
    FiniteAlgebra a = downset_algebra(p);
    Poset j = join_irreducibles(a);
    t.expect(find_isomorphism(j, p).has_value(), "J(D(P)) differs from P");
    t.expect(find_isomorphism(downset_algebra(j).carrier(), a.carrier()).has_value(), "D(J(A)) differs from A");
  }
  for (const InvPoset& p : inv4()) {
    FiniteAlgebra a = demorgan_from_dual(p);
    InvPoset back = demorgan_dual(a);
    t.expect(find_inv_isomorphism(back, p).has_value(), "J_M(D_M(P)) differs from P");
    t.expect(find_inv_isomorphism(as_involutive(demorgan_from_dual(back)), as_involutive(a)).has_value(),
             "D_M(J_M(A)) differs from A");
  }
  return t.outcome(std::to_string(posets5().size()) + " posets, " + std::to_string(inv4().size()) +
                   " involutive posets");
}

Outcome projectivity_agreement() {
  Tally t;
  std::size_t dm = 0, kl = 0, bdl = 0;
  for (const InvPoset& p : inv4()) {
    bool theorem = is_projective_dual(p, Variety::demorgan).projective;
    bool oracle = oracle_retraction_search(p, Variety::demorgan).has_value();
    t.expect(theorem == oracle, "dm disagreement on a " + std::to_string(p.size()) + "-element structure");
    dm += theorem;
    if (!p.is_kleene()) continue;
    theorem = is_projective_dual(p, Variety::kleene).projective;
    oracle = oracle_retraction_search(p, Variety::kleene).has_value();
    t.expect(theorem == oracle, "kleene disagreement on a " + std::to_string(p.size()) + "-element structure");
    kl += theorem;
  }
  for (const Poset& p : enumerate_posets_upto(4)) {
    bool theorem = is_projective_dual(p).projective;
    t.expect(theorem == oracle_lattice_retraction(p).has_value(), "bdl disagreement");
    bdl += theorem;
  }
  return t.outcome("projective: " + std::to_string(dm) + " dm, " + std::to_string(kl) + " kleene, " +
                   std::to_string(bdl) + " bdl");
}

Outcome retraction_soundness() {
  Tally t;
  std::size_t built = 0;
  for (const InvPoset& p : inv4())
    for (Variety v : {Variety::demorgan, Variety::kleene}) {
      if (v == Variety::kleene && !p.is_kleene()) continue;
      if (!is_projective_dual(p, v).projective) continue;
      for (bool prune : {false, true}) {
        Retraction r = build_retraction(p, v, prune);
        bool valid = true;
        try {
          validate_inv_morphism(r.retraction.dom, r.retraction.cod, r.retraction.map);
        } catch (const ValidationError&) {
          valid = false;
        }
        t.expect(valid, "retraction is not a morphism");
        bool identity = true;
        for (Elem x = 0; x < p.size(); ++x) identity = identity && r.retraction.map[r.embedding.map[x]] == x;
        t.expect(identity, "retraction does not fix P");
        ++built;
      }
    }
  return t.outcome(std::to_string(built) + " retractions");
}

Outcome classification_goldens() {
  Tally t;
  using Clock = std::chrono::steady_clock;
  auto timed = [&](const std::string& name, const std::function<UnifClassification()>& run) {
    auto start = Clock::now();
    UnifClassification c = run();
    t.expect(std::chrono::duration<double>(Clock::now() - start).count() < 1.0, name + " over 1 s");
    return c;
  };
  auto family_of = [](const UnifClassification& c) {
    const auto* np = c.certificate ? std::get_if<NullPattern>(&*c.certificate) : nullptr;
    return np ? std::optional<Family>(np->family) : std::nullopt;
  };

  UnifClassification d = timed("D", [] { return classify(golden_poset("diamond_poset.json")); });
  t.expect(d.type == UnifType::unitary && std::holds_alternative<MostGeneral>(*d.certificate), "D not unitary");

  UnifClassification a = timed("antichain", [] { return classify(golden_poset("antichain.json")); });
  t.expect(a.type == UnifType::finitary && std::holds_alternative<MuSet>(*a.certificate) &&
               std::get<MuSet>(*a.certificate).unifiers.size() == 2,
           "antichain not finitary with two unifiers");

  Poset crown = golden_poset("crown.json");
  UnifClassification c = timed("crown", [&] { return classify(crown); });
  t.expect(c.type == UnifType::nullary && family_of(c) == Family::bdl &&
               names(crown, std::get<NullPattern>(*c.certificate).tuple) == "x,a,b,c,d,y" &&
               verify_null_pattern(crown, Family::bdl, std::get<NullPattern>(*c.certificate).tuple),
           "crown tuple");

  struct Case {
    const char* file;
    Variety v;
    Family f;
  };
  for (const Case& k : std::vector<Case>{{"m1.json", Variety::demorgan, Family::m1},
                                         {"m2.json", Variety::demorgan, Family::m2},
                                         {"m3.json", Variety::demorgan, Family::m3},
                                         {"k1.json", Variety::kleene, Family::k1},
                                         {"k2.json", Variety::kleene, Family::k2}}) {
    InvPoset q = golden_inv(k.file);
    UnifClassification r = timed(k.file, [&] { return classify(q, k.v); });
    t.expect(r.type == UnifType::nullary, std::string(k.file) + " not nullary");
    t.expect(family_of(r) == k.f, std::string(k.file) + " certificate family " +
                                      (family_of(r) ? to_string(*family_of(r)) : "none"));
  }
  return t.outcome("8 goldens");
}

// Criteria 6, 7 and 10 share the audit run.
struct AuditRun {
  Tally certificates, core, types;
  std::size_t instances = 0, unifiers = 0;
  std::array<std::size_t, 3> by_type{};
};

const AuditRun& audit_run() {
  static const AuditRun run = [] {
    AuditRun r;
    auto record = [&](const Audit& a, const std::string& label) {
      ++r.instances;
      r.unifiers += a.unifiers;
      bool core_ok = true, cert_ok = true;
      for (const std::string& f : a.failures) {
        bool core_failure = f.find("core") != std::string::npos && f.find("pattern") == std::string::npos;
        (core_failure ? core_ok : cert_ok) = false;
        if (core_failure) r.core.expect(false, label + ": " + f);
        else r.certificates.expect(false, label + ": " + f);
      }
      if (core_ok) r.core.expect(true, "");
      if (cert_ok) r.certificates.expect(true, "");
      if (a.solvable) {
        bool tagged = a.type == UnifType::unitary || a.type == UnifType::finitary || a.type == UnifType::nullary;
        r.types.expect(tagged, label + ": untagged solvable instance");
        if (a.type) ++r.by_type[static_cast<std::size_t>(*a.type)];
      }
    };
    for (const Poset& p : posets5()) record(audit_classification(p, 4), "bdl");
    for (const InvPoset& p : inv4()) {
      record(audit_classification(p, Variety::demorgan, 4), "dm");
      if (p.is_kleene()) record(audit_classification(p, Variety::kleene, 4), "kleene");
    }
    return r;
  }();
  return run;
}

Outcome certificate_audits() {
  const AuditRun& r = audit_run();
  return r.certificates.outcome(std::to_string(r.instances) + " instances, " + std::to_string(r.unifiers) +
                                " unifiers");
}

Outcome core_lemma() {
  const AuditRun& r = audit_run();
  return r.core.outcome("unifiers land in the kleene and dm cores");
}

Outcome never_infinitary() {
  const AuditRun& r = audit_run();
  return r.types.outcome(std::to_string(r.by_type[0]) + " unitary, " + std::to_string(r.by_type[1]) +
                         " finitary, " + std::to_string(r.by_type[2]) + " nullary");
}

Outcome witness_families() {
  Tally t;
  struct Range {
    Family f;
    std::vector<std::size_t> ns;
  };
  const std::vector<Range> ranges = {{Family::bdl, {1, 2, 3, 4, 5, 6, 7, 8}},
                                     {Family::k1, {2, 3, 4, 5, 6}},
                                     {Family::k2, {2, 3, 4}},
                                     {Family::m1, {1, 2, 3, 4, 5, 6}},
                                     {Family::m2, {1, 3, 5, 7}}};
  for (const Range& r : ranges)
    for (std::size_t n : r.ns) {
      const std::string label = to_string(r.f) + " n=" + std::to_string(n);
      Witness w = witness_family(r.f, n);
      t.expect(w.poset.size() == witness_size(r.f, n), label + " size");
      if (r.f == Family::bdl) {
        t.expect(is_nonempty_lattice(w.poset), label + " not a lattice");
        continue;
      }
      const InvPoset& s = *w.structure;
      ConditionReport c = condition_report(s, {r.f != Family::k1});
      if (r.f == Family::k1) t.expect(s.is_kleene() && c.k1 && c.k2 && c.m2 && c.m3, label + " conditions");
      else t.expect(c.m1 && c.m2 && c.m3, label + " conditions");
    }
  t.expect(witness_size(Family::bdl, 5) == 13 && witness_size(Family::k1, 4) == 22 &&
               witness_size(Family::k2, 2) == 19 && witness_size(Family::m1, 3) == 13 &&
               witness_size(Family::m2, 3) == 9,
           "closed-form sizes");

  Poset crown = golden_poset("crown.json");
  for (std::size_t n = 1; n <= 8; ++n) {
    bool ok = true;
    try {
      instantiate(witness_family(Family::bdl, n), crown, *find_null_pattern(crown, Family::bdl));
    } catch (const std::exception&) {
      ok = false;
    }
    t.expect(ok, "bdl u_" + std::to_string(n) + " on the crown");
  }
  struct Inst {
    Family f;
    const char* file;
    std::vector<std::size_t> ns;
  };
  for (const Inst& in : std::vector<Inst>{{Family::k1, "k1.json", {2, 3, 4, 5, 6}},
                                          {Family::k2, "k2.json", {2, 3, 4}},
                                          {Family::m1, "m1.json", {1, 2, 3, 4, 5, 6}},
                                          {Family::m2, "m2.json", {1, 3, 5, 7}},
                                          {Family::m3, "m3.json", {2, 3, 4}}}) {
    InvPoset q = golden_inv(in.file);
    auto tuple = find_null_pattern(q, in.f);
    t.expect(tuple.has_value(), std::string(in.file) + " has no pattern");
    if (!tuple) continue;
    for (std::size_t n : in.ns) {
      bool ok = true;
      try {
        instantiate(witness_family(in.f, n), q, *tuple);
      } catch (const std::exception&) {
        ok = false;
      }
      t.expect(ok, to_string(in.f) + " u_" + std::to_string(n) + " on " + in.file);
    }
  }
  return t.outcome("T_n and u_n for bdl, k1, k2, m1, m2");
}

Outcome incompressibility() {
  Tally t;
  std::size_t compared = 0;
  auto slice = [&](const Unifier& un, const std::vector<Unifier>& small, const std::string& label) {
    for (const Unifier& u : small) {
      ++compared;
      t.expect(!more_general(u, un), label + ": small unifier above u_n");
    }
  };
  Poset crown = golden_poset("crown.json");
  slice(instantiate(witness_family(Family::bdl, 5), crown, *find_null_pattern(crown, Family::bdl)),
        enumerate_unifiers_bounded(crown, 4), "bdl");
  InvPoset m1 = golden_inv("m1.json");
  slice(instantiate(witness_family(Family::m1, 4), m1, *find_null_pattern(m1, Family::m1)),
        enumerate_unifiers_bounded(m1, Variety::demorgan, 3), "m1");
  InvPoset k1 = golden_inv("k1.json");
  slice(instantiate(witness_family(Family::k1, 4), k1, *find_null_pattern(k1, Family::k1)),
        enumerate_unifiers_bounded(k1, Variety::kleene, 3), "k1");
  return t.outcome(std::to_string(compared) + " small unifiers compared with u_n");
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "free-object reconstruction", 1.0, free_objects},
      {2, "duality round trips", 120.0, round_trips},
      {3, "projectivity theorem agreement", 600.0, projectivity_agreement},
      {4, "constructive retraction soundness", 60.0, retraction_soundness},
      {5, "classification goldens", 8.0, classification_goldens},
      {6, "certificate audits", 1800.0, certificate_audits},
      {7, "core lemma", 600.0, core_lemma},
      {8, "witness families", 120.0, witness_families},
      {9, "incompressibility slice", 1200.0, incompressibility},
      {10, "never infinitary", 1800.0, never_infinitary},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = seconds < c.limit_seconds;
    bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s [%.2fs, limit %.0fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), seconds, c.limit_seconds, in_time ? "" : ", over time");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
