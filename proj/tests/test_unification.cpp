#include <algorithm>

#include "doctest.h"
#include "morgan/error.hpp"
#include "morgan/projectivity.hpp"
#include "morgan/unification.hpp"
#include "support.hpp"

using namespace morgan;
using support::golden_inv;
using support::golden_poset;

namespace {

std::vector<std::string> tuple_names(const Poset& p, const ElemSet& t) { return support::names_of(p, t); }

InvPoset inv_poset(std::vector<std::string> names, std::vector<std::pair<std::string, std::string>> covers,
                   std::vector<std::pair<std::string, std::string>> inv) {
  return validate_involutive(support::poset(std::move(names), std::move(covers)), inv);
}

template <class T>
bool holds(const UnifClassification& c) {
  return c.certificate && std::holds_alternative<T>(*c.certificate);
}

Family pattern_family(const UnifClassification& c) { return std::get<NullPattern>(*c.certificate).family; }

}  // namespace

TEST_CASE("solvability") {
  CHECK_FALSE(is_solvable(golden_poset("empty.json")));
  CHECK_FALSE(is_solvable(golden_inv("antichain_swap.json"), Variety::demorgan));
  CHECK(is_solvable(diamond(), Variety::kleene));
  CHECK_THROWS_AS(is_solvable(golden_inv("antichain_swap.json"), Variety::kleene), PreconditionError);
  CHECK_FALSE(classify(golden_poset("empty.json")).solvable);
  UnifClassification c = classify(golden_inv("antichain_swap.json"), Variety::demorgan);
  CHECK_FALSE(c.solvable);
  CHECK_FALSE(c.type.has_value());
  CHECK_FALSE(c.certificate.has_value());
}

TEST_CASE("kleene_core examples") {
  InvPoset free_of_fixed = inv_poset({"a", "b"}, {{"a", "b"}}, {{"a", "b"}, {"b", "a"}});
  CHECK(kleene_core(free_of_fixed).structure.empty());

  InvPoset chain = inv_poset({"x", "z", "y"}, {{"x", "z"}, {"z", "y"}}, {{"x", "y"}, {"z", "z"}, {"y", "x"}});
  Core c = kleene_core(chain);
  CHECK(c.structure.size() == 3);
  CHECK(c.structure.le(0, 2));
  CHECK_FALSE(c.closure_extended);

  // x < y with x below its involution, y above, and no fixed point between.
  InvPoset q = inv_poset({"x", "y", "z", "w", "x'", "y'"},
                         {{"x", "z"}, {"z", "x'"}, {"y'", "w"}, {"w", "y"}, {"x", "y"}, {"y'", "x'"}},
                         {{"x", "x'"}, {"x'", "x"}, {"y", "y'"}, {"y'", "y"}, {"z", "z"}, {"w", "w"}});
  REQUIRE(q.is_kleene());
  Core k = kleene_core(q);
  const Poset& kb = k.structure.base();
  CHECK(k.structure.size() == 6);
  CHECK(q.le(q.base().at("x"), q.base().at("y")));
  CHECK_FALSE(kb.le(kb.at("x"), kb.at("y")));
  CHECK_FALSE(kb.le(kb.at("y'"), kb.at("x'")));
  CHECK(kb.le(kb.at("x"), kb.at("x'")));

  CHECK_THROWS_AS(kleene_core(golden_inv("antichain_swap.json")), PreconditionError);
}

TEST_CASE("kleene cores satisfy M2 and K2") {
  for (const InvPoset& p : enumerate_inv_posets_upto(5)) {
    if (!p.is_kleene()) continue;
    Core c = kleene_core(p);
    if (c.structure.empty()) continue;
    ConditionReport r = condition_report(c.structure);
    CHECK(r.m2);
    CHECK(r.k2);
    CHECK(c.structure.is_kleene());
  }
}

TEST_CASE("demorgan_core examples") {
  InvPoset point = golden_inv("singleton_fixed.json");
  CHECK(demorgan_core(point).structure.size() == 1);
  CHECK(demorgan_core(golden_inv("antichain_swap.json")).structure.empty());
  InvPoset q = inv_poset({"y", "z", "a", "a'", "y'"},
                         {{"y", "z"}, {"y", "a"}, {"y", "a'"}, {"z", "y'"}, {"a", "y'"}, {"a'", "y'"}},
                         {{"y", "y'"}, {"y'", "y"}, {"z", "z"}, {"a", "a'"}, {"a'", "a"}});
  Core c = demorgan_core(q);
  CHECK(c.selected.size() == q.size());
}

TEST_CASE("bdl classification examples") {
  Poset d = golden_poset("diamond_poset.json");
  UnifClassification u = classify(d);
  CHECK(u.type == UnifType::unitary);
  REQUIRE(holds<MostGeneral>(u));
  const auto& mg = std::get<MonotoneMap>(std::get<MostGeneral>(*u.certificate).unifier);
  CHECK(mg.map == std::vector<Elem>{0, 1, 2, 3});

  UnifClassification f = classify(golden_poset("antichain.json"));
  CHECK(f.type == UnifType::finitary);
  REQUIRE(holds<MuSet>(f));
  const auto& mu = std::get<MuSet>(*f.certificate).unifiers;
  REQUIRE(mu.size() == 2);
  CHECK(image(mu[0]) == ElemSet{0});
  CHECK(image(mu[1]) == ElemSet{1});

  Poset crown = golden_poset("crown.json");
  UnifClassification n = classify(crown);
  CHECK(n.type == UnifType::nullary);
  REQUIRE(holds<NullPattern>(n));
  CHECK(pattern_family(n) == Family::bdl);
  CHECK(tuple_names(crown, std::get<NullPattern>(*n.certificate).tuple) ==
        std::vector<std::string>{"x", "a", "b", "c", "d", "y"});
}

TEST_CASE("mu sets") {
  CHECK(mu_set(golden_poset("antichain.json")).size() == 2);
  auto chains = mu_set(golden_poset("two_chains.json"));
  REQUIRE(chains.size() == 2);
  CHECK(domain_size(chains[0]) == 2);
  CHECK_FALSE(more_general(chains[0], chains[1]));
  CHECK_FALSE(more_general(chains[1], chains[0]));
  CHECK_THROWS_AS(mu_set(golden_poset("crown.json")), PreconditionError);

  InvPoset shared = inv_poset({"x", "z1", "z2", "x'"}, {{"x", "z1"}, {"x", "z2"}, {"z1", "x'"}, {"z2", "x'"}},
                              {{"x", "x'"}, {"x'", "x"}, {"z1", "z1"}, {"z2", "z2"}});
  CHECK(classify(shared, Variety::kleene).type == UnifType::unitary);

  InvPoset apart = golden_inv("two_fixed.json");
  UnifClassification c = classify(apart, Variety::kleene);
  CHECK(c.type == UnifType::finitary);
  auto mu = mu_set(apart, Variety::kleene);
  REQUIRE(mu.size() == 2);
  CHECK(image(mu[0]) == ElemSet{0});
  CHECK(image(mu[1]) == ElemSet{1});
  for (const Unifier& u : mu) CHECK(is_projective_dual(std::get<InvMorphism>(u).dom, Variety::kleene).projective);
  CHECK(classify(apart, Variety::demorgan).type == UnifType::finitary);
}

TEST_CASE("pattern finders") {
  Poset crown = golden_poset("crown.json");
  auto t = find_null_pattern(crown, Family::bdl);
  REQUIRE(t);
  CHECK(tuple_names(crown, *t) == std::vector<std::string>{"x", "a", "b", "c", "d", "y"});
  CHECK(verify_null_pattern(crown, Family::bdl, *t));
  ElemSet broken = *t;
  std::swap(broken[0], broken[5]);
  CHECK_FALSE(verify_null_pattern(crown, Family::bdl, broken));

  CHECK_FALSE(find_null_pattern(diamond(), Family::m1).has_value());

  InvPoset k1 = golden_inv("k1.json");
  auto k = find_null_pattern(k1, Family::k1);
  REQUIRE(k);
  CHECK(tuple_names(k1.base(), *k) == std::vector<std::string>{"x", "a", "b", "c", "d", "y", "z"});
  CHECK(pattern_arity(Family::k2) == 10);
  CHECK(pattern_slots(Family::m2) == std::vector<std::string>{"x", "a", "b"});
}

TEST_CASE("golden nullary instances") {
  struct Case {
    const char* file;
    Variety v;
    Family family;
    std::vector<std::string> tuple;
  };
  const std::vector<Case> cases = {
      {"k1.json", Variety::kleene, Family::k1, {"x", "a", "b", "c", "d", "y", "z"}},
      {"k2.json", Variety::kleene, Family::k2, {"x", "a", "b", "c", "d", "e", "f", "y", "z", "w"}},
      {"m1.json", Variety::demorgan, Family::m1, {"x", "a", "b", "c", "d", "y"}},
      {"m2.json", Variety::demorgan, Family::m2, {"x", "a", "b"}},
      {"m3.json", Variety::demorgan, Family::m3, {"x", "a", "b", "c", "d", "e", "f", "y", "z", "w"}},
  };
  for (const Case& c : cases) {
    CAPTURE(c.file);
    InvPoset q = golden_inv(c.file);
    UnifClassification r = classify(q, c.v);
    CHECK(r.type == UnifType::nullary);
    REQUIRE(holds<NullPattern>(r));
    CHECK(pattern_family(r) == c.family);
    CHECK(tuple_names(q.base(), std::get<NullPattern>(*r.certificate).tuple) == c.tuple);
    CHECK(r.core.has_value());
  }
  InvPoset m3 = golden_inv("m3.json");
  Core core = demorgan_core(m3);
  auto t = find_null_pattern(core.structure, Family::m3);
  REQUIRE(t);
  CHECK(verify_null_pattern(core.structure, Family::m3, *t));
}

TEST_CASE("witness families") {
  CHECK(witness_family(Family::bdl, 5).poset.size() == 13);
  CHECK(witness_family(Family::k1, 4).poset.size() == 22);
  CHECK(witness_family(Family::k2, 2).poset.size() == 19);
  CHECK(witness_family(Family::m1, 3).poset.size() == 13);
  CHECK(witness_family(Family::m2, 3).poset.size() == 9);
  CHECK_THROWS_AS(witness_family(Family::k1, 1), PreconditionError);
  CHECK_THROWS_AS(witness_family(Family::m2, 2), PreconditionError);
  CHECK_THROWS_AS(witness_family(Family::bdl, 0), PreconditionError);

  Witness t5 = witness_family(Family::bdl, 5);
  std::vector<std::string> names = t5.poset.names();
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"1", "1.2", "1.4", "2", "2.3", "2.5", "3", "3.4", "4", "4.5", "5",
                                          "bot", "top"});
}

TEST_CASE("witness structures satisfy their claimed conditions") {
  for (std::size_t n = 1; n <= 8; ++n) {
    Witness w = witness_family(Family::bdl, n);
    CHECK(w.poset.size() == witness_size(Family::bdl, n));
    CHECK(is_nonempty_lattice(w.poset));
  }
  for (std::size_t n = 2; n <= 6; ++n) {
    Witness w = witness_family(Family::k1, n);
    REQUIRE(w.structure);
    CHECK(w.structure->size() == witness_size(Family::k1, n));
    CHECK(w.structure->is_kleene());
    CHECK(is_projective_dual(*w.structure, Variety::kleene).projective);
  }
  for (std::size_t n = 2; n <= 3; ++n) {
    Witness w = witness_family(Family::k2, n);
    REQUIRE(w.structure);
    CHECK(w.structure->size() == witness_size(Family::k2, n));
    CHECK(is_projective_dual(*w.structure, Variety::demorgan).projective);
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    Witness w = witness_family(Family::m1, n);
    CHECK(w.structure->size() == witness_size(Family::m1, n));
    CHECK(is_projective_dual(*w.structure, Variety::demorgan).projective);
  }
  for (std::size_t n : {1, 3, 5}) {
    Witness w = witness_family(Family::m2, n);
    CHECK(w.structure->size() == witness_size(Family::m2, n));
    CHECK(is_projective_dual(*w.structure, Variety::demorgan).projective);
  }
}

TEST_CASE("witness unifiers instantiate on the goldens") {
  Poset crown = golden_poset("crown.json");
  Witness b = witness_family(Family::bdl, 5);
  Unifier u = instantiate(b, crown, *find_null_pattern(crown, Family::bdl));
  CHECK(domain_size(u) == 13);
  CHECK(image(u).size() == 6);

  struct Case {
    Family family;
    std::size_t n;
    const char* file;
  };
  for (const Case& c : std::vector<Case>{{Family::k1, 3, "k1.json"},
                                         {Family::k2, 2, "k2.json"},
                                         {Family::m1, 3, "m1.json"},
                                         {Family::m2, 3, "m2.json"},
                                         {Family::m3, 2, "m3.json"}}) {
    CAPTURE(c.file);
    InvPoset q = golden_inv(c.file);
    auto t = find_null_pattern(q, c.family);
    REQUIRE(t);
    Unifier v = instantiate(witness_family(c.family, c.n), q, *t);
    CHECK(codomain_size(v) == q.size());
  }
}

TEST_CASE("generality preorder") {
  Poset chains = golden_poset("two_chains.json");
  auto mu = mu_set(chains);
  CHECK(more_general(mu[0], mu[0]));
  MonotoneMap point = validate_monotone_map(support::antichain(1), chains, {chains.at("a")});
  CHECK(more_general(mu[0], point));
  CHECK_FALSE(more_general(point, mu[0]));
  CHECK_THROWS_AS(more_general(mu[0], validate_monotone_map(support::antichain(1), support::chain(2), {0})),
                  PreconditionError);
}

TEST_CASE("bounded unifier enumeration") {
  CHECK(enumerate_unifiers_bounded(golden_inv("singleton_fixed.json"), Variety::kleene, 1).size() == 1);
  CHECK(enumerate_unifiers_bounded(golden_poset("antichain.json"), 1).size() == 2);
  auto all = enumerate_unifiers_bounded(diamond(), Variety::demorgan, 4);
  std::size_t endo = 0;
  for (const Unifier& u : all)
    if (domain_size(u) == 4 && std::get<InvMorphism>(u).dom.size() == 4) {
      const InvMorphism& m = std::get<InvMorphism>(u);
      if (find_inv_isomorphism(m.dom, diamond())) ++endo;
    }
  CHECK(endo == enumerate_inv_morphisms(diamond(), diamond()).size());
  CHECK_THROWS_AS(projective_lattice_domains(6), SizeGuardError);
  for (const Unifier& u : all) CHECK(is_projective_dual(std::get<InvMorphism>(u).dom, Variety::demorgan).projective);
}

TEST_CASE("audits on small corpora") {
  for (const Poset& p : enumerate_posets_upto(4)) {
    Audit a = audit_classification(p, 3);
    CHECK(a.failures.empty());
  }
  for (const InvPoset& p : enumerate_inv_posets_upto(3)) {
    Audit a = audit_classification(p, Variety::demorgan, 3);
    CHECK(a.failures.empty());
    if (p.is_kleene()) CHECK(audit_classification(p, Variety::kleene, 3).failures.empty());
  }
}
