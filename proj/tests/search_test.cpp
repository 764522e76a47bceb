#include <doctest.h>

#include <random>

#include "delas/printer.hpp"
#include "delas/search.hpp"
#include "delas/semantics.hpp"
#include "delas/sugar.hpp"

using namespace delas;

namespace {

Formula pa() { return Formula::pred("P", {Term::name("a")}); }

EnumSignature min_sig() {
  EnumSignature s;
  s.agents = {"i"};
  s.names = {"a"};
  s.predicates["P"] = 1;
  return s;
}

}  // namespace

TEST_CASE("signature_of harvests occurring symbols") {
  Formula f = Formula::assign("x", Term::var("y"), Formula::know("i", pa()));
  EnumSignature s = signature_of(f);
  CHECK(s.agents == std::vector<std::string>{"i"});
  CHECK(s.names == std::vector<std::string>{"a"});
  CHECK(s.variables == std::vector<std::string>{"y"});  // x is bound
  CHECK(s.predicates.at("P") == 1);
}

TEST_CASE("enumeration counts match the closed form") {
  Bounds b;
  b.max_worlds = 1;
  b.max_domain = 1;
  EnumSignature s = min_sig();
  // One world, one object: 1 relation choice (arbitrary: 2^1), rho 2 choices,
  // eta 1 choice, 1 point each: 2^1 * 2 * 1 * 1 = 4.
  CHECK(count_models(b, s) == 4);
  std::uint64_t seen = enumerate_models(b, s, [](const PointedModel&) { return true; });
  CHECK(seen == 4);

  b.model_class = ModelClass::Epistemic;
  CHECK(count_models(b, s) == 2);  // the only relation is the identity

  Bounds b2;
  b2.max_worlds = 2;
  b2.max_domain = 2;
  std::uint64_t counted = enumerate_models(b2, s, [](const PointedModel&) { return true; });
  CHECK(counted == count_models(b2, s));

  // Epistemic relations over 2 worlds: Bell(2) = 2 partitions.
  Bounds b3;
  b3.max_worlds = 2;
  b3.max_domain = 1;
  b3.model_class = ModelClass::Epistemic;
  CHECK(count_models(b3, s) ==
        (2ull /*rho W=1*/ * 1 + 2ull /*partitions*/ * 4 /*rho W=2*/ * 2 /*points*/));
}

TEST_CASE("every enumerated model is valid and within bounds") {
  Bounds b;
  EnumSignature s = min_sig();
  enumerate_models(b, s, [&](const PointedModel& pm) {
    CHECK(pm.model->worlds.size() <= b.max_worlds);
    CHECK(pm.model->domain.size() <= b.max_domain);
    CHECK(pm.model->has_world(pm.world));
    return true;
  });

  Bounds be = b;
  be.model_class = ModelClass::Epistemic;
  enumerate_models(be, s, [&](const PointedModel& pm) {
    CHECK(is_epistemic(*pm.model));
    return true;
  });
}

TEST_CASE("T is refutable over arbitrary models but epistemically valid") {
  Formula t_inst = sugar::implies(Formula::know("i", pa()), pa());
  Bounds arb;
  Verdict v = find_countermodel(t_inst, arb);
  CHECK_FALSE(v.valid_within_bounds);
  REQUIRE(v.countermodel.has_value());
  CHECK_FALSE(eval(*v.countermodel, t_inst));

  Bounds epi = arb;
  epi.model_class = ModelClass::Epistemic;
  Verdict ve = find_countermodel(t_inst, epi);
  CHECK(ve.valid_within_bounds);
}

TEST_CASE("EFAS is valid within bounds") {
  Formula efas = Formula::assign("x", Term::name("a"),
                                 Formula::eq(Term::var("x"), Term::name("a")));
  CHECK(find_countermodel(efas, Bounds{}).valid_within_bounds);
}

TEST_CASE("sampling is deterministic and respects the requested sizes") {
  Bounds b;
  b.max_worlds = 3;
  b.max_domain = 3;
  EnumSignature s = min_sig();
  std::mt19937_64 rng1(42), rng2(42);
  std::vector<std::string> first, second;
  sample_models(b, s, 20, rng1, [&](const PointedModel& pm) {
    CHECK(pm.model->worlds.size() == 3);
    CHECK(pm.model->domain.size() == 3);
    CHECK(validate(*pm.model).empty());
    first.push_back(pm.world);
    return true;
  });
  sample_models(b, s, 20, rng2, [&](const PointedModel& pm) {
    second.push_back(pm.world);
    return true;
  });
  CHECK(first == second);
}

TEST_CASE("random formulas stay inside their symbol pools") {
  std::mt19937_64 rng(3);
  GenOptions g = default_gen_options();
  for (int k = 0; k < 50; ++k) {
    Formula f = random_formula(rng, g);
    CHECK_NOTHROW(check_well_formed(f));
    for (const auto& a : agents_of(f))
      CHECK(std::find(g.sig.agents.begin(), g.sig.agents.end(), a) != g.sig.agents.end());
    for (const auto& n : names_of(f))
      CHECK(std::find(g.sig.names.begin(), g.sig.names.end(), n) != g.sig.names.end());
  }
}

TEST_CASE("a tiny fuzz run over the base system is clean") {
  Bounds b;
  FuzzReport r = fuzz_axioms(System::SBELAS, 5, b, 11);
  INFO(r.summary());
  CHECK(r.ok());
  CHECK(r.per_schema.size() == 14);
  for (const auto& fr : r.per_schema) CHECK(fr.instances == 5);
}
