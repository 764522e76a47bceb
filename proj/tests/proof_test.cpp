#include <doctest.h>

#include "delas/proof.hpp"
#include "delas/sugar.hpp"

using namespace delas;

namespace {

Formula pa() { return Formula::pred("P", {Term::name("a")}); }

}  // namespace

TEST_CASE("system names round trip") {
  for (System s : {System::SBELAS, System::SBELAS5, System::SPALAS, System::SPALAS5,
                   System::SDELAS, System::SDELAS5}) {
    CHECK(system_from_string(to_string(s)) == s);
  }
  CHECK_FALSE(system_from_string("S4").has_value());
  CHECK(is_s5(System::SBELAS5));
  CHECK_FALSE(is_s5(System::SDELAS));
}

TEST_CASE("schema availability per system") {
  CHECK(schema_in_system("KAS", System::SBELAS));
  CHECK_FALSE(schema_in_system("T", System::SBELAS));
  CHECK(schema_in_system("T", System::SBELAS5));
  CHECK(schema_in_system("AATOM", System::SPALAS));
  CHECK_FALSE(schema_in_system("AATOM", System::SBELAS5));
  CHECK(schema_in_system("UK", System::SDELAS));
  CHECK_FALSE(schema_in_system("UK", System::SPALAS5));
  CHECK_FALSE(is_schema("FOO"));
}

TEST_CASE("instantiating simple schemas") {
  CHECK(instantiate_schema("ID", {{"t", Term::name("c")}}) ==
        Formula::eq(Term::name("c"), Term::name("c")));
  CHECK(instantiate_schema("EFAS", {{"x", std::string("x")}, {"t", Term::name("a")}}) ==
        Formula::assign("x", Term::name("a"),
                        Formula::eq(Term::var("x"), Term::name("a"))));
  Formula distk = instantiate_schema(
      "DISTK", {{"i", std::string("i")}, {"phi", pa()}, {"psi", Formula::negation(pa())}});
  CHECK(distk == sugar::implies(
                     Formula::know("i", sugar::implies(pa(), Formula::negation(pa()))),
                     sugar::implies(Formula::know("i", pa()),
                                    Formula::know("i", Formula::negation(pa())))));
}

TEST_CASE("TAUT checks the boolean skeleton") {
  CHECK(instantiate_schema("TAUT", {{"phi", sugar::implies(pa(), pa())}}) ==
        sugar::implies(pa(), pa()));
  CHECK_THROWS_AS(instantiate_schema("TAUT", {{"phi", pa()}}), ProofError);
  // Modal subformulas are atoms of the skeleton.
  Formula k = Formula::know("i", pa());
  CHECK_NOTHROW(instantiate_schema("TAUT", {{"phi", sugar::implies(k, k)}}));
  CHECK_THROWS_AS(instantiate_schema("TAUT", {{"phi", sugar::implies(k, pa())}}),
                  ProofError);
}

TEST_CASE("SUB2AS enforces admissibility") {
  Formula phi = Formula::pred("P", {Term::var("x")});
  Formula inst = instantiate_schema(
      "SUB2AS", {{"phi", phi}, {"x", std::string("x")}, {"y", std::string("y")}});
  CHECK(inst == sugar::implies(Formula::pred("P", {Term::var("y")}),
                               Formula::assign("x", Term::var("y"), phi)));
  Formula capturing =
      Formula::assign("y", Term::name("a"), Formula::pred("P", {Term::var("x")}));
  CHECK_THROWS_AS(
      instantiate_schema("SUB2AS", {{"phi", capturing},
                                    {"x", std::string("x")},
                                    {"y", std::string("y")}}),
      ProofError);
}

TEST_CASE("missing bindings are reported with the schema name") {
  try {
    instantiate_schema("KAS", {{"x", std::string("x")}});
    FAIL("expected ProofError");
  } catch (const ProofError& e) {
    CHECK(std::string(e.what()).find("KAS") != std::string::npos);
  }
}

TEST_CASE("rules") {
  Formula qa = Formula::pred("Q", {Term::name("a")});
  CHECK(apply_rule(RuleId::MP, {pa(), sugar::implies(pa(), qa)}, {}) == qa);
  CHECK_THROWS_AS(apply_rule(RuleId::MP, {pa(), qa}, {}), ProofError);
  CHECK(apply_rule(RuleId::NECK, {pa()}, {{"i", std::string("i")}}) ==
        Formula::know("i", pa()));

  Formula impl = sugar::implies(pa(), qa);
  CHECK(apply_rule(RuleId::NECAS, {impl},
                   {{"x", std::string("x")}, {"t", Term::name("b")}}) ==
        sugar::implies(pa(), Formula::assign("x", Term::name("b"), qa)));
  // x free in the antecedent violates the side condition.
  Formula bad = sugar::implies(Formula::pred("P", {Term::var("x")}), qa);
  CHECK_THROWS_AS(apply_rule(RuleId::NECAS, {bad},
                             {{"x", std::string("x")}, {"t", Term::name("b")}}),
                  ProofError);
}

TEST_CASE("check_derivation accepts a small proof and localizes failures") {
  Derivation d;
  d.system = System::SBELAS;
  Formula id_a = Formula::eq(Term::name("a"), Term::name("a"));
  d.lines.push_back({id_a, ProofLine::Kind::Axiom, "ID", {}, {{"t", Term::name("a")}}});
  d.lines.push_back({Formula::know("i", id_a), ProofLine::Kind::Rule, "NECK",
                     {1}, {{"i", std::string("i")}}});
  CheckResult r = check_derivation(d);
  CHECK(r.ok);
  CHECK(d.conclusion() == Formula::know("i", id_a));

  // Corrupt line 2: the stated formula is not the rule's conclusion.
  d.lines[1].formula = Formula::know("j", id_a);
  r = check_derivation(d);
  CHECK_FALSE(r.ok);
  CHECK(r.line == 2);

  // A forward reference fails on the referring line.
  d.lines[1] = {Formula::know("i", id_a), ProofLine::Kind::Rule, "NECK",
                {3}, {{"i", std::string("i")}}};
  r = check_derivation(d);
  CHECK_FALSE(r.ok);
  CHECK(r.line == 2);

  // A schema outside the declared system is rejected.
  Derivation d5;
  d5.system = System::SBELAS;
  Formula t_inst = sugar::implies(Formula::know("i", id_a), id_a);
  d5.lines.push_back({t_inst, ProofLine::Kind::Axiom, "T", {},
                      {{"i", std::string("i")}, {"phi", id_a}}});
  r = check_derivation(d5);
  CHECK_FALSE(r.ok);
  CHECK(r.line == 1);
  d5.system = System::SBELAS5;
  CHECK(check_derivation(d5).ok);
}

TEST_CASE("parse_derivation reads the proof file format") {
  std::string text =
      "# tiny proof\n"
      "system SBELAS\n"
      "pred P 1\n"
      "1. a ~ a ; axiom ID {t = a}\n"
      "2. a ~ a -> (P(b) -> a ~ a) ; axiom TAUT\n"
      "3. P(b) -> a ~ a ; rule MP from 1, 2\n";
  Derivation d = parse_derivation(text);
  CHECK(d.system == System::SBELAS);
  REQUIRE(d.lines.size() == 3);
  CHECK(check_derivation(d).ok);

  CHECK_THROWS_AS(parse_derivation("1. a ~ a ; axiom ID {t = a}\n"), ProofError);
  CHECK_THROWS_AS(parse_derivation("system SBELAS\n2. a ~ a ; axiom ID {t = a}\n"),
                  ProofError);
}
