#include <doctest.h>

#include "delas/parser.hpp"
#include "delas/printer.hpp"
#include "delas/sugar.hpp"

using namespace delas;

namespace {

Signature sig1() {
  Signature s;
  s.predicates["P"] = 1;
  s.predicates["Q"] = 2;
  return s;
}

Formula reparse(const Formula& f, const Signature& s, const EventModelEnv& env = {}) {
  ParseOptions opts;
  opts.allow_reserved = true;  // printed sugar may mention z0
  return parse_formula(to_string(f), s, env, opts);
}

}  // namespace

TEST_CASE("atoms and connectives") {
  Signature s = sig1();
  Formula f = parse_formula("P(a) & ~Q(x, b)", s);
  CHECK(f.kind() == FormulaKind::And);
  CHECK(f.left() == Formula::pred("P", {Term::name("a")}));
  CHECK(f.right() ==
        Formula::negation(Formula::pred("Q", {Term::var("x"), Term::name("b")})));
}

TEST_CASE("equality and its negation sugar") {
  Signature s = sig1();
  CHECK(parse_formula("a ~ b", s) == Formula::eq(Term::name("a"), Term::name("b")));
  CHECK(parse_formula("a != b", s) ==
        Formula::negation(Formula::eq(Term::name("a"), Term::name("b"))));
}

TEST_CASE("precedence: unary over & over | over ->") {
  Signature s = sig1();
  CHECK(parse_formula("P(a) -> P(b) | P(c) & ~P(d)", s) ==
        sugar::implies(Formula::pred("P", {Term::name("a")}),
                       sugar::disj(Formula::pred("P", {Term::name("b")}),
                                   Formula::conj(Formula::pred("P", {Term::name("c")}),
                                                 Formula::negation(Formula::pred(
                                                     "P", {Term::name("d")}))))));
}

TEST_CASE("binders and modalities") {
  Signature s = sig1();
  Formula f = parse_formula("[x := a]K{i} P(x)", s);
  CHECK(f == Formula::assign("x", Term::name("a"),
                             Formula::know("i", Formula::pred("P", {Term::var("x")}))));
  CHECK(parse_formula("Kv{i} a", s) == sugar::kv("i", Term::name("a")));
  CHECK(parse_formula("[! P(a)]P(b)", s) ==
        Formula::announce(Formula::pred("P", {Term::name("a")}),
                          Formula::pred("P", {Term::name("b")})));
}

TEST_CASE("event references resolve against the environment") {
  Signature s = sig1();
  EventModel em;
  em.label = "E";
  em.events = {"e"};
  em.relations["i"] = {{"e", "e"}};
  em.pre.emplace("e", Formula::pred("P", {Term::name("a")}));
  EventModelEnv env;
  env["E"] = std::make_shared<const EventModel>(em);

  Formula f = parse_formula("[E @ e]P(b)", s, env);
  CHECK(f.kind() == FormulaKind::Update);
  CHECK(f.event() == "e");
  CHECK(f.event_model() == em);

  CHECK_THROWS_AS(parse_formula("[F @ e]P(b)", s, env), ParseError);
  CHECK_THROWS_AS(parse_formula("[E @ g]P(b)", s, env), ParseError);
}

TEST_CASE("arity errors carry a position") {
  Signature s = sig1();
  try {
    parse_formula("~P(a, b)", s);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position > 0);
  }
  CHECK_THROWS_AS(parse_formula("R(a)", s), ParseError);  // undeclared predicate
}

TEST_CASE("the reserved namespace needs opting in") {
  Signature s = sig1();
  CHECK_THROWS_AS(parse_formula("P(z0)", s), ParseError);
  ParseOptions opts;
  opts.allow_reserved = true;
  CHECK(parse_formula("P(z0)", s, {}, opts) == Formula::pred("P", {Term::var("z0")}));
}

TEST_CASE("explicit variable forms") {
  Signature s = sig1();
  CHECK(parse_term("?foo", s) == Term::var("foo"));
  CHECK(parse_term("x3", s) == Term::var("x3"));
  CHECK(parse_term("a", s) == Term::name("a"));
  Signature s2 = sig1();
  s2.variables.insert("alpha");
  CHECK(parse_term("alpha", s2) == Term::var("alpha"));
}

TEST_CASE("print-parse round trips") {
  Signature s = sig1();
  EventModel em;
  em.label = "E";
  em.events = {"e", "f"};
  em.relations["i"] = {{"e", "e"}, {"e", "f"}, {"f", "f"}};
  em.pre.emplace("e", Formula::pred("P", {Term::name("a")}));
  em.pre.emplace("f", Formula::eq(Term::var("x"), Term::name("a")));
  EventModelEnv env;
  env["E"] = std::make_shared<const EventModel>(em);

  std::vector<Formula> corpus = {
      Formula::eq(Term::var("x"), Term::name("a")),
      sugar::iff(Formula::pred("P", {Term::name("a")}),
                 Formula::pred("Q", {Term::var("x"), Term::var("y")})),
      sugar::kv("i", Term::name("a")),
      Formula::assign("x", Term::name("b"),
                      Formula::announce(Formula::pred("P", {Term::var("x")}),
                                        Formula::know("i", Formula::pred("P", {Term::name("b")})))),
      Formula::update(em, "e", Formula::know("i", Formula::pred("P", {Term::name("a")}))),
  };
  for (const Formula& f : corpus) {
    CAPTURE(to_string(f));
    CHECK(reparse(f, s, env) == f);
  }
}
