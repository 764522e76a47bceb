#include <doctest.h>

#include "delas/syntax.hpp"

using namespace delas;

namespace {

Formula pa() { return Formula::pred("P", {Term::name("a")}); }

EventModel tiny_event() {
  EventModel em;
  em.label = "E";
  em.events = {"e", "f"};
  em.relations["i"] = {{"e", "e"}, {"f", "f"}};
  em.pre.emplace("e", pa());
  em.pre.emplace("f", Formula::negation(pa()));
  return em;
}

}  // namespace

TEST_CASE("terms compare structurally") {
  CHECK(Term::var("x") == Term::var("x"));
  CHECK(Term::var("x") != Term::name("x"));
  CHECK(Term::var("x").is_var());
  CHECK(Term::name("a").is_name());
}

TEST_CASE("formula factories and accessors") {
  Formula f = Formula::assign("x", Term::name("a"),
                              Formula::know("i", Formula::eq(Term::var("x"), Term::name("a"))));
  CHECK(f.kind() == FormulaKind::Assign);
  CHECK(f.assigned_var() == "x");
  CHECK(f.assigned_term() == Term::name("a"));
  CHECK(f.body().kind() == FormulaKind::Know);
  CHECK(f.body().agent() == "i");
  CHECK(f.body().body().is_atomic());
}

TEST_CASE("structural equality is by shape, not identity") {
  Formula a = Formula::conj(pa(), Formula::negation(pa()));
  Formula b = Formula::conj(pa(), Formula::negation(pa()));
  CHECK(a == b);
  CHECK(a != Formula::conj(Formula::negation(pa()), pa()));
}

TEST_CASE("event model labels are not part of identity") {
  EventModel a = tiny_event();
  EventModel b = tiny_event();
  b.label = "Other";
  CHECK(a == b);
  b.pre.find("e")->second = Formula::negation(pa());
  CHECK(a != b);
}

TEST_CASE("event model accessors") {
  EventModel em = tiny_event();
  CHECK(em.has_event("e"));
  CHECK_FALSE(em.has_event("g"));
  CHECK(em.pre_of("e") == pa());
  CHECK(em.pos_of("a", "e") == "a");  // identity default
  CHECK_FALSE(em.has_factual_change());
  em.pos["e"]["a"] = "b";
  CHECK(em.has_factual_change());
  CHECK(em.pos_of("a", "e") == "b");
  CHECK(em.successors("i", "e") == std::vector<std::string>{"e"});
}

TEST_CASE("size counts event preconditions") {
  Formula base = pa();
  std::size_t base_size = base.size();
  Formula upd = Formula::update(tiny_event(), "e", base);
  CHECK(upd.size() > 2 * base_size);
  CHECK(upd.has_dynamic_operator());
  CHECK_FALSE(base.has_dynamic_operator());
}

TEST_CASE("check_well_formed rejects arity clashes") {
  Formula good = Formula::conj(pa(), Formula::pred("Q", {Term::var("x"), Term::var("y")}));
  CHECK_NOTHROW(check_well_formed(good));
  Formula bad = Formula::conj(pa(), Formula::pred("P", {Term::var("x"), Term::var("y")}));
  CHECK_THROWS_AS(check_well_formed(bad), FormulaError);
}

TEST_CASE("symbol harvesting") {
  Formula f = Formula::know("i", Formula::update(tiny_event(), "e", pa()));
  auto ags = agents_of(f);
  CHECK(ags == std::set<std::string>{"i"});
  CHECK(names_of(f) == std::set<std::string>{"a"});
  auto preds = predicates_of(f);
  CHECK(preds.at("P") == 1);
}
