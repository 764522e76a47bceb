#include <doctest.h>

#include "delas/model.hpp"

using namespace delas;

namespace {

KripkeModel two_worlds() {
  KripkeModel m;
  m.worlds = {"s", "t"};
  m.domain = {"o1", "o2"};
  m.agents = {"i"};
  m.relations["i"] = {{"s", "s"}, {"s", "t"}, {"t", "s"}, {"t", "t"}};
  m.rho["P"]["s"] = {{"o1"}};
  m.rho["P"]["t"] = {{"o2"}};
  m.eta["a"]["s"] = "o1";
  m.eta["a"]["t"] = "o2";
  m.signature["P"] = 1;
  return m;
}

}  // namespace

TEST_CASE("a well-formed model validates") {
  CHECK(validate(two_worlds()).empty());
  CHECK(is_epistemic(two_worlds()));
}

TEST_CASE("validate reports each violation with a location") {
  KripkeModel m = two_worlds();
  m.relations["i"].insert({"s", "nowhere"});
  m.eta["a"]["s"] = "o9";
  m.rho["P"]["s"].insert({"o1", "o2"});  // arity clash with the signature
  auto vs = validate(m);
  CHECK(vs.size() >= 3);
  for (const auto& v : vs) CHECK_FALSE(v.location.empty());
}

TEST_CASE("epistemic requires equivalence relations") {
  KripkeModel m = two_worlds();
  m.relations["i"] = {{"s", "t"}};  // not reflexive, not symmetric
  CHECK_FALSE(is_epistemic(m));
}

TEST_CASE("sigma_lift resolves variables and names") {
  KripkeModel m = two_worlds();
  Assignment sigma{{"x", "o2"}};
  CHECK(sigma_lift(m, "s", sigma, Term::var("x")) == "o2");
  CHECK(sigma_lift(m, "s", sigma, Term::name("a")) == "o1");
  CHECK(sigma_lift(m, "t", sigma, Term::name("a")) == "o2");
  CHECK_THROWS_AS(sigma_lift(m, "s", sigma, Term::var("w")), EvalError);
  CHECK_THROWS_AS(sigma_lift(m, "s", sigma, Term::name("nope")), EvalError);
}

TEST_CASE("successors and tuple_holds") {
  KripkeModel m = two_worlds();
  CHECK(m.successors("i", "s") == std::vector<std::string>{"s", "t"});
  CHECK(m.tuple_holds("P", "s", {"o1"}));
  CHECK_FALSE(m.tuple_holds("P", "s", {"o2"}));
  CHECK_FALSE(m.tuple_holds("P", "s", {"o1", "o2"}));
}
