#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "delas/syntax.hpp"

namespace delas {

// A finite first-order Kripke model: worlds, a constant object domain,
// per-agent accessibility relations, a world-indexed predicate interpretation
// rho and a world-indexed name interpretation eta. All ids are opaque strings.
// Unmentioned (predicate, world) pairs denote the empty relation.
struct KripkeModel {
  std::vector<std::string> worlds;
  std::vector<std::string> domain;
  std::vector<std::string> agents;
  std::map<std::string, std::set<std::pair<std::string, std::string>>> relations;
  // pred -> world -> set of object tuples
  std::map<std::string, std::map<std::string, std::set<std::vector<std::string>>>> rho;
  // name -> world -> object
  std::map<std::string, std::map<std::string, std::string>> eta;
  std::map<std::string, std::size_t> signature;  // pred -> arity

  bool has_world(const std::string& w) const;
  bool has_object(const std::string& o) const;
  std::vector<std::string> successors(const std::string& agent,
                                      const std::string& w) const;
  bool tuple_holds(const std::string& pred, const std::string& w,
                   const std::vector<std::string>& tuple) const;
};

// Total map from the declared (finite) variable universe to domain objects.
using Assignment = std::map<std::string, std::string>;

struct PointedModel {
  std::shared_ptr<const KripkeModel> model;
  std::string world;
  Assignment assignment;
};

struct Violation {
  std::string location;
  std::string message;
};

// Every invariant violation with its location; empty means the model is valid.
std::vector<Violation> validate(const KripkeModel& m);

// True iff every agent relation is an equivalence relation on the worlds.
bool is_epistemic(const KripkeModel& m);

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// sigma_w: variables through the assignment, names through eta at w.
// Returns the object id; throws EvalError for an undeclared variable or an
// uninterpreted name.
const std::string& sigma_lift(const KripkeModel& m, const std::string& world,
                              const Assignment& sigma, const Term& t);

}  // namespace delas
