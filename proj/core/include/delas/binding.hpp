#pragma once

#include <set>
#include <string>
#include <vector>

#include "delas/syntax.hpp"

namespace delas {

struct SubstitutionError : FormulaError {
  SubstitutionError(const std::string& msg, std::string position)
      : FormulaError(msg), position(std::move(position)) {}
  // Path of the offending binder from the root, child indices joined by '.';
  // empty string for the root.
  std::string position;
};

// Free variables. [x:=t] binds x in its operand; announcements and updates
// bind nothing, so their announced formula / event preconditions contribute
// their free variables unchanged.
std::set<std::string> free_vars(const Formula& f);

// Every variable occurring free or bound, binder variables and event
// preconditions included.
std::set<std::string> all_vars(const Formula& f);

// True iff every y introduced by replacing a free occurrence of x lands free
// in f[y/x], i.e. no free x sits under a binder of y.
bool is_admissible(const Formula& f, const std::string& x, const std::string& y);

// f[y/x]: replaces free occurrences of variable x by variable y.
// Throws SubstitutionError when the substitution is not admissible.
Formula substitute(const Formula& f, const std::string& x, const std::string& y);

// Deterministic fresh variable from the reserved namespace z0, z1, ...: the
// first index whose variable occurs (free or bound) in none of the arguments.
std::string fresh_var(const std::vector<Formula>& avoid,
                      const std::vector<Term>& avoid_terms = {});

// Renames the binder of f = [x:=t]body to z: returns [z:=t]body[z/x].
// Requires f to be an assignment and z to be fresh in body and t.
Formula reletter(const Formula& f, const std::string& z);

}  // namespace delas
