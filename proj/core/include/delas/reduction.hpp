#pragma once

#include <string>
#include <utility>
#include <vector>

#include "delas/syntax.hpp"

namespace delas {

// One left-to-right application of a reduction axiom. `before`/`after` are
// the rewritten subformula, `position` the path of child indices from the
// root ("" for the root itself). Replaying a step as `before <-> after` is a
// validity.
struct RewriteStep {
  std::string axiom;
  std::string position;
  Formula before;
  Formula after;
};

struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

enum class TranslateStrategy {
  // Collapse nested dynamics of the same kind with ACOM/UCOM (UCOM only for
  // postcondition-free event models), then reduce the collapsed operator.
  Composition,
  // Translate the operand of a dynamic operator first whenever it is itself
  // dynamic.
  InnerFirst,
};

// Eliminates every announcement and update operator, yielding a semantically
// equivalent formula of the base language plus the applied-axiom trace.
// Fresh variables come from the reserved namespace and are chosen fresh with
// respect to the whole redex.
std::pair<Formula, RewriteTrace> translate(
    const Formula& f, TranslateStrategy strategy = TranslateStrategy::Composition);

// Event-model composition: product event set, componentwise relations,
// Pre''(e,e') = Pre(e) & [E,e]Pre'(e'). Postconditions, when present on
// either side, compose as Pos''(a,(e,e')) = Pos(Pos'(a,e'), e).
// Returns the composed model and the designated event id (e,e').
std::pair<EventModel, std::string> compose(const EventModel& first,
                                           const std::string& e,
                                           const EventModel& second,
                                           const std::string& e2);

// Pos lifted to terms: variables map to themselves, names through Pos.
Term pos_plus(const EventModel& em, const Term& t, const std::string& e);

}  // namespace delas
