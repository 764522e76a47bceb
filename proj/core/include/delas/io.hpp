#pragma once

#include <string>

#include "delas/model.hpp"
#include "delas/parser.hpp"
#include "delas/syntax.hpp"

namespace delas {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Model files are JSON with keys worlds, domain, agents,
// relations {agent: [[w,v],...]}, rho {pred: {world: [[o,...],...]}},
// eta {name: {world: o}} and signature {pred: arity}. Unmentioned
// (predicate, world) cells are empty. Loading validates the model and throws
// IoError listing every violation.
KripkeModel model_from_json(const std::string& text);
KripkeModel load_model(const std::string& path);
std::string model_to_json(const KripkeModel& m);
void save_model(const KripkeModel& m, const std::string& path);

// Event model files mirror the model format: label, events,
// relations {agent: [[e,f],...]}, pre {event: formula string} and optionally
// pos {event: {name: name}} plus signature {pred: arity} for parsing the
// preconditions. Preconditions may reference other event models via `env`.
EventModel event_model_from_json(const std::string& text,
                                 const Signature& extra = {},
                                 const EventModelEnv& env = {});
EventModel load_event_model(const std::string& path, const Signature& extra = {},
                            const EventModelEnv& env = {});
std::string event_model_to_json(const EventModel& em);

// Signature harvested from a model: its predicate arities, plus no variables.
Signature signature_from(const KripkeModel& m);

}  // namespace delas
