#pragma once

#include <vector>

#include "delas/model.hpp"
#include "delas/syntax.hpp"

namespace delas {

// Truth at a pointed model. Total and terminating: the recursion measure is
// the formula size with event preconditions counted. Throws EvalError on an
// undeclared free variable or an uninterpreted name/predicate.
bool eval(const KripkeModel& m, const std::string& world, const Assignment& sigma,
          const Formula& f);

inline bool eval(const PointedModel& pm, const Formula& f) {
  return eval(*pm.model, pm.world, pm.assignment, f);
}

// The submodel keeping exactly the worlds where psi holds under sigma.
// May have an empty world set; the announcement clause in eval never consults
// a world of an empty restriction.
KripkeModel restrict_to(const KripkeModel& m, const Assignment& sigma,
                        const Formula& psi);

// Update product: worlds are pairs "(w,e)" for which Pre(e) holds at w under
// sigma; relations are componentwise; rho copies over; eta copies over, or
// composes through Pos when the event model has factual changes.
KripkeModel product(const KripkeModel& m, const Assignment& sigma,
                    const EventModel& em);

// World id used by product() for the pair (w, e).
std::string product_world_id(const std::string& w, const std::string& e);

// True iff the instance holds at every pointed model of the set. When false
// and `counter` is non-null, the first refuting pointed model is copied there.
bool check_axiom_pair(const std::vector<PointedModel>& models, const Formula& instance,
                      PointedModel* counter = nullptr);

}  // namespace delas
