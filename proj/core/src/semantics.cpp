#include "delas/semantics.hpp"

namespace delas {

namespace {

std::vector<std::string> lift_args(const KripkeModel& m, const std::string& w,
                                   const Assignment& sigma,
                                   const std::vector<Term>& args) {
  std::vector<std::string> out;
  out.reserve(args.size());
  for (const auto& t : args) out.push_back(sigma_lift(m, w, sigma, t));
  return out;
}

}  // namespace

bool eval(const KripkeModel& m, const std::string& world, const Assignment& sigma,
          const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return sigma_lift(m, world, sigma, f.eq_lhs()) ==
             sigma_lift(m, world, sigma, f.eq_rhs());
    case FormulaKind::Pred: {
      if (!m.signature.count(f.pred_symbol()))
        throw EvalError("predicate '" + f.pred_symbol() + "' is not in the signature");
      return m.tuple_holds(f.pred_symbol(), world,
                           lift_args(m, world, sigma, f.pred_args()));
    }
    case FormulaKind::Not:
      return !eval(m, world, sigma, f.body());
    case FormulaKind::And:
      return eval(m, world, sigma, f.left()) && eval(m, world, sigma, f.right());
    case FormulaKind::Know: {
      for (const auto& v : m.successors(f.agent(), world))
        if (!eval(m, v, sigma, f.body())) return false;
      return true;
    }
    case FormulaKind::Assign: {
      Assignment shifted = sigma;
      shifted[f.assigned_var()] = sigma_lift(m, world, sigma, f.assigned_term());
      return eval(m, world, shifted, f.body());
    }
    case FormulaKind::Announce: {
      if (!eval(m, world, sigma, f.announced())) return true;
      KripkeModel restricted = restrict_to(m, sigma, f.announced());
      return eval(restricted, world, sigma, f.body());
    }
    case FormulaKind::Update: {
      const EventModel& em = f.event_model();
      // preconditions are evaluated under the original sigma; UASSI/AASSI
      // compensate for exactly this
      if (!eval(m, world, sigma, em.pre_of(f.event()))) return true;
      KripkeModel updated = product(m, sigma, em);
      return eval(updated, product_world_id(world, f.event()), sigma, f.body());
    }
  }
  throw EvalError("eval: unreachable");
}

KripkeModel restrict_to(const KripkeModel& m, const Assignment& sigma,
                        const Formula& psi) {
  KripkeModel out;
  out.domain = m.domain;
  out.agents = m.agents;
  out.signature = m.signature;
  for (const auto& w : m.worlds)
    if (eval(m, w, sigma, psi)) out.worlds.push_back(w);

  auto kept = [&](const std::string& w) { return out.has_world(w); };
  for (const auto& [agent, rel] : m.relations) {
    auto& r = out.relations[agent];
    for (const auto& edge : rel)
      if (kept(edge.first) && kept(edge.second)) r.insert(edge);
  }
  for (const auto& [pred, per_world] : m.rho)
    for (const auto& [w, tuples] : per_world)
      if (kept(w)) out.rho[pred][w] = tuples;
  for (const auto& [name, per_world] : m.eta)
    for (const auto& [w, o] : per_world)
      if (kept(w)) out.eta[name][w] = o;
  return out;
}

std::string product_world_id(const std::string& w, const std::string& e) {
  return "(" + w + "," + e + ")";
}

KripkeModel product(const KripkeModel& m, const Assignment& sigma,
                    const EventModel& em) {
  KripkeModel out;
  out.domain = m.domain;
  out.agents = m.agents;
  out.signature = m.signature;

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& w : m.worlds)
    for (const auto& e : em.events)
      if (eval(m, w, sigma, em.pre_of(e))) {
        pairs.emplace_back(w, e);
        out.worlds.push_back(product_world_id(w, e));
      }

  for (const auto& agent : m.agents) {
    auto rit = m.relations.find(agent);
    if (rit == m.relations.end()) continue;
    auto eit = em.relations.find(agent);
    if (eit == em.relations.end()) continue;
    auto& r = out.relations[agent];
    for (const auto& [w, e] : pairs)
      for (const auto& [v, f] : pairs)
        if (rit->second.count({w, v}) && eit->second.count({e, f}))
          r.insert({product_world_id(w, e), product_world_id(v, f)});
  }

  for (const auto& [w, e] : pairs) {
    const std::string id = product_world_id(w, e);
    for (const auto& [pred, per_world] : m.rho) {
      auto it = per_world.find(w);
      if (it != per_world.end()) out.rho[pred][id] = it->second;
    }
    for (const auto& [name, per_world] : m.eta) {
      const std::string& source = em.pos_of(name, e);
      auto sit = m.eta.find(source);
      if (sit == m.eta.end()) continue;
      auto wit = sit->second.find(w);
      if (wit != sit->second.end()) out.eta[name][id] = wit->second;
    }
  }
  return out;
}

bool check_axiom_pair(const std::vector<PointedModel>& models, const Formula& instance,
                      PointedModel* counter) {
  for (const auto& pm : models) {
    if (!eval(pm, instance)) {
      if (counter) *counter = pm;
      return false;
    }
  }
  return true;
}

}  // namespace delas
