#include "delas/model.hpp"

#include <algorithm>

namespace delas {

bool KripkeModel::has_world(const std::string& w) const {
  return std::find(worlds.begin(), worlds.end(), w) != worlds.end();
}

bool KripkeModel::has_object(const std::string& o) const {
  return std::find(domain.begin(), domain.end(), o) != domain.end();
}

std::vector<std::string> KripkeModel::successors(const std::string& agent,
                                                 const std::string& w) const {
  std::vector<std::string> out;
  auto it = relations.find(agent);
  if (it == relations.end()) return out;
  for (const auto& [from, to] : it->second)
    if (from == w) out.push_back(to);
  return out;
}

bool KripkeModel::tuple_holds(const std::string& pred, const std::string& w,
                              const std::vector<std::string>& tuple) const {
  auto it = rho.find(pred);
  if (it == rho.end()) return false;
  auto jt = it->second.find(w);
  if (jt == it->second.end()) return false;
  return jt->second.count(tuple) > 0;
}

std::vector<Violation> validate(const KripkeModel& m) {
  std::vector<Violation> out;
  auto add = [&](std::string loc, std::string msg) {
    out.push_back({std::move(loc), std::move(msg)});
  };

  if (m.worlds.empty()) add("worlds", "world set is empty");
  if (m.domain.empty()) add("domain", "object domain is empty");
  for (const auto& w : m.worlds)
    if (std::count(m.worlds.begin(), m.worlds.end(), w) > 1)
      add("worlds/" + w, "duplicate world id");
  for (const auto& o : m.domain)
    if (std::count(m.domain.begin(), m.domain.end(), o) > 1)
      add("domain/" + o, "duplicate object id");

  for (const auto& [agent, rel] : m.relations) {
    if (std::find(m.agents.begin(), m.agents.end(), agent) == m.agents.end())
      add("relations/" + agent, "relation for undeclared agent");
    for (const auto& [from, to] : rel) {
      if (!m.has_world(from))
        add("relations/" + agent, "edge source '" + from + "' is not a declared world");
      if (!m.has_world(to))
        add("relations/" + agent, "edge target '" + to + "' is not a declared world");
    }
  }

  for (const auto& [pred, per_world] : m.rho) {
    auto sig = m.signature.find(pred);
    if (sig == m.signature.end()) {
      add("rho/" + pred, "interpretation for undeclared predicate");
      continue;
    }
    for (const auto& [w, tuples] : per_world) {
      if (!m.has_world(w))
        add("rho/" + pred + "/" + w, "interpretation at undeclared world");
      for (const auto& tuple : tuples) {
        if (tuple.size() != sig->second)
          add("rho/" + pred + "/" + w,
              "tuple arity " + std::to_string(tuple.size()) + " differs from declared " +
                  std::to_string(sig->second));
        for (const auto& o : tuple)
          if (!m.has_object(o))
            add("rho/" + pred + "/" + w, "object '" + o + "' is not in the domain");
      }
    }
  }

  for (const auto& [name, per_world] : m.eta) {
    for (const auto& w : m.worlds)
      if (!per_world.count(w))
        add("eta/" + name + "/" + w, "eta not total: no value at this world");
    for (const auto& [w, o] : per_world) {
      if (!m.has_world(w))
        add("eta/" + name + "/" + w, "value at undeclared world");
      if (!m.has_object(o))
        add("eta/" + name + "/" + w, "object '" + o + "' is not in the domain");
    }
  }

  return out;
}

bool is_epistemic(const KripkeModel& m) {
  for (const auto& agent : m.agents) {
    auto it = m.relations.find(agent);
    const auto* rel = it != m.relations.end() ? &it->second : nullptr;
    auto has = [&](const std::string& a, const std::string& b) {
      return rel && rel->count({a, b});
    };
    for (const auto& w : m.worlds)
      if (!has(w, w)) return false;
    if (!rel) continue;
    for (const auto& [a, b] : *rel) {
      if (!has(b, a)) return false;
      for (const auto& [c, d] : *rel)
        if (b == c && !has(a, d)) return false;
    }
  }
  return true;
}

const std::string& sigma_lift(const KripkeModel& m, const std::string& world,
                              const Assignment& sigma, const Term& t) {
  if (t.is_var()) {
    auto it = sigma.find(t.id);
    if (it == sigma.end())
      throw EvalError("variable '" + t.id + "' has no value in the assignment");
    return it->second;
  }
  auto it = m.eta.find(t.id);
  if (it != m.eta.end()) {
    auto jt = it->second.find(world);
    if (jt != it->second.end()) return jt->second;
  }
  throw EvalError("name '" + t.id + "' is not interpreted at world '" + world + "'");
}

}  // namespace delas
