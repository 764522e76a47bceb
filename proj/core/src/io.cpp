#include "delas/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "delas/printer.hpp"

namespace delas {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw IoError(std::string(what) + ": not valid JSON");
  if (!j.is_object()) throw IoError(std::string(what) + ": expected a JSON object");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> string_list(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  for (const auto& item : j.at(key)) out.push_back(item.get<std::string>());
  return out;
}

std::map<std::string, std::set<std::pair<std::string, std::string>>> relation_map(
    const json& j) {
  std::map<std::string, std::set<std::pair<std::string, std::string>>> out;
  if (!j.contains("relations")) return out;
  for (const auto& [agent, edges] : j.at("relations").items()) {
    auto& r = out[agent];
    for (const auto& edge : edges) {
      if (!edge.is_array() || edge.size() != 2)
        throw IoError("relation edge for '" + agent + "' is not a pair");
      r.insert({edge[0].get<std::string>(), edge[1].get<std::string>()});
    }
  }
  return out;
}

json relations_to_json(
    const std::map<std::string, std::set<std::pair<std::string, std::string>>>& rel) {
  json out = json::object();
  for (const auto& [agent, edges] : rel) {
    json list = json::array();
    for (const auto& [a, b] : edges) list.push_back(json::array({a, b}));
    out[agent] = std::move(list);
  }
  return out;
}

std::map<std::string, std::size_t> signature_map(const json& j) {
  std::map<std::string, std::size_t> out;
  if (!j.contains("signature")) return out;
  for (const auto& [pred, arity] : j.at("signature").items())
    out[pred] = arity.get<std::size_t>();
  return out;
}

}  // namespace

KripkeModel model_from_json(const std::string& text) {
  json j = parse_json(text, "model file");
  KripkeModel m;
  try {
    m.worlds = string_list(j, "worlds");
    m.domain = string_list(j, "domain");
    m.agents = string_list(j, "agents");
    m.relations = relation_map(j);
    m.signature = signature_map(j);
    if (j.contains("rho"))
      for (const auto& [pred, per_world] : j.at("rho").items())
        for (const auto& [world, tuples] : per_world.items()) {
          auto& cell = m.rho[pred][world];
          for (const auto& tuple : tuples) {
            std::vector<std::string> t;
            for (const auto& o : tuple) t.push_back(o.get<std::string>());
            cell.insert(std::move(t));
          }
        }
    if (j.contains("eta"))
      for (const auto& [name, per_world] : j.at("eta").items())
        for (const auto& [world, object] : per_world.items())
          m.eta[name][world] = object.get<std::string>();
  } catch (const json::exception& e) {
    throw IoError(std::string("model file: ") + e.what());
  }

  auto violations = validate(m);
  if (!violations.empty()) {
    std::string msg = "invalid model:";
    for (const auto& v : violations) msg += "\n  " + v.location + ": " + v.message;
    throw IoError(msg);
  }
  return m;
}

KripkeModel load_model(const std::string& path) {
  try {
    return model_from_json(read_file(path));
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string model_to_json(const KripkeModel& m) {
  json j;
  j["worlds"] = m.worlds;
  j["domain"] = m.domain;
  j["agents"] = m.agents;
  j["relations"] = relations_to_json(m.relations);
  json rho = json::object();
  for (const auto& [pred, per_world] : m.rho) {
    json pw = json::object();
    for (const auto& [world, tuples] : per_world) {
      json list = json::array();
      for (const auto& t : tuples) list.push_back(t);
      pw[world] = std::move(list);
    }
    rho[pred] = std::move(pw);
  }
  j["rho"] = std::move(rho);
  json eta = json::object();
  for (const auto& [name, per_world] : m.eta) {
    json pw = json::object();
    for (const auto& [world, object] : per_world) pw[world] = object;
    eta[name] = std::move(pw);
  }
  j["eta"] = std::move(eta);
  json sig = json::object();
  for (const auto& [pred, arity] : m.signature) sig[pred] = arity;
  j["signature"] = std::move(sig);
  return j.dump(2) + "\n";
}

void save_model(const KripkeModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << model_to_json(m);
}

EventModel event_model_from_json(const std::string& text, const Signature& extra,
                                 const EventModelEnv& env) {
  json j = parse_json(text, "event model file");
  EventModel em;
  try {
    if (j.contains("label")) em.label = j.at("label").get<std::string>();
    em.events = string_list(j, "events");
    if (em.events.empty()) throw IoError("event model has no events");
    em.relations = relation_map(j);

    Signature sig = extra;
    for (const auto& [pred, arity] : signature_map(j)) sig.predicates[pred] = arity;

    if (!j.contains("pre")) throw IoError("event model has no preconditions");
    for (const auto& [event, pre_text] : j.at("pre").items()) {
      try {
        em.pre.emplace(event, parse_formula(pre_text.get<std::string>(), sig, env));
      } catch (const ParseError& e) {
        throw IoError("precondition of '" + event + "': " + e.what());
      }
    }
    for (const auto& e : em.events)
      if (!em.pre.count(e)) throw IoError("event '" + e + "' has no precondition");
    for (const auto& [event, pre] : em.pre)
      if (!em.has_event(event))
        throw IoError("precondition for undeclared event '" + event + "'");

    if (j.contains("pos"))
      for (const auto& [event, changes] : j.at("pos").items()) {
        if (!em.has_event(event))
          throw IoError("postcondition for undeclared event '" + event + "'");
        for (const auto& [name, target] : changes.items())
          em.pos[event][name] = target.get<std::string>();
      }
  } catch (const json::exception& e) {
    throw IoError(std::string("event model file: ") + e.what());
  }

  for (const auto& [agent, rel] : em.relations)
    for (const auto& [a, b] : rel)
      if (!em.has_event(a) || !em.has_event(b))
        throw IoError("relation of '" + agent + "' mentions an undeclared event");
  return em;
}

EventModel load_event_model(const std::string& path, const Signature& extra,
                            const EventModelEnv& env) {
  try {
    return event_model_from_json(read_file(path), extra, env);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

std::string event_model_to_json(const EventModel& em) {
  json j;
  if (!em.label.empty()) j["label"] = em.label;
  j["events"] = em.events;
  j["relations"] = relations_to_json(em.relations);
  json pre = json::object();
  for (const auto& [event, formula] : em.pre) pre[event] = to_string(formula);
  j["pre"] = std::move(pre);
  if (!em.pos.empty()) {
    json pos = json::object();
    for (const auto& [event, changes] : em.pos) {
      json per = json::object();
      for (const auto& [name, target] : changes) per[name] = target;
      pos[event] = std::move(per);
    }
    j["pos"] = std::move(pos);
  }
  json sig = json::object();
  std::map<std::string, std::size_t> preds;
  for (const auto& [event, formula] : em.pre)
    for (const auto& [pred, arity] : predicates_of(formula)) preds[pred] = arity;
  for (const auto& [pred, arity] : preds) sig[pred] = arity;
  j["signature"] = std::move(sig);
  return j.dump(2) + "\n";
}

Signature signature_from(const KripkeModel& m) {
  Signature sig;
  sig.predicates = m.signature;
  return sig;
}

}  // namespace delas
