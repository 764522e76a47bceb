#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "delas/binding.hpp"
#include "delas/io.hpp"
#include "delas/model.hpp"
#include "delas/parser.hpp"
#include "delas/printer.hpp"
#include "delas/proof.hpp"
#include "delas/reduction.hpp"
#include "delas/search.hpp"
#include "delas/semantics.hpp"

namespace {

using namespace delas;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --assign x=o pairs
Assignment parse_assignments(const std::vector<std::string>& raw,
                             const KripkeModel* m) {
  Assignment sigma;
  for (const auto& item : raw) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InputError("--assign expects x=o, got '" + item + "'");
    std::string var = item.substr(0, eq), obj = item.substr(eq + 1);
    if (m && !m->has_object(obj))
      throw InputError("--assign: '" + obj + "' is not in the domain");
    sigma[var] = obj;
  }
  return sigma;
}

// --bounds worlds=N,domain=N,agents=N,names=N,variables=N
Bounds parse_bounds(const std::string& raw, ModelClass cls) {
  Bounds b;
  b.model_class = cls;
  if (raw.empty()) return b;
  std::istringstream in(raw);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw InputError("--bounds expects key=N items, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      value = std::stoul(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InputError("--bounds: bad number in '" + item + "'");
    }
    if (value == 0) throw InputError("--bounds: '" + key + "' must be positive");
    if (key == "worlds") b.max_worlds = value;
    else if (key == "domain") b.max_domain = value;
    else if (key == "agents") b.agents = value;
    else if (key == "names") b.names = value;
    else if (key == "variables") b.variables = value;
    else throw InputError("--bounds: unknown key '" + key + "'");
  }
  return b;
}

std::string env_key(const EventModel& em, const std::string& path) {
  if (!em.label.empty()) return em.label;
  return std::filesystem::path(path).stem().string();
}

EventModelEnv load_events(const std::vector<std::string>& paths,
                          const Signature& sig) {
  EventModelEnv env;
  for (const auto& path : paths) {
    EventModel em = load_event_model(path, sig, env);
    std::string key = env_key(em, path);
    env[key] = std::make_shared<const EventModel>(std::move(em));
  }
  return env;
}

// ------------------------------------------------------- evaluation trace

void explain(const KripkeModel& m, const std::string& w, const Assignment& sigma,
             const Formula& f, int depth, std::ostream& out);

void explain_line(const std::string& text, int depth, std::ostream& out) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << text << "\n";
}

void explain(const KripkeModel& m, const std::string& w, const Assignment& sigma,
             const Formula& f, int depth, std::ostream& out) {
  const bool value = eval(m, w, sigma, f);
  explain_line(to_string(f) + "  @ " + w + "  = " + (value ? "true" : "false"),
               depth, out);
  switch (f.kind()) {
    case FormulaKind::Eq: {
      explain_line(to_string(f.eq_lhs()) + " -> " + sigma_lift(m, w, sigma, f.eq_lhs()) +
                       ", " + to_string(f.eq_rhs()) + " -> " +
                       sigma_lift(m, w, sigma, f.eq_rhs()),
                   depth + 1, out);
      break;
    }
    case FormulaKind::Pred:
      break;
    case FormulaKind::Not:
      explain(m, w, sigma, f.body(), depth + 1, out);
      break;
    case FormulaKind::And:
      explain(m, w, sigma, f.left(), depth + 1, out);
      explain(m, w, sigma, f.right(), depth + 1, out);
      break;
    case FormulaKind::Know:
      for (const auto& v : m.successors(f.agent(), w))
        explain(m, v, sigma, f.body(), depth + 1, out);
      break;
    case FormulaKind::Assign: {
      Assignment shifted = sigma;
      shifted[f.assigned_var()] = sigma_lift(m, w, sigma, f.assigned_term());
      explain_line(f.assigned_var() + " := " + shifted[f.assigned_var()], depth + 1,
                   out);
      explain(m, w, shifted, f.body(), depth + 1, out);
      break;
    }
    case FormulaKind::Announce: {
      explain(m, w, sigma, f.announced(), depth + 1, out);
      if (!eval(m, w, sigma, f.announced())) {
        explain_line("announcement fails here; trivially true", depth + 1, out);
        break;
      }
      KripkeModel restricted = restrict_to(m, sigma, f.announced());
      explain_line("restricted model keeps " +
                       std::to_string(restricted.worlds.size()) + " world(s)",
                   depth + 1, out);
      explain(restricted, w, sigma, f.body(), depth + 1, out);
      break;
    }
    case FormulaKind::Update: {
      const EventModel& em = f.event_model();
      explain(m, w, sigma, em.pre_of(f.event()), depth + 1, out);
      if (!eval(m, w, sigma, em.pre_of(f.event()))) {
        explain_line("precondition fails here; trivially true", depth + 1, out);
        break;
      }
      KripkeModel updated = product(m, sigma, em);
      explain_line("product model has " + std::to_string(updated.worlds.size()) +
                       " world(s)",
                   depth + 1, out);
      explain(updated, product_world_id(w, f.event()), sigma, f.body(), depth + 1,
              out);
      break;
    }
  }
}

// -------------------------------------------------------------- commands

int cmd_check(const std::string& model_path, const std::string& formula_text,
              const std::string& world, const std::vector<std::string>& assigns,
              const std::vector<std::string>& event_paths, bool trace,
              const std::string& format) {
  KripkeModel m = load_model(model_path);
  if (!m.has_world(world))
    throw InputError("world '" + world + "' is not in the model");
  Signature sig = signature_from(m);
  EventModelEnv env = load_events(event_paths, sig);
  Formula f = parse_formula(formula_text, sig, env);
  Assignment sigma = parse_assignments(assigns, &m);
  for (const auto& x : free_vars(f))
    if (!sigma.count(x))
      throw InputError("free variable '" + x + "' has no --assign binding");
  const bool value = eval(m, world, sigma, f);
  if (format == "structured") {
    nlohmann::json out;
    out["formula"] = to_string(f);
    out["world"] = world;
    out["value"] = value;
    std::cout << out.dump(2) << "\n";
  } else {
    if (trace) explain(m, world, sigma, f, 0, std::cout);
    std::cout << (value ? "true" : "false") << "\n";
  }
  return value ? kExitTrue : kExitFalse;
}

int cmd_update(const std::string& model_path, const std::string& event_path,
               const std::string& event_id,
               const std::vector<std::string>& assigns,
               const std::string& out_path) {
  KripkeModel m = load_model(model_path);
  EventModel em = load_event_model(event_path, signature_from(m));
  if (!em.has_event(event_id))
    throw InputError("event '" + event_id + "' is not in the event model");
  Assignment sigma = parse_assignments(assigns, &m);
  for (const auto& [event, pre] : em.pre)
    for (const auto& x : free_vars(pre))
      if (!sigma.count(x))
        throw InputError("precondition variable '" + x +
                         "' has no --assign binding");
  KripkeModel updated = product(m, sigma, em);
  if (updated.worlds.empty())
    std::cerr << "warning: no precondition holds anywhere; the product is empty\n";
  std::string text = model_to_json(updated);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << text;
  }
  return kExitTrue;
}

// Model-less commands have no signature file to declare predicates, so the
// arities are read off the formula text: an identifier directly applied to a
// parenthesized argument list is a predicate, and its arity is the number of
// top-level commas plus one.
void infer_predicates(const std::string& text, Signature& sig) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      if (i < text.size() && text[i] == '(') {
        std::string name = text.substr(start, i - start);
        std::size_t depth = 0, arity = 1, j = i;
        bool content = false;
        for (; j < text.size(); ++j) {
          if (text[j] == '(') ++depth;
          else if (text[j] == ')') {
            if (--depth == 0) break;
          } else if (text[j] == ',' && depth == 1) ++arity;
          else if (!std::isspace(static_cast<unsigned char>(text[j]))) content = true;
        }
        if (!sig.predicates.count(name)) sig.predicates[name] = content ? arity : 0;
      }
    } else {
      ++i;
    }
  }
}

int cmd_reduce(const std::string& formula_text,
               const std::vector<std::string>& event_paths, bool trace,
               const std::string& strategy_name, const std::string& format) {
  Signature sig;
  EventModelEnv env = load_events(event_paths, sig);
  for (const auto& [key, em] : env)
    for (const auto& [event, pre] : em->pre)
      for (const auto& [pred, arity] : predicates_of(pre))
        sig.predicates[pred] = arity;
  infer_predicates(formula_text, sig);
  Formula f = parse_formula(formula_text, sig, env);
  TranslateStrategy strategy = TranslateStrategy::Composition;
  if (strategy_name == "inner-first") strategy = TranslateStrategy::InnerFirst;
  else if (strategy_name != "composition")
    throw InputError("--strategy must be composition or inner-first");
  auto [result, rewrite_trace] = translate(f, strategy);
  if (format == "structured") {
    nlohmann::json out;
    out["input"] = to_string(f);
    out["result"] = to_string(result);
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& step : rewrite_trace.steps)
      steps.push_back({{"axiom", step.axiom},
                       {"position", step.position},
                       {"before", to_string(step.before)},
                       {"after", to_string(step.after)}});
    out["trace"] = std::move(steps);
    std::cout << out.dump(2) << "\n";
  } else {
    if (trace)
      for (const auto& step : rewrite_trace.steps)
        std::cout << step.axiom << " at [" << step.position
                  << "]: " << to_string(step.before) << "  =>  "
                  << to_string(step.after) << "\n";
    std::cout << to_string(result) << "\n";
  }
  return kExitTrue;
}

int cmd_prove(const std::string& proof_path,
              const std::vector<std::string>& event_paths) {
  std::ifstream in(proof_path);
  if (!in) throw InputError("cannot open '" + proof_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  EventModelEnv env = load_events(event_paths, {});
  Derivation d = parse_derivation(buf.str(), env);
  CheckResult result = check_derivation(d);
  if (result.ok) {
    std::cout << "ok: " << to_string(d.conclusion()) << "\n";
    return kExitTrue;
  }
  std::cout << "error at line " << result.line << ": " << result.reason << "\n";
  return kExitFalse;
}

int cmd_falsify(const std::string& formula_text,
                const std::vector<std::string>& event_paths,
                const std::string& bounds_raw, const std::string& class_name,
                const std::string& format, const std::string& out_path) {
  ModelClass cls = ModelClass::Arbitrary;
  if (class_name == "epistemic") cls = ModelClass::Epistemic;
  else if (class_name != "arbitrary")
    throw InputError("--class must be arbitrary or epistemic");
  Bounds b = parse_bounds(bounds_raw, cls);
  Signature sig;
  EventModelEnv env = load_events(event_paths, sig);
  for (const auto& [key, em] : env)
    for (const auto& [event, pre] : em->pre)
      for (const auto& [pred, arity] : predicates_of(pre))
        sig.predicates[pred] = arity;
  infer_predicates(formula_text, sig);
  Formula f = parse_formula(formula_text, sig, env);
  Verdict v = find_countermodel(f, b);
  if (v.valid_within_bounds) {
    if (format == "structured") {
      nlohmann::json out;
      out["formula"] = to_string(f);
      out["verdict"] = "valid-within-bounds";
      out["caveat"] = "valid-within-bounds is NOT a validity proof";
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "valid-within-bounds (worlds<=" << b.max_worlds << ", domain<="
                << b.max_domain << "); valid-within-bounds is NOT a validity proof\n";
    }
    return kExitTrue;
  }
  const PointedModel& pm = *v.countermodel;
  std::string model_text = model_to_json(*pm.model);
  if (format == "structured") {
    nlohmann::json out;
    out["formula"] = to_string(f);
    out["verdict"] = "countermodel";
    out["world"] = pm.world;
    out["assignment"] = pm.assignment;
    out["model"] = nlohmann::json::parse(model_text);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "countermodel at world " << pm.world;
    for (const auto& [x, o] : pm.assignment) std::cout << " " << x << "=" << o;
    std::cout << "\n";
    if (out_path.empty()) std::cout << model_text;
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << model_text;
  }
  return kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checking, reduction and proof checking for epistemic "
               "logic with assignment operators"};
  app.require_subcommand(1);

  std::string model_path, event_path, world, formula_text, proof_path;
  std::vector<std::string> event_paths, assigns;
  std::string bounds_raw, class_name = "arbitrary", format = "human";
  std::string strategy_name = "composition", out_path, event_id;
  bool trace = false;

  auto* check = app.add_subcommand("check", "Evaluate a formula at a pointed model");
  check->add_option("--model", model_path, "Model file")->required();
  check->add_option("--world", world, "Designated world")->required();
  check->add_option("formula", formula_text, "Formula to evaluate")->required();
  check->add_option("--assign", assigns, "Variable binding x=o");
  check->add_option("--event", event_paths, "Event model file (for [E @ e])");
  check->add_flag("--trace", trace, "Print the clause-by-clause evaluation tree");
  check->add_option("--format", format, "human|structured");

  auto* update = app.add_subcommand("update", "Write the update product model");
  update->add_option("--model", model_path, "Model file")->required();
  update->add_option("--event", event_path, "Event model file")->required();
  update->add_option("event_id", event_id, "Designated event")->required();
  update->add_option("--assign", assigns, "Variable binding x=o");
  update->add_option("--out", out_path, "Output file (default stdout)");

  auto* reduce = app.add_subcommand("reduce", "Translate away dynamic operators");
  reduce->add_option("formula", formula_text, "Formula to translate")->required();
  reduce->add_option("--event", event_paths, "Event model file (for [E @ e])");
  reduce->add_flag("--trace", trace, "Print every applied reduction axiom");
  reduce->add_option("--strategy", strategy_name, "composition|inner-first");
  reduce->add_option("--format", format, "human|structured");

  auto* prove = app.add_subcommand("prove", "Check a Hilbert-style derivation");
  prove->add_option("proof", proof_path, "Proof file")->required();
  prove->add_option("--event", event_paths, "Event model file for E bindings");

  auto* falsify = app.add_subcommand("falsify", "Bounded countermodel search");
  falsify->add_option("formula", formula_text, "Formula to test")->required();
  falsify->add_option("--event", event_paths, "Event model file (for [E @ e])");
  falsify->add_option("--bounds", bounds_raw,
                      "worlds=N,domain=N,agents=N,names=N,variables=N");
  falsify->add_option("--class", class_name, "arbitrary|epistemic");
  falsify->add_option("--out", out_path, "Countermodel output file");
  falsify->add_option("--format", format, "human|structured");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed())
      return cmd_check(model_path, formula_text, world, assigns, event_paths,
                       trace, format);
    if (update->parsed())
      return cmd_update(model_path, event_path, event_id, assigns, out_path);
    if (reduce->parsed())
      return cmd_reduce(formula_text, event_paths, trace, strategy_name, format);
    if (prove->parsed()) return cmd_prove(proof_path, event_paths);
    if (falsify->parsed())
      return cmd_falsify(formula_text, event_paths, bounds_raw, class_name,
                         format, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
