#include "delas/reduction.hpp"

#include <optional>

#include "delas/binding.hpp"
#include "delas/sugar.hpp"

namespace delas {

namespace {

int child_count(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Pred:
      return 0;
    case FormulaKind::Not:
    case FormulaKind::Know:
    case FormulaKind::Assign:
    case FormulaKind::Update:
      return 1;
    case FormulaKind::And:
    case FormulaKind::Announce:
      return 2;
  }
  return 0;
}

const Formula& child(const Formula& f, int i) {
  switch (f.kind()) {
    case FormulaKind::Not:
    case FormulaKind::Know:
    case FormulaKind::Assign:
    case FormulaKind::Update:
      return f.body();
    case FormulaKind::And:
      return i == 0 ? f.left() : f.right();
    case FormulaKind::Announce:
      return i == 0 ? f.announced() : f.body();
    default:
      throw FormulaError("child(): leaf node");
  }
}

Formula with_child(const Formula& f, int i, Formula c) {
  switch (f.kind()) {
    case FormulaKind::Not:
      return Formula::negation(std::move(c));
    case FormulaKind::Know:
      return Formula::know(f.agent(), std::move(c));
    case FormulaKind::Assign:
      return Formula::assign(f.assigned_var(), f.assigned_term(), std::move(c));
    case FormulaKind::Update:
      return Formula::update(f.event_model_ptr(), f.event(), std::move(c));
    case FormulaKind::And:
      return i == 0 ? Formula::conj(std::move(c), f.right())
                    : Formula::conj(f.left(), std::move(c));
    case FormulaKind::Announce:
      return i == 0 ? Formula::announce(std::move(c), f.body())
                    : Formula::announce(f.announced(), std::move(c));
    default:
      throw FormulaError("with_child(): leaf node");
  }
}

const Formula& at_path(const Formula& f, const std::vector<int>& path) {
  const Formula* cur = &f;
  for (int i : path) cur = &child(*cur, i);
  return *cur;
}

Formula replace_at(const Formula& f, const std::vector<int>& path, std::size_t depth,
                   const Formula& replacement) {
  if (depth == path.size()) return replacement;
  int i = path[depth];
  return with_child(f, i, replace_at(child(f, i), path, depth + 1, replacement));
}

std::string path_string(const std::vector<int>& path) {
  std::string out;
  for (int i : path) {
    if (!out.empty()) out += '.';
    out += std::to_string(i);
  }
  return out;
}

// Leftmost-outermost dynamic node; event-model internals are not entered.
bool find_outermost(const Formula& f, std::vector<int>& path) {
  if (f.is_dynamic()) return true;
  for (int i = 0; i < child_count(f); ++i) {
    path.push_back(i);
    if (find_outermost(child(f, i), path)) return true;
    path.pop_back();
  }
  return false;
}

int operand_index(const Formula& dyn) {
  return dyn.kind() == FormulaKind::Announce ? 1 : 0;
}

// Can the operator at `dyn` be reduced in one step given the strategy, or
// must the (dynamic) operand be translated first?
bool step_applies(const Formula& dyn, TranslateStrategy strategy) {
  const Formula& operand = dyn.body();
  if (!operand.is_dynamic()) return true;
  if (strategy == TranslateStrategy::InnerFirst) return false;
  if (dyn.kind() == FormulaKind::Announce)
    return operand.kind() == FormulaKind::Announce;  // ACOM
  // UCOM is only stated for postcondition-free event models
  return operand.kind() == FormulaKind::Update &&
         !dyn.event_model().has_factual_change() &&
         !operand.event_model().has_factual_change();
}

// First atomic subformula, event preconditions included.
std::optional<Formula> first_atom(const Formula& f) {
  if (f.is_atomic()) return f;
  if (f.kind() == FormulaKind::Update) {
    for (const auto& e : f.event_model().events)
      if (auto a = first_atom(f.event_model().pre_of(e))) return a;
  }
  for (int i = 0; i < child_count(f); ++i)
    if (auto a = first_atom(child(f, i))) return a;
  return std::nullopt;
}

// A closed tautology built from material already in the redex, used for the
// empty conjunction in UK.
Formula truth_from(const Formula& redex) {
  auto a = first_atom(redex);
  if (!a) throw FormulaError("translate: no atomic subformula in redex");
  return Formula::negation(Formula::conj(*a, Formula::negation(*a)));
}

struct AxiomResult {
  std::string axiom;
  Formula after;
};

AxiomResult reduce_announce(const Formula& redex) {
  const Formula& psi = redex.announced();
  const Formula& operand = redex.body();
  switch (operand.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Pred:
      return {"AATOM", sugar::implies(psi, operand)};
    case FormulaKind::Not:
      return {"ANEG",
              sugar::implies(psi, Formula::negation(
                                      Formula::announce(psi, operand.body())))};
    case FormulaKind::And:
      return {"ACON", Formula::conj(Formula::announce(psi, operand.left()),
                                    Formula::announce(psi, operand.right()))};
    case FormulaKind::Know:
      return {"AK", sugar::implies(
                        psi, Formula::know(operand.agent(),
                                           Formula::announce(psi, operand.body())))};
    case FormulaKind::Assign: {
      const std::string& x = operand.assigned_var();
      if (!free_vars(psi).count(x)) {
        // Degenerate instance: x never reaches psi, so the announcement
        // commutes with the assignment and no old-value binder is needed.
        return {"AASSI", Formula::assign(x, operand.assigned_term(),
                                         Formula::announce(psi, operand.body()))};
      }
      std::string z = fresh_var({redex});
      Formula shifted = Formula::announce(substitute(psi, x, z), operand.body());
      return {"AASSI",
              Formula::assign(z, Term::var(x),
                              Formula::assign(x, operand.assigned_term(),
                                              std::move(shifted)))};
    }
    case FormulaKind::Announce: {
      Formula merged = Formula::conj(psi, Formula::announce(psi, operand.announced()));
      return {"ACOM", Formula::announce(std::move(merged), operand.body())};
    }
    default:
      throw FormulaError("reduce_announce: no axiom for operand");
  }
}

AxiomResult reduce_update(const Formula& redex) {
  const EventModel& em = redex.event_model();
  const std::string& e = redex.event();
  const Formula& pre = em.pre_of(e);
  const Formula& operand = redex.body();
  auto same_update = [&](Formula body) {
    return Formula::update(redex.event_model_ptr(), e, std::move(body));
  };
  switch (operand.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Pred: {
      if (!em.has_factual_change()) return {"UATOM", sugar::implies(pre, operand)};
      // with postconditions the updated eta reads through Pos, so the atom's
      // names must be rewritten for the equivalence to hold
      Formula shifted = [&] {
        if (operand.kind() == FormulaKind::Eq)
          return Formula::eq(pos_plus(em, operand.eq_lhs(), e),
                             pos_plus(em, operand.eq_rhs(), e));
        std::vector<Term> args;
        for (const auto& t : operand.pred_args()) args.push_back(pos_plus(em, t, e));
        return Formula::pred(operand.pred_symbol(), std::move(args));
      }();
      return {"UATOM'", sugar::implies(pre, std::move(shifted))};
    }
    case FormulaKind::Not:
      return {"UNEG",
              sugar::implies(pre, Formula::negation(same_update(operand.body())))};
    case FormulaKind::And:
      return {"UCON", Formula::conj(same_update(operand.left()),
                                    same_update(operand.right()))};
    case FormulaKind::Know: {
      std::optional<Formula> conjunction;
      for (const auto& f : em.successors(operand.agent(), e)) {
        Formula piece = Formula::know(
            operand.agent(),
            Formula::update(redex.event_model_ptr(), f, operand.body()));
        conjunction = conjunction ? Formula::conj(std::move(*conjunction), std::move(piece))
                                  : std::move(piece);
      }
      if (!conjunction) conjunction = truth_from(redex);
      return {"UK", sugar::implies(pre, std::move(*conjunction))};
    }
    case FormulaKind::Assign: {
      const std::string& x = operand.assigned_var();
      bool x_in_pre = false;
      for (const auto& ev : em.events) x_in_pre |= free_vars(em.pre_of(ev)).count(x) > 0;
      if (!x_in_pre) {
        // Degenerate instance: no precondition reads x, so the update
        // commutes with the assignment (through Pos when events change facts).
        Term t0 = em.has_factual_change() ? pos_plus(em, operand.assigned_term(), e)
                                          : operand.assigned_term();
        return {em.has_factual_change() ? "UASSI'" : "UASSI",
                Formula::assign(x, std::move(t0), same_update(operand.body()))};
      }
      std::string z = fresh_var({redex});
      EventModel renamed = em;
      for (const auto& ev : renamed.events) {
        Formula p = substitute(renamed.pre_of(ev), x, z);
        renamed.pre.erase(ev);
        renamed.pre.emplace(ev, std::move(p));
      }
      if (!renamed.label.empty()) renamed.label += "'";
      const bool factual = em.has_factual_change();
      Term t = factual ? pos_plus(em, operand.assigned_term(), e)
                       : operand.assigned_term();
      Formula inner = Formula::update(std::move(renamed), e, operand.body());
      return {factual ? "UASSI'" : "UASSI",
              Formula::assign(z, Term::var(x),
                              Formula::assign(x, std::move(t), std::move(inner)))};
    }
    case FormulaKind::Update: {
      auto [composed, ce] =
          compose(em, e, operand.event_model(), operand.event());
      return {"UCOM", Formula::update(std::move(composed), ce, operand.body())};
    }
    default:
      throw FormulaError("reduce_update: no axiom for operand");
  }
}

}  // namespace

std::pair<Formula, RewriteTrace> translate(const Formula& f,
                                           TranslateStrategy strategy) {
  Formula current = f;
  RewriteTrace trace;
  while (current.has_dynamic_operator()) {
    std::vector<int> path;
    if (!find_outermost(current, path))
      throw FormulaError("translate: dynamic operator not reachable");
    // descend while the selected operator cannot be reduced directly
    while (!step_applies(at_path(current, path), strategy))
      path.push_back(operand_index(at_path(current, path)));
    const Formula& redex = at_path(current, path);
    AxiomResult r = redex.kind() == FormulaKind::Announce ? reduce_announce(redex)
                                                          : reduce_update(redex);
    trace.steps.push_back({r.axiom, path_string(path), redex, r.after});
    current = replace_at(current, path, 0, r.after);
  }
  return {std::move(current), std::move(trace)};
}

std::pair<EventModel, std::string> compose(const EventModel& first,
                                           const std::string& e,
                                           const EventModel& second,
                                           const std::string& e2) {
  if (!first.has_event(e) || !second.has_event(e2))
    throw FormulaError("compose: designated event not in its model");
  auto pair_id = [](const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
  };
  EventModel out;
  out.label = (first.label.empty() ? "E" : first.label) + "o" +
              (second.label.empty() ? "E" : second.label);
  auto first_ptr = std::make_shared<const EventModel>(first);
  for (const auto& a : first.events)
    for (const auto& b : second.events) {
      std::string id = pair_id(a, b);
      out.events.push_back(id);
      out.pre.emplace(id, Formula::conj(first.pre_of(a),
                                        Formula::update(first_ptr, a, second.pre_of(b))));
    }
  std::set<std::string> agents;
  for (const auto& [agent, rel] : first.relations) agents.insert(agent);
  for (const auto& [agent, rel] : second.relations) agents.insert(agent);
  for (const auto& agent : agents) {
    auto it1 = first.relations.find(agent);
    auto it2 = second.relations.find(agent);
    auto& r = out.relations[agent];
    if (it1 == first.relations.end() || it2 == second.relations.end()) continue;
    for (const auto& [a, b] : it1->second)
      for (const auto& [c, d] : it2->second)
        r.insert({pair_id(a, c), pair_id(b, d)});
  }
  if (first.has_factual_change() || second.has_factual_change()) {
    std::set<std::string> names;
    for (const auto& [ev, m] : first.pos)
      for (const auto& [a, b] : m) names.insert(a);
    for (const auto& [ev, m] : second.pos)
      for (const auto& [a, b] : m) names.insert(a);
    for (const auto& a : first.events)
      for (const auto& b : second.events) {
        std::string id = pair_id(a, b);
        for (const auto& name : names) {
          const std::string& through = second.pos_of(name, b);
          const std::string& final_name = first.pos_of(through, a);
          if (final_name != name) out.pos[id][name] = final_name;
        }
      }
  }
  return {std::move(out), pair_id(e, e2)};
}

Term pos_plus(const EventModel& em, const Term& t, const std::string& e) {
  if (t.is_var()) return t;
  return Term::name(em.pos_of(t.id, e));
}

}  // namespace delas
