#include "delas/proof.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

#include "delas/binding.hpp"
#include "delas/reduction.hpp"
#include "delas/sugar.hpp"

namespace delas {

namespace {

using sugar::iff;
using sugar::implies;

// ---------------------------------------------------------------- bindings

[[noreturn]] void missing(const std::string& schema, const std::string& key,
                          const char* kind) {
  throw ProofError(schema + ": missing or ill-typed binding '" + key +
                   "' (expected " + kind + ")");
}

const BindingValue* find(const Bindings& b, const std::string& key) {
  auto it = b.find(key);
  return it == b.end() ? nullptr : &it->second;
}

Formula bind_formula(const std::string& s, const Bindings& b, const std::string& k) {
  const BindingValue* v = find(b, k);
  if (!v || !std::holds_alternative<Formula>(*v)) missing(s, k, "a formula");
  return std::get<Formula>(*v);
}

Term bind_term(const std::string& s, const Bindings& b, const std::string& k) {
  const BindingValue* v = find(b, k);
  if (v && std::holds_alternative<Term>(*v)) return std::get<Term>(*v);
  missing(s, k, "a term");
}

std::string bind_var(const std::string& s, const Bindings& b, const std::string& k) {
  const BindingValue* v = find(b, k);
  if (v && std::holds_alternative<std::string>(*v)) return std::get<std::string>(*v);
  if (v && std::holds_alternative<Term>(*v) && std::get<Term>(*v).is_var())
    return std::get<Term>(*v).id;
  missing(s, k, "a variable");
}

std::string bind_symbol(const std::string& s, const Bindings& b,
                        const std::string& k, const char* kind) {
  const BindingValue* v = find(b, k);
  if (!v || !std::holds_alternative<std::string>(*v)) missing(s, k, kind);
  return std::get<std::string>(*v);
}

std::vector<Term> bind_terms(const std::string& s, const Bindings& b,
                             const std::string& k) {
  const BindingValue* v = find(b, k);
  if (!v || !std::holds_alternative<std::vector<Term>>(*v))
    missing(s, k, "a term sequence");
  return std::get<std::vector<Term>>(*v);
}

EventRef bind_event(const std::string& s, const Bindings& b, const std::string& k) {
  const BindingValue* v = find(b, k);
  if (!v || !std::holds_alternative<EventRef>(*v))
    missing(s, k, "an event model with a designated event");
  const EventRef& ref = std::get<EventRef>(*v);
  if (!ref.model || !ref.model->has_event(ref.event))
    throw ProofError(s + ": binding '" + k + "' has no event '" + ref.event + "'");
  return ref;
}

// ------------------------------------------------------------------- TAUT

bool is_boolean_node(const Formula& f) {
  return f.kind() == FormulaKind::Not || f.kind() == FormulaKind::And;
}

std::size_t atom_index(std::vector<Formula>& atoms, const Formula& f) {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == f) return i;
  atoms.push_back(f);
  return atoms.size() - 1;
}

void collect_atoms(const Formula& f, std::vector<Formula>& atoms) {
  if (!is_boolean_node(f)) {
    atom_index(atoms, f);
    return;
  }
  if (f.kind() == FormulaKind::Not) {
    collect_atoms(f.body(), atoms);
  } else {
    collect_atoms(f.left(), atoms);
    collect_atoms(f.right(), atoms);
  }
}

bool eval_skeleton(const Formula& f, std::vector<Formula>& atoms,
                   unsigned long valuation) {
  if (f.kind() == FormulaKind::Not) return !eval_skeleton(f.body(), atoms, valuation);
  if (f.kind() == FormulaKind::And)
    return eval_skeleton(f.left(), atoms, valuation) &&
           eval_skeleton(f.right(), atoms, valuation);
  return (valuation >> atom_index(atoms, f)) & 1u;
}

bool skeleton_tautology(const Formula& f) {
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > 20)
    throw ProofError("TAUT: Boolean skeleton has more than 20 distinct atoms");
  const unsigned long count = 1ul << atoms.size();
  for (unsigned long v = 0; v < count; ++v)
    if (!eval_skeleton(f, atoms, v)) return false;
  return true;
}

// ------------------------------------------------------------ schema sets

const char* const kBaseSchemas[] = {"TAUT",   "DISTK",  "ID",    "SYM",
                                    "TRANS",  "SUBAS",  "SUBP",  "RIGIDP",
                                    "RIGIDN", "KAS",    "DETAS", "DAS",
                                    "EFAS",   "SUB2AS"};
const char* const kS5Schemas[] = {"T", "4", "5"};
const char* const kAnnounceSchemas[] = {"AATOM", "ANEG", "ACON",
                                        "AK",    "ACOM", "AASSI"};
const char* const kUpdateSchemas[] = {"UATOM", "UATOM'", "UNEG",  "UCON",
                                      "UK",    "UCOM",   "UASSI", "UASSI'"};

template <std::size_t N>
bool in(const char* const (&set)[N], const std::string& s) {
  return std::find_if(std::begin(set), std::end(set),
                      [&](const char* x) { return s == x; }) != std::end(set);
}

// First atomic subformula, event preconditions included; material for the
// closed tautology standing in for UK's empty conjunction.
std::optional<Formula> first_atom(const Formula& f) {
  if (f.is_atomic()) return f;
  if (f.kind() == FormulaKind::Update) {
    for (const auto& e : f.event_model().events)
      if (auto a = first_atom(f.event_model().pre_of(e))) return a;
  }
  switch (f.kind()) {
    case FormulaKind::Not:
    case FormulaKind::Know:
    case FormulaKind::Assign:
    case FormulaKind::Update:
      return first_atom(f.body());
    case FormulaKind::And:
      if (auto a = first_atom(f.left())) return a;
      return first_atom(f.right());
    case FormulaKind::Announce:
      if (auto a = first_atom(f.announced())) return a;
      return first_atom(f.body());
    default:
      return std::nullopt;
  }
}

Formula truth_from(const Formula& redex) {
  auto a = first_atom(redex);
  if (!a) throw ProofError("UK: no atomic subformula in the redex");
  return Formula::negation(Formula::conj(*a, Formula::negation(*a)));
}

void require_atomic(const std::string& schema, const Formula& p) {
  if (!p.is_atomic())
    throw ProofError(schema + ": operand 'p' must be atomic");
}

void require_fresh(const std::string& schema, const std::string& z,
                   const Formula& redex) {
  if (all_vars(redex).count(z))
    throw ProofError(schema + ": '" + z + "' occurs in " +
                     "the left-hand side, so it is not fresh");
}

void require_pos_free(const std::string& schema, const EventModel& em) {
  if (em.has_factual_change())
    throw ProofError(schema +
                     ": event model has postconditions; use the primed schema");
}

// E' of UASSI/UASSI': same events and relations, preconditions renamed [z/x].
EventModel rename_preconditions(const EventModel& em, const std::string& x,
                                const std::string& z) {
  EventModel out = em;
  for (const auto& e : out.events) {
    Formula p = substitute(out.pre_of(e), x, z);
    out.pre.erase(e);
    out.pre.emplace(e, std::move(p));
  }
  if (!out.label.empty()) out.label += "'";
  return out;
}

}  // namespace

std::string to_string(System s) {
  switch (s) {
    case System::SBELAS: return "SBELAS";
    case System::SBELAS5: return "SBELAS5";
    case System::SPALAS: return "SPALAS";
    case System::SPALAS5: return "SPALAS5";
    case System::SDELAS: return "SDELAS";
    case System::SDELAS5: return "SDELAS5";
  }
  return "?";
}

std::optional<System> system_from_string(const std::string& name) {
  for (System s : {System::SBELAS, System::SBELAS5, System::SPALAS,
                   System::SPALAS5, System::SDELAS, System::SDELAS5})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

bool is_s5(System s) {
  return s == System::SBELAS5 || s == System::SPALAS5 || s == System::SDELAS5;
}

bool is_schema(const std::string& schema) {
  return in(kBaseSchemas, schema) || in(kS5Schemas, schema) ||
         in(kAnnounceSchemas, schema) || in(kUpdateSchemas, schema);
}

bool schema_in_system(const std::string& schema, System system) {
  if (in(kBaseSchemas, schema)) return true;
  if (in(kS5Schemas, schema)) return is_s5(system);
  if (in(kAnnounceSchemas, schema))
    return system == System::SPALAS || system == System::SPALAS5;
  if (in(kUpdateSchemas, schema))
    return system == System::SDELAS || system == System::SDELAS5;
  return false;
}

Formula instantiate_schema(const std::string& schema, const Bindings& b) {
  const std::string& s = schema;
  if (s == "TAUT") {
    Formula phi = bind_formula(s, b, "phi");
    if (!skeleton_tautology(phi))
      throw ProofError("TAUT: not an instance of a propositional tautology");
    return phi;
  }
  if (s == "DISTK") {
    std::string i = bind_symbol(s, b, "i", "an agent");
    Formula phi = bind_formula(s, b, "phi"), psi = bind_formula(s, b, "psi");
    return implies(Formula::know(i, implies(phi, psi)),
                   implies(Formula::know(i, phi), Formula::know(i, psi)));
  }
  if (s == "ID") {
    Term t = bind_term(s, b, "t");
    return Formula::eq(t, t);
  }
  if (s == "SYM") {
    Term t = bind_term(s, b, "t"), u = bind_term(s, b, "u");
    return iff(Formula::eq(t, u), Formula::eq(u, t));
  }
  if (s == "TRANS") {
    Term t = bind_term(s, b, "t"), u = bind_term(s, b, "u"),
         v = bind_term(s, b, "v");
    return implies(Formula::conj(Formula::eq(t, u), Formula::eq(u, v)),
                   Formula::eq(t, v));
  }
  if (s == "SUBAS") {
    Term t = bind_term(s, b, "t"), u = bind_term(s, b, "u");
    std::string x = bind_var(s, b, "x");
    Formula phi = bind_formula(s, b, "phi");
    return implies(Formula::eq(t, u),
                   iff(Formula::assign(x, t, phi), Formula::assign(x, u, phi)));
  }
  if (s == "SUBP") {
    std::string pred = bind_symbol(s, b, "P", "a predicate symbol");
    std::vector<Term> ts = bind_terms(s, b, "ts"), us = bind_terms(s, b, "us");
    if (ts.size() != us.size() || ts.empty())
      throw ProofError("SUBP: term sequences must be nonempty and equally long");
    std::optional<Formula> eqs;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      Formula e = Formula::eq(ts[i], us[i]);
      eqs = eqs ? Formula::conj(std::move(*eqs), std::move(e)) : std::move(e);
    }
    return implies(std::move(*eqs),
                   iff(Formula::pred(pred, ts), Formula::pred(pred, us)));
  }
  if (s == "RIGIDP" || s == "RIGIDN") {
    std::string x = bind_var(s, b, "x"), y = bind_var(s, b, "y");
    std::string i = bind_symbol(s, b, "i", "an agent");
    Formula e = Formula::eq(Term::var(x), Term::var(y));
    if (s == "RIGIDN") e = Formula::negation(std::move(e));
    return implies(e, Formula::know(i, e));
  }
  if (s == "KAS") {
    std::string x = bind_var(s, b, "x");
    Term t = bind_term(s, b, "t");
    Formula phi = bind_formula(s, b, "phi"), psi = bind_formula(s, b, "psi");
    return implies(Formula::assign(x, t, implies(phi, psi)),
                   implies(Formula::assign(x, t, phi), Formula::assign(x, t, psi)));
  }
  if (s == "DETAS") {
    std::string x = bind_var(s, b, "x");
    Term t = bind_term(s, b, "t");
    Formula phi = bind_formula(s, b, "phi");
    return implies(sugar::dual_assign(x, t, phi), Formula::assign(x, t, phi));
  }
  if (s == "DAS") {
    // <x:=t>T, with T spelled t ~ t to stay inside the primitive language
    std::string x = bind_var(s, b, "x");
    Term t = bind_term(s, b, "t");
    return sugar::dual_assign(x, t, Formula::eq(t, t));
  }
  if (s == "EFAS") {
    std::string x = bind_var(s, b, "x");
    Term t = bind_term(s, b, "t");
    return Formula::assign(x, t, Formula::eq(Term::var(x), t));
  }
  if (s == "SUB2AS") {
    Formula phi = bind_formula(s, b, "phi");
    std::string x = bind_var(s, b, "x"), y = bind_var(s, b, "y");
    Formula substituted = [&] {
      try {
        return substitute(phi, x, y);
      } catch (const SubstitutionError& e) {
        throw ProofError(std::string("SUB2AS: ") + e.what());
      }
    }();
    return implies(std::move(substituted),
                   Formula::assign(x, Term::var(y), phi));
  }
  if (s == "T" || s == "4" || s == "5") {
    std::string i = bind_symbol(s, b, "i", "an agent");
    Formula phi = bind_formula(s, b, "phi");
    if (s == "T") return implies(Formula::know(i, phi), phi);
    if (s == "4")
      return implies(Formula::know(i, phi),
                     Formula::know(i, Formula::know(i, phi)));
    Formula k = Formula::know(i, phi);
    return implies(Formula::negation(k),
                   Formula::know(i, Formula::negation(k)));
  }
  if (s == "AATOM") {
    Formula psi = bind_formula(s, b, "psi"), p = bind_formula(s, b, "p");
    require_atomic(s, p);
    return iff(Formula::announce(psi, p), implies(psi, p));
  }
  if (s == "ANEG") {
    Formula psi = bind_formula(s, b, "psi"), phi = bind_formula(s, b, "phi");
    return iff(Formula::announce(psi, Formula::negation(phi)),
               implies(psi, Formula::negation(Formula::announce(psi, phi))));
  }
  if (s == "ACON") {
    Formula psi = bind_formula(s, b, "psi"), phi = bind_formula(s, b, "phi"),
            chi = bind_formula(s, b, "chi");
    return iff(Formula::announce(psi, Formula::conj(phi, chi)),
               Formula::conj(Formula::announce(psi, phi),
                             Formula::announce(psi, chi)));
  }
  if (s == "AK") {
    Formula psi = bind_formula(s, b, "psi"), phi = bind_formula(s, b, "phi");
    std::string i = bind_symbol(s, b, "i", "an agent");
    return iff(Formula::announce(psi, Formula::know(i, phi)),
               implies(psi, Formula::know(i, Formula::announce(psi, phi))));
  }
  if (s == "ACOM") {
    Formula psi = bind_formula(s, b, "psi"), chi = bind_formula(s, b, "chi"),
            phi = bind_formula(s, b, "phi");
    return iff(Formula::announce(psi, Formula::announce(chi, phi)),
               Formula::announce(
                   Formula::conj(psi, Formula::announce(psi, chi)), phi));
  }
  if (s == "AASSI") {
    Formula psi = bind_formula(s, b, "psi"), phi = bind_formula(s, b, "phi");
    std::string x = bind_var(s, b, "x"), z = bind_var(s, b, "z");
    Term t = bind_term(s, b, "t");
    Formula redex = Formula::announce(psi, Formula::assign(x, t, phi));
    require_fresh(s, z, redex);
    Formula rhs = Formula::assign(
        z, Term::var(x),
        Formula::assign(x, t, Formula::announce(substitute(psi, x, z), phi)));
    return iff(std::move(redex), std::move(rhs));
  }
  if (s == "UATOM" || s == "UATOM'") {
    EventRef E = bind_event(s, b, "E");
    Formula p = bind_formula(s, b, "p");
    require_atomic(s, p);
    const EventModel& em = *E.model;
    if (s == "UATOM") require_pos_free(s, em);
    Formula rhs = [&] {
      if (s == "UATOM" || !em.has_factual_change()) return p;
      if (p.kind() == FormulaKind::Eq)
        return Formula::eq(pos_plus(em, p.eq_lhs(), E.event),
                           pos_plus(em, p.eq_rhs(), E.event));
      std::vector<Term> args;
      for (const auto& t : p.pred_args()) args.push_back(pos_plus(em, t, E.event));
      return Formula::pred(p.pred_symbol(), std::move(args));
    }();
    return iff(Formula::update(E.model, E.event, p),
               implies(em.pre_of(E.event), std::move(rhs)));
  }
  if (s == "UNEG") {
    EventRef E = bind_event(s, b, "E");
    Formula phi = bind_formula(s, b, "phi");
    return iff(Formula::update(E.model, E.event, Formula::negation(phi)),
               implies(E.model->pre_of(E.event),
                       Formula::negation(Formula::update(E.model, E.event, phi))));
  }
  if (s == "UCON") {
    EventRef E = bind_event(s, b, "E");
    Formula phi = bind_formula(s, b, "phi"), psi = bind_formula(s, b, "psi");
    return iff(Formula::update(E.model, E.event, Formula::conj(phi, psi)),
               Formula::conj(Formula::update(E.model, E.event, phi),
                             Formula::update(E.model, E.event, psi)));
  }
  if (s == "UK") {
    EventRef E = bind_event(s, b, "E");
    Formula phi = bind_formula(s, b, "phi");
    std::string i = bind_symbol(s, b, "i", "an agent");
    Formula redex = Formula::update(E.model, E.event, Formula::know(i, phi));
    std::optional<Formula> conjunction;
    for (const auto& f : E.model->successors(i, E.event)) {
      Formula piece = Formula::know(i, Formula::update(E.model, f, phi));
      conjunction = conjunction
                        ? Formula::conj(std::move(*conjunction), std::move(piece))
                        : std::move(piece);
    }
    if (!conjunction) conjunction = truth_from(redex);
    return iff(std::move(redex),
               implies(E.model->pre_of(E.event), std::move(*conjunction)));
  }
  if (s == "UCOM") {
    EventRef E = bind_event(s, b, "E"), F = bind_event(s, b, "F");
    Formula phi = bind_formula(s, b, "phi");
    require_pos_free(s, *E.model);
    require_pos_free(s, *F.model);
    auto [composed, ce] = compose(*E.model, E.event, *F.model, F.event);
    return iff(Formula::update(E.model, E.event,
                               Formula::update(F.model, F.event, phi)),
               Formula::update(std::move(composed), ce, phi));
  }
  if (s == "UASSI" || s == "UASSI'") {
    EventRef E = bind_event(s, b, "E");
    Formula phi = bind_formula(s, b, "phi");
    std::string x = bind_var(s, b, "x"), z = bind_var(s, b, "z");
    Term t = bind_term(s, b, "t");
    const EventModel& em = *E.model;
    if (s == "UASSI") require_pos_free(s, em);
    Formula redex =
        Formula::update(E.model, E.event, Formula::assign(x, t, phi));
    require_fresh(s, z, redex);
    Term assigned = s == "UASSI'" ? pos_plus(em, t, E.event) : t;
    Formula rhs = Formula::assign(
        z, Term::var(x),
        Formula::assign(x, std::move(assigned),
                        Formula::update(rename_preconditions(em, x, z),
                                        E.event, phi)));
    return iff(std::move(redex), std::move(rhs));
  }
  throw ProofError("unknown schema '" + s + "'");
}

std::string to_string(RuleId r) {
  switch (r) {
    case RuleId::MP: return "MP";
    case RuleId::NECK: return "NECK";
    case RuleId::NECAS: return "NECAS";
  }
  return "?";
}

std::optional<RuleId> rule_from_string(const std::string& name) {
  if (name == "MP") return RuleId::MP;
  if (name == "NECK") return RuleId::NECK;
  if (name == "NECAS") return RuleId::NECAS;
  return std::nullopt;
}

namespace {

// phi -> psi is spelled ~(phi & ~psi); the decomposition is unique.
std::optional<std::pair<Formula, Formula>> match_implies(const Formula& f) {
  if (f.kind() != FormulaKind::Not) return std::nullopt;
  const Formula& n = f.body();
  if (n.kind() != FormulaKind::And) return std::nullopt;
  if (n.right().kind() != FormulaKind::Not) return std::nullopt;
  return std::make_pair(n.left(), n.right().body());
}

}  // namespace

Formula apply_rule(RuleId rule, const std::vector<Formula>& premises,
                   const Bindings& b) {
  switch (rule) {
    case RuleId::MP: {
      if (premises.size() != 2)
        throw ProofError("MP: expected two premises");
      auto imp = match_implies(premises[1]);
      if (!imp) throw ProofError("MP: second premise is not an implication");
      if (imp->first != premises[0])
        throw ProofError("MP: first premise does not match the antecedent");
      return imp->second;
    }
    case RuleId::NECK: {
      if (premises.size() != 1)
        throw ProofError("NECK: expected one premise");
      return Formula::know(bind_symbol("NECK", b, "i", "an agent"), premises[0]);
    }
    case RuleId::NECAS: {
      if (premises.size() != 1)
        throw ProofError("NECAS: expected one premise");
      auto imp = match_implies(premises[0]);
      if (!imp) throw ProofError("NECAS: premise is not an implication");
      std::string x = bind_var("NECAS", b, "x");
      Term t = bind_term("NECAS", b, "t");
      if (free_vars(imp->first).count(x))
        throw ProofError("NECAS: '" + x + "' is free in the antecedent");
      return implies(imp->first, Formula::assign(x, t, imp->second));
    }
  }
  throw ProofError("unknown rule");
}

const Formula& Derivation::conclusion() const {
  if (lines.empty()) throw ProofError("empty derivation has no conclusion");
  return lines.back().formula;
}

CheckResult check_derivation(const Derivation& d) {
  if (d.lines.empty()) return {false, 0, "empty derivation"};
  for (std::size_t i = 0; i < d.lines.size(); ++i) {
    const ProofLine& ln = d.lines[i];
    auto fail = [&](std::string why) {
      return CheckResult{false, i + 1, std::move(why)};
    };
    try {
      switch (ln.kind) {
        case ProofLine::Kind::Premise:
          break;
        case ProofLine::Kind::Axiom: {
          if (!is_schema(ln.name)) return fail("unknown schema '" + ln.name + "'");
          if (!schema_in_system(ln.name, d.system))
            return fail("schema " + ln.name + " is not available in " +
                        to_string(d.system));
          Bindings b = ln.bindings;
          if (ln.name == "TAUT" && !b.count("phi")) b.emplace("phi", ln.formula);
          if (instantiate_schema(ln.name, b) != ln.formula)
            return fail("formula is not the stated " + ln.name + " instance");
          break;
        }
        case ProofLine::Kind::Rule: {
          auto rid = rule_from_string(ln.name);
          if (!rid) return fail("unknown rule '" + ln.name + "'");
          std::vector<Formula> prem;
          for (std::size_t n : ln.premises) {
            if (n == 0 || n > i)
              return fail("premise reference " + std::to_string(n) +
                          " is not an earlier line");
            prem.push_back(d.lines[n - 1].formula);
          }
          if (apply_rule(*rid, prem, ln.bindings) != ln.formula)
            return fail("formula is not the conclusion of " + ln.name);
          break;
        }
      }
    } catch (const std::exception& e) {
      return fail(e.what());
    }
  }
  return {};
}

// ------------------------------------------------------------- proof files

namespace {

enum class MetaKind { F, T, Ts, V, A, P, E };

struct MetaVar {
  const char* name;
  MetaKind kind;
};

const std::vector<MetaVar>* metavars_of(const std::string& name) {
  using K = MetaKind;
  static const std::map<std::string, std::vector<MetaVar>> table = {
      {"TAUT", {{"phi", K::F}}},
      {"DISTK", {{"i", K::A}, {"phi", K::F}, {"psi", K::F}}},
      {"ID", {{"t", K::T}}},
      {"SYM", {{"t", K::T}, {"u", K::T}}},
      {"TRANS", {{"t", K::T}, {"u", K::T}, {"v", K::T}}},
      {"SUBAS", {{"t", K::T}, {"u", K::T}, {"x", K::V}, {"phi", K::F}}},
      {"SUBP", {{"P", K::P}, {"ts", K::Ts}, {"us", K::Ts}}},
      {"RIGIDP", {{"x", K::V}, {"y", K::V}, {"i", K::A}}},
      {"RIGIDN", {{"x", K::V}, {"y", K::V}, {"i", K::A}}},
      {"KAS", {{"x", K::V}, {"t", K::T}, {"phi", K::F}, {"psi", K::F}}},
      {"DETAS", {{"x", K::V}, {"t", K::T}, {"phi", K::F}}},
      {"DAS", {{"x", K::V}, {"t", K::T}}},
      {"EFAS", {{"x", K::V}, {"t", K::T}}},
      {"SUB2AS", {{"phi", K::F}, {"x", K::V}, {"y", K::V}}},
      {"T", {{"i", K::A}, {"phi", K::F}}},
      {"4", {{"i", K::A}, {"phi", K::F}}},
      {"5", {{"i", K::A}, {"phi", K::F}}},
      {"AATOM", {{"psi", K::F}, {"p", K::F}}},
      {"ANEG", {{"psi", K::F}, {"phi", K::F}}},
      {"ACON", {{"psi", K::F}, {"phi", K::F}, {"chi", K::F}}},
      {"AK", {{"psi", K::F}, {"i", K::A}, {"phi", K::F}}},
      {"ACOM", {{"psi", K::F}, {"chi", K::F}, {"phi", K::F}}},
      {"AASSI",
       {{"psi", K::F}, {"x", K::V}, {"t", K::T}, {"phi", K::F}, {"z", K::V}}},
      {"UATOM", {{"E", K::E}, {"p", K::F}}},
      {"UATOM'", {{"E", K::E}, {"p", K::F}}},
      {"UNEG", {{"E", K::E}, {"phi", K::F}}},
      {"UCON", {{"E", K::E}, {"phi", K::F}, {"psi", K::F}}},
      {"UK", {{"E", K::E}, {"i", K::A}, {"phi", K::F}}},
      {"UCOM", {{"E", K::E}, {"F", K::E}, {"phi", K::F}}},
      {"UASSI",
       {{"E", K::E}, {"x", K::V}, {"t", K::T}, {"phi", K::F}, {"z", K::V}}},
      {"UASSI'",
       {{"E", K::E}, {"x", K::V}, {"t", K::T}, {"phi", K::F}, {"z", K::V}}},
      {"MP", {}},
      {"NECK", {{"i", K::A}}},
      {"NECAS", {{"x", K::V}, {"t", K::T}}},
  };
  auto it = table.find(name);
  return it == table.end() ? nullptr : &it->second;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Splits on top-level commas, tracking (), [], {} nesting.
std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

struct FileContext {
  Signature sig;
  const EventModelEnv* events;
  ParseOptions opts{.allow_reserved = true};
  std::size_t line_no = 0;
};

[[noreturn]] void file_error(const FileContext& ctx, const std::string& msg) {
  throw ProofError("proof file line " + std::to_string(ctx.line_no) + ": " + msg);
}

BindingValue parse_binding_value(const FileContext& ctx, MetaKind kind,
                                 const std::string& value) {
  switch (kind) {
    case MetaKind::F:
      return parse_formula(value, ctx.sig, *ctx.events, ctx.opts);
    case MetaKind::T:
      return parse_term(value, ctx.sig, ctx.opts);
    case MetaKind::V: {
      Term t = parse_term(value, ctx.sig, ctx.opts);
      if (!t.is_var()) file_error(ctx, "'" + value + "' is not a variable");
      return t.id;
    }
    case MetaKind::A:
    case MetaKind::P:
      return value;
    case MetaKind::Ts: {
      if (value.size() < 2 || value.front() != '(' || value.back() != ')')
        file_error(ctx, "term sequence must be parenthesized: " + value);
      std::vector<Term> terms;
      for (const auto& part : split_top_level(value.substr(1, value.size() - 2)))
        terms.push_back(parse_term(part, ctx.sig, ctx.opts));
      return terms;
    }
    case MetaKind::E: {
      std::size_t at = value.find('@');
      if (at == std::string::npos)
        file_error(ctx, "event binding must be 'Model @ event': " + value);
      std::string model = trim(value.substr(0, at));
      std::string event = trim(value.substr(at + 1));
      auto it = ctx.events->find(model);
      if (it == ctx.events->end())
        file_error(ctx, "unknown event model '" + model + "'");
      if (!it->second->has_event(event))
        file_error(ctx, "event model '" + model + "' has no event '" + event + "'");
      return EventRef{it->second, event};
    }
  }
  file_error(ctx, "unreachable binding kind");
}

Bindings parse_bindings(const FileContext& ctx, const std::string& just_name,
                        const std::string& body) {
  const std::vector<MetaVar>* metas = metavars_of(just_name);
  Bindings out;
  for (const auto& item : split_top_level(body)) {
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      file_error(ctx, "binding without '=': " + item);
    std::string key = trim(item.substr(0, eq));
    std::string value = trim(item.substr(eq + 1));
    const MetaVar* meta = nullptr;
    if (metas)
      for (const auto& m : *metas)
        if (key == m.name) meta = &m;
    if (!meta)
      file_error(ctx, "'" + key + "' is not a metavariable of " + just_name);
    out.emplace(key, parse_binding_value(ctx, meta->kind, value));
  }
  return out;
}

}  // namespace

Derivation parse_derivation(const std::string& text, const EventModelEnv& events) {
  Derivation d;
  bool system_seen = false;
  FileContext ctx;
  ctx.events = &events;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string raw = text.substr(start, end - start);
    start = end + 1;
    ++ctx.line_no;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.rfind("system ", 0) == 0) {
      auto sys = system_from_string(trim(line.substr(7)));
      if (!sys) file_error(ctx, "unknown system '" + trim(line.substr(7)) + "'");
      d.system = *sys;
      system_seen = true;
      continue;
    }
    if (line.rfind("pred ", 0) == 0) {
      std::istringstream in(line.substr(5));
      std::string name;
      std::size_t arity = 0;
      if (!(in >> name >> arity)) file_error(ctx, "expected 'pred NAME ARITY'");
      ctx.sig.predicates[name] = arity;
      continue;
    }
    if (line.rfind("var ", 0) == 0) {
      std::istringstream in(line.substr(4));
      std::string name;
      while (in >> name) ctx.sig.variables.insert(name);
      continue;
    }

    std::size_t dot = line.find('.');
    if (dot == std::string::npos)
      file_error(ctx, "expected '<n>. <formula> ; <justification>'");
    std::size_t number = 0;
    try {
      number = std::stoul(line.substr(0, dot));
    } catch (const std::exception&) {
      file_error(ctx, "bad line number '" + line.substr(0, dot) + "'");
    }
    if (number != d.lines.size() + 1)
      file_error(ctx, "expected line number " + std::to_string(d.lines.size() + 1));

    std::size_t semi = line.find(';', dot + 1);
    if (semi == std::string::npos)
      file_error(ctx, "missing ';' before the justification");
    std::string formula_text = trim(line.substr(dot + 1, semi - dot - 1));
    std::string just = trim(line.substr(semi + 1));

    Formula formula = [&] {
      try {
        return parse_formula(formula_text, ctx.sig, events, ctx.opts);
      } catch (const ParseError& e) {
        file_error(ctx, std::string("formula: ") + e.what());
      }
    }();

    std::string braces;
    std::size_t brace = just.find('{');
    if (brace != std::string::npos) {
      if (just.back() != '}') file_error(ctx, "unterminated binding block");
      braces = just.substr(brace + 1, just.size() - brace - 2);
      just = trim(just.substr(0, brace));
    }

    std::istringstream jin(just);
    std::string kind_word;
    jin >> kind_word;
    if (kind_word == "premise") {
      d.lines.push_back({std::move(formula), ProofLine::Kind::Premise, "", {}, {}});
    } else if (kind_word == "axiom") {
      std::string name;
      jin >> name;
      if (name.empty()) file_error(ctx, "axiom justification without a name");
      if (!is_schema(name)) file_error(ctx, "unknown schema '" + name + "'");
      Bindings b = parse_bindings(ctx, name, braces);
      d.lines.push_back(
          {std::move(formula), ProofLine::Kind::Axiom, name, {}, std::move(b)});
    } else if (kind_word == "rule") {
      std::string name, from;
      jin >> name >> from;
      if (!rule_from_string(name)) file_error(ctx, "unknown rule '" + name + "'");
      if (from != "from") file_error(ctx, "expected 'from' after the rule name");
      std::string rest;
      std::getline(jin, rest);
      std::vector<std::size_t> refs;
      for (const auto& part : split_top_level(rest)) {
        try {
          refs.push_back(std::stoul(part));
        } catch (const std::exception&) {
          file_error(ctx, "bad premise reference '" + part + "'");
        }
      }
      if (refs.empty()) file_error(ctx, "rule justification without premises");
      Bindings b = parse_bindings(ctx, name, braces);
      d.lines.push_back({std::move(formula), ProofLine::Kind::Rule, name,
                         std::move(refs), std::move(b)});
    } else {
      file_error(ctx, "unknown justification '" + kind_word + "'");
    }
  }

  if (!system_seen) throw ProofError("proof file: missing 'system' header");
  if (d.lines.empty()) throw ProofError("proof file: no proof lines");
  return d;
}

}  // namespace delas
