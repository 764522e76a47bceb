#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace delas {

// Terms are the leaves of every formula: rigid variables and non-rigid names.
// The two symbol spaces are disjoint; a symbol is a variable or a name, never both.
enum class TermKind { Variable, Name };

struct Term {
  TermKind kind;
  std::string id;

  static Term var(std::string id) { return {TermKind::Variable, std::move(id)}; }
  static Term name(std::string id) { return {TermKind::Name, std::move(id)}; }

  bool is_var() const { return kind == TermKind::Variable; }
  bool is_name() const { return kind == TermKind::Name; }

  auto operator<=>(const Term&) const = default;
};

class Formula;

// A finite event model: events with per-agent relations, a precondition formula
// per event and an optional postcondition map per event (factual changes).
// Preconditions are full formulas, so event models and formulas are mutually
// recursive.
struct EventModel {
  // Surface name used when parsing/printing "[E @ e]"; not part of identity.
  std::string label;

  std::vector<std::string> events;
  std::map<std::string, std::set<std::pair<std::string, std::string>>> relations;
  std::map<std::string, Formula> pre;
  // event -> (name -> name); names not listed map to themselves.
  std::map<std::string, std::map<std::string, std::string>> pos;

  bool has_event(const std::string& e) const;
  const Formula& pre_of(const std::string& e) const;
  // Pos(a, e), defaulting to the identity on names.
  const std::string& pos_of(const std::string& name, const std::string& e) const;
  bool has_factual_change() const;
  std::vector<std::string> successors(const std::string& agent,
                                      const std::string& e) const;
  bool is_epistemic() const;
};

bool operator==(const EventModel& a, const EventModel& b);
inline bool operator!=(const EventModel& a, const EventModel& b) { return !(a == b); }

enum class FormulaKind { Eq, Pred, Not, And, Know, Assign, Announce, Update };

// Immutable formula tree. Values are cheap shared handles; structural equality.
class Formula {
 public:
  static Formula eq(Term lhs, Term rhs);
  static Formula pred(std::string symbol, std::vector<Term> args);
  static Formula negation(Formula f);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula know(std::string agent, Formula body);
  static Formula assign(std::string var, Term t, Formula body);
  static Formula announce(Formula announced, Formula body);
  static Formula update(std::shared_ptr<const EventModel> model, std::string event,
                        Formula body);
  static Formula update(EventModel model, std::string event, Formula body);

  FormulaKind kind() const;
  bool is_atomic() const;  // Eq or Pred
  bool is_dynamic() const { return kind() == FormulaKind::Announce || kind() == FormulaKind::Update; }

  // Eq
  const Term& eq_lhs() const;
  const Term& eq_rhs() const;
  // Pred
  const std::string& pred_symbol() const;
  const std::vector<Term>& pred_args() const;
  // Not / Know / Assign / Announce / Update operand
  const Formula& body() const;
  // And
  const Formula& left() const;
  const Formula& right() const;
  // Know
  const std::string& agent() const;
  // Assign
  const std::string& assigned_var() const;
  const Term& assigned_term() const;
  // Announce
  const Formula& announced() const;
  // Update
  const EventModel& event_model() const;
  const std::shared_ptr<const EventModel>& event_model_ptr() const;
  const std::string& event() const;

  // Node count, with event preconditions included; recursion measure for the
  // evaluator and the translator.
  std::size_t size() const;
  // True iff the tree contains an Announce or Update node (preconditions of a
  // surviving Update node count as contained).
  bool has_dynamic_operator() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

struct FormulaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Checks the structural invariants that the factory functions cannot enforce
// locally: consistent predicate arities across the whole tree (embedded event
// preconditions included) and resolvable event ids. Throws FormulaError.
void check_well_formed(const Formula& f);

// All agents mentioned by Know operators and event-model relations.
std::set<std::string> agents_of(const Formula& f);
// All names occurring in the tree, including event pre/pos data.
std::set<std::string> names_of(const Formula& f);
// Predicate symbol -> arity for every predicate occurrence. Throws
// FormulaError on an arity clash.
std::map<std::string, std::size_t> predicates_of(const Formula& f);

}  // namespace delas
