#include "delas/syntax.hpp"

#include <algorithm>

namespace delas {

bool EventModel::has_event(const std::string& e) const {
  return std::find(events.begin(), events.end(), e) != events.end();
}

const Formula& EventModel::pre_of(const std::string& e) const {
  auto it = pre.find(e);
  if (it == pre.end()) throw FormulaError("event model has no precondition for event '" + e + "'");
  return it->second;
}

const std::string& EventModel::pos_of(const std::string& name, const std::string& e) const {
  auto it = pos.find(e);
  if (it != pos.end()) {
    auto jt = it->second.find(name);
    if (jt != it->second.end()) return jt->second;
  }
  return name;
}

bool EventModel::has_factual_change() const {
  for (const auto& [e, m] : pos)
    for (const auto& [a, b] : m)
      if (a != b) return true;
  return false;
}

std::vector<std::string> EventModel::successors(const std::string& agent,
                                                const std::string& e) const {
  std::vector<std::string> out;
  auto it = relations.find(agent);
  if (it == relations.end()) return out;
  for (const auto& [from, to] : it->second)
    if (from == e) out.push_back(to);
  return out;
}

bool EventModel::is_epistemic() const {
  for (const auto& [agent, rel] : relations) {
    for (const auto& e : events)
      if (!rel.count({e, e})) return false;
    for (const auto& [a, b] : rel) {
      if (!rel.count({b, a})) return false;
      for (const auto& [c, d] : rel)
        if (b == c && !rel.count({a, d})) return false;
    }
  }
  // agents without a declared relation have the empty relation, which is not
  // reflexive on a non-empty event set
  return true;
}

bool operator==(const EventModel& a, const EventModel& b) {
  return a.events == b.events && a.relations == b.relations && a.pre == b.pre &&
         a.pos == b.pos;
}

struct Formula::Node {
  FormulaKind kind;
  std::string symbol;          // pred symbol / agent / assigned variable
  std::vector<Term> terms;     // Eq: 2 terms; Pred: args; Assign: 1 term
  std::vector<Formula> children;
  std::shared_ptr<const EventModel> model;  // Update only
  std::string event;                        // Update only
};

Formula Formula::eq(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Eq;
  n->terms = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::pred(std::string symbol, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Pred;
  n->symbol = std::move(symbol);
  n->terms = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Not;
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::And;
  n->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::know(std::string agent, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Know;
  n->symbol = std::move(agent);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::assign(std::string var, Term t, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Assign;
  n->symbol = std::move(var);
  n->terms = {std::move(t)};
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::announce(Formula announced, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Announce;
  n->children = {std::move(announced), std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::update(std::shared_ptr<const EventModel> model, std::string event,
                        Formula body) {
  if (!model) throw FormulaError("update: null event model");
  if (!model->has_event(event))
    throw FormulaError("update: event '" + event + "' not in event model");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Update;
  n->model = std::move(model);
  n->event = std::move(event);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::update(EventModel model, std::string event, Formula body) {
  return update(std::make_shared<const EventModel>(std::move(model)),
                std::move(event), std::move(body));
}

FormulaKind Formula::kind() const { return node_->kind; }

bool Formula::is_atomic() const {
  return kind() == FormulaKind::Eq || kind() == FormulaKind::Pred;
}

const Term& Formula::eq_lhs() const { return node_->terms[0]; }
const Term& Formula::eq_rhs() const { return node_->terms[1]; }
const std::string& Formula::pred_symbol() const { return node_->symbol; }
const std::vector<Term>& Formula::pred_args() const { return node_->terms; }

const Formula& Formula::body() const {
  switch (kind()) {
    case FormulaKind::Not:
    case FormulaKind::Know:
    case FormulaKind::Assign:
    case FormulaKind::Update:
      return node_->children[0];
    case FormulaKind::Announce:
      return node_->children[1];
    default:
      throw FormulaError("body(): node has no operand");
  }
}

const Formula& Formula::left() const { return node_->children[0]; }
const Formula& Formula::right() const { return node_->children[1]; }
const std::string& Formula::agent() const { return node_->symbol; }
const std::string& Formula::assigned_var() const { return node_->symbol; }
const Term& Formula::assigned_term() const { return node_->terms[0]; }
const Formula& Formula::announced() const { return node_->children[0]; }
const EventModel& Formula::event_model() const { return *node_->model; }
const std::shared_ptr<const EventModel>& Formula::event_model_ptr() const {
  return node_->model;
}
const std::string& Formula::event() const { return node_->event; }

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  if (node_->model)
    for (const auto& [e, f] : node_->model->pre) n += f.size();
  return n;
}

bool Formula::has_dynamic_operator() const {
  if (is_dynamic()) return true;
  for (const auto& c : node_->children)
    if (c.has_dynamic_operator()) return true;
  return false;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.symbol != y.symbol || x.terms != y.terms ||
      x.event != y.event)
    return false;
  if (x.children.size() != y.children.size()) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!(x.children[i] == y.children[i])) return false;
  if (static_cast<bool>(x.model) != static_cast<bool>(y.model)) return false;
  if (x.model && !(*x.model == *y.model)) return false;
  return true;
}

namespace {

void scan(const Formula& f, std::set<std::string>* agents,
          std::set<std::string>* names,
          std::map<std::string, std::size_t>* preds) {
  auto note_term = [&](const Term& t) {
    if (names && t.is_name()) names->insert(t.id);
  };
  switch (f.kind()) {
    case FormulaKind::Eq:
      note_term(f.eq_lhs());
      note_term(f.eq_rhs());
      break;
    case FormulaKind::Pred: {
      for (const auto& t : f.pred_args()) note_term(t);
      if (preds) {
        auto [it, inserted] = preds->emplace(f.pred_symbol(), f.pred_args().size());
        if (!inserted && it->second != f.pred_args().size())
          throw FormulaError("predicate '" + f.pred_symbol() +
                             "' used with inconsistent arities");
      }
      break;
    }
    case FormulaKind::Not:
      scan(f.body(), agents, names, preds);
      break;
    case FormulaKind::And:
      scan(f.left(), agents, names, preds);
      scan(f.right(), agents, names, preds);
      break;
    case FormulaKind::Know:
      if (agents) agents->insert(f.agent());
      scan(f.body(), agents, names, preds);
      break;
    case FormulaKind::Assign:
      note_term(f.assigned_term());
      scan(f.body(), agents, names, preds);
      break;
    case FormulaKind::Announce:
      scan(f.announced(), agents, names, preds);
      scan(f.body(), agents, names, preds);
      break;
    case FormulaKind::Update: {
      const EventModel& em = f.event_model();
      if (agents)
        for (const auto& [agent, rel] : em.relations) agents->insert(agent);
      for (const auto& e : em.events) scan(em.pre_of(e), agents, names, preds);
      if (names)
        for (const auto& [e, m] : em.pos)
          for (const auto& [a, b] : m) {
            names->insert(a);
            names->insert(b);
          }
      scan(f.body(), agents, names, preds);
      break;
    }
  }
}

void check_rec(const Formula& f, std::map<std::string, std::size_t>& preds) {
  scan(f, nullptr, nullptr, &preds);  // throws on arity clash
  // event-id membership is enforced by the Update factory; nothing else to do
}

}  // namespace

void check_well_formed(const Formula& f) {
  std::map<std::string, std::size_t> preds;
  check_rec(f, preds);
}

std::set<std::string> agents_of(const Formula& f) {
  std::set<std::string> out;
  scan(f, &out, nullptr, nullptr);
  return out;
}

std::set<std::string> names_of(const Formula& f) {
  std::set<std::string> out;
  scan(f, nullptr, &out, nullptr);
  return out;
}

std::map<std::string, std::size_t> predicates_of(const Formula& f) {
  std::map<std::string, std::size_t> out;
  scan(f, nullptr, nullptr, &out);
  return out;
}

}  // namespace delas
