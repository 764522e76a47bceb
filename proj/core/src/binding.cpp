#include "delas/binding.hpp"

#include <algorithm>

namespace delas {

namespace {

void free_vars_rec(const Formula& f, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  auto note = [&](const Term& t) {
    if (t.is_var() && !bound.count(t.id)) out.insert(t.id);
  };
  switch (f.kind()) {
    case FormulaKind::Eq:
      note(f.eq_lhs());
      note(f.eq_rhs());
      break;
    case FormulaKind::Pred:
      for (const auto& t : f.pred_args()) note(t);
      break;
    case FormulaKind::Not:
    case FormulaKind::Know:
      free_vars_rec(f.body(), bound, out);
      break;
    case FormulaKind::And:
      free_vars_rec(f.left(), bound, out);
      free_vars_rec(f.right(), bound, out);
      break;
    case FormulaKind::Assign: {
      note(f.assigned_term());
      const bool was_bound = bound.count(f.assigned_var()) > 0;
      bound.insert(f.assigned_var());
      free_vars_rec(f.body(), bound, out);
      if (!was_bound) bound.erase(f.assigned_var());
      break;
    }
    case FormulaKind::Announce:
      free_vars_rec(f.announced(), bound, out);
      free_vars_rec(f.body(), bound, out);
      break;
    case FormulaKind::Update:
      for (const auto& e : f.event_model().events)
        free_vars_rec(f.event_model().pre_of(e), bound, out);
      free_vars_rec(f.body(), bound, out);
      break;
  }
}

void all_vars_rec(const Formula& f, std::set<std::string>& out) {
  auto note = [&](const Term& t) {
    if (t.is_var()) out.insert(t.id);
  };
  switch (f.kind()) {
    case FormulaKind::Eq:
      note(f.eq_lhs());
      note(f.eq_rhs());
      break;
    case FormulaKind::Pred:
      for (const auto& t : f.pred_args()) note(t);
      break;
    case FormulaKind::Not:
    case FormulaKind::Know:
      all_vars_rec(f.body(), out);
      break;
    case FormulaKind::And:
      all_vars_rec(f.left(), out);
      all_vars_rec(f.right(), out);
      break;
    case FormulaKind::Assign:
      out.insert(f.assigned_var());
      note(f.assigned_term());
      all_vars_rec(f.body(), out);
      break;
    case FormulaKind::Announce:
      all_vars_rec(f.announced(), out);
      all_vars_rec(f.body(), out);
      break;
    case FormulaKind::Update:
      for (const auto& e : f.event_model().events)
        all_vars_rec(f.event_model().pre_of(e), out);
      all_vars_rec(f.body(), out);
      break;
  }
}

// Is there a free occurrence of x in f?
bool occurs_free(const Formula& f, const std::string& x) {
  return free_vars(f).count(x) > 0;
}

bool admissible_rec(const Formula& f, const std::string& x, const std::string& y,
                    bool under_y) {
  auto term_ok = [&](const Term& t) { return !(under_y && t.is_var() && t.id == x); };
  switch (f.kind()) {
    case FormulaKind::Eq:
      return term_ok(f.eq_lhs()) && term_ok(f.eq_rhs());
    case FormulaKind::Pred:
      return std::all_of(f.pred_args().begin(), f.pred_args().end(), term_ok);
    case FormulaKind::Not:
    case FormulaKind::Know:
      return admissible_rec(f.body(), x, y, under_y);
    case FormulaKind::And:
      return admissible_rec(f.left(), x, y, under_y) &&
             admissible_rec(f.right(), x, y, under_y);
    case FormulaKind::Assign: {
      if (!term_ok(f.assigned_term())) return false;
      if (f.assigned_var() == x) return true;  // x bound below
      return admissible_rec(f.body(), x, y, under_y || f.assigned_var() == y);
    }
    case FormulaKind::Announce:
      return admissible_rec(f.announced(), x, y, under_y) &&
             admissible_rec(f.body(), x, y, under_y);
    case FormulaKind::Update: {
      for (const auto& e : f.event_model().events)
        if (!admissible_rec(f.event_model().pre_of(e), x, y, under_y)) return false;
      return admissible_rec(f.body(), x, y, under_y);
    }
  }
  return true;
}

Term subst_term(const Term& t, const std::string& x, const std::string& y) {
  if (t.is_var() && t.id == x) return Term::var(y);
  return t;
}

Formula subst_rec(const Formula& f, const std::string& x, const std::string& y,
                  const std::string& path) {
  auto child_path = [&](int i) {
    return path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
  };
  switch (f.kind()) {
    case FormulaKind::Eq:
      return Formula::eq(subst_term(f.eq_lhs(), x, y), subst_term(f.eq_rhs(), x, y));
    case FormulaKind::Pred: {
      std::vector<Term> args;
      args.reserve(f.pred_args().size());
      for (const auto& t : f.pred_args()) args.push_back(subst_term(t, x, y));
      return Formula::pred(f.pred_symbol(), std::move(args));
    }
    case FormulaKind::Not:
      return Formula::negation(subst_rec(f.body(), x, y, child_path(0)));
    case FormulaKind::And:
      return Formula::conj(subst_rec(f.left(), x, y, child_path(0)),
                           subst_rec(f.right(), x, y, child_path(1)));
    case FormulaKind::Know:
      return Formula::know(f.agent(), subst_rec(f.body(), x, y, child_path(0)));
    case FormulaKind::Assign: {
      Term t = subst_term(f.assigned_term(), x, y);
      if (f.assigned_var() == x)  // x rebound; no free occurrence below
        return Formula::assign(f.assigned_var(), std::move(t), f.body());
      if (f.assigned_var() == y && occurs_free(f.body(), x))
        throw SubstitutionError("substitution [" + y + "/" + x +
                                    "] is not admissible: '" + y +
                                    "' would be captured by the binder at position '" +
                                    path + "'",
                                path);
      return Formula::assign(f.assigned_var(), std::move(t),
                             subst_rec(f.body(), x, y, child_path(0)));
    }
    case FormulaKind::Announce:
      return Formula::announce(subst_rec(f.announced(), x, y, child_path(0)),
                               subst_rec(f.body(), x, y, child_path(1)));
    case FormulaKind::Update: {
      EventModel em = f.event_model();
      for (const auto& e : em.events) {
        Formula p = subst_rec(em.pre_of(e), x, y, path);
        em.pre.erase(e);
        em.pre.emplace(e, std::move(p));
      }
      return Formula::update(std::move(em), f.event(),
                             subst_rec(f.body(), x, y, child_path(0)));
    }
  }
  throw FormulaError("substitute: unreachable");
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  all_vars_rec(f, out);
  return out;
}

bool is_admissible(const Formula& f, const std::string& x, const std::string& y) {
  if (x == y) return true;
  return admissible_rec(f, x, y, false);
}

Formula substitute(const Formula& f, const std::string& x, const std::string& y) {
  if (x == y) return f;
  return subst_rec(f, x, y, "");
}

std::string fresh_var(const std::vector<Formula>& avoid,
                      const std::vector<Term>& avoid_terms) {
  std::set<std::string> used;
  for (const auto& f : avoid) all_vars_rec(f, used);
  for (const auto& t : avoid_terms)
    if (t.is_var()) used.insert(t.id);
  for (std::size_t i = 0;; ++i) {
    std::string cand = "z" + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

Formula reletter(const Formula& f, const std::string& z) {
  if (f.kind() != FormulaKind::Assign)
    throw FormulaError("reletter: formula is not an assignment");
  const std::string& x = f.assigned_var();
  if (z == x) return f;
  std::set<std::string> used = all_vars(f.body());
  if (f.assigned_term().is_var()) used.insert(f.assigned_term().id);
  if (used.count(z))
    throw FormulaError("reletter: '" + z + "' is not fresh in the operand or term");
  return Formula::assign(z, f.assigned_term(), substitute(f.body(), x, z));
}

}  // namespace delas
