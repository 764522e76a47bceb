#include "delas/sugar.hpp"

#include "delas/binding.hpp"

namespace delas::sugar {

Formula disj(Formula a, Formula b) {
  return Formula::negation(
      Formula::conj(Formula::negation(std::move(a)), Formula::negation(std::move(b))));
}

Formula implies(Formula a, Formula b) {
  return Formula::negation(Formula::conj(std::move(a), Formula::negation(std::move(b))));
}

Formula iff(Formula a, Formula b) {
  // Sequenced explicitly: as sibling arguments the copies could read the
  // moved-from handles (argument evaluation order is unspecified).
  Formula forward = implies(a, b);
  return Formula::conj(std::move(forward), implies(std::move(b), std::move(a)));
}

Formula dual_know(const std::string& agent, Formula f) {
  return Formula::negation(Formula::know(agent, Formula::negation(std::move(f))));
}

Formula dual_assign(const std::string& var, Term t, Formula f) {
  return Formula::negation(
      Formula::assign(var, std::move(t), Formula::negation(std::move(f))));
}

Formula dual_announce(Formula announced, Formula f) {
  return Formula::negation(
      Formula::announce(std::move(announced), Formula::negation(std::move(f))));
}

Formula kv(const std::string& agent, const Term& t) {
  std::string z = fresh_var({}, {t});
  return Formula::assign(z, t, Formula::know(agent, Formula::eq(Term::var(z), t)));
}

Formula announce_value(const Term& t, Formula body) {
  std::string z = fresh_var({body}, {t});
  return Formula::assign(
      z, t, Formula::announce(Formula::eq(Term::var(z), t), std::move(body)));
}

Formula kv_cond(const std::string& agent, Formula cond, const Term& c) {
  return Formula::know(agent, Formula::announce(std::move(cond), kv(agent, c)));
}

Formula kv_func(const std::string& agent, const Term& c, const Term& d) {
  return Formula::know(agent, announce_value(c, kv(agent, d)));
}

Formula kv_truth(const std::string& agent, const Term& c, Formula phi) {
  Formula know_it = Formula::know(agent, phi);
  Formula either = disj(std::move(know_it),
                        Formula::know(agent, Formula::negation(std::move(phi))));
  return Formula::know(agent, announce_value(c, std::move(either)));
}

Formula kv_dep(const std::string& agent, Formula psi, Formula phi) {
  auto settles = [&](Formula cond) {
    return Formula::announce(std::move(cond),
                             disj(Formula::know(agent, phi),
                                  Formula::know(agent, Formula::negation(phi))));
  };
  Formula on_true = settles(psi);
  return Formula::know(
      agent,
      Formula::conj(std::move(on_true), settles(Formula::negation(std::move(psi)))));
}

}  // namespace delas::sugar
