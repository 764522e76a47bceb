#pragma once

#include "delas/syntax.hpp"

// Derived operators, expanded to the primitive connectives at construction
// time. The evaluator, translator and proof checker only ever see primitives.
namespace delas::sugar {

Formula disj(Formula a, Formula b);     // ~(~a & ~b)
Formula implies(Formula a, Formula b);  // ~(a & ~b)
Formula iff(Formula a, Formula b);
Formula dual_know(const std::string& agent, Formula f);              // ~K_i~f
Formula dual_assign(const std::string& var, Term t, Formula f);      // ~[x:=t]~f
Formula dual_announce(Formula announced, Formula f);                 // ~[!psi]~f

// Kv_i t: agent i knows the value of t; [z:=t]K_i(z ~ t) with z fresh.
Formula kv(const std::string& agent, const Term& t);

// [!t]body: announcing the value of t; [z:=t][!z ~ t]body with z not free in
// body (guaranteed by freshness).
Formula announce_value(const Term& t, Formula body);

// Conditional knowing-value operators.
Formula kv_cond(const std::string& agent, Formula cond, const Term& c);
Formula kv_func(const std::string& agent, const Term& c, const Term& d);
Formula kv_truth(const std::string& agent, const Term& c, Formula phi);
Formula kv_dep(const std::string& agent, Formula psi, Formula phi);

}  // namespace delas::sugar
