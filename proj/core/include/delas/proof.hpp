#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "delas/parser.hpp"
#include "delas/syntax.hpp"

namespace delas {

// Hilbert systems. The base system covers the static language; the 5-suffixed
// variants add T/4/5, the PALAS/DELAS variants add the announcement/update
// reduction schemas.
enum class System { SBELAS, SBELAS5, SPALAS, SPALAS5, SDELAS, SDELAS5 };

std::string to_string(System s);
std::optional<System> system_from_string(const std::string& name);
bool is_s5(System s);

struct ProofError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A designated event inside an event model; the binding value for the E/F
// metavariables of the update schemas.
struct EventRef {
  std::shared_ptr<const EventModel> model;
  std::string event;
};

// Metavariable bindings. Plain strings bind agent, variable, or predicate
// metavariables; the term vector is for SUBP's pointwise sequences.
using BindingValue =
    std::variant<Formula, Term, std::vector<Term>, std::string, EventRef>;
using Bindings = std::map<std::string, BindingValue>;

// Schema names are spelled as in the axiom tables: TAUT, DISTK, ID, SYM,
// TRANS, SUBAS, SUBP, RIGIDP, RIGIDN, KAS, DETAS, DAS, EFAS, SUB2AS, T, 4, 5,
// AATOM, ANEG, ACON, AK, ACOM, AASSI, UATOM, UATOM', UNEG, UCON, UK, UCOM,
// UASSI, UASSI'.
bool is_schema(const std::string& schema);
bool schema_in_system(const std::string& schema, System system);

// Builds the concrete instance of a schema from explicit bindings, checking
// the side conditions (TAUT: Boolean-skeleton truth table, at most 20 distinct
// atoms; SUB2AS: admissibility; AASSI/UASSI/UASSI': freshness of z in the
// whole redex, preconditions included; atom schemas: the operand is atomic;
// UATOM/UCOM/UASSI: postcondition-free event models). Throws ProofError with
// the violated condition.
Formula instantiate_schema(const std::string& schema, const Bindings& bindings);

enum class RuleId { MP, NECK, NECAS };

std::string to_string(RuleId r);
std::optional<RuleId> rule_from_string(const std::string& name);

// MP: [phi, phi -> psi] |- psi (no bindings; the implication shape determines
// psi). NECK: [phi] with binding i |- K_i phi. NECAS: [phi -> psi] with
// bindings x, t and x not free in phi |- phi -> [x:=t]psi.
Formula apply_rule(RuleId rule, const std::vector<Formula>& premises,
                   const Bindings& bindings);

struct ProofLine {
  enum class Kind { Premise, Axiom, Rule };
  Formula formula;
  Kind kind = Kind::Premise;
  std::string name;                   // schema or rule name
  std::vector<std::size_t> premises;  // 1-based references to earlier lines
  Bindings bindings;
};

struct Derivation {
  System system = System::SBELAS;
  std::vector<ProofLine> lines;
  // The conclusion is the last line's formula.
  const Formula& conclusion() const;
};

struct CheckResult {
  bool ok = true;
  std::size_t line = 0;  // 1-based index of the first failing line; 0 when ok
  std::string reason;
};

// Checks every line under the derivation's declared system: premises pass,
// axiom lines must equal their schema instance, rule lines must equal the
// rule's conclusion from strictly earlier lines.
CheckResult check_derivation(const Derivation& d);

// Parses the proof file format (see README): header lines `system NAME` and
// `pred NAME ARITY`, then numbered lines
//   <n>. <formula> ; premise
//   <n>. <formula> ; axiom NAME {mv = value, ...}
//   <n>. <formula> ; rule NAME from <n, ...> {mv = value, ...}
// `#` starts a comment. Event metavariables are written `E = Name @ event`
// and resolve against `events`. Throws ProofError with the offending line.
Derivation parse_derivation(const std::string& text,
                            const EventModelEnv& events = {});

}  // namespace delas
