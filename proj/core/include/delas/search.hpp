#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "delas/model.hpp"
#include "delas/proof.hpp"
#include "delas/syntax.hpp"

namespace delas {

struct SearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ModelClass { Arbitrary, Epistemic };

// Caps on the enumeration space. max_worlds/max_domain range over all sizes
// from 1 up; the symbol counts cap the signature that may be enumerated.
struct Bounds {
  std::size_t max_worlds = 2;
  std::size_t max_domain = 2;
  std::size_t agents = 2;
  std::size_t names = 2;
  std::size_t variables = 2;
  ModelClass model_class = ModelClass::Arbitrary;
};

// The concrete symbols an enumeration interprets. Truth of a formula only
// depends on its occurring symbols, so countermodel search enumerates exactly
// signature_of(formula).
struct EnumSignature {
  std::vector<std::string> agents;
  std::vector<std::string> names;
  std::vector<std::string> variables;  // enumerated assignment domain
  std::map<std::string, std::size_t> predicates;
};

// Occurring agents, names, free variables and predicates of f.
EnumSignature signature_of(const Formula& f);

// Exhaustively yields every pointed model over the signature up to the
// bounds, in a deterministic order; every (world, assignment) combination of
// every model is pointed. The callback returns false to stop early. Returns
// the number of pointed models yielded. Throws SearchError when the signature
// exceeds the bounds' symbol caps.
std::uint64_t enumerate_models(
    const Bounds& b, const EnumSignature& sig,
    const std::function<bool(const PointedModel&)>& yield);

// Closed-form size of the full enumeration stream:
//   sum over world count W and domain size D of
//   R(W)^agents * prod_P (2^(D^arity))^W * D^(names*W) * W * D^variables
// with R(W) = 2^(W^2) for the arbitrary class and the number of partitions of
// a W-set for the epistemic class.
std::uint64_t count_models(const Bounds& b, const EnumSignature& sig);

// Uniformly random pointed models, exactly max_worlds worlds and max_domain
// objects each. Deterministic given the rng state.
std::uint64_t sample_models(const Bounds& b, const EnumSignature& sig,
                            std::uint64_t count, std::mt19937_64& rng,
                            const std::function<bool(const PointedModel&)>& yield);

struct Verdict {
  bool valid_within_bounds = true;
  std::optional<PointedModel> countermodel;
};

// Searches the exhaustive stream over signature_of(f) for a refuting pointed
// model. A verdict of valid-within-bounds is NOT a validity proof. A returned
// countermodel is re-verified by eval before being returned.
Verdict find_countermodel(const Formula& f, const Bounds& b);

// ------------------------------------------------------------ random input

struct GenOptions {
  std::size_t max_depth = 4;
  double dynamic_prob = 0.3;      // chance of a dynamic operator per node
  std::size_t max_events = 2;     // events per generated event model
  bool allow_announce = true;
  bool allow_update = true;
  bool allow_pos = false;         // factual changes in generated event models
  EnumSignature sig;              // symbol pools to draw from
};

// Symbol pools small enough for exhaustive checking: one agent, two names,
// two variables, one unary predicate.
GenOptions default_gen_options();

Term random_term(std::mt19937_64& rng, const GenOptions& g);
Formula random_formula(std::mt19937_64& rng, const GenOptions& g);
EventModel random_event_model(std::mt19937_64& rng, const GenOptions& g);

// --------------------------------------------------------------- axiom fuzz

struct FuzzResult {
  std::string schema;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> failure_notes;  // instance and countermodel, printed
};

struct FuzzReport {
  System system = System::SBELAS;
  std::vector<FuzzResult> per_schema;
  bool ok() const;
  std::string summary() const;  // per-schema pass/fail counts
};

// For every schema of the system, generates `per_schema` random
// side-condition-respecting instances and checks each against the exhaustive
// stream within `exhaustive` (epistemic class is forced for T/4/5) and, when
// sampled_count > 0, against that many random models of exactly
// sampled.max_worlds/max_domain size. Failures are collected, not thrown.
FuzzReport fuzz_axioms(System system, std::uint64_t per_schema,
                       const Bounds& exhaustive, std::uint64_t sampled_count,
                       const Bounds& sampled, std::uint64_t seed);

inline FuzzReport fuzz_axioms(System system, std::uint64_t per_schema,
                              const Bounds& exhaustive, std::uint64_t seed) {
  return fuzz_axioms(system, per_schema, exhaustive, 0, exhaustive, seed);
}

}  // namespace delas
