#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "delas/syntax.hpp"

namespace delas {

// Predicate arities are declared, not inferred; parse-time arity checking.
struct Signature {
  std::map<std::string, std::size_t> predicates;
  // Extra symbols to treat as variables on top of the default shape
  // (a letter in u..z followed by digits) and the explicit "?x" form.
  std::set<std::string> variables;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at offset " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;  // byte offset into the input text
};

struct ParseOptions {
  // The fresh-variable namespace z0, z1, ... is reserved for generated
  // binders; user input may not mention it unless this is set.
  bool allow_reserved = false;
};

using EventModelEnv = std::map<std::string, std::shared_ptr<const EventModel>>;

// Parses the ASCII grammar (see README). Derived operators (|, ->, !=, Kv,
// announcing a term's value) are expanded at parse time; the resulting tree
// contains primitives only. "[E @ e]" resolves E against `events`.
Formula parse_formula(const std::string& text, const Signature& sig,
                      const EventModelEnv& events = {},
                      const ParseOptions& opts = {});

// Parses a single term ("a", "x", "?foo").
Term parse_term(const std::string& text, const Signature& sig,
                const ParseOptions& opts = {});

}  // namespace delas
