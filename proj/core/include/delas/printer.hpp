#pragma once

#include <string>

#include "delas/syntax.hpp"

namespace delas {

// ASCII rendering of terms and formulas in the concrete grammar accepted by
// the parser. Printing a parsed formula and reparsing it yields the same tree.
std::string to_string(const Term& t);
std::string to_string(const Formula& f);

}  // namespace delas
