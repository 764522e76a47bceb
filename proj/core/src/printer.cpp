#include "delas/printer.hpp"

#include <cctype>

namespace delas {

namespace {

// Bare identifiers that the parser classifies as variables: a letter in u..z
// followed only by digits.
bool bare_variable_shape(const std::string& id) {
  if (id.empty() || id[0] < 'u' || id[0] > 'z') return false;
  for (std::size_t i = 1; i < id.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  return true;
}

void print(const Formula& f, std::string& out);

// Operands of unary operators need parentheses only around conjunctions.
void print_operand(const Formula& f, std::string& out) {
  if (f.kind() == FormulaKind::And) {
    out += '(';
    print(f, out);
    out += ')';
  } else {
    print(f, out);
  }
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      out += to_string(f.eq_lhs());
      out += " ~ ";
      out += to_string(f.eq_rhs());
      break;
    case FormulaKind::Pred: {
      out += f.pred_symbol();
      out += '(';
      bool first = true;
      for (const auto& t : f.pred_args()) {
        if (!first) out += ", ";
        first = false;
        out += to_string(t);
      }
      out += ')';
      break;
    }
    case FormulaKind::Not:
      out += '~';
      print_operand(f.body(), out);
      break;
    case FormulaKind::And:
      // left-associative; only a right operand that is itself a conjunction
      // needs parentheses to keep the tree
      if (f.left().kind() == FormulaKind::And) {
        print(f.left(), out);
      } else {
        print_operand(f.left(), out);
      }
      out += " & ";
      print_operand(f.right(), out);
      break;
    case FormulaKind::Know:
      out += "K{";
      out += f.agent();
      out += "} ";
      print_operand(f.body(), out);
      break;
    case FormulaKind::Assign:
      out += '[';
      out += f.assigned_var();
      out += " := ";
      out += to_string(f.assigned_term());
      out += "] ";
      print_operand(f.body(), out);
      break;
    case FormulaKind::Announce:
      out += "[! ";
      print(f.announced(), out);
      out += "] ";
      print_operand(f.body(), out);
      break;
    case FormulaKind::Update: {
      const auto& label = f.event_model().label;
      out += '[';
      out += label.empty() ? "<event-model>" : label;
      out += " @ ";
      out += f.event();
      out += "] ";
      print_operand(f.body(), out);
      break;
    }
  }
}

}  // namespace

std::string to_string(const Term& t) {
  if (t.is_var() && !bare_variable_shape(t.id)) return "?" + t.id;
  return t.id;
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

}  // namespace delas
