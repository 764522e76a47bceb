#include "delas/parser.hpp"

#include <cctype>
#include <vector>

#include "delas/sugar.hpp"

namespace delas {

namespace {

enum class Tok {
  Ident,
  QIdent,  // ?x
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Assign,  // :=
  Tilde,
  Neq,    // !=
  Amp,
  Pipe,
  Arrow,  // ->
  Bang,
  At,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, std::size_t p) {
    out.push_back({k, std::move(t), p});
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      push(Tok::Ident, s.substr(i, j - i), start);
      i = j;
      continue;
    }
    switch (c) {
      case '?': {
        std::size_t j = i + 1;
        while (j < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
          ++j;
        if (j == i + 1) throw ParseError("expected identifier after '?'", start);
        push(Tok::QIdent, s.substr(i + 1, j - i - 1), start);
        i = j;
        break;
      }
      case '(': push(Tok::LParen, "(", start); ++i; break;
      case ')': push(Tok::RParen, ")", start); ++i; break;
      case '[': push(Tok::LBracket, "[", start); ++i; break;
      case ']': push(Tok::RBracket, "]", start); ++i; break;
      case '{': push(Tok::LBrace, "{", start); ++i; break;
      case '}': push(Tok::RBrace, "}", start); ++i; break;
      case ',': push(Tok::Comma, ",", start); ++i; break;
      case '~': push(Tok::Tilde, "~", start); ++i; break;
      case '&': push(Tok::Amp, "&", start); ++i; break;
      case '|': push(Tok::Pipe, "|", start); ++i; break;
      case '@': push(Tok::At, "@", start); ++i; break;
      case ':':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          push(Tok::Assign, ":=", start);
          i += 2;
        } else {
          throw ParseError("expected ':='", start);
        }
        break;
      case '!':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          push(Tok::Neq, "!=", start);
          i += 2;
        } else {
          push(Tok::Bang, "!", start);
          ++i;
        }
        break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          push(Tok::Arrow, "->", start);
          i += 2;
        } else {
          throw ParseError("expected '->'", start);
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool bare_variable_shape(const std::string& id) {
  if (id.empty() || id[0] < 'u' || id[0] > 'z') return false;
  for (std::size_t i = 1; i < id.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  return true;
}

bool reserved_variable(const std::string& id) {
  if (id.size() < 2 || id[0] != 'z') return false;
  for (std::size_t i = 1; i < id.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
  return true;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature& sig, const EventModelEnv& events,
         const ParseOptions& opts)
      : toks_(std::move(toks)), sig_(sig), events_(events), opts_(opts) {}

  Formula parse() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Term term_only() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++i_;
      return true;
    }
    return false;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what + ", got '" + peek().text + "'",
                       peek().pos);
    return next();
  }

  bool is_variable(const std::string& id) const {
    return sig_.variables.count(id) || bare_variable_shape(id);
  }

  void check_reserved(const std::string& id, std::size_t pos) const {
    if (!opts_.allow_reserved && reserved_variable(id))
      throw ParseError("variable '" + id + "' lies in the reserved namespace z0, z1, ...",
                       pos);
  }

  Term term() {
    if (peek().kind == Tok::QIdent) {
      const Token& t = next();
      check_reserved(t.text, t.pos);
      return Term::var(t.text);
    }
    const Token& t = expect(Tok::Ident, "a term");
    if (is_variable(t.text)) {
      check_reserved(t.text, t.pos);
      return Term::var(t.text);
    }
    if (sig_.predicates.count(t.text))
      throw ParseError("predicate symbol '" + t.text + "' used as a term", t.pos);
    return Term::name(t.text);
  }

  Formula formula() {  // '->', right-associative
    Formula l = disjunction();
    if (accept(Tok::Arrow)) return sugar::implies(std::move(l), formula());
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    while (accept(Tok::Pipe)) l = sugar::disj(std::move(l), conjunction());
    return l;
  }

  Formula conjunction() {
    Formula l = unary();
    while (accept(Tok::Amp)) l = Formula::conj(std::move(l), unary());
    return l;
  }

  std::string brace_ident() {
    expect(Tok::LBrace, "'{'");
    std::string id = expect(Tok::Ident, "an identifier").text;
    expect(Tok::RBrace, "'}'");
    return id;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Tilde:
        next();
        return Formula::negation(unary());
      case Tok::Ident:
        if (t.text == "not") {
          next();
          return Formula::negation(unary());
        }
        if (t.text == "K" && toks_[i_ + 1].kind == Tok::LBrace) {
          next();
          std::string agent = brace_ident();
          return Formula::know(agent, unary());
        }
        if (t.text == "Kv" && toks_[i_ + 1].kind == Tok::LBrace) {
          next();
          std::string agent = brace_ident();
          return sugar::kv(agent, term());
        }
        return atom();
      case Tok::LBracket:
        next();
        return binder();
      default:
        return atom();
    }
  }

  Formula binder() {  // '[' consumed
    if (accept(Tok::Bang)) {
      // "[! t]" announces the value of t; "[! phi]" announces phi
      std::size_t save = i_;
      if (peek().kind == Tok::Ident || peek().kind == Tok::QIdent) {
        try {
          Term t = term();
          if (accept(Tok::RBracket)) return sugar::announce_value(t, unary());
        } catch (const ParseError&) {
        }
        i_ = save;
      }
      Formula announced = formula();
      expect(Tok::RBracket, "']'");
      return Formula::announce(std::move(announced), unary());
    }
    const Token& id = expect(Tok::Ident, "a variable or event-model name");
    if (accept(Tok::Assign)) {
      if (!is_variable(id.text))
        throw ParseError("'" + id.text + "' is not a variable", id.pos);
      check_reserved(id.text, id.pos);
      Term t = term();
      expect(Tok::RBracket, "']'");
      return Formula::assign(id.text, std::move(t), unary());
    }
    if (accept(Tok::At)) {
      auto it = events_.find(id.text);
      if (it == events_.end())
        throw ParseError("unknown event model '" + id.text + "'", id.pos);
      const Token& ev = expect(Tok::Ident, "an event id");
      if (!it->second->has_event(ev.text))
        throw ParseError("unknown event '" + ev.text + "' in event model '" +
                             id.text + "'",
                         ev.pos);
      expect(Tok::RBracket, "']'");
      return Formula::update(it->second, ev.text, unary());
    }
    throw ParseError("expected ':=' or '@' inside '[...]'", peek().pos);
  }

  Formula atom() {
    if (accept(Tok::LParen)) {
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    const Token& t = peek();
    if (t.kind == Tok::Ident && sig_.predicates.count(t.text)) {
      next();
      std::size_t arity = sig_.predicates.at(t.text);
      std::vector<Term> args;
      if (accept(Tok::LParen)) {
        if (!accept(Tok::RParen)) {
          args.push_back(term());
          while (accept(Tok::Comma)) args.push_back(term());
          expect(Tok::RParen, "')'");
        }
      }
      if (args.size() != arity)
        throw ParseError("predicate '" + t.text + "' expects " +
                             std::to_string(arity) + " arguments, got " +
                             std::to_string(args.size()),
                         t.pos);
      return Formula::pred(t.text, std::move(args));
    }
    // equality / disequality between terms
    std::size_t pos = peek().pos;
    Term lhs = term();
    if (accept(Tok::Tilde)) return Formula::eq(std::move(lhs), term());
    if (accept(Tok::Neq))
      return Formula::negation(Formula::eq(std::move(lhs), term()));
    throw ParseError("expected '~' or '!=' after term", pos);
  }

  std::vector<Token> toks_;
  const Signature& sig_;
  EventModelEnv events_;
  ParseOptions opts_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig,
                      const EventModelEnv& events, const ParseOptions& opts) {
  Parser p(tokenize(text), sig, events, opts);
  Formula f = p.parse();
  check_well_formed(f);
  return f;
}

Term parse_term(const std::string& text, const Signature& sig,
                const ParseOptions& opts) {
  Parser p(tokenize(text), sig, {}, opts);
  return p.term_only();
}

}  // namespace delas
