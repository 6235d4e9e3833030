// predicate.hpp -- first-order predicates over automatic sequences: AST and
// parser
//
// Grammar (Walnut-flavored):
//   formula  := ('E'|'A') var+ formula | implication
//   implication := disjunction ('=>' implication)?
//   disjunction := conjunction ('|' conjunction)*
//   conjunction := negation ('&' negation)*
//   negation := '~' negation | '(' formula ')' | atom
//   atom     := NAME '[' term ']' '=' '@' digit
//             | term ('='|'<'|'<=') term
//   term     := addend ('+' addend)*
//   addend   := variable | decimal constant
//
// Variables are single lowercase letters; sequence names start with an
// uppercase letter. "Ei" and "E i" both quantify i existentially; "Eij"
// binds both i and j. Quantifiers scope as far right as possible.
#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqf/word.hpp"

namespace sqf {

struct PredicateSyntaxError : std::runtime_error {
  std::size_t position;
  PredicateSyntaxError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

// --- terms ---

struct Term;
using TermPtr = std::unique_ptr<Term>;

struct TermVar {
  char name;
};
struct TermConst {
  std::uint64_t value;
};
struct TermAdd {
  TermPtr lhs, rhs;
};

struct Term {
  std::variant<TermVar, TermConst, TermAdd> node;
};

// --- formulas ---

struct Formula;
using FormulaPtr = std::unique_ptr<Formula>;

struct SeqAtom {
  std::string sequence;
  TermPtr index;
  Letter letter;
};

enum class CompareOp { Eq, Lt, Le };

struct Compare {
  CompareOp op;
  TermPtr lhs, rhs;
};

enum class BoolOp { And, Or, Implies };

struct BoolBin {
  BoolOp op;
  FormulaPtr lhs, rhs;
};

struct Not {
  FormulaPtr child;
};

struct Quantifier {
  bool exists;
  char var;
  FormulaPtr body;
};

struct Formula {
  std::variant<SeqAtom, Compare, BoolBin, Not, Quantifier> node;
};

// --- printing ---

inline void print_term(std::ostream& os, const Term& t) {
  if (auto* v = std::get_if<TermVar>(&t.node)) {
    os << v->name;
  } else if (auto* c = std::get_if<TermConst>(&t.node)) {
    os << c->value;
  } else {
    const auto& a = std::get<TermAdd>(t.node);
    print_term(os, *a.lhs);
    os << '+';
    print_term(os, *a.rhs);
  }
}

inline void print_formula(std::ostream& os, const Formula& f) {
  if (auto* s = std::get_if<SeqAtom>(&f.node)) {
    os << s->sequence << '[';
    print_term(os, *s->index);
    os << "]=@" << int(s->letter);
  } else if (auto* c = std::get_if<Compare>(&f.node)) {
    print_term(os, *c->lhs);
    os << (c->op == CompareOp::Eq ? "=" : c->op == CompareOp::Lt ? "<" : "<=");
    print_term(os, *c->rhs);
  } else if (auto* b = std::get_if<BoolBin>(&f.node)) {
    os << '(';
    print_formula(os, *b->lhs);
    os << (b->op == BoolOp::And ? " & "
                                : b->op == BoolOp::Or ? " | " : " => ");
    print_formula(os, *b->rhs);
    os << ')';
  } else if (auto* n = std::get_if<Not>(&f.node)) {
    os << "~(";
    print_formula(os, *n->child);
    os << ')';
  } else {
    const auto& q = std::get<Quantifier>(f.node);
    os << (q.exists ? 'E' : 'A') << q.var << " (";
    print_formula(os, *q.body);
    os << ')';
  }
}

inline std::string to_string(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f);
  return os.str();
}

// --- variable and name queries ---

namespace detail {

inline void term_vars(const Term& t, std::set<char>& out) {
  if (auto* v = std::get_if<TermVar>(&t.node)) {
    out.insert(v->name);
  } else if (auto* a = std::get_if<TermAdd>(&t.node)) {
    term_vars(*a->lhs, out);
    term_vars(*a->rhs, out);
  }
}

inline void collect_vars(const Formula& f, std::set<char>& free,
                         std::set<char>& bound, std::set<char> scope) {
  if (auto* s = std::get_if<SeqAtom>(&f.node)) {
    std::set<char> vs;
    term_vars(*s->index, vs);
    for (char v : vs) (scope.count(v) ? bound : free).insert(v);
  } else if (auto* c = std::get_if<Compare>(&f.node)) {
    std::set<char> vs;
    term_vars(*c->lhs, vs);
    term_vars(*c->rhs, vs);
    for (char v : vs) (scope.count(v) ? bound : free).insert(v);
  } else if (auto* b = std::get_if<BoolBin>(&f.node)) {
    collect_vars(*b->lhs, free, bound, scope);
    collect_vars(*b->rhs, free, bound, scope);
  } else if (auto* n = std::get_if<Not>(&f.node)) {
    collect_vars(*n->child, free, bound, scope);
  } else {
    const auto& q = std::get<Quantifier>(f.node);
    scope.insert(q.var);
    collect_vars(*q.body, free, bound, scope);
  }
}

}  // namespace detail

inline std::set<char> free_variables(const Formula& f) {
  std::set<char> free, bound;
  detail::collect_vars(f, free, bound, {});
  return free;
}

inline std::set<char> bound_variables(const Formula& f) {
  std::set<char> free, bound;
  detail::collect_vars(f, free, bound, {});
  return bound;
}

inline void collect_sequence_names(const Formula& f,
                                   std::set<std::string>& out) {
  if (auto* s = std::get_if<SeqAtom>(&f.node)) {
    out.insert(s->sequence);
  } else if (auto* b = std::get_if<BoolBin>(&f.node)) {
    collect_sequence_names(*b->lhs, out);
    collect_sequence_names(*b->rhs, out);
  } else if (auto* n = std::get_if<Not>(&f.node)) {
    collect_sequence_names(*n->child, out);
  } else if (auto* q = std::get_if<Quantifier>(&f.node)) {
    collect_sequence_names(*q->body, out);
  }
}

// --- parser ---

namespace detail {

struct Token {
  enum Kind {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Amp,
    Pipe,
    Tilde,
    Implies,
    Plus,
    Eq,
    Lt,
    Le,
    At,
    Number,
    Variable,
    SeqName,
    Quant,
    End
  };
  Kind kind;
  std::size_t pos;
  std::uint64_t number = 0;
  char letter = 0;           // Variable; Quant stores 'E' or 'A' here
  std::string name;          // SeqName; Quant stores attached variables here
};

inline std::vector<Token> lex_predicate(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const auto push = [&](Token::Kind k, std::size_t pos) {
    tokens.push_back(Token{k, pos, 0, 0, {}});
    return &tokens.back();
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (c == '(') { push(Token::LParen, start); ++i; continue; }
    if (c == ')') { push(Token::RParen, start); ++i; continue; }
    if (c == '[') { push(Token::LBracket, start); ++i; continue; }
    if (c == ']') { push(Token::RBracket, start); ++i; continue; }
    if (c == '&') { push(Token::Amp, start); ++i; continue; }
    if (c == '|') { push(Token::Pipe, start); ++i; continue; }
    if (c == '~') { push(Token::Tilde, start); ++i; continue; }
    if (c == '+') { push(Token::Plus, start); ++i; continue; }
    if (c == '@') { push(Token::At, start); ++i; continue; }
    if (c == '=') {
      if (i + 1 < text.size() && text[i + 1] == '>') {
        push(Token::Implies, start);
        i += 2;
      } else {
        push(Token::Eq, start);
        ++i;
      }
      continue;
    }
    if (c == '<') {
      if (i + 1 < text.size() && text[i + 1] == '=') {
        push(Token::Le, start);
        i += 2;
      } else {
        push(Token::Lt, start);
        ++i;
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t value = 0;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        if (value > (std::uint64_t(-1) - 9) / 10)
          throw PredicateSyntaxError("numeric constant too large", start);
        value = value * 10 + std::uint64_t(text[i] - '0');
        ++i;
      }
      push(Token::Number, start)->number = value;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_'))
        word.push_back(text[i++]);
      const bool head_quant = word[0] == 'E' || word[0] == 'A';
      const bool rest_lower =
          std::all_of(word.begin() + 1, word.end(), [](char ch) {
            return std::islower(static_cast<unsigned char>(ch));
          });
      if (head_quant && word.size() == 1) {
        push(Token::Quant, start)->letter = word[0];
      } else if (head_quant && rest_lower) {
        Token* t = push(Token::Quant, start);
        t->letter = word[0];
        t->name = word.substr(1);
      } else if (std::isupper(static_cast<unsigned char>(word[0]))) {
        push(Token::SeqName, start)->name = word;
      } else if (word.size() == 1) {
        push(Token::Variable, start)->letter = word[0];
      } else {
        throw PredicateSyntaxError(
            "variables are single lowercase letters; got \"" + word + "\"",
            start);
      }
      continue;
    }
    throw PredicateSyntaxError("unexpected character '" + std::string(1, c) +
                                   "'",
                               start);
  }
  push(Token::End, text.size());
  return tokens;
}

class PredicateParser {
 public:
  explicit PredicateParser(std::string_view text)
      : tokens_(lex_predicate(text)) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_quantified();
    expect(Token::End, "trailing input after formula");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw PredicateSyntaxError(msg, peek().pos);
  }

  void expect(Token::Kind k, const std::string& msg) {
    if (peek().kind != k) fail(msg);
    ++pos_;
  }

  FormulaPtr parse_quantified() {
    if (peek().kind == Token::Quant) {
      const Token q = take();
      // "Eij" binds the attached letters; a bare "E" binds exactly one
      // following variable ("E i"). Nested quantifiers chain either way.
      std::string vars = q.name;
      if (vars.empty()) {
        if (peek().kind != Token::Variable)
          fail("quantifier needs at least one variable");
        vars.push_back(take().letter);
      }
      FormulaPtr body = parse_quantified();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        auto f = std::make_unique<Formula>();
        f->node = Quantifier{q.letter == 'E', *it, std::move(body)};
        body = std::move(f);
      }
      return body;
    }
    return parse_implication();
  }

  FormulaPtr parse_implication() {
    FormulaPtr lhs = parse_disjunction();
    if (peek().kind == Token::Implies) {
      take();
      FormulaPtr rhs = parse_implication();
      auto f = std::make_unique<Formula>();
      f->node = BoolBin{BoolOp::Implies, std::move(lhs), std::move(rhs)};
      return f;
    }
    return lhs;
  }

  FormulaPtr parse_disjunction() {
    FormulaPtr lhs = parse_conjunction();
    while (peek().kind == Token::Pipe) {
      take();
      FormulaPtr rhs = parse_conjunction();
      auto f = std::make_unique<Formula>();
      f->node = BoolBin{BoolOp::Or, std::move(lhs), std::move(rhs)};
      lhs = std::move(f);
    }
    return lhs;
  }

  FormulaPtr parse_conjunction() {
    FormulaPtr lhs = parse_negation();
    while (peek().kind == Token::Amp) {
      take();
      FormulaPtr rhs = parse_negation();
      auto f = std::make_unique<Formula>();
      f->node = BoolBin{BoolOp::And, std::move(lhs), std::move(rhs)};
      lhs = std::move(f);
    }
    return lhs;
  }

  FormulaPtr parse_negation() {
    if (peek().kind == Token::Tilde) {
      take();
      auto f = std::make_unique<Formula>();
      f->node = Not{parse_negation()};
      return f;
    }
    if (peek().kind == Token::LParen) {
      take();
      FormulaPtr f = parse_quantified();
      expect(Token::RParen, "expected ')'");
      return f;
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    if (peek().kind == Token::SeqName) {
      const Token name = take();
      expect(Token::LBracket, "expected '[' after sequence name");
      TermPtr index = parse_term();
      expect(Token::RBracket, "expected ']'");
      expect(Token::Eq, "expected '=' in sequence atom");
      expect(Token::At, "expected '@' letter in sequence atom");
      if (peek().kind != Token::Number || peek().number > 9)
        fail("expected a single-digit letter after '@'");
      const Letter letter = Letter(take().number);
      auto f = std::make_unique<Formula>();
      f->node = SeqAtom{name.name, std::move(index), letter};
      return f;
    }
    if (peek().kind == Token::Variable || peek().kind == Token::Number) {
      TermPtr lhs = parse_term();
      CompareOp op;
      switch (peek().kind) {
        case Token::Eq: op = CompareOp::Eq; break;
        case Token::Lt: op = CompareOp::Lt; break;
        case Token::Le: op = CompareOp::Le; break;
        default: fail("expected '=', '<' or '<=' after term");
      }
      take();
      TermPtr rhs = parse_term();
      auto f = std::make_unique<Formula>();
      f->node = Compare{op, std::move(lhs), std::move(rhs)};
      return f;
    }
    fail("expected an atom, '(', '~' or a quantifier");
  }

  TermPtr parse_term() {
    TermPtr lhs = parse_addend();
    while (peek().kind == Token::Plus) {
      take();
      TermPtr rhs = parse_addend();
      auto t = std::make_unique<Term>();
      t->node = TermAdd{std::move(lhs), std::move(rhs)};
      lhs = std::move(t);
    }
    return lhs;
  }

  TermPtr parse_addend() {
    if (peek().kind == Token::Variable) {
      auto t = std::make_unique<Term>();
      t->node = TermVar{take().letter};
      return t;
    }
    if (peek().kind == Token::Number) {
      auto t = std::make_unique<Term>();
      t->node = TermConst{take().number};
      return t;
    }
    fail("expected a variable or constant");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// A quantified variable may be bound only once and may not also occur free.
inline void check_bindings(const Formula& f, std::set<char>& quantified) {
  if (auto* b = std::get_if<BoolBin>(&f.node)) {
    check_bindings(*b->lhs, quantified);
    check_bindings(*b->rhs, quantified);
  } else if (auto* n = std::get_if<Not>(&f.node)) {
    check_bindings(*n->child, quantified);
  } else if (auto* q = std::get_if<Quantifier>(&f.node)) {
    if (!quantified.insert(q->var).second)
      throw PredicateSyntaxError(
          std::string("variable '") + q->var + "' is quantified twice", 0);
    check_bindings(*q->body, quantified);
  }
}

}  // namespace detail

/// Parses a predicate; throws PredicateSyntaxError with the input offset on
/// malformed input. Unknown sequence names are deferred to compilation.
inline FormulaPtr parse_predicate(std::string_view text) {
  detail::PredicateParser parser(text);
  FormulaPtr f = parser.parse();
  std::set<char> quantified;
  detail::check_bindings(*f, quantified);
  for (char v : free_variables(*f))
    if (quantified.count(v))
      throw PredicateSyntaxError(
          std::string("variable '") + v + "' occurs both free and bound", 0);
  return f;
}

}  // namespace sqf
