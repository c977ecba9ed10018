#include "evident/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <set>
#include <utility>
#include <vector>

#include "evident/bext.hpp"

namespace evident {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column,
                       std::string snippet)
    : Error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      snippet_(std::move(snippet)) {}

namespace {

const std::set<std::string, std::less<>> kKeywords = {
    "fact", "rule",     "default", "if",   "then",
    "weight", "contra", "nocontra", "priority", "true", "false"};

struct Token {
  enum class Kind {
    Ident,
    Keyword,
    Number,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Arrow,
    Colon,
    Slash,
    Dot,
    End
  };

  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

const char* kind_name(Token::Kind kind) {
  switch (kind) {
    case Token::Kind::Ident: return "identifier";
    case Token::Kind::Keyword: return "keyword";
    case Token::Kind::Number: return "number";
    case Token::Kind::LParen: return "'('";
    case Token::Kind::RParen: return "')'";
    case Token::Kind::Not: return "'!'";
    case Token::Kind::And: return "'&'";
    case Token::Kind::Or: return "'|'";
    case Token::Kind::Arrow: return "'->'";
    case Token::Kind::Colon: return "':'";
    case Token::Kind::Slash: return "'/'";
    case Token::Kind::Dot: return "'.'";
    case Token::Kind::End: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind kind, std::string value, std::size_t col) {
    tokens.push_back({kind, std::move(value), line, col});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    std::size_t start_col = column;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word = text.substr(i, j - i);
      column += j - i;
      i = j;
      const auto kind = kKeywords.count(word) ? Token::Kind::Keyword : Token::Kind::Ident;
      push(kind, std::move(word), start_col);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && text[j] == '.' && j + 1 < text.size() &&
          std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      std::string num = text.substr(i, j - i);
      column += j - i;
      i = j;
      push(Token::Kind::Number, std::move(num), start_col);
      continue;
    }
    auto single = [&](Token::Kind kind) {
      push(kind, text.substr(i, 1), start_col);
      ++column;
      ++i;
    };
    switch (c) {
      case '(': single(Token::Kind::LParen); continue;
      case ')': single(Token::Kind::RParen); continue;
      case '!': single(Token::Kind::Not); continue;
      case '&': single(Token::Kind::And); continue;
      case '|': single(Token::Kind::Or); continue;
      case ':': single(Token::Kind::Colon); continue;
      case '/': single(Token::Kind::Slash); continue;
      case '.': single(Token::Kind::Dot); continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          push(Token::Kind::Arrow, "->", start_col);
          column += 2;
          i += 2;
          continue;
        }
        throw ParseError("stray '-' (expected '->')", line, column, text.substr(i, 1));
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, column,
                         text.substr(i, 1));
    }
  }
  tokens.push_back({Token::Kind::End, "", line, column});
  return tokens;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  Formula formula_only() {
    Formula f = formula();
    expect(Token::Kind::End, "after the formula");
    return f;
  }

  KnowledgeBase kb() {
    KnowledgeBase out;
    std::set<std::string> names;
    while (peek().kind != Token::Kind::End) {
      const Token& head = peek();
      if (head.kind != Token::Kind::Keyword) {
        fail("expected 'fact', 'rule' or 'default'", head);
      }
      if (head.text == "fact") {
        advance();
        out.facts.push_back(formula());
        expect(Token::Kind::Dot, "after the fact");
      } else if (head.text == "rule") {
        advance();
        RuleDecl rule;
        rule.name = name_token(names);
        expect(Token::Kind::Colon, "after the rule name");
        keyword("if");
        rule.antecedent = formula();
        keyword("then");
        rule.consequent = formula();
        keyword("weight");
        Token wt = peek();
        rule.weight = number("rule weight");
        if (rule.weight < 0.0 || rule.weight > 1.0) {
          fail("weight " + wt.text + " outside [0,1]", wt);
        }
        if (peek().kind == Token::Kind::Keyword &&
            (peek().text == "contra" || peek().text == "nocontra")) {
          rule.form = peek().text == "contra" ? RuleDecl::Form::Material
                                              : RuleDecl::Form::Inference;
          advance();
        }
        if (peek().kind == Token::Kind::Keyword && peek().text == "priority") {
          advance();
          Token num = peek();
          double p = number("priority level");
          if (p != static_cast<double>(static_cast<int>(p)) || p < 0.0) {
            fail("priority must be a non-negative integer", num);
          }
          rule.priority = static_cast<int>(p);
        }
        expect(Token::Kind::Dot, "after the rule");
        out.rules.push_back(std::move(rule));
      } else if (head.text == "default") {
        advance();
        DefaultDecl d;
        d.name = name_token(names);
        expect(Token::Kind::Colon, "after the default name");
        d.prerequisite = formula();
        expect(Token::Kind::Colon, "between prerequisite and justification");
        d.justification = formula();
        expect(Token::Kind::Slash, "between justification and consequent");
        d.consequent = formula();
        expect(Token::Kind::Dot, "after the default");
        out.defaults.push_back(std::move(d));
      } else {
        fail("expected 'fact', 'rule' or 'default'", head);
      }
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message, const Token& at) {
    throw ParseError(message, at.line, at.column,
                     at.kind == Token::Kind::End ? "<end of input>" : at.text);
  }

  const Token& peek() const { return tokens_[pos_]; }

  const Token& advance() { return tokens_[pos_++]; }

  const Token& expect(Token::Kind kind, const char* where) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + kind_name(kind) + " " + where, peek());
    }
    return advance();
  }

  void keyword(const char* word) {
    if (peek().kind != Token::Kind::Keyword || peek().text != word) {
      fail(std::string("expected '") + word + "'", peek());
    }
    advance();
  }

  std::string name_token(std::set<std::string>& names) {
    if (peek().kind != Token::Kind::Ident) fail("expected a name", peek());
    const Token& t = advance();
    if (!names.insert(t.text).second) fail("duplicate name '" + t.text + "'", t);
    return t.text;
  }

  double number(const char* what) {
    if (peek().kind != Token::Kind::Number) {
      fail(std::string("expected a number for the ") + what, peek());
    }
    return std::strtod(advance().text.c_str(), nullptr);
  }

  // formula := or ('->' formula)?
  Formula formula() {
    Formula lhs = disjunction();
    if (peek().kind == Token::Kind::Arrow) {
      advance();
      return Formula::implies(std::move(lhs), formula());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Token::Kind::Or) {
      advance();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Token::Kind::And) {
      advance();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Not:
        advance();
        return Formula::negate(unary());
      case Token::Kind::LParen: {
        advance();
        Formula f = formula();
        expect(Token::Kind::RParen, "to close the parenthesis");
        return f;
      }
      case Token::Kind::Keyword:
        if (t.text == "true") {
          advance();
          return Formula::top();
        }
        if (t.text == "false") {
          advance();
          return Formula::bottom();
        }
        fail("keyword '" + t.text + "' cannot be an atom", t);
      case Token::Kind::Ident: {
        if (t.text.starts_with(kQAtomPrefix)) {
          fail("atom '" + t.text + "' uses the reserved prefix", t);
        }
        advance();
        return Formula::var(t.text);
      }
      default:
        fail("expected a formula", t);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text) { return Parser(text).formula_only(); }

KnowledgeBase parse_kb(const std::string& text) { return Parser(text).kb(); }

}  // namespace evident
