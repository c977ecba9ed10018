#pragma once

#include <cstddef>
#include <string>

#include "evident/errors.hpp"
#include "evident/formula.hpp"
#include "evident/kb.hpp"

namespace evident {

/// Syntax or validation failure with a position inside the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             std::string snippet);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& snippet() const { return snippet_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string snippet_;
};

/// Formula grammar, loosest to tightest: `->` (right-assoc), `|`, `&`, `!`,
/// then atoms, `true`, `false` and parentheses. Whitespace-insensitive.
Formula parse_formula(const std::string& text);

/// Line-oriented statements, each ending with `.`; `#` starts a comment:
///   fact <formula>.
///   rule <name>: if <formula> then <formula> weight <decimal>
///        [contra|nocontra] [priority <int>].
///   default <name>: <formula> : <formula> / <formula>.
/// Names share one namespace; weights live in [0,1]; atoms must not carry
/// the reserved marker prefix.
KnowledgeBase parse_kb(const std::string& text);

}  // namespace evident
