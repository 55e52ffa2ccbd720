#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "qstar/term.hpp"

namespace qstar {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }
  /// Message without the position prefix.
  const std::string &detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
  int column_;
};

/// Parses the surface syntax:
///
///   term    := "\" pattern "." term | atom+
///   pattern := ident | "!" ident | "<" ident ("," ident)+ ">"
///   atom    := ident | "@" ident | "0" | "1" | GATE | "!" atom
///            | "new" atom | "meas" atom | "if" term "then" term "else" term
///            | "<" term ("," term)+ ">" | "(" term ")"
///
/// Application is left-associative, `\p.` extends as far right as possible
/// and `--` starts a comment running to the end of the line.
Term parse_term(std::string_view source);

/// Canonical text form; parse_term(print_term(t)) == t.
std::string print_term(const Term &t);

}  // namespace qstar
