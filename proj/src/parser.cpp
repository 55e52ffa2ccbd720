#include "qstar/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace qstar {

ParseError::ParseError(const std::string &message, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  Backslash,
  Dot,
  Bang,
  LAngle,
  RAngle,
  Comma,
  LParen,
  RParen,
  Ident,
  QVar,
  Zero,
  One,
  GateName,
  New,
  Meas,
  If,
  Then,
  Else,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
  int end_line;
  int end_column;
};

bool ident_start(char c) { return std::islower(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const int start_line = line, start_col = col;
    auto push = [&](Tok k, std::string text, std::size_t len) {
      advance(len);
      out.push_back({k, std::move(text), start_line, start_col, line, col});
    };
    switch (c) {
      case '\\': push(Tok::Backslash, "\\", 1); continue;
      case '.': push(Tok::Dot, ".", 1); continue;
      case '!': push(Tok::Bang, "!", 1); continue;
      case '<': push(Tok::LAngle, "<", 1); continue;
      case '>': push(Tok::RAngle, ">", 1); continue;
      case ',': push(Tok::Comma, ",", 1); continue;
      case '(': push(Tok::LParen, "(", 1); continue;
      case ')': push(Tok::RParen, ")", 1); continue;
      default: break;
    }
    if (c == '@') {
      std::size_t j = i + 1;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      if (j == i + 1) throw ParseError("expected quantum variable name after '@'", line, col);
      push(Tok::QVar, std::string(src.substr(i + 1, j - i - 1)), j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
      std::string lit(src.substr(i, j - i));
      if (lit == "0") {
        push(Tok::Zero, lit, 1);
      } else if (lit == "1") {
        push(Tok::One, lit, 1);
      } else {
        throw ParseError("invalid constant '" + lit + "' (only 0 and 1 exist)", line, col);
      }
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::GateName, std::string(src.substr(i, j - i)), j - i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      Tok k = Tok::Ident;
      if (word == "new") k = Tok::New;
      else if (word == "meas") k = Tok::Meas;
      else if (word == "if") k = Tok::If;
      else if (word == "then") k = Tok::Then;
      else if (word == "else") k = Tok::Else;
      push(k, word, j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Tok::End, "", line, col, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Term parse_all() {
    if (peek().kind == Tok::End) throw error("empty input: expected a term");
    Term t = term();
    if (peek().kind != Tok::End) throw error("unexpected '" + peek().text + "' after term");
    return t;
  }

 private:
  const Token &peek() const { return toks_[pos_]; }
  const Token &take() { return toks_[pos_++]; }

  ParseError error(const std::string &msg) const {
    const Token &t = peek();
    return ParseError(msg, t.line, t.column);
  }

  const Token &expect(Tok k, const char *what) {
    if (peek().kind != k) {
      std::string found = peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'";
      throw error(std::string("expected ") + what + ", found " + found);
    }
    return take();
  }

  Span span_from(const Token &start) const {
    const Token &last = toks_[pos_ == 0 ? 0 : pos_ - 1];
    return {start.line, start.column, last.end_line, last.end_column};
  }

  static bool starts_atom(Tok k) {
    switch (k) {
      case Tok::Ident:
      case Tok::QVar:
      case Tok::Zero:
      case Tok::One:
      case Tok::GateName:
      case Tok::Bang:
      case Tok::New:
      case Tok::Meas:
      case Tok::If:
      case Tok::LAngle:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  Term term() {
    if (peek().kind == Tok::Backslash) return lambda();
    const Token &start = peek();
    if (!starts_atom(start.kind)) {
      std::string found = start.kind == Tok::End ? "end of input" : "'" + start.text + "'";
      throw error("expected a term, found " + found);
    }
    Term t = atom();
    while (starts_atom(peek().kind)) {
      Term arg = atom();
      t = Term::app(t, arg).with_span(span_from(start));
    }
    return t;
  }

  Term lambda() {
    const Token &start = take();
    Pattern p = pattern();
    expect(Tok::Dot, "'.' after pattern");
    Term body = term();
    return Term::lambda(std::move(p), body).with_span(span_from(start));
  }

  Pattern pattern() {
    if (peek().kind == Tok::Bang) {
      take();
      return Pattern::bang(expect(Tok::Ident, "variable after '!'").text);
    }
    if (peek().kind == Tok::LAngle) {
      const Token &open = take();
      std::vector<std::string> names;
      names.push_back(expect(Tok::Ident, "variable in tuple pattern").text);
      while (peek().kind == Tok::Comma) {
        take();
        const Token &n = expect(Tok::Ident, "variable in tuple pattern");
        for (const auto &seen : names) {
          if (seen == n.text) throw ParseError("duplicate variable '" + n.text + "' in tuple pattern", n.line, n.column);
        }
        names.push_back(n.text);
      }
      expect(Tok::RAngle, "'>' closing tuple pattern");
      if (names.size() < 2) throw ParseError("tuple pattern needs at least two variables", open.line, open.column);
      return Pattern::tuple(std::move(names));
    }
    return Pattern::var(expect(Tok::Ident, "pattern").text);
  }

  Term atom() {
    const Token &start = peek();
    switch (start.kind) {
      case Tok::Ident:
        take();
        return Term::classical_var(start.text).with_span(span_from(start));
      case Tok::QVar:
        take();
        return Term::quantum_var(start.text).with_span(span_from(start));
      case Tok::Zero:
        take();
        return Term::bool_const(0).with_span(span_from(start));
      case Tok::One:
        take();
        return Term::bool_const(1).with_span(span_from(start));
      case Tok::GateName:
        take();
        return Term::gate(start.text).with_span(span_from(start));
      case Tok::Bang: {
        take();
        Term body = atom();
        return Term::bang(body).with_span(span_from(start));
      }
      case Tok::New: {
        take();
        Term arg = atom();
        return Term::new_(arg).with_span(span_from(start));
      }
      case Tok::Meas: {
        take();
        Term arg = atom();
        return Term::meas(arg).with_span(span_from(start));
      }
      case Tok::If: {
        take();
        Term c = term();
        expect(Tok::Then, "'then'");
        Term a = term();
        expect(Tok::Else, "'else'");
        Term b = term();
        return Term::if_(c, a, b).with_span(span_from(start));
      }
      case Tok::LAngle: {
        take();
        std::vector<Term> items;
        items.push_back(term());
        while (peek().kind == Tok::Comma) {
          take();
          items.push_back(term());
        }
        expect(Tok::RAngle, "'>' closing tuple");
        if (items.size() < 2) throw ParseError("tuple needs at least two components", start.line, start.column);
        return Term::tuple(std::move(items)).with_span(span_from(start));
      }
      case Tok::LParen: {
        take();
        Term t = term();
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        throw error("expected a term, found '" + start.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool is_simple_atom(const Term &t) {
  switch (t.kind()) {
    case TermKind::ClassicalVar:
    case TermKind::QuantumVar:
    case TermKind::BoolConst:
    case TermKind::Gate:
    case TermKind::Tuple:
    case TermKind::Bang:
      return true;
    default:
      return false;
  }
}

void print(const Term &t, std::ostringstream &out);

void print_atom(const Term &t, std::ostringstream &out) {
  if (is_simple_atom(t)) {
    print(t, out);
  } else {
    out << '(';
    print(t, out);
    out << ')';
  }
}

void print_pattern(const Pattern &p, std::ostringstream &out) {
  switch (p.kind) {
    case PatternKind::Var:
      out << p.names[0];
      break;
    case PatternKind::Bang:
      out << '!' << p.names[0];
      break;
    case PatternKind::Tuple:
      out << '<';
      for (std::size_t i = 0; i < p.names.size(); ++i) {
        if (i) out << ", ";
        out << p.names[i];
      }
      out << '>';
      break;
  }
}

void print(const Term &t, std::ostringstream &out) {
  switch (t.kind()) {
    case TermKind::ClassicalVar:
      out << t.name();
      break;
    case TermKind::QuantumVar:
      out << '@' << t.name();
      break;
    case TermKind::BoolConst:
      out << t.bit();
      break;
    case TermKind::Gate:
      out << t.name();
      break;
    case TermKind::Bang:
      out << '!';
      print_atom(t.child(0), out);
      break;
    case TermKind::New:
      out << "new ";
      print_atom(t.child(0), out);
      break;
    case TermKind::Meas:
      out << "meas ";
      print_atom(t.child(0), out);
      break;
    case TermKind::App: {
      const Term &fun = t.child(0);
      if (fun.is(TermKind::App) || is_simple_atom(fun)) {
        print(fun, out);
      } else {
        out << '(';
        print(fun, out);
        out << ')';
      }
      out << ' ';
      print_atom(t.child(1), out);
      break;
    }
    case TermKind::If:
      out << "if ";
      print(t.child(0), out);
      out << " then ";
      print(t.child(1), out);
      out << " else ";
      print(t.child(2), out);
      break;
    case TermKind::Tuple:
      out << '<';
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) out << ", ";
        print(t.child(i), out);
      }
      out << '>';
      break;
    case TermKind::Lambda:
      out << '\\';
      print_pattern(t.pattern(), out);
      out << ". ";
      print(t.child(0), out);
      break;
  }
}

}  // namespace

Term parse_term(std::string_view source) {
  Parser p(tokenize(source));
  return p.parse_all();
}

std::string print_term(const Term &t) {
  std::ostringstream out;
  print(t, out);
  return out.str();
}

}  // namespace qstar
