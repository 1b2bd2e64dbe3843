#include <cctype>
#include <optional>

#include "spa/syntax.hpp"

namespace spa {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

bool is_keyword(std::string_view s) {
  return s == "forall" || s == "exists" || s == "true" || s == "false";
}

enum class Tok { Ident, LParen, RParen, Comma, Dot, Not, And, Or, Imp, Iff, Eq, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'/\\'";
    case Tok::Or: return "'\\/'";
    case Tok::Imp: return "'==>'";
    case Tok::Iff: return "'<=>'";
    case Tok::Eq: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    int l = line;
    int cl = col;
    auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l, cl});
      advance(j - i);
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", l, cl});
      advance(1);
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", l, cl});
      advance(1);
    } else if (c == ',') {
      out.push_back({Tok::Comma, ",", l, cl});
      advance(1);
    } else if (c == '.') {
      out.push_back({Tok::Dot, ".", l, cl});
      advance(1);
    } else if (c == '~') {
      out.push_back({Tok::Not, "~", l, cl});
      advance(1);
    } else if (starts("/\\")) {
      out.push_back({Tok::And, "/\\", l, cl});
      advance(2);
    } else if (starts("\\/")) {
      out.push_back({Tok::Or, "\\/", l, cl});
      advance(2);
    } else if (starts("==>")) {
      out.push_back({Tok::Imp, "==>", l, cl});
      advance(3);
    } else if (starts("<=>")) {
      out.push_back({Tok::Iff, "<=>", l, cl});
      advance(3);
    } else if (c == '=') {
      out.push_back({Tok::Eq, "=", l, cl});
      advance(1);
    } else {
      std::string shown = (static_cast<unsigned char>(c) >= 0x80) ? "non-ASCII character"
                                                                   : std::string("character '") + c + "'";
      throw ParseError("unexpected " + shown, l, cl);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula formula_to_end() {
    Formula f = iff();
    expect(Tok::End);
    signature_of(f);  // arity consistency
    return f;
  }

  Term term_to_end() {
    Term t = term();
    expect(Tok::End);
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(std::string_view s) const { return at(Tok::Ident) && peek().text == s; }
  Token next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::Ident ? "'" + t.text + "'" : describe(t.kind);
    throw ParseError("expected " + what + ", found " + found, t.line, t.column);
  }

  Token expect(Tok k) {
    if (!at(k)) fail(describe(k));
    return next();
  }

  std::string identifier(const char* what) {
    if (!at(Tok::Ident) || is_keyword(peek().text)) fail(what);
    return next().text;
  }

  Formula iff() {
    Formula l = imp();
    if (at(Tok::Iff)) {
      next();
      return Formula::iff(l, iff());
    }
    return l;
  }
  Formula imp() {
    Formula l = disj();
    if (at(Tok::Imp)) {
      next();
      return Formula::imp(l, imp());
    }
    return l;
  }
  Formula disj() {
    Formula l = conj();
    if (at(Tok::Or)) {
      next();
      return Formula::disj(l, disj());
    }
    return l;
  }
  Formula conj() {
    Formula l = unary();
    if (at(Tok::And)) {
      next();
      return Formula::conj(l, conj());
    }
    return l;
  }

  Formula unary() {
    if (at(Tok::Not)) {
      next();
      return Formula::negation(unary());
    }
    if (at_ident("forall") || at_ident("exists")) {
      bool universal = next().text == "forall";
      std::vector<std::string> vars;
      vars.push_back(identifier("bound variable"));
      while (at(Tok::Ident) && !is_keyword(peek().text)) vars.push_back(next().text);
      expect(Tok::Dot);
      Formula body = iff();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = universal ? Formula::forall(*it, body) : Formula::exists(*it, body);
      return body;
    }
    return atomic();
  }

  Formula atomic() {
    if (at(Tok::LParen)) {
      next();
      Formula f = iff();
      expect(Tok::RParen);
      return f;
    }
    if (at_ident("true")) {
      next();
      return Formula::truth();
    }
    if (at_ident("false")) {
      next();
      return Formula::falsity();
    }
    if (!at(Tok::Ident) || is_keyword(peek().text)) fail("formula");
    std::string name = next().text;
    std::optional<std::vector<Term>> args;
    if (at(Tok::LParen)) args = arguments();
    if (at(Tok::Eq)) {
      next();
      Term lhs = args ? Term::fn(name, *args) : Term::var(name);
      return Formula::equal(lhs, term());
    }
    return Formula::atom(name, args ? *args : std::vector<Term>{});
  }

  std::vector<Term> arguments() {
    expect(Tok::LParen);
    std::vector<Term> args;
    if (at(Tok::RParen)) {
      next();
      return args;
    }
    args.push_back(term());
    while (at(Tok::Comma)) {
      next();
      args.push_back(term());
    }
    expect(Tok::RParen);
    return args;
  }

  Term term() {
    std::string name = identifier("term");
    if (at(Tok::LParen)) return Term::fn(name, arguments());
    return Term::var(name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0]) || is_keyword(s)) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

Formula parse_formula(std::string_view text) { return Parser(text).formula_to_end(); }

Term parse_term(std::string_view text) { return Parser(text).term_to_end(); }

}  // namespace spa
