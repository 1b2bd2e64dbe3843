#include <cctype>
#include <set>

#include "spa/script.hpp"

namespace spa {

namespace {

struct Token {
  enum class Kind { Ident, String, Punct, End } kind;
  std::string text;
  int line;
  int column;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"lemma", "proof", "qed", "assume", "fix",  "take", "split",
                                       "so",    "have",  "show", "at",    "once", "by"};
  return k;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
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
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Token::Kind::Ident, std::string(text.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"') throw ParseError("unterminated string", line, col);
      out.push_back({Token::Kind::String, std::string(text.substr(i + 1, j - i - 1)), line, col});
      advance(j + 1 - i);
    } else if (c == ':' || c == ',' || c == '(' || c == ')') {
      out.push_back({Token::Kind::Punct, std::string(1, c), line, col});
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ProofScript script() {
    ProofScript s;
    std::set<std::string> names;
    while (peek().kind != Token::Kind::End) {
      const Token& t = peek();
      LemmaAst lemma = parse_lemma();
      if (!names.insert(lemma.name).second) throw ParseError("duplicate lemma name " + lemma.name, t.line, t.column);
      s.lemmas.push_back(std::move(lemma));
    }
    return s;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_kw(const Token& t, const char* kw) const { return t.kind == Token::Kind::Ident && t.text == kw; }
  bool is_punct(const Token& t, const char* p) const { return t.kind == Token::Kind::Punct && t.text == p; }

  [[noreturn]] void fail(const Token& t, const std::string& what) {
    std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected " + what + ", found " + got, t.line, t.column);
  }

  void expect_kw(const char* kw) {
    if (!is_kw(peek(), kw)) fail(peek(), std::string("'") + kw + "'");
    next();
  }
  void expect_punct(const char* p) {
    if (!is_punct(peek(), p)) fail(peek(), std::string("'") + p + "'");
    next();
  }

  std::string name(const char* what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident || keywords().count(t.text)) fail(t, what);
    next();
    return t.text;
  }

  // Quoted formula or term; errors inside the quotes point into the string.
  template <class F>
  auto quoted(F parse, const char* what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::String) fail(t, what);
    next();
    try {
      return parse(t.text);
    } catch (const ParseError& e) {
      throw ParseError(e.detail(), t.line, t.column + e.column());
    }
  }
  Formula formula() {
    return quoted([](const std::string& s) { return parse_formula(s); }, "a quoted formula");
  }

  LemmaAst parse_lemma() {
    const Token& start = peek();
    expect_kw("lemma");
    std::string n = name("a lemma name");
    expect_punct(":");
    Formula statement = formula();
    expect_kw("proof");
    auto steps = parse_steps();
    int qed = peek().line;
    expect_kw("qed");
    return LemmaAst{n, statement, start.line, std::move(steps), qed};
  }

  std::vector<Step> parse_steps() {
    std::vector<Step> steps;
    while (!is_kw(peek(), "qed")) {
      if (peek().kind == Token::Kind::End) fail(peek(), "'qed'");
      steps.push_back(parse_step());
    }
    return steps;
  }

  bool step_start(const Token& t) const {
    static const std::set<std::string> starts{"assume", "fix", "take", "split", "so", "have", "show", "proof", "qed", "lemma"};
    return t.kind == Token::Kind::End || (t.kind == Token::Kind::Ident && starts.count(t.text));
  }

  Step parse_step() {
    const Token& t = peek();
    Step s;
    s.line = t.line;
    s.column = t.column;
    if (is_kw(t, "assume")) {
      next();
      s.kind = Step::Kind::Assume;
      if (peek().kind == Token::Kind::Ident && is_punct(peek(1), ":")) {
        s.label = name("a label");
        next();
      }
      s.formula = formula();
    } else if (is_kw(t, "fix")) {
      next();
      s.kind = Step::Kind::Fix;
      s.vars.push_back(name("a variable"));
      while (peek().kind == Token::Kind::Ident && !keywords().count(peek().text)) s.vars.push_back(next().text);
    } else if (is_kw(t, "take")) {
      next();
      s.kind = Step::Kind::Take;
      s.term = quoted([](const std::string& x) { return parse_term(x); }, "a quoted term");
    } else if (is_kw(t, "split")) {
      next();
      s.kind = Step::Kind::Split;
    } else if (is_kw(t, "proof")) {
      next();
      s.kind = Step::Kind::Subproof;
      s.just.kind = JustSpec::Kind::Nested;
      s.just.proof = parse_steps();
      s.just.qed_line = peek().line;
      expect_kw("qed");
    } else if (is_kw(t, "so") || is_kw(t, "have") || is_kw(t, "show")) {
      if (is_kw(t, "so")) {
        next();
        s.so = true;
      }
      const Token& verb = peek();
      if (is_kw(verb, "have")) {
        next();
        s.kind = Step::Kind::Have;
        if (peek().kind == Token::Kind::Ident && is_punct(peek(1), ":")) {
          s.label = name("a label");
          next();
        }
      } else if (is_kw(verb, "show")) {
        next();
        s.kind = Step::Kind::Show;
      } else {
        fail(verb, "'have' or 'show'");
      }
      s.formula = formula();
      s.just = justification();
    } else {
      fail(t, "a proof step");
    }
    return s;
  }

  JustSpec justification() {
    JustSpec j;
    const Token& t = peek();
    if (is_kw(t, "at")) {
      next();
      expect_kw("once");
    } else if (is_kw(t, "by")) {
      next();
      std::string first = name("a label");
      if (is_punct(peek(), "(")) {
        next();
        j.kind = JustSpec::Kind::Named;
        j.name = first;
        j.labels.push_back(name("a label"));
        while (is_punct(peek(), ",")) {
          next();
          j.labels.push_back(name("a label"));
        }
        expect_punct(")");
      } else {
        j.kind = JustSpec::Kind::By;
        j.labels.push_back(first);
        while (is_punct(peek(), ",")) {
          next();
          j.labels.push_back(name("a label"));
        }
      }
    } else if (is_kw(t, "proof")) {
      next();
      j.kind = JustSpec::Kind::Nested;
      j.proof = parse_steps();
      j.qed_line = peek().line;
      expect_kw("qed");
    } else if (!step_start(t)) {
      fail(t, "a justification or the next step");
    }
    return j;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ProofScript parse_script(std::string_view text) { return Parser(tokenize(text)).script(); }

}  // namespace spa
