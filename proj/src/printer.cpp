#include "spa/syntax.hpp"

namespace spa {

namespace {

// Binding strength, tightest highest. Quantifiers bind loosest of all.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Imp: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not: return 5;
    case FormulaKind::Forall:
    case FormulaKind::Exists: return 0;
    default: return 6;
  }
}

const char* op_text(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return " <=> ";
    case FormulaKind::Imp: return " ==> ";
    case FormulaKind::Or: return " \\/ ";
    case FormulaKind::And: return " /\\ ";
    default: return "";
  }
}

void print_term_to(const Term& t, std::string& out) {
  out += t.name();
  if (t.is_var()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ',';
    print_term_to(t.args()[i], out);
  }
  out += ')';
}

// `rightmost` is true when nothing follows f in the enclosing text, which is
// the only place a quantifier may appear without parentheses.
void print_to(const Formula& f, bool rightmost, std::string& out);

void print_operand(const Formula& f, bool parens, bool rightmost, std::string& out) {
  if (parens) {
    out += '(';
    print_to(f, true, out);
    out += ')';
  } else {
    print_to(f, rightmost, out);
  }
}

void print_to(const Formula& f, bool rightmost, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::False:
      out += "false";
      return;
    case FormulaKind::True:
      out += "true";
      return;
    case FormulaKind::Atom:
      if (f.is_equality()) {
        print_term_to(f.args()[0], out);
        out += " = ";
        print_term_to(f.args()[1], out);
        return;
      }
      out += f.name();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ',';
          print_term_to(f.args()[i], out);
        }
        out += ')';
      }
      return;
    case FormulaKind::Not: {
      out += '~';
      const Formula& p = f.lhs();
      bool parens = p.is_binary() || (p.is_quantifier() && !rightmost);
      print_operand(p, parens, rightmost, out);
      return;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
    case FormulaKind::Iff: {
      int prec = precedence(f);
      const Formula& l = f.lhs();
      const Formula& r = f.rhs();
      // Right-associative: an equal-strength left operand needs parentheses.
      bool lparens = l.is_quantifier() || (l.is_binary() && precedence(l) <= prec);
      print_operand(l, lparens, false, out);
      out += op_text(f.kind());
      bool rparens = (r.is_binary() && precedence(r) < prec) || (r.is_quantifier() && !rightmost);
      print_operand(r, rparens, rightmost, out);
      return;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (!rightmost) {
        out += '(';
        print_to(f, true, out);
        out += ')';
        return;
      }
      out += f.is(FormulaKind::Forall) ? "forall" : "exists";
      const Formula* cur = &f;
      while (cur->kind() == f.kind()) {
        out += ' ';
        out += cur->name();
        cur = &cur->body();
      }
      out += ". ";
      print_to(*cur, true, out);
      return;
    }
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_term_to(t, out);
  return out;
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_to(f, true, out);
  return out;
}

}  // namespace spa
