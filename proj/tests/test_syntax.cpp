#include <algorithm>

#include "doctest.h"
#include "random_formula.hpp"
#include "spa/syntax.hpp"

using namespace spa;

namespace {

Term v(const char* n) { return Term::var(n); }
Formula atom(const char* p, std::vector<Term> args = {}) { return Formula::atom(p, std::move(args)); }

const char* kP43 =
    "(forall x y. Q(x,y) <=> (forall z. P(z,x) <=> P(z,y))) ==> (forall x y. Q(x,y) <=> Q(y,x))";

void predicates(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom: out.push_back(f.name()); break;
    case FormulaKind::Not:
    case FormulaKind::Forall:
    case FormulaKind::Exists: predicates(f.lhs(), out); break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
    case FormulaKind::Iff:
      predicates(f.lhs(), out);
      predicates(f.rhs(), out);
      break;
    default: break;
  }
}

std::vector<std::string> predicate_multiset(const Formula& f) {
  std::vector<std::string> out;
  predicates(f, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("pelletier 43 parses with an outermost implication") {
  Formula f = parse_formula(kP43);
  REQUIRE(f.is(FormulaKind::Imp));
  const Formula& hyp = f.lhs();
  REQUIRE(hyp.is(FormulaKind::Forall));
  CHECK(hyp.name() == "x");
  REQUIRE(hyp.body().is(FormulaKind::Forall));
  CHECK(hyp.body().name() == "y");
  const Formula& inner = hyp.body().body();
  REQUIRE(inner.is(FormulaKind::Iff));
  CHECK(inner.lhs() == atom("Q", {v("x"), v("y")}));
  CHECK(inner.rhs().is(FormulaKind::Forall));
  CHECK(f.free_vars().empty());
  CHECK(parse_formula(print_formula(f)) == f);
}

TEST_CASE("precedence and associativity") {
  Formula a = atom("A"), b = atom("B"), p = atom("P"), q = atom("Q");
  Formula f = parse_formula("A ==> B ==> A");
  CHECK(f == Formula::imp(a, Formula::imp(b, a)));
  CHECK(print_formula(f) == "A ==> B ==> A");

  Formula g = parse_formula("~P /\\ Q");
  CHECK(g == Formula::conj(Formula::negation(p), q));
  CHECK(print_formula(g) == "~P /\\ Q");

  CHECK(parse_formula("A /\\ B \\/ P ==> Q <=> A") ==
        Formula::iff(Formula::imp(Formula::disj(Formula::conj(a, b), p), q), a));
  CHECK(parse_formula("(A ==> B) ==> A") == Formula::imp(Formula::imp(a, b), a));
  CHECK(print_formula(Formula::imp(Formula::imp(a, b), a)) == "(A ==> B) ==> A");
  // Quantifier bodies extend as far right as possible.
  CHECK(parse_formula("forall x. P(x) ==> Q") ==
        Formula::forall("x", Formula::imp(atom("P", {v("x")}), q)));
}

TEST_CASE("terms: bare identifiers are variables, constants need parentheses") {
  Formula f = parse_formula("P(x, c(), f(y))");
  REQUIRE(f.args().size() == 3);
  CHECK(f.args()[0].is_var());
  CHECK_FALSE(f.args()[1].is_var());
  CHECK(f.args()[1].args().empty());
  CHECK(f.args()[2] == Term::fn("f", {v("y")}));
  CHECK(parse_formula("x = f(x)") == Formula::equal(v("x"), Term::fn("f", {v("x")})));
  CHECK(parse_formula("true /\\ false") == Formula::conj(Formula::truth(), Formula::falsity()));
}

TEST_CASE("free variables") {
  CHECK(parse_formula("forall x. P(x,y)").free_vars() == VarSet{"y"});
  CHECK(parse_formula("P(x) ==> exists x. P(x)").free_vars() == VarSet{"x"});
  CHECK(parse_formula(kP43).free_vars().empty());
  CHECK(free_vars(parse_formula("f(x) = g(y, z)")) == VarSet{"x", "y", "z"});
  CHECK(all_vars(parse_formula("forall x. P(x,y)")) == VarSet{"x", "y"});
}

TEST_CASE("capture-avoiding substitution") {
  CHECK(subst(parse_formula("P(x)"), "x", v("y")) == parse_formula("P(y)"));
  CHECK(subst(parse_formula("forall y. P(x,y)"), "x", v("y")) == parse_formula("forall y'. P(y,y')"));
  Formula bound = parse_formula("forall x. P(x)");
  CHECK(subst(bound, "x", Term::fn("c", {})) == bound);
  // Renaming avoids every name already in play.
  CHECK(subst(parse_formula("forall y. P(x,y,y')"), "x", v("y")) ==
        parse_formula("forall y''. P(y,y'',y')"));
  // Simultaneous, not sequential.
  TermSubst swap{{"x", v("y")}, {"y", v("x")}};
  CHECK(subst(parse_formula("Q(x,y)"), swap) == parse_formula("Q(y,x)"));
  CHECK(variant("x", {"x", "x'"}) == "x''");
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_formula("P(x) /\\ ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 9);
  }
  try {
    parse_formula("P(x) ==>\n  )");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_formula("forall . P"), ParseError);
  CHECK_THROWS_AS(parse_formula("P(x"), ParseError);
  CHECK_THROWS_AS(parse_formula("P(x) $ Q"), ParseError);
}

TEST_CASE("arity clashes name the symbol") {
  try {
    parse_formula("P(x) /\\ P(x,y)");
    FAIL("expected an arity error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'P'") != std::string::npos);
  }
  try {
    parse_formula("P(f(x)) /\\ Q(f(x,y))");
    FAIL("expected an arity error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'f'") != std::string::npos);
  }
}

TEST_CASE("round trip on 1000 random formulas") {
  testing::FormulaGen gen(20240611);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    Formula f = gen.formula(gen.uniform(0, 6));
    std::string text = print_formula(f);
    Formula back = parse_formula(text);
    if (back != f) {
      ++failures;
      INFO(text);
      CHECK(back == f);
    }
    CHECK(print_formula(back) == text);
  }
  CHECK(failures == 0);
}

TEST_CASE("substitution preserves the predicate multiset") {
  testing::FormulaGen gen(7);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula(gen.uniform(0, 5));
    Term t = gen.term(2);
    const char* var = i % 3 == 0 ? "x" : (i % 3 == 1 ? "y" : "z");
    CHECK(predicate_multiset(subst(f, var, t)) == predicate_multiset(f));
  }
}
