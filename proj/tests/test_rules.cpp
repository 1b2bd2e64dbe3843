#include <functional>

#include "doctest.h"
#include "spa/rules.hpp"

using namespace spa;
using namespace spa::rules;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Theorem K(const char* p, const char* q) { return instantiate_axiom(axiom::AddImp{F(p), F(q)}); }

const char* kP43 =
    "(forall x y. Q(x,y) <=> (forall z. P(z,x) <=> P(z,y))) ==> (forall x y. Q(x,y) <=> Q(y,x))";

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("imp_refl") {
  CHECK(conclusion_of(imp_refl(F("A"))) == F("A ==> A"));
  Formula p43 = F(kP43);
  CHECK(conclusion_of(imp_refl(p43)) == Formula::imp(p43, p43));
  CHECK(conclusion_of(imp_refl(F("false"))) == F("false ==> false"));
}

TEST_CASE("imp_trans") {
  // bc: |- (B ==> A) ==> C ==> (B ==> A)
  Theorem bc = K("B ==> A", "C");
  CHECK(conclusion_of(imp_trans(K("A", "B"), bc)) == F("A ==> C ==> B ==> A"));
  CHECK_THROWS_AS(imp_trans(K("A", "B"), K("A", "B")), RuleError);
  CHECK(error_of([] { imp_trans(K("A", "B"), K("C", "D")); }).find("imp_trans") == 0);
  CHECK_THROWS_AS(imp_trans(instantiate_axiom(axiom::TrueDef{}), bc), RuleError);

  Theorem chain = imp_trans(imp_trans(imp_refl(F("A")), imp_refl(F("A"))), imp_refl(F("A")));
  CHECK(conclusion_of(chain) == F("A ==> A"));
  Theorem three = imp_trans(imp_trans(K("A", "B"), K("B ==> A", "C")), K("C ==> B ==> A", "D"));
  CHECK(conclusion_of(three) == F("A ==> D ==> C ==> B ==> A"));
}

TEST_CASE("right_mp") {
  // p = A, q = B ==> A, r = A
  CHECK(conclusion_of(right_mp(K("A", "B ==> A"), K("A", "B"))) == F("A ==> A"));
  CHECK(conclusion_of(right_mp(K("A", "A"), imp_refl(F("A")))) == F("A ==> A"));

  std::string ambient = error_of([] { right_mp(K("A", "A"), imp_refl(F("B"))); });
  CHECK(ambient.find("right_mp: shape mismatch") == 0);
  CHECK(ambient.find("antecedents differ") != std::string::npos);

  std::string first = error_of([] { right_mp(imp_refl(F("A")), imp_refl(F("A"))); });
  CHECK(first.find("right_mp: shape mismatch: first") == 0);

  std::string second = error_of([] { right_mp(K("A", "A"), instantiate_axiom(axiom::TrueDef{})); });
  CHECK(second.find("right_mp: shape mismatch: second") == 0);

  std::string middle = error_of([] { right_mp(K("A", "B"), imp_refl(F("A"))); });
  CHECK(middle.find("right_mp: shape mismatch: second theorem proves") == 0);
}

TEST_CASE("unshunt and shunt") {
  CHECK(conclusion_of(unshunt(K("A", "B"))) == F("A /\\ B ==> A"));
  CHECK(conclusion_of(unshunt(K("A", "A"))) == F("A /\\ A ==> A"));
  CHECK_THROWS_AS(unshunt(instantiate_axiom(axiom::TrueDef{})), RuleError);
  CHECK_THROWS_AS(unshunt(imp_refl(F("A"))), RuleError);

  Theorem conj = unshunt(K("A", "B"));
  CHECK(conclusion_of(shunt(conj)) == F("A ==> B ==> A"));
  CHECK(conclusion_of(shunt(unshunt(K("C", "D")))) == conclusion_of(K("C", "D")));
  CHECK_THROWS_AS(shunt(imp_refl(F("A"))), RuleError);
  CHECK_THROWS_AS(shunt(instantiate_axiom(axiom::TrueDef{})), RuleError);
}

TEST_CASE("and_pair") {
  CHECK(conclusion_of(and_pair(F("A"), F("B"))) == F("A ==> B ==> A /\\ B"));
  CHECK(conclusion_of(and_pair(F("A"), F("A"))) == F("A ==> A ==> A /\\ A"));
  CHECK(conclusion_of(and_left(F("A"), F("B"))) == F("A /\\ B ==> A"));
  CHECK(conclusion_of(and_right(F("A"), F("B"))) == F("A /\\ B ==> B"));
}

TEST_CASE("conjunction projections") {
  auto two = conj_projections({F("p"), F("q")});
  REQUIRE(two.size() == 2);
  CHECK(conclusion_of(two[0]) == F("p /\\ q ==> p"));
  CHECK(conclusion_of(two[1]) == F("p /\\ q ==> q"));

  auto one = conj_projections({F("p")});
  REQUIRE(one.size() == 1);
  CHECK(conclusion_of(one[0]) == F("p ==> p"));

  auto three = conj_projections({F("a"), F("b"), F("c")});
  REQUIRE(three.size() == 3);
  const char* names[] = {"a", "b", "c"};
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(conclusion_of(three[i]) == Formula::imp(F("a /\\ (b /\\ c)"), F(names[i])));
  CHECK_THROWS_AS(conj_projections({}), RuleError);

  CHECK(conclusion_of(conj_projection({F("a"), F("b"), F("c")}, 1)) == F("a /\\ b /\\ c ==> b"));
  CHECK(conclusion_of(conj_entails({F("a"), F("b"), F("c")}, {F("c"), F("a")})) ==
        F("a /\\ b /\\ c ==> c /\\ a"));
}

TEST_CASE("conjunction introduction under an ambient antecedent") {
  Theorem xa = K("A", "B");           // A ==> B ==> A
  Theorem xb = imp_refl(F("A"));      // A ==> A
  CHECK(conclusion_of(conj_intro(xa, xb)) == F("A ==> (B ==> A) /\\ A"));
}

TEST_CASE("quantifier rules") {
  Theorem th = imp_refl(F("P(x)"));
  CHECK(conclusion_of(gen_right("y", K("Q", "P(y)"))) == F("Q ==> forall y. P(y) ==> Q"));
  CHECK(conclusion_of(ispec(Term::fn("c", {}), F("forall x. P(x)"))) == F("(forall x. P(x)) ==> P(c())"));
  CHECK(conclusion_of(exists_intro_th("x", F("P(x)"), Term::var("y"))) == F("P(y) ==> exists x. P(x)"));
  CHECK(conclusion_of(spec(Term::var("z"), generalize("x", th))) == F("P(z) ==> P(z)"));
  CHECK(conclusion_of(ex_falso(F("A"))) == F("false ==> A"));
  CHECK(conclusion_of(truth()) == F("true"));
}
