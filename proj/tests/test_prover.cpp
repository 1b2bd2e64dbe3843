#include <chrono>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "random_formula.hpp"
#include "spa/prover.hpp"
#include "spa/script.hpp"
#include "spa/semantics.hpp"

using namespace spa;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Theorem prove(const char* text, Budget b = {}) { return at_once({}, F(text), b); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* kP34 =
    "((exists x. forall y. P(x) <=> P(y)) <=> ((exists x. Q(x)) <=> (forall y. Q(y)))) <=> "
    "((exists x. forall y. Q(x) <=> Q(y)) <=> ((exists x. P(x)) <=> (forall y. P(y))))";

const char* kBattery[] = {"P() ==> P()", "(A <=> B) ==> (B <=> A)", "P(c()) ==> exists x. P(x)",
                          "(forall x. P(x)) ==> P(c())"};

std::string read_example(const char* name) {
  std::ifstream in(std::string(SPA_EXAMPLES_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("battery formulas are proved quickly and exactly") {
  for (const char* s : kBattery) {
    CAPTURE(s);
    auto t0 = std::chrono::steady_clock::now();
    Theorem th = prove(s);
    CHECK(seconds_since(t0) < 1.0);
    CHECK(th.conclusion() == F(s));
  }
}

TEST_CASE("propositional tautologies") {
  for (const char* s : {"p ==> p", "p \\/ ~p", "(p ==> q) ==> (q ==> r) ==> p ==> r", "~~p <=> p",
                        "(p /\\ q) <=> (q /\\ p)", "((p ==> q) ==> p) ==> p", "true", "~false"}) {
    CAPTURE(s);
    CHECK(prove(s).conclusion() == F(s));
  }
}

TEST_CASE("first-order examples") {
  for (const char* s : {"(exists x. forall y. R(x,y)) ==> forall y. exists x. R(x,y)",
                        "exists x. P(x) ==> forall y. P(y)", "(forall x. P(x) /\\ Q(x)) <=> (forall x. P(x)) /\\ (forall x. Q(x))",
                        "x = x", "(forall x y. Q(x,y) <=> (forall z. P(z,x) <=> P(z,y))) ==> "
                                 "(forall x y. Q(x,y) <=> Q(y,x))"}) {
    CAPTURE(s);
    CHECK(prove(s).conclusion() == F(s));
  }
}

TEST_CASE("facts become the antecedent of the result") {
  Formula fact = F("forall z. P(z,x) <=> P(z,y)");
  Formula target = F("forall z. P(z,y) <=> P(z,x)");
  Theorem th = at_once({fact}, target);
  CHECK(th.conclusion() == Formula::imp(fact, target));

  Formula a = F("A"), ab = F("A ==> B");
  CHECK(at_once({a, ab}, F("B")).conclusion() == F("A /\\ (A ==> B) ==> B"));
  CHECK(at_once({}, F("A ==> A")).conclusion() == F("A ==> A"));
}

TEST_CASE("pelletier 34 exceeds the default budget") {
  auto t0 = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(prove(kP34), BudgetExceeded);
  CHECK(seconds_since(t0) < 10.0);
  CHECK_THROWS_AS(prove("exists x. P(x)", Budget{4, 1000}), BudgetExceeded);
}

TEST_CASE("budget monotonicity on the battery") {
  std::vector<const char*> battery(std::begin(kBattery), std::end(kBattery));
  battery.push_back("(forall z. P(z,x) <=> P(z,y)) ==> (forall z. P(z,y) <=> P(z,x))");
  for (const char* s : battery) {
    CAPTURE(s);
    // Find the smallest working step budget at the default depth, then grow it.
    int steps = 1;
    while (true) {
      try {
        prove(s, Budget{12, steps});
        break;
      } catch (const BudgetExceeded&) {
        steps *= 2;
        REQUIRE(steps <= 100000);
      }
    }
    for (int more : {steps, steps + 1, steps * 2, steps * 10, 100000})
      CHECK(prove(s, Budget{12, more}).conclusion() == F(s));
    for (int depth : {12, 16, 30}) CHECK(prove(s, Budget{depth, steps}).conclusion() == F(s));
  }
}

TEST_CASE("never succeeds on formulas with a small countermodel") {
  testing::FormulaGen gen(2718);
  int tried = 0;
  while (tried < 50) {
    Formula f = gen.formula(gen.uniform(1, 4));
    if (valid_up_to(f, 2)) continue;
    ++tried;
    INFO(print_formula(f));
    CHECK_THROWS_AS(at_once({}, f, Budget{6, 3000}), BudgetExceeded);
  }
}

TEST_CASE("every at once obligation in the shipped scripts takes under a second") {
  JustificationRegistry reg;
  Justification base = reg.lookup("at_once");
  double worst = 0;
  int calls = 0;
  reg.set("at_once", [&](const JustificationCall& call) {
    auto t0 = std::chrono::steady_clock::now();
    Theorem th = base(call);
    worst = std::max(worst, seconds_since(t0));
    ++calls;
    return th;
  });
  for (const char* name : {"pelletier43.spa", "pelletier34.spa"}) {
    CAPTURE(name);
    std::string text = read_example(name);
    REQUIRE_FALSE(text.empty());
    LemmaEnv env;
    Report r = run_script(env, parse_script(text), reg);
    CHECK(r.complete);
  }
  CHECK(calls > 10);
  CHECK(worst < 1.0);
  MESSAGE("at once calls: " << calls << ", slowest " << worst << " s");
}
