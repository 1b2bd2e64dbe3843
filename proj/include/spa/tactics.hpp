// Goal-stack engine. A GoalState is a list of subgoals plus a composition
// function that rebuilds the parent theorem from one theorem per subgoal.
//
// A theorem discharges a subgoal when its conclusion is C ==> target, with C
// the right-nested conjunction of the assumption formulas, or exactly target
// when there are no assumptions.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spa/prover.hpp"

namespace spa {

class TacticError : public Error {
 public:
  using Error::Error;
};

using Assumption = std::pair<std::string, Formula>;

struct Subgoal {
  std::vector<Assumption> assumptions;
  Formula target;

  std::vector<Formula> formulas() const;
  /// The conclusion a discharging theorem must have.
  Formula obligation() const;
  const Formula* lookup(const std::string& label) const;
};

using Compose = std::function<Theorem(const std::vector<Theorem>&)>;

struct GoalState {
  std::vector<Subgoal> subgoals;
  Compose compose;
  Formula original;
  /// Counter behind the anonymous labels #1, #2, ...
  int anonymous = 0;
};

/// Previously proven lemmas, citable by name in `by` lists.
using LemmaEnv = std::map<std::string, Theorem>;

struct JustificationCall {
  std::vector<std::string> args;
  /// Formula of the immediately preceding step when the step starts with `so`.
  std::optional<Formula> so_fact;
  Formula target;
  const GoalState& state;
  const LemmaEnv& lemmas;
  Budget budget;
};

/// Returns a theorem discharging the first subgoal with its target replaced
/// by `call.target`.
using Justification = std::function<Theorem(const JustificationCall&)>;

class JustificationRegistry {
 public:
  /// Preloaded with "at_once" and "mp".
  JustificationRegistry();
  /// Throws TacticError when `name` is taken.
  void add(const std::string& name, Justification fn);
  /// Adds or replaces, e.g. to wrap a builtin with instrumentation.
  void set(const std::string& name, Justification fn) { table_[name] = std::move(fn); }
  const Justification& lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return table_.count(name) != 0; }

 private:
  std::map<std::string, Justification> table_;
};

JustificationRegistry register_justification(JustificationRegistry reg, const std::string& name, Justification fn);

GoalState set_goal(const Formula& f);

/// Pairs each label with |- C ==> a_i.
std::vector<std::pair<std::string, Theorem>> assumps(const std::vector<Assumption>& asl);

GoalState conj_intro_tac(const GoalState& state);
GoalState assume_tac(const std::string& label, const Formula& p, const GoalState& state);
GoalState fix_tac(const std::string& x, const GoalState& state);
GoalState take_tac(const Term& t, const GoalState& state);

struct Justified {
  Justification just;
  std::vector<std::string> args;
};

/// Proves p under the first subgoal's assumptions and adds it as an assumption.
/// An empty label creates an anonymous one.
GoalState have_tac(const std::string& label, const Formula& p, const Justified& just,
                   const std::optional<Formula>& so_fact, const GoalState& state, const LemmaEnv& lemmas = {},
                   const Budget& budget = {});
/// Proves the first subgoal's target, which must equal p exactly, and removes it.
GoalState show_tac(const Formula& p, const Justified& just, const std::optional<Formula>& so_fact,
                   const GoalState& state, const LemmaEnv& lemmas = {}, const Budget& budget = {});
/// Closes the first subgoal with an already discharging theorem.
GoalState discharge_first(const Theorem& th, const GoalState& state);

/// args = {ab, a}: from |- C ==> (q ==> r) and |- C ==> q derive |- C ==> r, r == p.
Theorem by_mp(const std::vector<std::string>& args, const Formula& p, const GoalState& state);

/// The `at once` justification lifted to the first subgoal's assumptions.
Theorem lift_to_ambient(const Theorem& th, const Subgoal& goal, const std::vector<std::string>& used,
                        const std::optional<Formula>& so_fact, const LemmaEnv& lemmas = {});

Theorem extract_theorem(const GoalState& state);

}  // namespace spa
