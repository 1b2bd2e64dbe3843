// The `at once` prover: free-variable tableau search with unification under
// iterative deepening, followed by replay of the closed tableau through the
// derived rules. The search is untrusted; only the replayed Theorem counts.

#pragma once

#include <optional>
#include <vector>

#include "spa/kernel.hpp"

namespace spa {

struct Budget {
  /// Maximum number of universal instantiations along any one branch.
  int max_branch_depth = 12;
  /// Total expansion steps across all deepening rounds.
  long max_steps = 100000;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// |- target when facts is empty, otherwise |- f1 /\ (f2 /\ ...) ==> target.
Theorem at_once(const std::vector<Formula>& facts, const Formula& target, const Budget& budget = {});

/// |- root ==> false, found by refuting `root`.
Theorem refute(const Formula& root, const Budget& budget = {});

/// A fact fed to the prover: either one of the ambient assumptions (no
/// theorem) or a global lemma carrying its own theorem.
struct Fact {
  Formula formula;
  std::optional<Theorem> theorem;
};

/// Turns |- F ==> p (or |- p when `facts` is empty), with F the right-nested
/// conjunction of the fact formulas, into the theorem that discharges a goal
/// with target p under `ambient`: |- C ==> p for C the conjunction of the
/// ambient formulas, or |- p when `ambient` is empty.
Theorem lift_to_ambient(const Theorem& th, const std::vector<Formula>& ambient, const std::vector<Fact>& facts);

}  // namespace spa
