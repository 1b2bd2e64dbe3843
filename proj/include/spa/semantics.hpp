// Finite-model semantics: evaluation of formulas in interpretations over the
// domain {0, ..., n-1}, exhaustive small-model validity checking and
// seeded random interpretations for soundness fuzzing.
//
// Finite validity is a falsification oracle only. A formula that holds in
// every model up to size 3 need not be valid.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spa/syntax.hpp"

namespace spa {

class SemanticsError : public Error {
 public:
  using Error::Error;
};

using Symbol = std::pair<std::string, std::size_t>;  // (name, arity)

struct Interpretation {
  int domain_size = 1;
  /// Row-major tables over domain^arity; argument 0 is the most significant digit.
  std::map<Symbol, std::vector<int>> functions;
  std::map<Symbol, std::vector<bool>> predicates;

  int apply(const std::string& f, const std::vector<int>& args) const;
  bool test(const std::string& p, const std::vector<int>& args) const;
};

/// Variables not mapped evaluate to element 0.
using Valuation = std::map<std::string, int>;

int eval_term(const Interpretation& m, const Valuation& v, const Term& t);
bool holds(const Interpretation& m, const Valuation& v, const Formula& f);

/// True when f holds in its universal closure, i.e. under every valuation of
/// its free variables.
bool holds_closed(const Interpretation& m, const Formula& f);

struct Countermodel {
  Interpretation model;
  Valuation valuation;
};

/// Exhaustive search over every interpretation of every domain size up to
/// max_size. Throws SemanticsError when the enumeration exceeds `budget`
/// interpretations.
std::optional<Countermodel> find_countermodel(const Formula& f, int max_size,
                                              std::uint64_t budget = 20'000'000);
bool valid_up_to(const Formula& f, int max_size, std::uint64_t budget = 20'000'000);

std::vector<Symbol> function_symbols(const Formula& f);
std::vector<Symbol> predicate_symbols(const Formula& f);

Interpretation random_interpretation(std::uint64_t seed, int size, const std::vector<Symbol>& functions,
                                     const std::vector<Symbol>& predicates);

std::string describe(const Countermodel& cm);

/// Evaluates a fixed batch of formulas, sharing work between common
/// subformulas. Each distinct subformula gets one truth table over the
/// assignments to its own free variables, filled children first. Cost per
/// interpretation is linear in the sum of those table sizes, so thousands of
/// theorems that repeat one large context stay cheap.
class SharedEvaluator {
 public:
  explicit SharedEvaluator(const std::vector<Formula>& formulas);

  /// result[i] == holds_closed(m, formulas[i]). `m` must interpret every symbol
  /// returned by functions() and predicates().
  std::vector<bool> holds_closed(const Interpretation& m) const;

  const std::vector<Symbol>& functions() const { return functions_; }
  const std::vector<Symbol>& predicates() const { return predicates_; }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct TermCode {
    int symbol;  // index into functions_, or -1 for a variable
    int var;     // position in the owning node's free variables
    int first;   // first argument in term_args_
    int count;
  };
  struct NodeCode {
    FormulaKind kind;
    int symbol = -1;  // predicate index; -1 for equality
    std::vector<int> terms;  // atom arguments, indices into terms_
    int child[2] = {-1, -1};
    // For each child free variable, the parent position supplying it, or -1
    // for the variable bound here.
    std::vector<int> map[2];
    int arity = 0;  // number of free variables
  };

  struct Builder;

  std::vector<Symbol> functions_;
  std::vector<Symbol> predicates_;
  std::vector<TermCode> terms_;
  std::vector<int> term_args_;
  std::vector<NodeCode> nodes_;
  std::vector<int> roots_;
};

}  // namespace spa
