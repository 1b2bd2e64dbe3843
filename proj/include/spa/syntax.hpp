// First-order terms and formulas with equality.
//
// Terms and formulas are immutable, hash-consed-lite value types: each node is
// shared through a std::shared_ptr and carries a precomputed structural hash
// and free-variable set, so copies are cheap and equality usually short-cuts.

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax or arity error in formula / script text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::string message, int line, int column);

  int line() const { return line_; }
  int column() const { return column_; }
  /// The message without the "line L, column C: " prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  int line_;
  int column_;
};

using VarSet = std::set<std::string>;

class Term {
 public:
  enum class Kind { Var, Fn };

  static Term var(std::string name);
  static Term fn(std::string name, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == Kind::Var; }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }
  std::size_t hash() const { return node_->hash; }
  const VarSet& free_vars() const { return node_->fvs; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::size_t hash;
    VarSet fvs;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class FormulaKind { False, True, Atom, Not, And, Or, Imp, Iff, Forall, Exists };

class Formula {
 public:
  static Formula falsity();
  static Formula truth();
  static Formula atom(std::string pred, std::vector<Term> args = {});
  static Formula equal(Term lhs, Term rhs);
  static Formula negation(Formula p);
  static Formula conj(Formula p, Formula q);
  static Formula disj(Formula p, Formula q);
  static Formula imp(Formula p, Formula q);
  static Formula iff(Formula p, Formula q);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  FormulaKind kind() const;
  /// Predicate name for atoms, bound variable for quantifiers, empty otherwise.
  const std::string& name() const;
  const std::vector<Term>& args() const;
  /// Left operand of a binary connective; operand of Not; body of a quantifier.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const;

  bool is(FormulaKind k) const;
  bool is_binary() const;
  bool is_quantifier() const;
  bool is_equality() const;

  std::size_t hash() const;
  const VarSet& free_vars() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(FormulaKind k, std::string name, std::vector<Term> args,
                      const Formula* lhs, const Formula* rhs);
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  std::vector<Term> args;
  std::optional<Formula> lhs;
  std::optional<Formula> rhs;
  std::size_t hash;
  VarSet fvs;
};

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const std::vector<Term>& Formula::args() const { return node_->args; }
inline const Formula& Formula::lhs() const { return *node_->lhs; }
inline const Formula& Formula::rhs() const { return *node_->rhs; }
inline const Formula& Formula::body() const { return *node_->lhs; }
inline bool Formula::is(FormulaKind k) const { return node_->kind == k; }
inline bool Formula::is_quantifier() const { return is(FormulaKind::Forall) || is(FormulaKind::Exists); }
inline bool Formula::is_equality() const { return is(FormulaKind::Atom) && name() == "=" && args().size() == 2; }
inline std::size_t Formula::hash() const { return node_->hash; }
inline const VarSet& Formula::free_vars() const { return node_->fvs; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Destructors that throw spa::Error on a shape mismatch.
std::pair<Formula, Formula> dest_imp(const Formula& f);
std::pair<Formula, Formula> dest_iff(const Formula& f);
std::pair<Formula, Formula> dest_and(const Formula& f);
std::pair<Term, Term> dest_eq(const Formula& f);
const Formula& antecedent(const Formula& f);
const Formula& consequent(const Formula& f);

/// Right-nested conjunction f1 /\ (f2 /\ (... /\ fn)). Requires a nonempty list.
Formula conjoin(const std::vector<Formula>& fs);

VarSet free_vars(const Formula& f);
/// Every variable occurring in f, bound or free.
VarSet all_vars(const Formula& f);
bool occurs_in(const std::string& var, const Term& t);

using TermSubst = std::map<std::string, Term>;

Term subst(const Term& t, const TermSubst& s);
/// Simultaneous capture-avoiding substitution. Bound variables are renamed by
/// appending primes only when a substituted term would otherwise be captured.
Formula subst(const Formula& f, const TermSubst& s);
Formula subst(const Formula& f, const std::string& var, const Term& t);

/// Appends primes to `base` until it is not in `avoid`.
std::string variant(std::string base, const VarSet& avoid);

/// Symbol table of a formula: name -> arity, separate for functions and predicates.
struct Signature {
  std::map<std::string, std::size_t> functions;
  std::map<std::string, std::size_t> predicates;
};

/// Collects the signature, throwing ParseError naming the symbol on an arity clash.
/// Equality is not listed among the predicates.
Signature signature_of(const Formula& f);
void add_to_signature(Signature& sig, const Formula& f);

Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);
std::string print_formula(const Formula& f);
std::string print_term(const Term& t);

bool is_identifier(std::string_view s);

}  // namespace spa
