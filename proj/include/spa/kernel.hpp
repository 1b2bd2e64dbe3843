// The trusted core. A Theorem can only be produced by the four operations
// declared here: axiom instantiation, modus ponens, generalization, and
// copying an existing Theorem.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "spa/syntax.hpp"

namespace spa {

/// Raised when a kernel operation is applied outside its preconditions.
class KernelError : public Error {
 public:
  using Error::Error;
};

namespace axiom {

struct AddImp { Formula p, q; };                // p ==> q ==> p
struct DistribImp { Formula p, q, r; };         // (p ==> q ==> r) ==> (p ==> q) ==> (p ==> r)
struct DoubleNeg { Formula p; };                // ((p ==> false) ==> false) ==> p
struct AllImp { std::string x; Formula p, q; }; // (forall x. p ==> q) ==> (forall x. p) ==> (forall x. q)
struct ImpAll { std::string x; Formula p; };    // p ==> forall x. p, x not free in p
struct ExistsEq { std::string x; Term t; };     // exists x. x = t, x not in t
struct EqRefl { Term t; };                      // t = t
struct FunCong { std::string f; std::vector<Term> lhs, rhs; };
struct PredCong { std::string p; std::vector<Term> lhs, rhs; };
struct IffImp1 { Formula p, q; };               // (p <=> q) ==> p ==> q
struct IffImp2 { Formula p, q; };               // (p <=> q) ==> q ==> p
struct ImpIff { Formula p, q; };                // (p ==> q) ==> (q ==> p) ==> (p <=> q)
struct TrueDef {};                              // true <=> (false ==> false)
struct NotDef { Formula p; };                   // ~p <=> (p ==> false)
struct AndDef { Formula p, q; };                // p /\ q <=> ((p ==> q ==> false) ==> false)
struct OrDef { Formula p, q; };                 // p \/ q <=> ~(~p /\ ~q)
struct ExistsDef { std::string x; Formula p; }; // (exists x. p) <=> ~(forall x. ~p)

}  // namespace axiom

using AxiomSchema =
    std::variant<axiom::AddImp, axiom::DistribImp, axiom::DoubleNeg, axiom::AllImp, axiom::ImpAll,
                 axiom::ExistsEq, axiom::EqRefl, axiom::FunCong, axiom::PredCong, axiom::IffImp1,
                 axiom::IffImp2, axiom::ImpIff, axiom::TrueDef, axiom::NotDef, axiom::AndDef,
                 axiom::OrDef, axiom::ExistsDef>;

class Theorem;

Theorem instantiate_axiom(const AxiomSchema& schema);
Theorem modus_ponens(const Theorem& imp, const Theorem& ant);
Theorem generalize(const std::string& x, const Theorem& th);
const Formula& conclusion_of(const Theorem& th);

/// The instance formula of a schema, without producing a Theorem. Throws
/// KernelError when a side condition fails.
Formula axiom_formula(const AxiomSchema& schema);

class Theorem {
 public:
  Theorem(const Theorem&) = default;
  Theorem(Theorem&&) noexcept = default;
  Theorem& operator=(const Theorem&) = default;
  Theorem& operator=(Theorem&&) noexcept = default;

  const Formula& conclusion() const { return concl_; }

 private:
  explicit Theorem(Formula concl);

  friend Theorem instantiate_axiom(const AxiomSchema& schema);
  friend Theorem modus_ponens(const Theorem& imp, const Theorem& ant);
  friend Theorem generalize(const std::string& x, const Theorem& th);

  Formula concl_;
};

/// Audit hook: when set, called with the conclusion of every Theorem the
/// kernel creates. Used by the soundness fuzz; not part of the trusted base.
using TheoremObserver = void (*)(const Formula&);
void set_theorem_observer(TheoremObserver observer);

}  // namespace spa
