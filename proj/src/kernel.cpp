#include "spa/kernel.hpp"

#include <atomic>

namespace spa {

namespace {

std::atomic<TheoremObserver> g_observer{nullptr};

Formula imp(Formula a, Formula b) { return Formula::imp(std::move(a), std::move(b)); }

Formula neg_false(Formula a) { return imp(std::move(a), Formula::falsity()); }

std::vector<Formula> equations(const std::vector<Term>& lhs, const std::vector<Term>& rhs, const char* schema) {
  if (lhs.empty() || lhs.size() != rhs.size())
    throw KernelError(std::string(schema) + ": argument lists must be nonempty and of equal length");
  std::vector<Formula> eqs;
  for (std::size_t i = 0; i < lhs.size(); ++i) eqs.push_back(Formula::equal(lhs[i], rhs[i]));
  return eqs;
}

Formula chain(const std::vector<Formula>& premises, Formula concl) {
  for (auto it = premises.rbegin(); it != premises.rend(); ++it) concl = imp(*it, concl);
  return concl;
}

struct SchemaFormula {
  Formula operator()(const axiom::AddImp& a) const { return imp(a.p, imp(a.q, a.p)); }
  Formula operator()(const axiom::DistribImp& a) const {
    return imp(imp(a.p, imp(a.q, a.r)), imp(imp(a.p, a.q), imp(a.p, a.r)));
  }
  Formula operator()(const axiom::DoubleNeg& a) const { return imp(neg_false(neg_false(a.p)), a.p); }
  Formula operator()(const axiom::AllImp& a) const {
    return imp(Formula::forall(a.x, imp(a.p, a.q)),
               imp(Formula::forall(a.x, a.p), Formula::forall(a.x, a.q)));
  }
  Formula operator()(const axiom::ImpAll& a) const {
    if (a.p.free_vars().count(a.x))
      throw KernelError("ImpAll: variable " + a.x + " is free in " + print_formula(a.p));
    return imp(a.p, Formula::forall(a.x, a.p));
  }
  Formula operator()(const axiom::ExistsEq& a) const {
    if (occurs_in(a.x, a.t))
      throw KernelError("ExistsEq: variable " + a.x + " occurs in " + print_term(a.t));
    return Formula::exists(a.x, Formula::equal(Term::var(a.x), a.t));
  }
  Formula operator()(const axiom::EqRefl& a) const { return Formula::equal(a.t, a.t); }
  Formula operator()(const axiom::FunCong& a) const {
    auto eqs = equations(a.lhs, a.rhs, "FunCong");
    return chain(eqs, Formula::equal(Term::fn(a.f, a.lhs), Term::fn(a.f, a.rhs)));
  }
  Formula operator()(const axiom::PredCong& a) const {
    auto eqs = equations(a.lhs, a.rhs, "PredCong");
    return chain(eqs, imp(Formula::atom(a.p, a.lhs), Formula::atom(a.p, a.rhs)));
  }
  Formula operator()(const axiom::IffImp1& a) const { return imp(Formula::iff(a.p, a.q), imp(a.p, a.q)); }
  Formula operator()(const axiom::IffImp2& a) const { return imp(Formula::iff(a.p, a.q), imp(a.q, a.p)); }
  Formula operator()(const axiom::ImpIff& a) const {
    return imp(imp(a.p, a.q), imp(imp(a.q, a.p), Formula::iff(a.p, a.q)));
  }
  Formula operator()(const axiom::TrueDef&) const {
    return Formula::iff(Formula::truth(), neg_false(Formula::falsity()));
  }
  Formula operator()(const axiom::NotDef& a) const {
    return Formula::iff(Formula::negation(a.p), neg_false(a.p));
  }
  Formula operator()(const axiom::AndDef& a) const {
    return Formula::iff(Formula::conj(a.p, a.q), neg_false(imp(a.p, neg_false(a.q))));
  }
  Formula operator()(const axiom::OrDef& a) const {
    return Formula::iff(Formula::disj(a.p, a.q),
                        Formula::negation(Formula::conj(Formula::negation(a.p), Formula::negation(a.q))));
  }
  Formula operator()(const axiom::ExistsDef& a) const {
    return Formula::iff(Formula::exists(a.x, a.p),
                        Formula::negation(Formula::forall(a.x, Formula::negation(a.p))));
  }
};

}  // namespace

Theorem::Theorem(Formula concl) : concl_(std::move(concl)) {
  if (auto obs = g_observer.load(std::memory_order_relaxed)) obs(concl_);
}

Formula axiom_formula(const AxiomSchema& schema) { return std::visit(SchemaFormula{}, schema); }

Theorem instantiate_axiom(const AxiomSchema& schema) { return Theorem(axiom_formula(schema)); }

Theorem modus_ponens(const Theorem& imp_th, const Theorem& ant) {
  const Formula& c = imp_th.conclusion();
  if (!c.is(FormulaKind::Imp))
    throw KernelError("modus_ponens: not an implication: " + print_formula(c));
  if (c.lhs() != ant.conclusion())
    throw KernelError("modus_ponens: antecedent " + print_formula(c.lhs()) + " does not match " +
                      print_formula(ant.conclusion()));
  return Theorem(c.rhs());
}

Theorem generalize(const std::string& x, const Theorem& th) {
  return Theorem(Formula::forall(x, th.conclusion()));
}

const Formula& conclusion_of(const Theorem& th) { return th.conclusion(); }

void set_theorem_observer(TheoremObserver observer) { g_observer.store(observer); }

}  // namespace spa
