#include "spa/rules.hpp"

#include <algorithm>
#include <optional>

namespace spa::rules {

namespace {

Formula imp(const Formula& a, const Formula& b) { return Formula::imp(a, b); }
Formula falsity() { return Formula::falsity(); }
Formula neg_false(const Formula& a) { return imp(a, falsity()); }

Theorem ax(AxiomSchema s) { return instantiate_axiom(s); }

const Formula& concl(const Theorem& th) { return conclusion_of(th); }

std::pair<Formula, Formula> imp_parts(const Theorem& th, const char* rule) {
  const Formula& c = concl(th);
  if (!c.is(FormulaKind::Imp)) throw RuleError(std::string(rule) + ": not an implication: " + print_formula(c));
  return {c.lhs(), c.rhs()};
}

}  // namespace

// ---------------------------------------------------------------------------
// Propositional

Theorem imp_refl(const Formula& p) {
  Theorem th1 = ax(axiom::DistribImp{p, imp(p, p), p});
  Theorem th2 = modus_ponens(th1, ax(axiom::AddImp{p, imp(p, p)}));
  return modus_ponens(th2, ax(axiom::AddImp{p, p}));
}

Theorem add_assum(const Formula& p, const Theorem& th) {
  return modus_ponens(ax(axiom::AddImp{concl(th), p}), th);
}

Theorem imp_add_assum(const Formula& p, const Theorem& th) {
  auto [q, r] = imp_parts(th, "imp_add_assum");
  return modus_ponens(ax(axiom::DistribImp{p, q, r}), add_assum(p, th));
}

Theorem imp_trans(const Theorem& pq, const Theorem& qr) {
  auto [p, q] = imp_parts(pq, "imp_trans");
  auto [q2, r] = imp_parts(qr, "imp_trans");
  if (q != q2)
    throw RuleError("imp_trans: middle formulas differ: " + print_formula(q) + " vs " + print_formula(q2));
  return modus_ponens(imp_add_assum(p, qr), pq);
}

Theorem imp_insert(const Formula& q, const Theorem& th) {
  auto [p, r] = imp_parts(th, "imp_insert");
  return imp_trans(th, ax(axiom::AddImp{r, q}));
}

Theorem imp_swap(const Theorem& th) {
  const Formula& c = concl(th);
  if (!c.is(FormulaKind::Imp) || !c.rhs().is(FormulaKind::Imp))
    throw RuleError("imp_swap: wrong kind of theorem: " + print_formula(c));
  const Formula& p = c.lhs();
  const Formula& q = c.rhs().lhs();
  const Formula& r = c.rhs().rhs();
  return imp_trans(ax(axiom::AddImp{q, p}), modus_ponens(ax(axiom::DistribImp{p, q, r}), th));
}

Theorem imp_trans_th(const Formula& p, const Formula& q, const Formula& r) {
  return imp_trans(ax(axiom::AddImp{imp(q, r), p}), ax(axiom::DistribImp{p, q, r}));
}

Theorem imp_add_concl(const Formula& r, const Theorem& th) {
  auto [p, q] = imp_parts(th, "imp_add_concl");
  return modus_ponens(imp_swap(imp_trans_th(p, q, r)), th);
}

Theorem imp_swap_th(const Formula& p, const Formula& q, const Formula& r) {
  return imp_trans(ax(axiom::DistribImp{p, q, r}), imp_add_concl(imp(p, r), ax(axiom::AddImp{q, p})));
}

Theorem imp_unduplicate(const Theorem& th) {
  const Formula& c = concl(th);
  if (!c.is(FormulaKind::Imp) || !c.rhs().is(FormulaKind::Imp) || c.rhs().lhs() != c.lhs())
    throw RuleError("imp_unduplicate: wrong kind of theorem: " + print_formula(c));
  const Formula& p = c.lhs();
  const Formula& q = c.rhs().rhs();
  return modus_ponens(modus_ponens(ax(axiom::DistribImp{p, p, q}), th), imp_refl(p));
}

Theorem right_mp(const Theorem& pqr, const Theorem& pq) {
  const Formula& a = concl(pqr);
  const Formula& b = concl(pq);
  if (!a.is(FormulaKind::Imp) || !a.rhs().is(FormulaKind::Imp))
    throw RuleError("right_mp: shape mismatch: first theorem is not p ==> q ==> r: " + print_formula(a));
  if (!b.is(FormulaKind::Imp))
    throw RuleError("right_mp: shape mismatch: second theorem is not p ==> q: " + print_formula(b));
  if (a.lhs() != b.lhs())
    throw RuleError("right_mp: shape mismatch: ambient antecedents differ: " + print_formula(a.lhs()) + " vs " +
                    print_formula(b.lhs()));
  if (a.rhs().lhs() != b.rhs())
    throw RuleError("right_mp: shape mismatch: second theorem proves " + print_formula(b.rhs()) + ", first needs " +
                    print_formula(a.rhs().lhs()));
  return imp_unduplicate(imp_trans(pq, imp_swap(pqr)));
}

Theorem imp_trans2(const Theorem& pqr, const Theorem& rs) {
  const Formula& c = concl(pqr);
  if (!c.is(FormulaKind::Imp) || !c.rhs().is(FormulaKind::Imp))
    throw RuleError("imp_trans2: wrong kind of theorem: " + print_formula(c));
  const Formula& p = c.lhs();
  const Formula& q = c.rhs().lhs();
  const Formula& r = c.rhs().rhs();
  auto [r2, s] = imp_parts(rs, "imp_trans2");
  if (r != r2) throw RuleError("imp_trans2: middle formulas differ");
  Theorem th = imp_add_assum(p, modus_ponens(imp_trans_th(q, r, s), rs));
  return modus_ponens(th, pqr);
}

Theorem imp_trans_chain(const std::vector<Theorem>& ths, const Theorem& th) {
  if (ths.empty()) throw RuleError("imp_trans_chain: no premises");
  Theorem acc = imp_trans(ths.front(), th);
  for (std::size_t i = 1; i < ths.size(); ++i) acc = imp_unduplicate(imp_trans(ths[i], imp_swap(acc)));
  return acc;
}

Theorem imp_mono_th(const Formula& p, const Formula& p2, const Formula& q, const Formula& q2) {
  Theorem th1 = imp_trans_th(imp(p, q), imp(p2, q), imp(p2, q2));
  Theorem th2 = imp_trans_th(p2, q, q2);
  Theorem th3 = imp_swap(imp_trans_th(p2, p, q));
  return imp_trans(th3, imp_swap(imp_trans(th2, th1)));
}

Theorem iff_imp1(const Theorem& th) {
  auto [p, q] = dest_iff(concl(th));
  return modus_ponens(ax(axiom::IffImp1{p, q}), th);
}

Theorem iff_imp2(const Theorem& th) {
  auto [p, q] = dest_iff(concl(th));
  return modus_ponens(ax(axiom::IffImp2{p, q}), th);
}

Theorem imp_antisym(const Theorem& pq, const Theorem& qp) {
  auto [p, q] = imp_parts(pq, "imp_antisym");
  return modus_ponens(modus_ponens(ax(axiom::ImpIff{p, q}), pq), qp);
}

Theorem right_doubleneg(const Theorem& th) {
  const Formula& c = concl(th);
  if (c.is(FormulaKind::Imp)) {
    const Formula& r = c.rhs();
    if (r.is(FormulaKind::Imp) && r.rhs().is(FormulaKind::False) && r.lhs().is(FormulaKind::Imp) &&
        r.lhs().rhs().is(FormulaKind::False)) {
      return imp_trans(th, ax(axiom::DoubleNeg{r.lhs().lhs()}));
    }
  }
  throw RuleError("right_doubleneg: wrong kind of theorem: " + print_formula(c));
}

Theorem ex_falso(const Formula& p) { return right_doubleneg(ax(axiom::AddImp{falsity(), neg_false(p)})); }

Theorem truth() { return modus_ponens(iff_imp2(ax(axiom::TrueDef{})), imp_refl(falsity())); }

Theorem and_left(const Formula& p, const Formula& q) {
  Theorem th1 = imp_add_assum(p, ax(axiom::AddImp{falsity(), q}));
  Theorem th2 = right_doubleneg(imp_add_concl(falsity(), th1));
  return imp_trans(iff_imp1(ax(axiom::AndDef{p, q})), th2);
}

Theorem and_right(const Formula& p, const Formula& q) {
  Theorem th1 = ax(axiom::AddImp{neg_false(q), p});
  Theorem th2 = right_doubleneg(imp_add_concl(falsity(), th1));
  return imp_trans(iff_imp1(ax(axiom::AndDef{p, q})), th2);
}

Theorem and_pair(const Formula& p, const Formula& q) {
  Formula pqf = imp(p, neg_false(q));
  Theorem th1 = iff_imp2(ax(axiom::AndDef{p, q}));
  Theorem th2 = imp_swap_th(pqf, q, falsity());
  Theorem th3 = imp_add_assum(p, imp_trans2(th2, th1));
  return modus_ponens(th3, imp_swap(imp_refl(pqf)));
}

Theorem shunt(const Theorem& th) {
  auto [pq, r] = imp_parts(th, "shunt");
  if (!pq.is(FormulaKind::And)) throw RuleError("shunt: antecedent is not a conjunction: " + print_formula(pq));
  const Formula& p = pq.lhs();
  const Formula& q = pq.rhs();
  return modus_ponens(imp_add_assum(p, imp_add_assum(q, th)), and_pair(p, q));
}

Theorem unshunt(const Theorem& th) {
  const Formula& c = concl(th);
  if (!c.is(FormulaKind::Imp) || !c.rhs().is(FormulaKind::Imp))
    throw RuleError("unshunt: expected p ==> q ==> r, got " + print_formula(c));
  const Formula& p = c.lhs();
  const Formula& q = c.rhs().lhs();
  return imp_trans_chain({and_left(p, q), and_right(p, q)}, th);
}

Theorem iff_def(const Formula& p, const Formula& q) {
  Theorem th1 = and_pair(imp(p, q), imp(q, p));
  Theorem th2 = imp_trans_chain({ax(axiom::IffImp1{p, q}), ax(axiom::IffImp2{p, q})}, th1);
  return imp_antisym(th2, unshunt(ax(axiom::ImpIff{p, q})));
}

Theorem expand_connective(const Formula& fm) {
  switch (fm.kind()) {
    case FormulaKind::True: return ax(axiom::TrueDef{});
    case FormulaKind::Not: return ax(axiom::NotDef{fm.lhs()});
    case FormulaKind::And: return ax(axiom::AndDef{fm.lhs(), fm.rhs()});
    case FormulaKind::Or: return ax(axiom::OrDef{fm.lhs(), fm.rhs()});
    case FormulaKind::Iff: return iff_def(fm.lhs(), fm.rhs());
    case FormulaKind::Exists: return ax(axiom::ExistsDef{fm.name(), fm.body()});
    default: throw RuleError("expand_connective: nothing to expand in " + print_formula(fm));
  }
}

Theorem eliminate_connective(const Formula& fm) {
  if (fm.is(FormulaKind::Imp) && fm.rhs().is(FormulaKind::False))
    return imp_add_concl(falsity(), iff_imp2(expand_connective(fm.lhs())));
  return iff_imp1(expand_connective(fm));
}

Theorem conj_intro(const Theorem& xa, const Theorem& xb) {
  auto [x, a] = imp_parts(xa, "conj_intro");
  auto [x2, b] = imp_parts(xb, "conj_intro");
  return right_mp(imp_trans(xa, and_pair(a, b)), xb);
}

Theorem conj_projection(const std::vector<Formula>& fs, std::size_t index) {
  if (index >= fs.size()) throw RuleError("conj_projection: index out of range");
  if (fs.size() == 1) return imp_refl(fs[0]);
  // Walk down the right spine: C_i = f_i /\ C_{i+1}.
  std::vector<std::optional<Formula>> tails(fs.size());
  tails.back() = fs.back();
  for (std::size_t i = fs.size() - 1; i-- > 0;) tails[i] = Formula::conj(fs[i], *tails[i + 1]);
  std::optional<Theorem> acc;  // |- C_0 ==> C_k
  for (std::size_t k = 0; k < index; ++k) {
    Theorem step = and_right(fs[k], *tails[k + 1]);
    acc = acc ? imp_trans(*acc, step) : step;
  }
  Theorem last = index + 1 < fs.size() ? and_left(fs[index], *tails[index + 1]) : imp_refl(fs[index]);
  return acc ? imp_trans(*acc, last) : last;
}

std::vector<Theorem> conj_projections(const std::vector<Formula>& fs) {
  if (fs.empty()) throw RuleError("conj_projections: empty list");
  if (fs.size() == 1) return {imp_refl(fs[0])};
  std::vector<Formula> rest(fs.begin() + 1, fs.end());
  Formula tail = conjoin(rest);
  std::vector<Theorem> out{and_left(fs[0], tail)};
  Theorem right = and_right(fs[0], tail);
  for (const auto& th : conj_projections(rest)) out.push_back(imp_trans(right, th));
  return out;
}

Theorem conj_entails(const std::vector<Formula>& have, const std::vector<Formula>& want) {
  if (want.empty()) throw RuleError("conj_entails: nothing to entail");
  std::vector<Theorem> parts;
  for (const auto& w : want) {
    auto it = std::find(have.begin(), have.end(), w);
    if (it == have.end()) throw RuleError("conj_entails: " + print_formula(w) + " is not available");
    parts.push_back(conj_projection(have, static_cast<std::size_t>(it - have.begin())));
  }
  Theorem acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = conj_intro(parts[i], acc);
  return acc;
}

// ---------------------------------------------------------------------------
// First order

Theorem eq_sym(const Term& s, const Term& t) {
  Theorem rth = ax(axiom::EqRefl{s});
  Theorem th = ax(axiom::PredCong{"=", {s, s}, {t, s}});
  th = modus_ponens(imp_swap(th), rth);
  return modus_ponens(imp_swap(th), rth);
}

Theorem eq_trans(const Term& s, const Term& t, const Term& u) {
  Theorem th1 = ax(axiom::PredCong{"=", {t, u}, {s, u}});
  Theorem th2 = modus_ponens(imp_swap(th1), ax(axiom::EqRefl{u}));
  return imp_trans(eq_sym(s, t), th2);
}

Theorem icongruence(const Term& s, const Term& t, const Term& stm, const Term& ttm) {
  if (stm == ttm) return add_assum(Formula::equal(s, t), ax(axiom::EqRefl{stm}));
  if (stm == s && ttm == t) return imp_refl(Formula::equal(s, t));
  if (!stm.is_var() && !ttm.is_var() && stm.name() == ttm.name() && stm.args().size() == ttm.args().size()) {
    std::vector<Theorem> ths;
    std::vector<Term> ls, rs;
    for (std::size_t i = 0; i < stm.args().size(); ++i) {
      ths.push_back(icongruence(s, t, stm.args()[i], ttm.args()[i]));
      auto [l, r] = dest_eq(consequent(concl(ths.back())));
      ls.push_back(l);
      rs.push_back(r);
    }
    return imp_trans_chain(ths, ax(axiom::FunCong{stm.name(), ls, rs}));
  }
  throw RuleError("icongruence: not congruent: " + print_term(stm) + " and " + print_term(ttm));
}

Theorem gen_right_th(const std::string& x, const Formula& p, const Formula& q) {
  return imp_swap(imp_trans(ax(axiom::ImpAll{x, p}), imp_swap(ax(axiom::AllImp{x, p, q}))));
}

Theorem genimp(const std::string& x, const Theorem& th) {
  auto [p, q] = imp_parts(th, "genimp");
  return modus_ponens(ax(axiom::AllImp{x, p, q}), generalize(x, th));
}

Theorem gen_right(const std::string& x, const Theorem& th) {
  auto [p, q] = imp_parts(th, "gen_right");
  return modus_ponens(gen_right_th(x, p, q), generalize(x, th));
}

Theorem exists_left_th(const std::string& x, const Formula& p, const Formula& q) {
  Formula p1 = neg_false(p);
  Formula q1 = neg_false(q);
  Formula all_p1 = Formula::forall(x, p1);
  Theorem th1 = genimp(x, imp_swap(imp_trans_th(p, q, falsity())));
  Theorem th2 = imp_trans(th1, gen_right_th(x, q1, p1));
  Theorem th3 = imp_swap(imp_trans_th(q1, all_p1, falsity()));
  Theorem th4 = imp_trans2(imp_trans(th2, th3), ax(axiom::DoubleNeg{q}));
  Theorem th5 = imp_add_concl(falsity(), genimp(x, iff_imp2(ax(axiom::NotDef{p}))));
  Theorem th6 = imp_trans(iff_imp1(ax(axiom::NotDef{Formula::forall(x, Formula::negation(p))})), th5);
  Theorem th7 = imp_trans(iff_imp1(ax(axiom::ExistsDef{x, p})), th6);
  return imp_swap(imp_trans(th7, imp_swap(th4)));
}

Theorem exists_left(const std::string& x, const Theorem& th) {
  auto [p, q] = imp_parts(th, "exists_left");
  return modus_ponens(exists_left_th(x, p, q), generalize(x, th));
}

Theorem subspec(const Theorem& th) {
  const Formula& c = concl(th);
  if (c.is(FormulaKind::Imp) && c.lhs().is_equality() && c.lhs().args()[0].is_var() &&
      c.rhs().is(FormulaKind::Imp)) {
    const Formula& e = c.lhs();
    const std::string& x = e.args()[0].name();
    const Term& t = e.args()[1];
    const Formula& q = c.rhs().rhs();
    Theorem th1 = imp_trans(genimp(x, imp_swap(th)), exists_left_th(x, e, q));
    return modus_ponens(imp_swap(th1), ax(axiom::ExistsEq{x, t}));
  }
  throw RuleError("subspec: wrong sort of theorem: " + print_formula(c));
}

Theorem subalpha(const Theorem& th) {
  const Formula& c = concl(th);
  if (c.is(FormulaKind::Imp) && c.lhs().is_equality() && c.lhs().args()[0].is_var() &&
      c.lhs().args()[1].is_var() && c.rhs().is(FormulaKind::Imp)) {
    const std::string& x = c.lhs().args()[0].name();
    const std::string& y = c.lhs().args()[1].name();
    if (x == y) return genimp(x, modus_ponens(th, ax(axiom::EqRefl{Term::var(x)})));
    return gen_right(y, subspec(th));
  }
  throw RuleError("subalpha: wrong sort of theorem: " + print_formula(c));
}

Theorem isubst(const Term& s, const Term& t, const Formula& sfm, const Formula& tfm) {
  if (sfm == tfm) return add_assum(Formula::equal(s, t), imp_refl(tfm));
  if (sfm.kind() != tfm.kind())
    throw RuleError("isubst: formulas differ in structure: " + print_formula(sfm) + " vs " + print_formula(tfm));
  switch (sfm.kind()) {
    case FormulaKind::Atom: {
      if (sfm.name() != tfm.name() || sfm.args().size() != tfm.args().size())
        throw RuleError("isubst: atoms differ: " + print_formula(sfm) + " vs " + print_formula(tfm));
      std::vector<Theorem> ths;
      std::vector<Term> ls, rs;
      for (std::size_t i = 0; i < sfm.args().size(); ++i) {
        ths.push_back(icongruence(s, t, sfm.args()[i], tfm.args()[i]));
        auto [l, r] = dest_eq(consequent(concl(ths.back())));
        ls.push_back(l);
        rs.push_back(r);
      }
      return imp_trans_chain(ths, ax(axiom::PredCong{sfm.name(), ls, rs}));
    }
    case FormulaKind::Imp: {
      const Formula& sp = sfm.lhs();
      const Formula& sq = sfm.rhs();
      const Formula& tp = tfm.lhs();
      const Formula& tq = tfm.rhs();
      Theorem th1 = imp_trans(eq_sym(s, t), isubst(t, s, tp, sp));
      Theorem th2 = isubst(s, t, sq, tq);
      return imp_trans_chain({th1, th2}, imp_mono_th(sp, tp, sq, tq));
    }
    case FormulaKind::Forall: {
      const std::string& x = sfm.name();
      const std::string& y = tfm.name();
      const Formula& p = sfm.body();
      const Formula& q = tfm.body();
      if (x == y) return imp_trans(gen_right(x, isubst(s, t, p, q)), ax(axiom::AllImp{x, p, q}));
      VarSet avoid = p.free_vars();
      avoid.insert(q.free_vars().begin(), q.free_vars().end());
      avoid.insert(s.free_vars().begin(), s.free_vars().end());
      avoid.insert(t.free_vars().begin(), t.free_vars().end());
      Term z = Term::var(variant(x, avoid));
      Theorem th1 = isubst(Term::var(x), z, p, subst(p, x, z));
      Theorem th2 = isubst(z, Term::var(y), subst(q, y, z), q);
      Theorem th3 = subalpha(th1);
      Theorem th4 = subalpha(th2);
      Theorem th5 = isubst(s, t, consequent(concl(th3)), antecedent(concl(th4)));
      return imp_swap(imp_trans2(imp_trans(th3, imp_swap(th5)), th4));
    }
    default: {
      Theorem sth = iff_imp1(expand_connective(sfm));
      Theorem tth = iff_imp2(expand_connective(tfm));
      Theorem th1 = isubst(s, t, consequent(concl(sth)), antecedent(concl(tth)));
      return imp_swap(imp_trans(sth, imp_swap(imp_trans2(th1, tth))));
    }
  }
}

Theorem alpha(const std::string& z, const Formula& fm) {
  if (!fm.is(FormulaKind::Forall)) throw RuleError("alpha: not a universal formula: " + print_formula(fm));
  const std::string& x = fm.name();
  const Formula& p = fm.body();
  return subalpha(isubst(Term::var(x), Term::var(z), p, subst(p, x, Term::var(z))));
}

Theorem ispec(const Term& t, const Formula& fm) {
  if (!fm.is(FormulaKind::Forall)) throw RuleError("ispec: non-universal formula: " + print_formula(fm));
  const std::string& x = fm.name();
  const Formula& p = fm.body();
  if (occurs_in(x, t)) {
    VarSet avoid = t.free_vars();
    VarSet pv = all_vars(p);
    avoid.insert(pv.begin(), pv.end());
    Theorem th = alpha(variant(x, avoid), fm);
    return imp_trans(th, ispec(t, consequent(concl(th))));
  }
  return subspec(isubst(Term::var(x), t, p, subst(p, x, t)));
}

Theorem spec(const Term& t, const Theorem& th) { return modus_ponens(ispec(t, concl(th)), th); }

Theorem exists_intro_th(const std::string& x, const Formula& p, const Term& t) {
  Formula all_not = Formula::forall(x, Formula::negation(p));
  Theorem a = ispec(t, all_not);  // (forall x. ~p) ==> ~pt
  const Formula& not_pt = consequent(concl(a));
  Formula pt = not_pt.lhs();
  Theorem b = imp_swap(imp_trans(a, iff_imp1(ax(axiom::NotDef{pt}))));  // pt ==> (forall x. ~p) ==> false
  Theorem c = imp_trans(b, iff_imp2(ax(axiom::NotDef{all_not})));
  return imp_trans(c, iff_imp2(ax(axiom::ExistsDef{x, p})));
}

}  // namespace spa::rules
