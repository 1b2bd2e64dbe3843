// Derived inference rules. Everything here is built from the kernel
// operations only; no function in this header can mint a Theorem directly.
//
// Naming follows the usual LCF conventions: a `_th` suffix means the rule is
// returned as an implication theorem, otherwise it transforms its input.

#pragma once

#include <string>
#include <vector>

#include "spa/kernel.hpp"

namespace spa::rules {

/// Raised when a derived rule's input theorem has the wrong shape.
class RuleError : public Error {
 public:
  using Error::Error;
};

// --- propositional -------------------------------------------------------

Theorem imp_refl(const Formula& p);                            // p ==> p
Theorem imp_trans(const Theorem& pq, const Theorem& qr);        // p ==> r
Theorem right_mp(const Theorem& pqr, const Theorem& pq);        // p ==> r
Theorem unshunt(const Theorem& th);                             // p /\ q ==> r
Theorem shunt(const Theorem& th);                               // p ==> q ==> r
Theorem and_pair(const Formula& p, const Formula& q);           // p ==> q ==> p /\ q
/// [C ==> f1, ..., C ==> fn] for C the right-nested conjunction of fs.
std::vector<Theorem> conj_projections(const std::vector<Formula>& fs);

Theorem add_assum(const Formula& p, const Theorem& th);        // |- q  gives  |- p ==> q
Theorem imp_add_assum(const Formula& p, const Theorem& th);    // (p ==> q) ==> (p ==> r)
Theorem imp_insert(const Formula& q, const Theorem& th);       // p ==> q ==> r
Theorem imp_swap(const Theorem& th);                           // q ==> p ==> r
Theorem imp_trans_th(const Formula& p, const Formula& q, const Formula& r);
Theorem imp_add_concl(const Formula& r, const Theorem& th);    // (q ==> r) ==> (p ==> r)
Theorem imp_swap_th(const Formula& p, const Formula& q, const Formula& r);
Theorem imp_unduplicate(const Theorem& th);                    // p ==> q
Theorem imp_trans2(const Theorem& pqr, const Theorem& rs);     // p ==> q ==> s
/// From |- p ==> q_i for each i and |- q_1 ==> ... ==> q_n ==> r, derive |- p ==> r.
Theorem imp_trans_chain(const std::vector<Theorem>& ths, const Theorem& th);
Theorem imp_mono_th(const Formula& p, const Formula& p2, const Formula& q, const Formula& q2);
Theorem iff_imp1(const Theorem& th);
Theorem iff_imp2(const Theorem& th);
Theorem imp_antisym(const Theorem& pq, const Theorem& qp);
Theorem right_doubleneg(const Theorem& th);
Theorem ex_falso(const Formula& p);                             // false ==> p
Theorem truth();
Theorem and_left(const Formula& p, const Formula& q);
Theorem and_right(const Formula& p, const Formula& q);
Theorem iff_def(const Formula& p, const Formula& q);            // (p <=> q) <=> (p ==> q) /\ (q ==> p)
/// |- fm <=> fm' where fm' unfolds the top connective of true, ~, /\, \/, <=> or exists.
Theorem expand_connective(const Formula& fm);
/// |- fm ==> fm' or, for fm = p ==> false, |- (p ==> false) ==> (p' ==> false).
Theorem eliminate_connective(const Formula& fm);
/// From |- X ==> a and |- X ==> b derive |- X ==> a /\ b.
Theorem conj_intro(const Theorem& xa, const Theorem& xb);

/// |- C ==> fs[index] for C the right-nested conjunction of fs.
Theorem conj_projection(const std::vector<Formula>& fs, std::size_t index);
/// |- C(have) ==> C(want) where every formula of `want` occurs in `have`.
Theorem conj_entails(const std::vector<Formula>& have, const std::vector<Formula>& want);

// --- first order ---------------------------------------------------------

Theorem eq_sym(const Term& s, const Term& t);                   // s = t ==> t = s
Theorem eq_trans(const Term& s, const Term& t, const Term& u);  // s = t ==> t = u ==> s = u
Theorem icongruence(const Term& s, const Term& t, const Term& stm, const Term& ttm);
Theorem gen_right_th(const std::string& x, const Formula& p, const Formula& q);
Theorem genimp(const std::string& x, const Theorem& th);
Theorem gen_right(const std::string& x, const Theorem& th);
Theorem exists_left_th(const std::string& x, const Formula& p, const Formula& q);
Theorem exists_left(const std::string& x, const Theorem& th);
Theorem subspec(const Theorem& th);
Theorem subalpha(const Theorem& th);
/// |- s = t ==> sfm ==> tfm where tfm is sfm with some occurrences of s replaced by t.
Theorem isubst(const Term& s, const Term& t, const Formula& sfm, const Formula& tfm);
/// |- (forall x. p) ==> (forall z. p[z/x])
Theorem alpha(const std::string& z, const Formula& fm);
/// |- (forall x. p) ==> p[t/x]
Theorem ispec(const Term& t, const Formula& fm);
Theorem spec(const Term& t, const Theorem& th);
/// |- p[t/x] ==> exists x. p
Theorem exists_intro_th(const std::string& x, const Formula& p, const Term& t);

}  // namespace spa::rules
