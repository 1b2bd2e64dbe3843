#include "spa/prover.hpp"

#include <pthread.h>

#include <deque>
#include <exception>
#include <functional>
#include <map>
#include <memory>

#include "spa/rules.hpp"

namespace spa {

namespace {

using namespace rules;

Formula falsity() { return Formula::falsity(); }
Formula neg(const Formula& p) { return Formula::imp(p, falsity()); }
bool is_neg(const Formula& f) { return f.is(FormulaKind::Imp) && f.rhs().is(FormulaKind::False); }

// Metavariables are variables whose names cannot be written in source text.
bool is_meta(const Term& t) { return t.is_var() && !t.name().empty() && t.name()[0] == '?'; }

struct Env {
  std::map<std::string, Term> bind;
  // Eigenvariable y with the metavariables that were on its branch when y was
  // introduced; none of them may ever resolve to a term containing y.
  std::vector<std::pair<std::string, std::vector<std::string>>> eigen;
};

Term walk(Term t, const Env& e) {
  while (is_meta(t)) {
    auto it = e.bind.find(t.name());
    if (it == e.bind.end()) break;
    t = it->second;
  }
  return t;
}

Term resolve(const Term& t, const Env& e) {
  Term w = walk(t, e);
  if (w.is_var()) return w;
  std::vector<Term> args;
  args.reserve(w.args().size());
  for (const auto& a : w.args()) args.push_back(resolve(a, e));
  return Term::fn(w.name(), std::move(args));
}

bool occurs_meta(const std::string& m, const Term& t, const Env& e) {
  Term w = walk(t, e);
  if (w.is_var()) return w.name() == m;
  for (const auto& a : w.args())
    if (occurs_meta(m, a, e)) return true;
  return false;
}

bool unify(const Term& a0, const Term& b0, Env& e) {
  Term a = walk(a0, e), b = walk(b0, e);
  if (is_meta(a)) {
    if (is_meta(b) && b.name() == a.name()) return true;
    if (occurs_meta(a.name(), b, e)) return false;
    e.bind.emplace(a.name(), b);
    return true;
  }
  if (is_meta(b)) return unify(b, a, e);
  if (a.is_var() || b.is_var()) return a.is_var() && b.is_var() && a.name() == b.name();
  if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!unify(a.args()[i], b.args()[i], e)) return false;
  return true;
}

bool unify_args(const Formula& p, const Formula& q, Env& e) {
  if (p.name() != q.name() || p.args().size() != q.args().size()) return false;
  for (std::size_t i = 0; i < p.args().size(); ++i)
    if (!unify(p.args()[i], q.args()[i], e)) return false;
  return true;
}

bool eigen_ok(const Env& e) {
  for (const auto& [y, metas] : e.eigen)
    for (const auto& m : metas)
      if (resolve(Term::var(m), e).free_vars().count(y)) return false;
  return true;
}

// The formula eliminate_connective produces for a positive connective.
Formula expansion(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True: return neg(falsity());
    case FormulaKind::Not: return neg(f.lhs());
    case FormulaKind::And: return neg(Formula::imp(f.lhs(), neg(f.rhs())));
    case FormulaKind::Or:
      return Formula::negation(Formula::conj(Formula::negation(f.lhs()), Formula::negation(f.rhs())));
    case FormulaKind::Iff: return Formula::conj(Formula::imp(f.lhs(), f.rhs()), Formula::imp(f.rhs(), f.lhs()));
    case FormulaKind::Exists: return Formula::negation(Formula::forall(f.name(), Formula::negation(f.body())));
    default: throw Error("prover: no expansion for " + print_formula(f));
  }
}

bool eliminable(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Iff:
    case FormulaKind::Exists: return true;
    default: return false;
  }
}

enum class Rule { Elim, DoubleNeg, NegImpLeft, NegImpRight, Delta, Gamma };

struct Node {
  enum Kind { CloseFalse, Complement, Refl, Add, Beta, Delta } kind = CloseFalse;
  int i = -1, j = -1;
  Rule rule = Rule::Elim;
  Term term = Term::var("?");  // gamma witness
  std::string eigen;
  // Set when the formula this node was meant to add was already on the branch.
  bool skip = false;
  std::unique_ptr<Node> left, right;
};

struct Task {
  int idx;
  Rule rule;
};

struct Branch {
  std::vector<Formula> hyps;
  std::deque<Task> cheap;
  std::deque<int> betas;
  std::deque<int> gammas;
  std::vector<std::string> metas;
};

using Cont = std::function<bool(const Env&)>;

class Search {
 public:
  Search(const Budget& budget, VarSet used) : budget_(budget), used_(std::move(used)) {}

  bool run(Branch br, int n, const Env& env, Node* node, const Cont& cont) {
    if (++steps_ > budget_.max_steps)
      throw BudgetExceeded("at once: step budget of " + std::to_string(budget_.max_steps) + " exhausted");

    if (!br.cheap.empty()) {
      Task t = br.cheap.front();
      br.cheap.pop_front();
      const Formula h = br.hyps[static_cast<std::size_t>(t.idx)];
      node->kind = Node::Add;
      node->i = t.idx;
      node->rule = t.rule;
      node->left = std::make_unique<Node>();
      switch (t.rule) {
        case Rule::Elim: {
          Formula f = is_neg(h) ? neg(expansion(h.lhs())) : expansion(h);
          return push(std::move(br), f, n, env, node->left.get(), cont);
        }
        case Rule::DoubleNeg: return push(std::move(br), h.lhs().lhs(), n, env, node->left.get(), cont);
        case Rule::NegImpLeft: return push(std::move(br), h.lhs().lhs(), n, env, node->left.get(), cont);
        case Rule::NegImpRight: return push(std::move(br), neg(h.lhs().rhs()), n, env, node->left.get(), cont);
        case Rule::Delta: {
          const Formula& all = h.lhs();
          std::string y = fresh(all.name());
          node->kind = Node::Delta;
          node->eigen = y;
          Env e2 = env;
          e2.eigen.emplace_back(y, br.metas);
          Formula f = neg(subst(all.body(), all.name(), Term::var(y)));
          return push(std::move(br), f, n, e2, node->left.get(), cont);
        }
        case Rule::Gamma: break;
      }
      throw Error("prover: bad task");
    }

    if (!br.betas.empty()) {
      int i = br.betas.front();
      br.betas.pop_front();
      const Formula h = br.hyps[static_cast<std::size_t>(i)];
      node->kind = Node::Beta;
      node->i = i;
      node->left = std::make_unique<Node>();
      node->right = std::make_unique<Node>();
      Node* right = node->right.get();
      Branch other = br;
      Cont second = [this, other, h, n, right, &cont](const Env& e1) {
        return push(other, h.rhs(), n, e1, right, cont);
      };
      return push(std::move(br), neg(h.lhs()), n, env, node->left.get(), second);
    }

    if (!br.gammas.empty() && n > 0) {
      int i = br.gammas.front();
      br.gammas.pop_front();
      br.gammas.push_back(i);
      const Formula h = br.hyps[static_cast<std::size_t>(i)];
      Term m = Term::var("?" + std::to_string(++metas_));
      br.metas.push_back(m.name());
      node->kind = Node::Add;
      node->i = i;
      node->rule = Rule::Gamma;
      node->term = m;
      node->left = std::make_unique<Node>();
      return push(std::move(br), subst(h.body(), h.name(), m), n - 1, env, node->left.get(), cont);
    }
    return false;
  }

  bool push(Branch br, Formula f, int n, const Env& env, Node* node, const Cont& cont) {
    node->skip = false;
    for (const auto& h : br.hyps) {
      if (h == f) {
        node->skip = true;
        return run(std::move(br), n, env, node, cont);
      }
    }
    const int k = static_cast<int>(br.hyps.size());
    br.hyps.push_back(f);

    if (f.is(FormulaKind::False)) {
      node->kind = Node::CloseFalse;
      node->i = k;
      return cont(env);
    }

    // Candidate closures that bind metavariables; tried in order after any
    // closure needing no new binding has been ruled out.
    std::vector<std::tuple<Node::Kind, int, int, Env>> options;
    auto attempt = [&](Node::Kind kind, int i, int j, Env e2) -> std::optional<bool> {
      if (e2.bind.size() == env.bind.size()) {
        node->kind = kind;
        node->i = i;
        node->j = j;
        return cont(env);
      }
      if (eigen_ok(e2)) options.emplace_back(kind, i, j, std::move(e2));
      return std::nullopt;
    };

    if (is_neg(f)) {
      const Formula& g = f.lhs();
      if (g.is(FormulaKind::False)) return run(std::move(br), n, env, node, cont);
      for (int i = 0; i < k; ++i) {
        if (br.hyps[static_cast<std::size_t>(i)] == g) {
          node->kind = Node::Complement;
          node->i = i;
          node->j = k;
          return cont(env);
        }
      }
      if (g.is(FormulaKind::Atom)) {
        if (g.is_equality()) {
          Env e2 = env;
          if (unify(g.args()[0], g.args()[1], e2))
            if (auto r = attempt(Node::Refl, -1, k, std::move(e2))) return *r;
        }
        for (int i = 0; i < k; ++i) {
          const Formula& h = br.hyps[static_cast<std::size_t>(i)];
          if (!h.is(FormulaKind::Atom)) continue;
          Env e2 = env;
          if (unify_args(h, g, e2))
            if (auto r = attempt(Node::Complement, i, k, std::move(e2))) return *r;
        }
      }
    } else {
      Formula nf = neg(f);
      for (int j = 0; j < k; ++j) {
        if (br.hyps[static_cast<std::size_t>(j)] == nf) {
          node->kind = Node::Complement;
          node->i = k;
          node->j = j;
          return cont(env);
        }
      }
      if (f.is(FormulaKind::Atom)) {
        for (int j = 0; j < k; ++j) {
          const Formula& h = br.hyps[static_cast<std::size_t>(j)];
          if (!is_neg(h) || !h.lhs().is(FormulaKind::Atom)) continue;
          Env e2 = env;
          if (unify_args(f, h.lhs(), e2))
            if (auto r = attempt(Node::Complement, k, j, std::move(e2))) return *r;
        }
      }
    }

    for (auto& [kind, i, j, e2] : options) {
      node->kind = kind;
      node->i = i;
      node->j = j;
      if (cont(e2)) return true;
    }

    classify(br, k);
    return run(std::move(br), n, env, node, cont);
  }

  long steps() const { return steps_; }

 private:
  void classify(Branch& br, int k) {
    const Formula& f = br.hyps[static_cast<std::size_t>(k)];
    if (is_neg(f)) {
      const Formula& g = f.lhs();
      if (g.is(FormulaKind::Atom) || g.is(FormulaKind::False)) return;
      if (is_neg(g)) {
        br.cheap.push_back({k, Rule::DoubleNeg});
      } else if (g.is(FormulaKind::Imp)) {
        br.cheap.push_back({k, Rule::NegImpLeft});
        br.cheap.push_back({k, Rule::NegImpRight});
      } else if (g.is(FormulaKind::Forall)) {
        br.cheap.push_back({k, Rule::Delta});
      } else {
        br.cheap.push_back({k, Rule::Elim});
      }
      return;
    }
    if (f.is(FormulaKind::Imp)) {
      if (!f.lhs().is(FormulaKind::False)) br.betas.push_back(k);
    } else if (f.is(FormulaKind::Forall)) {
      // New universals go ahead of ones already instantiated.
      br.gammas.push_front(k);
    } else if (eliminable(f) && !f.is(FormulaKind::True)) {
      br.cheap.push_back({k, Rule::Elim});
    }
  }

  std::string fresh(const std::string& base) {
    std::string y = variant(base + "_" + std::to_string(++eigens_), used_);
    used_.insert(y);
    return y;
  }

  Budget budget_;
  VarSet used_;
  long steps_ = 0;
  int metas_ = 0;
  int eigens_ = 0;
};

// Replays a closed tableau as Hilbert proofs. With the branch h1..hk the
// context C is hk /\ (... /\ h1) and each node proves |- C ==> false.
class Replay {
 public:
  Replay(const Env& env, std::string filler) : env_(env), filler_(std::move(filler)) {}

  Theorem run(const Node& node) {
    switch (node.kind) {
      case Node::CloseFalse: return proj(node.i);
      case Node::Complement: {
        const Formula& a = hyp(node.i);
        if (hyp(node.j) != neg(a)) throw Error("prover: replay mismatch at closure");
        return right_mp(proj(node.j), proj(node.i));
      }
      case Node::Refl: {
        auto [s, t] = dest_eq(hyp(node.j).lhs());
        if (s != t) throw Error("prover: replay mismatch at reflexivity");
        return right_mp(proj(node.j), add_assum(context(), instantiate_axiom(axiom::EqRefl{s})));
      }
      case Node::Add: {
        Theorem lemma = add_lemma(node);
        Theorem d = discharge(consequent(lemma.conclusion()), *node.left);
        return right_mp(d, imp_trans(proj(node.i), lemma));
      }
      case Node::Beta: {
        auto [p, q] = dest_imp(hyp(node.i));
        Theorem d1 = discharge(neg(p), *node.left);
        Theorem pth = imp_trans(d1, instantiate_axiom(axiom::DoubleNeg{p}));
        Theorem qth = right_mp(proj(node.i), pth);
        Theorem d2 = discharge(q, *node.right);
        return right_mp(d2, qth);
      }
      case Node::Delta: {
        const Formula all = hyp(node.i).lhs();
        const std::string& x = all.name();
        const std::string& y = node.eigen;
        Formula inst = subst(all.body(), x, Term::var(y));
        Theorem d = discharge(neg(inst), *node.left);
        Theorem bth = imp_trans(d, instantiate_axiom(axiom::DoubleNeg{inst}));
        Theorem gth = gen_right(y, bth);
        Formula ally = Formula::forall(y, inst);
        Theorem back = gen_right(x, ispec(Term::var(x), ally));
        if (consequent(back.conclusion()) != all) throw Error("prover: replay mismatch at eigenvariable");
        return right_mp(proj(node.i), imp_trans(gth, back));
      }
    }
    throw Error("prover: bad node");
  }

  void start(const Formula& root) { push(root); }

 private:
  const Formula& hyp(int i) const { return hyps_[static_cast<std::size_t>(i)]; }
  const Formula& context() const { return conjs_.back(); }

  void push(const Formula& f) {
    hyps_.push_back(f);
    conjs_.push_back(conjs_.empty() ? f : Formula::conj(f, conjs_.back()));
    memo_.emplace_back();
  }
  void pop() {
    hyps_.pop_back();
    conjs_.pop_back();
    memo_.pop_back();
  }

  // |- C ==> f for f the i-th hypothesis.
  Theorem proj(int i) { return proj_at(hyps_.size() - 1, static_cast<std::size_t>(i)); }

  // Projection out of the context of level k, memoised while that level of
  // the branch stays unchanged.
  Theorem proj_at(std::size_t k, std::size_t i) {
    auto& cache = memo_[k];
    if (auto it = cache.find(i); it != cache.end()) return it->second;
    Theorem th = [&] {
      if (k == 0) return imp_refl(hyps_[0]);
      if (i == k) return and_left(hyps_[k], conjs_[k - 1]);
      return imp_trans(and_right(hyps_[k], conjs_[k - 1]), proj_at(k - 1, i));
    }();
    cache.emplace(i, th);
    return th;
  }

  // Proves the child under f, giving |- C ==> (f ==> false).
  Theorem discharge(const Formula& f, const Node& child) {
    if (child.skip) return imp_trans(run(child), ex_falso(neg(f)));
    push(f);
    Theorem th = run(child);
    pop();
    return imp_swap(shunt(th));
  }

  Term instantiate(const Term& t) const {
    Term r = resolve(t, env_);
    TermSubst s;
    for (const auto& v : r.free_vars())
      if (v[0] == '?') s.emplace(v, Term::var(filler_));
    return s.empty() ? r : subst(r, s);
  }

  Theorem add_lemma(const Node& node) {
    const Formula& h = hyp(node.i);
    switch (node.rule) {
      case Rule::Elim: return eliminate_connective(h);
      case Rule::DoubleNeg: return instantiate_axiom(axiom::DoubleNeg{h.lhs().lhs()});
      case Rule::NegImpLeft: {
        auto [p, q] = dest_imp(h.lhs());
        return right_doubleneg(imp_add_concl(falsity(), imp_add_assum(p, ex_falso(q))));
      }
      case Rule::NegImpRight: {
        auto [p, q] = dest_imp(h.lhs());
        return imp_add_concl(falsity(), imp_insert(p, imp_refl(q)));
      }
      case Rule::Gamma: return ispec(instantiate(node.term), h);
      case Rule::Delta: break;
    }
    throw Error("prover: bad rule");
  }

  const Env& env_;
  std::string filler_;
  std::vector<Formula> hyps_;
  std::vector<Formula> conjs_;
  std::vector<std::map<std::size_t, Theorem>> memo_;
};

// Tableaux recurse once per expansion along the whole proof, so run the work on
// a thread with a generous stack.
void with_big_stack(const std::function<void()>& work) {
  struct Job {
    const std::function<void()>* work;
    std::exception_ptr error;
  } job{&work, nullptr};
  auto entry = [](void* arg) -> void* {
    auto* j = static_cast<Job*>(arg);
    try {
      (*j->work)();
    } catch (...) {
      j->error = std::current_exception();
    }
    return nullptr;
  };
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, std::size_t{1} << 30);
  pthread_t tid;
  int rc = pthread_create(&tid, &attr, entry, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    work();
    return;
  }
  pthread_join(tid, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

}  // namespace

Theorem refute(const Formula& root, const Budget& budget) {
  std::optional<Theorem> result;
  with_big_stack([&] {
    VarSet used = all_vars(root);
    Search search(budget, used);
    for (int depth = 0; depth <= budget.max_branch_depth; ++depth) {
      Node top;
      Env final_env;
      bool closed = search.push(Branch{}, root, depth, Env{}, &top, [&](const Env& e) {
        final_env = e;
        return true;
      });
      if (!closed) continue;
      VarSet avoid = used;
      Replay replay(final_env, variant("c", avoid));
      replay.start(root);
      result = replay.run(top);
      return;
    }
    throw BudgetExceeded("at once: no proof found within branch depth " + std::to_string(budget.max_branch_depth));
  });
  return *result;
}

Theorem at_once(const std::vector<Formula>& facts, const Formula& target, const Budget& budget) {
  Formula goal = facts.empty() ? target : Formula::imp(conjoin(facts), target);
  Theorem th = refute(neg(goal), budget);
  return modus_ponens(instantiate_axiom(axiom::DoubleNeg{goal}), th);
}

Theorem lift_to_ambient(const Theorem& th, const std::vector<Formula>& ambient, const std::vector<Fact>& facts) {
  if (facts.empty()) return ambient.empty() ? th : add_assum(conjoin(ambient), th);

  std::vector<Theorem> parts;
  for (const auto& fact : facts) {
    if (fact.theorem) {
      if (fact.theorem->conclusion() != fact.formula) throw Error("lift: lemma does not match its formula");
      parts.push_back(ambient.empty() ? *fact.theorem : add_assum(conjoin(ambient), *fact.theorem));
      continue;
    }
    std::size_t i = 0;
    while (i < ambient.size() && ambient[i] != fact.formula) ++i;
    if (i == ambient.size()) throw Error("lift: fact is not an assumption: " + print_formula(fact.formula));
    parts.push_back(conj_projection(ambient, i));
  }
  // Right-nested combination of the parts.
  Theorem all = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) {
    if (ambient.empty()) {
      const Formula& a = parts[i].conclusion();
      all = modus_ponens(modus_ponens(and_pair(a, all.conclusion()), parts[i]), all);
    } else {
      all = conj_intro(parts[i], all);
    }
  }
  return ambient.empty() ? modus_ponens(th, all) : imp_trans(all, th);
}

}  // namespace spa
