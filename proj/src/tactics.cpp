#include "spa/tactics.hpp"

#include "spa/rules.hpp"

namespace spa {

using namespace rules;

std::vector<Formula> Subgoal::formulas() const {
  std::vector<Formula> fs;
  fs.reserve(assumptions.size());
  for (const auto& a : assumptions) fs.push_back(a.second);
  return fs;
}

Formula Subgoal::obligation() const {
  if (assumptions.empty()) return target;
  return Formula::imp(conjoin(formulas()), target);
}

const Formula* Subgoal::lookup(const std::string& label) const {
  for (const auto& a : assumptions)
    if (a.first == label) return &a.second;
  return nullptr;
}

namespace {

const Subgoal& first_goal(const GoalState& st, const char* who) {
  if (st.subgoals.empty()) throw TacticError(std::string(who) + ": no goals left");
  return st.subgoals.front();
}

void check_fresh(const Subgoal& g, const std::string& label) {
  if (g.lookup(label)) throw TacticError("duplicate label " + label);
}

// Replaces the first subgoal by `fresh`. `local` maps theorems discharging the
// fresh subgoals to one discharging the replaced subgoal.
GoalState refine(const GoalState& st, std::vector<Subgoal> fresh, Compose local) {
  GoalState out{{}, {}, st.original, st.anonymous};
  const std::size_t k = fresh.size();
  out.subgoals = std::move(fresh);
  out.subgoals.insert(out.subgoals.end(), st.subgoals.begin() + 1, st.subgoals.end());
  Compose parent = st.compose;
  out.compose = [parent, local, k](const std::vector<Theorem>& ths) {
    std::vector<Theorem> mine(ths.begin(), ths.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<Theorem> rest{local(mine)};
    rest.insert(rest.end(), ths.begin() + static_cast<std::ptrdiff_t>(k), ths.end());
    return parent(rest);
  };
  return out;
}

// From |- C(asm ++ [p]) ==> q derive |- C(asm) ==> (p ==> q); asm nonempty.
Theorem pull_last(const std::vector<Formula>& asm_fs, const Formula& p, const Theorem& th) {
  std::vector<Formula> have{p};
  have.insert(have.end(), asm_fs.begin(), asm_fs.end());
  std::vector<Formula> want = asm_fs;
  want.push_back(p);
  return imp_swap(shunt(imp_trans(conj_entails(have, want), th)));
}

// Discharges `g` given a discharge of g extended by assumption p, plus a
// discharge of p under g.
Theorem cut(const Subgoal& g, const Formula& p, const Theorem& extended, const Theorem& pth) {
  if (g.assumptions.empty()) return modus_ponens(extended, pth);
  return right_mp(pull_last(g.formulas(), p, extended), pth);
}

Theorem check_discharge(const Theorem& th, const Subgoal& g, const char* who) {
  if (th.conclusion() != g.obligation())
    throw TacticError(std::string(who) + ": justification proved " + print_formula(th.conclusion()) +
                      " instead of " + print_formula(g.obligation()));
  return th;
}

Theorem at_once_justification(const JustificationCall& call) {
  const Subgoal& g = first_goal(call.state, "at once");
  std::vector<Fact> facts;
  if (call.so_fact) facts.push_back({*call.so_fact, std::nullopt});
  for (const auto& label : call.args) {
    if (const Formula* f = g.lookup(label); f && label[0] != '#') {
      facts.push_back({*f, std::nullopt});
    } else if (auto it = call.lemmas.find(label); it != call.lemmas.end()) {
      facts.push_back({it->second.conclusion(), it->second});
    } else {
      throw TacticError("unknown label " + label);
    }
  }
  std::vector<Formula> fs;
  for (const auto& f : facts) fs.push_back(f.formula);
  Theorem th = at_once(fs, call.target, call.budget);
  return lift_to_ambient(th, g.formulas(), facts);
}

Theorem mp_justification(const JustificationCall& call) { return by_mp(call.args, call.target, call.state); }

}  // namespace

JustificationRegistry::JustificationRegistry() {
  table_.emplace("at_once", at_once_justification);
  table_.emplace("mp", mp_justification);
}

void JustificationRegistry::add(const std::string& name, Justification fn) {
  if (!table_.emplace(name, std::move(fn)).second) throw TacticError("justification " + name + " already registered");
}

const Justification& JustificationRegistry::lookup(const std::string& name) const {
  auto it = table_.find(name);
  if (it == table_.end()) throw TacticError("unknown justification " + name);
  return it->second;
}

JustificationRegistry register_justification(JustificationRegistry reg, const std::string& name, Justification fn) {
  reg.add(name, std::move(fn));
  return reg;
}

GoalState set_goal(const Formula& f) {
  GoalState st{{Subgoal{{}, f}}, [](const std::vector<Theorem>& ths) { return ths.at(0); }, f, 0};
  return st;
}

std::vector<std::pair<std::string, Theorem>> assumps(const std::vector<Assumption>& asl) {
  if (asl.empty()) throw TacticError("assumps: no assumptions");
  std::vector<Formula> fs;
  for (const auto& a : asl) fs.push_back(a.second);
  auto ths = conj_projections(fs);
  std::vector<std::pair<std::string, Theorem>> out;
  for (std::size_t i = 0; i < asl.size(); ++i) out.emplace_back(asl[i].first, ths[i]);
  return out;
}

GoalState conj_intro_tac(const GoalState& st) {
  const Subgoal& g = first_goal(st, "conj_intro_tac");
  if (!g.target.is(FormulaKind::And)) throw TacticError("conj_intro_tac: goal is not a conjunction");
  const Formula p = g.target.lhs(), q = g.target.rhs();
  const bool bare = g.assumptions.empty();
  return refine(st, {Subgoal{g.assumptions, p}, Subgoal{g.assumptions, q}},
                [p, q, bare](const std::vector<Theorem>& ths) {
                  if (bare) return modus_ponens(modus_ponens(and_pair(p, q), ths[0]), ths[1]);
                  return conj_intro(ths[0], ths[1]);
                });
}

GoalState assume_tac(const std::string& label, const Formula& p, const GoalState& st) {
  const Subgoal& g = first_goal(st, "assume");
  if (!g.target.is(FormulaKind::Imp)) throw TacticError("assume: goal is not an implication: " + print_formula(g.target));
  if (g.target.lhs() != p)
    throw TacticError("assume: " + print_formula(p) + " does not match the antecedent " + print_formula(g.target.lhs()));
  GoalState base = st;
  std::string name = label;
  if (name.empty()) name = "#" + std::to_string(++base.anonymous);
  check_fresh(g, name);
  Subgoal next = g;
  next.assumptions.emplace_back(name, p);
  next.target = g.target.rhs();
  std::vector<Formula> asm_fs = g.formulas();
  return refine(base, {next}, [asm_fs, p](const std::vector<Theorem>& ths) {
    if (asm_fs.empty()) return ths[0];
    return pull_last(asm_fs, p, ths[0]);
  });
}

GoalState fix_tac(const std::string& x, const GoalState& st) {
  const Subgoal& g = first_goal(st, "fix");
  if (!g.target.is(FormulaKind::Forall)) throw TacticError("fix: goal is not universal: " + print_formula(g.target));
  if (!is_identifier(x)) throw TacticError("fix: not a variable name: " + x);
  const Formula all = g.target;
  const std::string& y = all.name();
  if (x != y && all.free_vars().count(x))
    throw TacticError("fix: " + x + " is free in the goal " + print_formula(all));
  for (const auto& [label, f] : g.assumptions)
    if (f.free_vars().count(x)) throw TacticError("fix: " + x + " is free in assumption " + label);
  Subgoal next = g;
  next.target = subst(all.body(), y, Term::var(x));
  const Formula body = next.target;
  const bool bare = g.assumptions.empty();
  return refine(st, {next}, [x, y, all, body, bare](const std::vector<Theorem>& ths) {
    if (x == y) return bare ? generalize(x, ths[0]) : gen_right(x, ths[0]);
    // |- (forall x. body) ==> forall y. p
    Theorem back = gen_right(y, ispec(Term::var(y), Formula::forall(x, body)));
    if (consequent(back.conclusion()) != all) throw TacticError("fix: cannot rename the bound variable");
    if (bare) return modus_ponens(back, generalize(x, ths[0]));
    return imp_trans(gen_right(x, ths[0]), back);
  });
}

GoalState take_tac(const Term& t, const GoalState& st) {
  const Subgoal& g = first_goal(st, "take");
  if (!g.target.is(FormulaKind::Exists)) throw TacticError("take: goal is not existential: " + print_formula(g.target));
  const std::string x = g.target.name();
  const Formula p = g.target.body();
  Subgoal next = g;
  next.target = subst(p, x, t);
  const bool bare = g.assumptions.empty();
  return refine(st, {next}, [x, p, t, bare](const std::vector<Theorem>& ths) {
    Theorem intro = exists_intro_th(x, p, t);
    return bare ? modus_ponens(intro, ths[0]) : imp_trans(ths[0], intro);
  });
}

GoalState have_tac(const std::string& label, const Formula& p, const Justified& just,
                   const std::optional<Formula>& so_fact, const GoalState& st, const LemmaEnv& lemmas,
                   const Budget& budget) {
  const Subgoal& g = first_goal(st, "have");
  GoalState base = st;
  std::string name = label;
  if (name.empty()) name = "#" + std::to_string(++base.anonymous);
  check_fresh(g, name);
  Subgoal want{g.assumptions, p};
  Theorem pth = check_discharge(just.just(JustificationCall{just.args, so_fact, p, st, lemmas, budget}), want, "have");
  Subgoal next = g;
  next.assumptions.emplace_back(name, p);
  return refine(base, {next}, [g, p, pth](const std::vector<Theorem>& ths) { return cut(g, p, ths[0], pth); });
}

GoalState show_tac(const Formula& p, const Justified& just, const std::optional<Formula>& so_fact,
                   const GoalState& st, const LemmaEnv& lemmas, const Budget& budget) {
  const Subgoal& g = first_goal(st, "show");
  if (p != g.target)
    throw TacticError("show: stated formula differs from the goal: " + print_formula(p) + " vs " +
                      print_formula(g.target));
  Theorem th = just.just(JustificationCall{just.args, so_fact, p, st, lemmas, budget});
  return discharge_first(check_discharge(th, g, "show"), st);
}

GoalState discharge_first(const Theorem& th, const GoalState& st) {
  const Subgoal& g = first_goal(st, "discharge");
  check_discharge(th, g, "discharge");
  return refine(st, {}, [th](const std::vector<Theorem>&) { return th; });
}

Theorem by_mp(const std::vector<std::string>& args, const Formula& p, const GoalState& st) {
  static const char* unapplicable = "by_mp: unapplicable assumptions";
  if (args.size() != 2 || st.subgoals.empty() || st.subgoals.front().assumptions.empty())
    throw TacticError(unapplicable);
  auto ths = assumps(st.subgoals.front().assumptions);
  auto find = [&](const std::string& label) -> const Theorem& {
    for (const auto& [l, th] : ths)
      if (l == label) return th;
    throw TacticError(unapplicable);
  };
  const Theorem& ab = find(args[0]);
  const Theorem& a = find(args[1]);
  std::optional<Theorem> r;
  try {
    r = right_mp(ab, a);
  } catch (const Error&) {
    throw TacticError(unapplicable);
  }
  if (consequent(r->conclusion()) != p) throw TacticError("by_mp: wrong conclusion");
  return *r;
}

Theorem lift_to_ambient(const Theorem& th, const Subgoal& goal, const std::vector<std::string>& used,
                        const std::optional<Formula>& so_fact, const LemmaEnv& lemmas) {
  std::vector<Fact> facts;
  if (so_fact) facts.push_back({*so_fact, std::nullopt});
  for (const auto& label : used) {
    if (const Formula* f = goal.lookup(label)) {
      facts.push_back({*f, std::nullopt});
    } else if (auto it = lemmas.find(label); it != lemmas.end()) {
      facts.push_back({it->second.conclusion(), it->second});
    } else {
      throw TacticError("unknown label " + label);
    }
  }
  return lift_to_ambient(th, goal.formulas(), facts);
}

Theorem extract_theorem(const GoalState& st) {
  if (!st.subgoals.empty())
    throw TacticError("qed: unproven subgoals remain (" + std::to_string(st.subgoals.size()) + ")");
  Theorem th = st.compose({});
  if (th.conclusion() != st.original) throw TacticError("qed: conclusion mismatch");
  return th;
}

}  // namespace spa
