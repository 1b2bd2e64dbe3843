#include "spa/script.hpp"

namespace spa {

std::string to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Ok: return "ok";
    case StepStatus::Error: return "error";
    case StepStatus::Unchecked: return "unchecked";
  }
  return "unchecked";
}

namespace {

std::vector<GoalSnapshot> snapshot(const GoalState& st) {
  std::vector<GoalSnapshot> out;
  for (const auto& g : st.subgoals) {
    GoalSnapshot s;
    for (const auto& [label, f] : g.assumptions) s.assumptions.emplace_back(label, print_formula(f));
    s.target = print_formula(g.target);
    out.push_back(std::move(s));
  }
  return out;
}

// A state whose single goal is `g`, finished by a theorem discharging g.
GoalState focus(const Subgoal& g, int anonymous) {
  return GoalState{{g}, [](const std::vector<Theorem>& ths) { return ths.at(0); }, g.obligation(), anonymous};
}

Justified fixed(const Theorem& th) {
  return {[th](const JustificationCall&) { return th; }, {}};
}

class Runner {
 public:
  Runner(const LemmaEnv& env, const JustificationRegistry& reg, const Budget& budget, std::vector<StepReport>& out)
      : env_(env), reg_(reg), budget_(budget), out_(out) {}

  bool failed() const { return failed_; }

  GoalState steps(const std::vector<Step>& body, GoalState st) {
    std::optional<Formula> prev;
    for (const auto& s : body) {
      if (failed_) {
        skip(s);
        continue;
      }
      std::optional<Formula> fact;
      try {
        st = step(s, st, prev, fact);
      } catch (const Error& e) {
        if (failed_) {  // a nested step already reported the error
          out_.push_back({s.line, StepStatus::Unchecked, std::nullopt, {}});
          continue;
        }
        out_.push_back({s.line, StepStatus::Error, std::string(e.what()), snapshot(st)});
        failed_ = true;
        continue;
      }
      if (failed_) {
        out_.push_back({s.line, StepStatus::Unchecked, std::nullopt, {}});
        continue;
      }
      out_.push_back({s.line, StepStatus::Ok, std::nullopt, snapshot(st)});
      prev = fact;
    }
    return st;
  }

  void skip(const Step& s) {
    for (const auto& c : s.just.proof) skip(c);
    out_.push_back({s.line, StepStatus::Unchecked, std::nullopt, {}});
  }

 private:
  GoalState step(const Step& s, const GoalState& st, const std::optional<Formula>& prev,
                 std::optional<Formula>& fact) {
    std::optional<Formula> so_fact;
    if (s.so) {
      if (!prev) throw TacticError("so: the previous step provides no fact");
      so_fact = prev;
    }
    switch (s.kind) {
      case Step::Kind::Assume:
        fact = s.formula;
        return assume_tac(s.label, *s.formula, st);
      case Step::Kind::Fix: {
        GoalState cur = st;
        for (const auto& v : s.vars) cur = fix_tac(v, cur);
        return cur;
      }
      case Step::Kind::Take: return take_tac(*s.term, st);
      case Step::Kind::Split: return conj_intro_tac(st);
      case Step::Kind::Subproof: {
        if (st.subgoals.empty()) throw TacticError("proof: no goals left");
        auto th = nested(s.just, st.subgoals.front(), st);
        if (!th) return st;
        return discharge_first(*th, st);
      }
      case Step::Kind::Have:
      case Step::Kind::Show: {
        const bool have = s.kind == Step::Kind::Have;
        if (st.subgoals.empty()) throw TacticError(have ? "have: no goals left" : "show: no goals left");
        const Subgoal& g = st.subgoals.front();
        if (!have && *s.formula != g.target)
          throw TacticError("show: stated formula differs from the goal: " + print_formula(*s.formula) + " vs " +
                            print_formula(g.target));
        Justified just = justified(s.just);
        if (s.just.kind == JustSpec::Kind::Nested) {
          if (so_fact) throw TacticError("so: cannot be combined with a nested proof");
          auto th = nested(s.just, Subgoal{g.assumptions, *s.formula}, st);
          if (!th) return st;
          just = fixed(*th);
        }
        if (have) {
          fact = s.formula;
          return have_tac(s.label, *s.formula, just, so_fact, st, env_, budget_);
        }
        return show_tac(*s.formula, just, so_fact, st, env_, budget_);
      }
    }
    throw TacticError("unknown step");
  }

  Justified justified(const JustSpec& j) const {
    switch (j.kind) {
      case JustSpec::Kind::AtOnce: return {reg_.lookup("at_once"), {}};
      case JustSpec::Kind::By: return {reg_.lookup("at_once"), j.labels};
      case JustSpec::Kind::Named: return {reg_.lookup(j.name), j.labels};
      case JustSpec::Kind::Nested: return {nullptr, {}};
    }
    return {nullptr, {}};
  }

  // Runs a nested block against goal `g`; nullopt when a nested step failed.
  // The block's own completion error is raised to the enclosing step.
  std::optional<Theorem> nested(const JustSpec& j, const Subgoal& g, const GoalState& outer) {
    GoalState done = steps(j.proof, focus(g, outer.anonymous));
    if (failed_) return std::nullopt;
    return extract_theorem(done);
  }

  const LemmaEnv& env_;
  const JustificationRegistry& reg_;
  Budget budget_;
  std::vector<StepReport>& out_;
  bool failed_ = false;
};

}  // namespace

Report run_script(LemmaEnv& env, const ProofScript& script, const JustificationRegistry& registry,
                  const Budget& budget) {
  Report report;
  report.complete = true;
  for (const auto& lemma : script.lemmas) {
    LemmaReport lr;
    lr.name = lemma.name;
    Runner runner(env, registry, budget, lr.steps);
    GoalState st = set_goal(lemma.statement);
    try {
      st = runner.steps(lemma.steps, st);
    } catch (const Error& e) {
      // Defensive: the runner records step failures itself.
      lr.steps.push_back({lemma.line, StepStatus::Error, std::string(e.what()), {}});
    }
    if (runner.failed()) {
      lr.steps.push_back({lemma.qed_line, StepStatus::Unchecked, std::nullopt, {}});
    } else {
      try {
        Theorem th = extract_theorem(st);
        std::optional<std::string> note;
        if (!lemma.statement.free_vars().empty()) {
          std::string vars;
          for (const auto& v : lemma.statement.free_vars()) vars += (vars.empty() ? "" : ", ") + v;
          note = "warning: statement has free variables " + vars;
        }
        lr.steps.push_back({lemma.qed_line, StepStatus::Ok, note, {}});
        lr.complete = true;
        lr.theorem = th;
        env.insert_or_assign(lemma.name, th);
      } catch (const Error& e) {
        lr.steps.push_back({lemma.qed_line, StepStatus::Error, std::string(e.what()), snapshot(st)});
      }
    }
    report.complete = report.complete && lr.complete;
    report.lemmas.push_back(std::move(lr));
  }
  return report;
}

Report check_text(std::string_view text, const Budget& budget) {
  ProofScript script;
  try {
    script = parse_script(text);
  } catch (const ParseError& e) {
    Report r;
    r.complete = false;
    LemmaReport lr;
    lr.steps.push_back({e.line(), StepStatus::Error, std::string(e.what()), {}});
    r.lemmas.push_back(std::move(lr));
    return r;
  }
  LemmaEnv env;
  return run_script(env, script, JustificationRegistry{}, budget);
}

nlohmann::json to_json(const Report& report) {
  using nlohmann::json;
  json lemmas = json::array();
  for (const auto& l : report.lemmas) {
    json steps = json::array();
    for (const auto& s : l.steps) {
      json goals = json::array();
      for (const auto& g : s.goals) {
        json asms = json::array();
        for (const auto& [label, f] : g.assumptions) asms.push_back({{"label", label}, {"formula", f}});
        goals.push_back({{"assumptions", asms}, {"target", g.target}});
      }
      steps.push_back({{"line", s.line},
                       {"status", to_string(s.status)},
                       {"message", s.message ? json(*s.message) : json(nullptr)},
                       {"goals", goals}});
    }
    lemmas.push_back({{"name", l.name}, {"steps", steps}});
  }
  return json{{"complete", report.complete}, {"lemmas", lemmas}};
}

}  // namespace spa
