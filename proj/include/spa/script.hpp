// Declarative proof scripts:
//
//   lemma swap: "A /\ B ==> B /\ A"
//   proof
//     assume h: "A /\ B"
//     split
//     show "B" by h
//     show "A" by h
//   qed
//
// Formulas are quoted. A step without a justification is checked `at once`.
// `--` starts a comment that runs to the end of the line.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spa/tactics.hpp"
#include "json.hpp"

namespace spa {

struct Step;

struct JustSpec {
  enum class Kind { AtOnce, By, Named, Nested } kind = Kind::AtOnce;
  std::string name;                 // Named: registry entry, e.g. "mp"
  std::vector<std::string> labels;  // By and Named arguments
  std::vector<Step> proof;          // Nested
  int qed_line = 0;
};

struct Step {
  enum class Kind { Assume, Fix, Take, Split, Have, Show, Subproof } kind = Kind::Split;
  int line = 0;
  int column = 0;
  bool so = false;
  std::string label;
  std::optional<Formula> formula;
  std::vector<std::string> vars;
  std::optional<Term> term;
  JustSpec just;  // Subproof keeps its steps in just.proof
};

struct LemmaAst {
  std::string name;
  Formula statement;
  int line = 0;
  std::vector<Step> steps;
  int qed_line = 0;
};

struct ProofScript {
  std::vector<LemmaAst> lemmas;
};

/// Throws ParseError carrying the source position.
ProofScript parse_script(std::string_view text);

enum class StepStatus { Ok, Error, Unchecked };
std::string to_string(StepStatus s);

struct GoalSnapshot {
  std::vector<std::pair<std::string, std::string>> assumptions;
  std::string target;
};

struct StepReport {
  int line = 0;
  StepStatus status = StepStatus::Unchecked;
  std::optional<std::string> message;
  std::vector<GoalSnapshot> goals;
};

struct LemmaReport {
  std::string name;
  std::vector<StepReport> steps;
  bool complete = false;
  std::optional<Theorem> theorem;
};

struct Report {
  bool complete = false;
  std::vector<LemmaReport> lemmas;
};

/// Checks every lemma in order. Completed lemmas are added to `env`, so later
/// lemmas may cite them in `by` lists. Failures never escape a lemma.
Report run_script(LemmaEnv& env, const ProofScript& script, const JustificationRegistry& registry = {},
                  const Budget& budget = {});

/// Parse and run. A parse error yields one unnamed lemma holding one error entry.
Report check_text(std::string_view text, const Budget& budget = {});

nlohmann::json to_json(const Report& report);

}  // namespace spa
