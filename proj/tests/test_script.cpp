#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "spa/script.hpp"

using namespace spa;

namespace {

std::string read_example(const std::string& name) {
  std::ifstream in(std::string(SPA_EXAMPLES_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) out.push_back(line);
  return out;
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::vector<StepStatus> statuses(const LemmaReport& l) {
  std::vector<StepStatus> out;
  for (const auto& s : l.steps) out.push_back(s.status);
  return out;
}

// At most one error per lemma, and nothing but unchecked entries after it.
bool unchecked_after_error(const Report& r) {
  for (const auto& l : r.lemmas) {
    bool seen_error = false;
    for (const auto& s : l.steps) {
      if (seen_error && s.status != StepStatus::Unchecked) return false;
      if (s.status == StepStatus::Error) seen_error = true;
    }
  }
  return true;
}

const char* kMinimal = "lemma t: \"P() ==> P()\" proof assume h: \"P()\" show \"P()\" by h qed";

}  // namespace

TEST_CASE("a minimal lemma reports each step plus qed") {
  Report r = check_text(kMinimal);
  CHECK(r.complete);
  REQUIRE(r.lemmas.size() == 1);
  CHECK(r.lemmas[0].name == "t");
  CHECK(r.lemmas[0].steps.size() == 3);
  for (const auto& s : r.lemmas[0].steps) CHECK(s.status == StepStatus::Ok);
  REQUIRE(r.lemmas[0].theorem);
  CHECK(r.lemmas[0].theorem->conclusion() == parse_formula("P() ==> P()"));

  ProofScript script = parse_script(kMinimal);
  REQUIRE(script.lemmas.size() == 1);
  CHECK(script.lemmas[0].steps.size() == 2);
}

TEST_CASE("goal snapshots follow the proof") {
  Report r = check_text("lemma t: \"A ==> A\"\nproof\n  assume h: \"A\"\n  show \"A\" by h\nqed\n");
  const auto& steps = r.lemmas.at(0).steps;
  REQUIRE(steps.size() == 3);
  CHECK(steps[0].line == 3);
  REQUIRE(steps[0].goals.size() == 1);
  REQUIRE(steps[0].goals[0].assumptions.size() == 1);
  CHECK(steps[0].goals[0].assumptions[0] == std::pair<std::string, std::string>{"h", "A"});
  CHECK(steps[0].goals[0].target == "A");
  CHECK(steps[1].goals.empty());
  CHECK(steps[2].line == 5);
}

TEST_CASE("parse errors") {
  Report missing = check_text("lemma t: \"P() ==> P()\"\nproof\n  assume h: \"P()\"\n  show \"P()\" by h\n");
  CHECK_FALSE(missing.complete);
  REQUIRE(missing.lemmas.size() == 1);
  REQUIRE(missing.lemmas[0].steps.size() == 1);
  CHECK(missing.lemmas[0].steps[0].status == StepStatus::Error);
  CHECK(missing.lemmas[0].steps[0].line == 5);
  CHECK(missing.lemmas[0].steps[0].message->find("end of input") != std::string::npos);

  try {
    parse_script("lemma t: \"P() ==> P()\"\nproof\n  assume h: \"P() /\\\"\nqed\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 13);
  }
  CHECK_THROWS_AS(parse_script("lemma a: \"A ==> A\" proof qed lemma a: \"A ==> A\" proof qed"), ParseError);
  CHECK_THROWS_AS(parse_script("lemma t: \"A\" proof have \"A\" by qed"), ParseError);
  CHECK_THROWS_AS(parse_script("lemma t: \"A\" proof frobnicate qed"), ParseError);
  CHECK_THROWS_AS(parse_script("lemma t: \"A proof qed"), ParseError);
}

TEST_CASE("pelletier 43 checks end to end") {
  std::string text = read_example("pelletier43.spa");
  REQUIRE_FALSE(text.empty());
  Report r = check_text(text);
  CHECK(r.complete);
  REQUIRE(r.lemmas.size() == 1);
  for (const auto& s : r.lemmas[0].steps) CHECK(s.status == StepStatus::Ok);
  REQUIRE(r.lemmas[0].theorem);
  ProofScript script = parse_script(text);
  CHECK(r.lemmas[0].theorem->conclusion() == script.lemmas[0].statement);
  CHECK(print_formula(r.lemmas[0].theorem->conclusion()) == print_formula(script.lemmas[0].statement));

  std::string crlf;
  for (char c : text) crlf += c == '\n' ? std::string("\r\n") : std::string(1, c);
  CHECK(check_text(crlf).complete);
}

TEST_CASE("removing the citation of A fails exactly that step") {
  auto lines = lines_of(read_example("pelletier43.spa"));
  REQUIRE(lines.size() >= 14);
  const std::string cited = "      so have \"forall z. P(z,x) <=> P(z,y)\" by A";
  REQUIRE(lines[13] == cited);
  lines[13] = "      so have \"forall z. P(z,x) <=> P(z,y)\"";
  Report r = check_text(join(lines));
  CHECK_FALSE(r.complete);
  const auto& steps = r.lemmas.at(0).steps;
  std::size_t err = 0;
  while (err < steps.size() && steps[err].status == StepStatus::Ok) ++err;
  REQUIRE(err < steps.size());
  CHECK(steps[err].status == StepStatus::Error);
  CHECK(steps[err].line == 14);
  CHECK(steps[err].message.has_value());
  CHECK(err > 0);
  for (std::size_t i = err + 1; i < steps.size(); ++i) CHECK(steps[i].status == StepStatus::Unchecked);
  CHECK(steps.back().line == 27);
}

TEST_CASE("pelletier 34 checks with by mp at several sites") {
  std::string text = read_example("pelletier34.spa");
  REQUIRE_FALSE(text.empty());
  auto lines = lines_of(text);
  CHECK(lines.size() >= 75);
  CHECK(lines.size() <= 250);
  std::regex mp(R"(by\s+mp\s*\()");
  auto sites = std::distance(std::sregex_iterator(text.begin(), text.end(), mp), std::sregex_iterator());
  CHECK(sites >= 4);

  Report r = check_text(text);
  CHECK(r.complete);
  ProofScript script = parse_script(text);
  REQUIRE(r.lemmas.size() == script.lemmas.size());
  for (std::size_t i = 0; i < r.lemmas.size(); ++i) {
    CAPTURE(r.lemmas[i].name);
    REQUIRE(r.lemmas[i].theorem);
    CHECK(r.lemmas[i].theorem->conclusion() == script.lemmas[i].statement);
  }
}

TEST_CASE("reports are deterministic") {
  for (const char* name : {"pelletier43.spa", "pelletier34.spa"}) {
    std::string text = read_example(name);
    CHECK(to_json(check_text(text)).dump() == to_json(check_text(text)).dump());
  }
}

TEST_CASE("json layout") {
  nlohmann::json j = to_json(check_text(kMinimal));
  CHECK(j["complete"] == true);
  REQUIRE(j["lemmas"].size() == 1);
  const auto& step = j["lemmas"][0]["steps"][0];
  CHECK(step["line"] == 1);
  CHECK(step["status"] == "ok");
  CHECK(step["message"].is_null());
  CHECK(step["goals"][0]["assumptions"][0]["label"] == "h");
  CHECK(step["goals"][0]["target"] == "P");
}

TEST_CASE("so needs a preceding fact") {
  Report first = check_text("lemma t: \"A ==> A\" proof so have \"A\" at once qed");
  CHECK(statuses(first.lemmas[0]) == std::vector<StepStatus>{StepStatus::Error, StepStatus::Unchecked});
  CHECK(first.lemmas[0].steps[0].message->find("so:") == 0);

  Report after_fix = check_text("lemma t: \"forall x. P(x) ==> P(x)\" proof fix x so show \"P(x) ==> P(x)\" qed");
  CHECK(statuses(after_fix.lemmas[0]) ==
        std::vector<StepStatus>{StepStatus::Ok, StepStatus::Error, StepStatus::Unchecked});

  Report chained = check_text(
      "lemma t: \"A /\\ B ==> B\" proof assume \"A /\\ B\" so have \"B\" so show \"B\" qed");
  CHECK(chained.complete);
}

TEST_CASE("earlier lemmas can be cited") {
  const char* text =
      "lemma refl: \"forall x. P(x) ==> P(x)\"\n"
      "proof\n  fix x\n  assume h: \"P(x)\"\n  show \"P(x)\" by h\nqed\n"
      "lemma inst: \"P(c()) ==> P(c())\"\n"
      "proof\n  show \"P(c()) ==> P(c())\" by refl\nqed\n";
  Report r = check_text(text);
  CHECK(r.complete);
  REQUIRE(r.lemmas.size() == 2);
  CHECK(r.lemmas[1].theorem->conclusion() == parse_formula("P(c()) ==> P(c())"));

  // A failed lemma is not available afterwards.
  std::string broken = text;
  broken.replace(broken.find("by h"), 4, "by nope");
  Report b = check_text(broken);
  CHECK_FALSE(b.complete);
  CHECK_FALSE(b.lemmas[0].theorem);
  CHECK(b.lemmas[1].steps[0].status == StepStatus::Error);
}

TEST_CASE("unfinished proofs and mismatches") {
  Report open = check_text("lemma t: \"A ==> A\" proof qed");
  REQUIRE(open.lemmas[0].steps.size() == 1);
  CHECK(open.lemmas[0].steps[0].status == StepStatus::Error);
  CHECK(open.lemmas[0].steps[0].message->find("unproven subgoals") != std::string::npos);

  Report wrong = check_text("lemma t: \"A ==> A\" proof assume h: \"A\" show \"B\" by h qed");
  CHECK(wrong.lemmas[0].steps[1].status == StepStatus::Error);
  CHECK(wrong.lemmas[0].steps[1].message->find("show: stated formula differs") == 0);

  Report free = check_text("lemma t: \"P(x) ==> P(x)\" proof assume h: \"P(x)\" show \"P(x)\" by h qed");
  CHECK(free.complete);
  REQUIRE(free.lemmas[0].steps.back().message);
  CHECK(free.lemmas[0].steps.back().message->find("warning") != std::string::npos);
}

TEST_CASE("nested blocks report their steps before the enclosing step") {
  const char* text =
      "lemma t: \"A /\\ B ==> B /\\ A\"\n"
      "proof\n"
      "  assume h: \"A /\\ B\"\n"
      "  split\n"
      "  show \"B\"\n"
      "  proof\n"
      "    show \"B\" by h\n"
      "  qed\n"
      "  show \"A\" by h\n"
      "qed\n";
  Report r = check_text(text);
  CHECK(r.complete);
  std::vector<int> lines;
  for (const auto& s : r.lemmas[0].steps) lines.push_back(s.line);
  CHECK(lines == std::vector<int>{3, 4, 7, 5, 9, 10});
}

TEST_CASE("unchecked after error holds under 50 mutations") {
  std::mt19937 rng(1234);
  const std::vector<std::string> sources{read_example("pelletier43.spa"), read_example("pelletier34.spa")};
  const std::regex step(R"(^\s*(assume|fix|take|split|so|have|show)\b)");
  int mutated = 0, failing = 0;
  while (mutated < 50) {
    const std::string& source = sources[static_cast<std::size_t>(mutated % 2 == 0 ? 0 : 1)];
    auto lines = lines_of(source);
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (std::regex_search(lines[i], step)) candidates.push_back(i);
    REQUIRE_FALSE(candidates.empty());
    std::size_t at = candidates[rng() % candidates.size()];
    std::string& line = lines[at];
    switch (rng() % 4) {
      case 0: lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(at)); break;
      case 1: {
        auto q = line.find("(x");
        if (q == std::string::npos) continue;
        line.replace(q, 2, "(y");
        break;
      }
      case 2: {
        auto j = line.find(" by ");
        if (j == std::string::npos) j = line.find(" at once");
        if (j == std::string::npos) continue;
        line.erase(j);
        line += " by nosuchlabel";
        break;
      }
      default: line = "  split"; break;
    }
    ++mutated;
    Report r = check_text(join(lines));
    if (!r.complete) ++failing;
    INFO("mutated line " << at + 1 << ": " << line);
    CHECK(unchecked_after_error(r));
    for (const auto& l : r.lemmas)
      if (l.complete) CHECK(l.theorem.has_value());
  }
  CHECK(failing > 25);
}
