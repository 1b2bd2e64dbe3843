// spa: command-line front end.
//   check <file> [--json]     check a proof script
//   prove "<formula>"         run the `at once` prover
//   parse "<formula>"         pretty-print a formula
//   models "<formula>"        search small countermodels
//   serve [--port P]          start the HTTP checking service
// Exit codes: 0 success, 1 proof or parse failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "spa/script.hpp"
#include "spa/semantics.hpp"
#include "spa/service.hpp"

#ifndef SPA_EXAMPLES_DIR
#define SPA_EXAMPLES_DIR "examples"
#endif

namespace {

constexpr int kUsage = 2;

void print_human(const spa::Report& report, std::ostream& out) {
  for (const auto& lemma : report.lemmas) {
    if (lemma.name.empty()) {
      for (const auto& s : lemma.steps) out << "line " << s.line << ": error: " << s.message.value_or("") << "\n";
      continue;
    }
    out << "lemma " << lemma.name << ": " << (lemma.complete ? "complete" : "INCOMPLETE") << "\n";
    for (const auto& s : lemma.steps) {
      if (s.status == spa::StepStatus::Error) {
        out << "  line " << s.line << ": error: " << s.message.value_or("") << "\n";
        for (const auto& g : s.goals) {
          for (const auto& [label, f] : g.assumptions) out << "      " << label << ": " << f << "\n";
          out << "      |- " << g.target << "\n";
        }
      } else if (s.status == spa::StepStatus::Ok && s.message) {
        out << "  line " << s.line << ": " << *s.message << "\n";
      }
    }
    if (lemma.theorem) out << "  |- " << spa::print_formula(lemma.theorem->conclusion()) << "\n";
  }
}

int cmd_check(const std::string& file, bool as_json) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "spa: cannot read " << file << "\n";
    return kUsage;
  }
  std::ostringstream text;
  text << in.rdbuf();
  spa::Report report = spa::check_text(text.str());
  if (as_json) {
    std::cout << spa::to_json(report).dump(2) << "\n";
  } else {
    print_human(report, std::cout);
  }
  return report.complete ? 0 : 1;
}

int cmd_prove(const std::string& text, long steps, int depth) {
  try {
    spa::Budget budget;
    if (steps > 0) budget.max_steps = steps;
    if (depth > 0) budget.max_branch_depth = depth;
    spa::Theorem th = spa::at_once({}, spa::parse_formula(text), budget);
    std::cout << "|- " << spa::print_formula(th.conclusion()) << "\n";
    return 0;
  } catch (const spa::BudgetExceeded& e) {
    std::cout << "BudgetExceeded: " << e.what() << "\n";
  } catch (const spa::Error& e) {
    std::cout << "error: " << e.what() << "\n";
  }
  return 1;
}

int cmd_parse(const std::string& text) {
  try {
    std::cout << spa::print_formula(spa::parse_formula(text)) << "\n";
    return 0;
  } catch (const spa::Error& e) {
    std::cout << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_models(const std::string& text, int max_size) {
  try {
    auto cm = spa::find_countermodel(spa::parse_formula(text), max_size);
    if (!cm) {
      std::cout << "no countermodel up to " << max_size << "\n";
      return 0;
    }
    std::cout << "countermodel:\n" << spa::describe(*cm);
    return 1;
  } catch (const spa::Error& e) {
    std::cout << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_serve(int port, const std::string& examples) {
  httplib::Server server;
  spa::install_routes(server, examples);
  std::cerr << "spa: serving on http://0.0.0.0:" << port << " (examples from " << examples << ")\n";
  if (!server.listen("0.0.0.0", port)) {
    std::cerr << "spa: cannot listen on port " << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spa: a small LCF-style proof assistant"};
  app.require_subcommand(1);

  std::string file, formula, examples = SPA_EXAMPLES_DIR;
  bool as_json = false;
  long steps = 0;
  int depth = 0, max_size = 2, port = spa::port_from_env();

  auto* check = app.add_subcommand("check", "check a proof script");
  check->add_option("file", file, "script file")->required();
  check->add_flag("--json", as_json, "print the report as JSON");

  auto* prove = app.add_subcommand("prove", "prove a formula with `at once`");
  prove->add_option("formula", formula, "formula")->required();
  prove->add_option("--budget", steps, "maximum expansion steps")->check(CLI::PositiveNumber);
  prove->add_option("--depth", depth, "maximum branch depth")->check(CLI::PositiveNumber);

  auto* parse = app.add_subcommand("parse", "parse and pretty-print a formula");
  parse->add_option("formula", formula, "formula")->required();

  auto* models = app.add_subcommand("models", "search countermodels over small domains");
  models->add_option("formula", formula, "formula")->required();
  models->add_option("--max-size", max_size, "largest domain size")->check(CLI::Range(1, 6));

  auto* serve = app.add_subcommand("serve", "start the HTTP checking service");
  serve->add_option("--port", port, "port (default $SPA_PORT or 7423)")->check(CLI::Range(1, 65535));
  serve->add_option("--examples", examples, "directory of example scripts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  if (*check) return cmd_check(file, as_json);
  if (*prove) return cmd_prove(formula, steps, depth);
  if (*parse) return cmd_parse(formula);
  if (*models) return cmd_models(formula, max_size);
  if (*serve) return cmd_serve(port, examples);
  return kUsage;
}
