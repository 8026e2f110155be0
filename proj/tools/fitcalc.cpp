// fitcalc: Fitting ideals of pushforwards of map-germs (C^n,0) -> (C^{n+1},0).
//
//   fitcalc run <file> [--task T]... [--budget N] [--format text|structured] [-o out]
//   fitcalc emit <file> --dialect singular|macaulay2
//
// Exit codes: 0 ok, 2 parse error, 3 computation error, 4 budget exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fitcalc/problem.hpp"

namespace {

enum Exit { kOk = 0, kParse = 2, kCompute = 3, kBudget = 4 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fitcalc::ParseError("cannot read '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fitcalc::Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fitting ideals of pushforwards of finite map-germs"};
  app.require_subcommand(1);

  std::string file, format, output, dialect;
  std::vector<std::string> tasks;
  unsigned long long budget = 0;

  auto* run = app.add_subcommand("run", "compute the requested ideals and print a report");
  run->add_option("file", file, "problem file (sectioned text or JSON)")->required();
  run->add_option("--task", tasks, "task(s) overriding the file: image, fitting1, tower, presentation, double-points, consistency")
      ->delimiter(',');
  run->add_option("--budget", budget, "Groebner reduction-step budget");
  run->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  run->add_option("-o,--output", output, "write the report here instead of stdout");

  auto* emit = app.add_subcommand("emit", "print a cross-check script for an external system");
  emit->add_option("file", file, "problem file")->required();
  emit->add_option("--dialect", dialect, "singular (elimination) or macaulay2 (kernel)")
      ->required()
      ->check(CLI::IsMember({"singular", "elimination", "macaulay2", "kernel"}));
  emit->add_option("-o,--output", output, "write the script here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  fitcalc::ProblemSpec spec;
  try {
    spec = fitcalc::parse_problem(slurp(file));
    for (const auto& t : tasks)
      if (std::find(fitcalc::known_tasks().begin(), fitcalc::known_tasks().end(), t) == fitcalc::known_tasks().end())
        throw fitcalc::ParseError("unknown task '" + t + "'", 0);
    if (!tasks.empty()) spec.tasks = tasks;
    if (budget) spec.budget = budget;
    if (!format.empty()) spec.format = format;
  } catch (const fitcalc::ParseError& e) {
    std::cerr << "fitcalc: parse error: " << file << ": " << e.what() << '\n';
    return kParse;
  } catch (const fitcalc::Error& e) {
    std::cerr << "fitcalc: parse error: " << file << ": " << e.what() << '\n';
    return kParse;
  }

  try {
    if (emit->parsed()) {
      write_out(output, fitcalc::emit_crosscheck(spec, dialect));
      return kOk;
    }
    fitcalc::Report rep = fitcalc::run_problem(spec);
    if (spec.format == "structured")
      write_out(output, fitcalc::render_structured(rep).dump(2) + "\n");
    else
      write_out(output, fitcalc::render_text(rep));
    return kOk;
  } catch (const fitcalc::BudgetExceeded& e) {
    std::cerr << "fitcalc: budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const fitcalc::Error& e) {
    std::cerr << "fitcalc: computation error: " << e.what() << '\n';
    return kCompute;
  }
}
