// Command-line front end: runs the proof pipeline (or a prefix of it) on the
// built-in cases or a JSON case file.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cyclodio/cyclodio.hpp"

namespace {

using namespace cyclodio;

struct Args {
  std::string case_id;
  std::string config;
  std::size_t depth = 502;
  std::string K;
  mpfr_prec_t precision = kPrecisionFloor;
  long search_max = 500;
  std::string json_path;
  std::string format = "text";
  std::string conjugates = "all";
  bool sequential = false;
};

void add_common(CLI::App* sub, Args& a, bool single_case) {
  if (single_case) {
    sub->add_option("--case", a.case_id, "built-in case: 15-41, 15-5581, 10-271");
    sub->add_option("--config", a.config, "JSON case file (instead of --case)");
  }
  sub->add_option("--depth", a.depth, "p-adic digit indices to scan")->check(CLI::PositiveNumber);
  sub->add_option("--K", a.K, "first-round lattice scaling, e.g. 1e39 or 10^43");
  sub->add_option("--precision-bits", a.precision, "starting working precision")->check(CLI::Range(64, 1 << 16));
  sub->add_option("--search-max", a.search_max, "direct search covers n <= max(this, final bound)")->check(CLI::NonNegativeNumber);
  sub->add_option("--json", a.json_path, "also write the JSON report to this file");
  sub->add_option("--format", a.format, "stdout format: text or json");
  sub->add_option("--conjugates", a.conjugates, "conjugate choices for the lattices: all or preferred");
}

SolveOptions to_options(const Args& a, Stage stop) {
  SolveOptions o;
  o.depth = a.depth;
  o.precision_bits = a.precision;
  o.search_max = a.search_max;
  o.stop_after = stop;
  if (!a.K.empty()) {
    mpq_class k = parse_decimal(a.K);
    if (k.get_den() != 1 || k < 1) throw ConfigError("--K must be a positive integer");
    o.K = k.get_num();
  }
  if (a.conjugates == "all")
    o.choices = ChoiceMode::All;
  else if (a.conjugates == "preferred")
    o.choices = ChoiceMode::Preferred;
  else
    throw ConfigError("--conjugates must be 'all' or 'preferred'");
  if (a.format != "text" && a.format != "json") throw ConfigError("unknown --format '" + a.format + "' (expected text or json)");
  return o;
}

std::vector<CaseConfig> selected_cases(const Args& a, bool all) {
  if (all) {
    std::vector<CaseConfig> out;
    for (const auto& id : builtin_case_ids()) out.push_back(builtin_case(id));
    return out;
  }
  if (!a.config.empty() && !a.case_id.empty()) throw ConfigError("give either --case or --config, not both");
  if (!a.config.empty()) return {load_case_file(a.config)};
  if (a.case_id.empty()) throw ConfigError("no case selected (use --case or --config)");
  return {builtin_case(a.case_id)};
}

int emit(const std::vector<SolveReport>& reps, const Args& a, bool full) {
  if (a.format == "json") {
    if (reps.size() == 1) {
      std::cout << emit_report(reps[0], "json");
    } else {
      ordered_json arr = ordered_json::array();
      for (const auto& r : reps) arr.push_back(report_json(r));
      std::cout << arr.dump(2) << "\n";
    }
  } else {
    for (const auto& r : reps) std::cout << emit_report(r, "text");
  }
  if (!a.json_path.empty()) {
    std::ofstream out(a.json_path);
    if (!out) throw ConfigError("cannot write '" + a.json_path + "'");
    if (reps.size() == 1) {
      out << emit_report(reps[0], "json");
    } else {
      ordered_json arr = ordered_json::array();
      for (const auto& r : reps) arr.push_back(report_json(r));
      out << arr.dump(2) << "\n";
    }
    if (!out) throw ConfigError("failed writing '" + a.json_path + "'");
  }
  for (const auto& r : reps) {
    if (full && r.verdict != kVerdictNone) return 1;
    if (!full && r.failed_stage) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified solver for Phi_m(x) + 1 = 2 p^n"};
  app.require_subcommand(1);
  Args args;
  struct Sub {
    const char* name;
    const char* help;
    Stage stop;
    bool all;
  };
  const std::vector<Sub> subs = {
      {"verify", "re-check the field data", Stage::Verify, false},
      {"scan", "p-adic lower bound on n", Stage::PAdic, false},
      {"bound", "constants and the Matveev bound", Stage::Matveev, false},
      {"reduce", "lattice reduction of the bound", Stage::Reduction, false},
      {"solve", "full pipeline with verdict", Stage::Search, false},
      {"all", "full pipeline on every built-in case", Stage::Search, true},
  };
  std::vector<CLI::App*> handles;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, args, !s.all);
    if (s.all) sub->add_flag("--sequential", args.sequential, "run the cases one after another");
    handles.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!handles[i]->parsed()) continue;
      const SolveOptions opt = to_options(args, subs[i].stop);
      const auto cfgs = selected_cases(args, subs[i].all);
      const auto reps = solve_all(cfgs, opt, subs[i].all && !args.sequential);
      return emit(reps, args, subs[i].stop == Stage::Search);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
