#include "anhom/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "anhom/oracle.hpp"
#include "anhom/render.hpp"
#include "anhom/scenario.hpp"
#include "anhom/schemes.hpp"

#ifndef ANHOM_SCENARIO_DIR
#define ANHOM_SCENARIO_DIR "scenarios"
#endif

namespace anhom {

namespace {

constexpr const char* kGrammarHelp = R"(input grammar:
  scenario file   histories <label>+ | amplitude <label> <complex> | block <label>+
                  | dmatrix <complex>{n} | precluded <event> | title <text> | # comment
  event           {a c} | {} | a+c
  coevent         0 | term (+ term)*   where term is 1 or a product like a*b*
  complex         -1/2 | 3/2-1/2i | 2i
  observation     <event>=0 | <event>=1
)";

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::filesystem::path resolve_scenario_path(const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(name)) return name;
  const fs::path bundled = fs::path(ANHOM_SCENARIO_DIR) / (name + ".scn");
  if (fs::is_regular_file(bundled)) return bundled;
  throw InputError("cannot open scenario '" + name + "'");
}

Scenario load_scenario(const std::string& name, std::ostream& err) {
  const auto path = resolve_scenario_path(name);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open scenario '" + name + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  ScenarioParse parsed = parse_scenario(buffer.str());
  for (const auto& d : parsed.diagnostics) err << format_diagnostic(d, path.string()) << '\n';
  if (!parsed.ok()) throw InputError("scenario '" + name + "' has errors");
  return std::move(*parsed.scenario);
}

template <typename Fn>
auto parse_or_report(const std::string& what, const std::string& text, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw InputError(what + " '" + text + "': column " + std::to_string(e.column()) + ": " + e.detail());
  }
}

Observation parse_observation(const std::string& text, const SpacePtr& space) {
  const auto eq = text.rfind('=');
  if (eq == std::string::npos) throw InputError("observation '" + text + "' must look like <event>=0 or <event>=1");
  const std::string value = text.substr(eq + 1);
  if (value != "0" && value != "1") throw InputError("observation '" + text + "' must end in =0 or =1");
  const std::string event_text = text.substr(0, eq);
  Event event = parse_or_report("event", event_text, [&] { return parse_event(event_text, space); });
  return {std::move(event), value == "1" ? Bit::one : Bit::zero};
}

struct SolveOptions {
  std::string file;
  std::string scheme;
  std::string format = "text";
  std::string linear_minimality = "nonzero";
  bool timing = false;
};

struct EvalOptions {
  std::string file;
  std::string coevent;
  std::string event;
};

struct InferOptions {
  std::string file;
  std::string scheme;
  std::vector<std::string> given;
  std::string query;
};

struct CheckOptions {
  std::string file;
  bool strong_positivity = false;
  bool classical = false;
  bool oracle = false;
};

Scheme require_scheme(const std::string& text) {
  if (auto s = parse_scheme(text)) return *s;
  throw InputError("unknown scheme '" + text + "' (expected multiplicative, linear or ideal)");
}

SchemeResult run_scheme(Scheme scheme, const PreclusionSet& precluded, LinearMinimality minimality) {
  try {
    if (scheme == Scheme::linear) return linear_scheme(precluded, minimality);
    return solve(scheme, precluded);
  } catch (const GuardExceeded& e) {
    throw InputError(e.what());
  }
}

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load_scenario(o.file, err);
  const Scheme scheme = require_scheme(o.scheme);
  const LinearMinimality minimality = o.linear_minimality == "unital" ? LinearMinimality::among_unital : LinearMinimality::among_nonzero;
  const SchemeResult result = run_scheme(scheme, scenario_preclusions(scenario), minimality);
  RenderOptions render;
  render.format = o.format == "json" ? Format::json : Format::text;
  render.include_timing = o.timing;
  out << render_result(result, render);
  return result.viable() ? kExitOk : kExitNoViableCoevent;
}

int cmd_preclusions(const std::string& file, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load_scenario(file, err);
  for (const Event& e : scenario_preclusions(scenario).events()) out << render_event(e) << '\n';
  return kExitOk;
}

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load_scenario(o.file, err);
  const Coevent phi = parse_or_report("coevent", o.coevent, [&] { return parse_coevent(o.coevent, scenario.space); });
  const Event event = parse_or_report("event", o.event, [&] { return parse_event(o.event, scenario.space); });
  out << (to_bool(evaluate(phi, event)) ? 1 : 0) << '\n';
  return kExitOk;
}

int cmd_infer(const InferOptions& o, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load_scenario(o.file, err);
  const Scheme scheme = require_scheme(o.scheme);
  std::vector<Observation> given;
  for (const auto& g : o.given) given.push_back(parse_observation(g, scenario.space));
  const Event query = parse_or_report("event", o.query, [&] { return parse_event(o.query, scenario.space); });
  const SchemeResult result = run_scheme(scheme, scenario_preclusions(scenario), LinearMinimality::among_nonzero);
  if (!result.viable()) {
    out << "no viable coevent\n";
    return kExitNoViableCoevent;
  }
  out << inference_name(infer(result, given, query)) << '\n';
  return kExitOk;
}

std::string yes_no(bool value) { return value ? "yes" : "no"; }

void oracle_line(std::ostream& out, const std::string& name, std::size_t limit, const SpacePtr& space,
                 const std::function<bool()>& agree) {
  out << "oracle_" << name << ": ";
  if (space->size() > limit) {
    out << "skipped (more than " << limit << " histories)\n";
    return;
  }
  out << (agree() ? "agree" : "DISAGREE") << '\n';
}

int cmd_check(CheckOptions o, std::ostream& out, std::ostream& err) {
  const Scenario scenario = load_scenario(o.file, err);
  if (!o.strong_positivity && !o.classical && !o.oracle) o.strong_positivity = o.classical = o.oracle = true;
  const PreclusionSet precluded = scenario_preclusions(scenario);
  if (o.strong_positivity) {
    if (auto d = scenario_decoherence(scenario)) {
      out << "strong_positivity: " << yes_no(is_strongly_positive(*d)) << '\n';
      out << "null_set_absorption: " << yes_no(null_set_absorption_check(*d)) << '\n';
    } else {
      out << "strong_positivity: n/a (explicit preclusion list)\n";
      out << "null_set_absorption: n/a (explicit preclusion list)\n";
    }
  }
  if (o.classical) out << "classical_preclusion: " << yes_no(is_classical_preclusion(precluded)) << '\n';
  if (o.oracle) {
    const SpacePtr& space = scenario.space;
    oracle_line(out, "multiplicative", oracle::kMaxEnumerationHistories, space,
                [&] { return multiplicative_scheme(precluded).coevents == oracle::brute_multiplicative(precluded); });
    oracle_line(out, "linear", oracle::kMaxEnumerationHistories, space,
                [&] { return linear_scheme(precluded).coevents == oracle::brute_linear(precluded); });
    oracle_line(out, "ideal", oracle::kMaxClosureHistories, space, [&] {
      const SchemeResult r = ideal_scheme(precluded);
      const oracle::MinCover m = oracle::brute_min_cover(precluded);
      return r.generating_sets == m.sets && (!m.feasible || r.total_complexity == m.total_complexity);
    });
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Possible realities (coevents) of finite quantum systems under anhomomorphic logic", "anhom"};
  app.require_subcommand(1);
  app.footer(kGrammarHelp);

  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a coevent scheme for a scenario");
  solve_cmd->add_option("file", solve_opts.file, "Scenario file or bundled scenario name")->required();
  solve_cmd->add_option("--scheme", solve_opts.scheme, "multiplicative | linear | ideal")->required();
  solve_cmd->add_option("--format", solve_opts.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  solve_cmd->add_option("--linear-minimality", solve_opts.linear_minimality,
                        "nonzero (default) | unital (nonstandard: minimize among unital solutions only)")
      ->check(CLI::IsMember({"nonzero", "unital"}));
  solve_cmd->add_flag("--timing", solve_opts.timing, "Report wall time");

  std::string preclusions_file;
  auto* preclusions_cmd = app.add_subcommand("preclusions", "List the precluded events");
  preclusions_cmd->add_option("file", preclusions_file, "Scenario file or bundled scenario name")->required();

  EvalOptions eval_opts;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a coevent on an event");
  eval_cmd->add_option("file", eval_opts.file, "Scenario file or bundled scenario name")->required();
  eval_cmd->add_option("--coevent", eval_opts.coevent, "Polynomial, e.g. \"a*b*\"")->required();
  eval_cmd->add_option("--event", eval_opts.event, "Event, e.g. \"{a c}\"")->required();

  InferOptions infer_opts;
  auto* infer_cmd = app.add_subcommand("infer", "Anhomomorphic inference over the admissible coevents");
  infer_cmd->add_option("file", infer_opts.file, "Scenario file or bundled scenario name")->required();
  infer_cmd->add_option("--scheme", infer_opts.scheme, "multiplicative | linear | ideal")->required();
  infer_cmd->add_option("--given", infer_opts.given, "Observation <event>=<0|1>, repeatable");
  infer_cmd->add_option("--query", infer_opts.query, "Event to ask about")->required();

  CheckOptions check_opts;
  auto* check_cmd = app.add_subcommand("check", "Structural checks on a scenario");
  check_cmd->add_option("file", check_opts.file, "Scenario file or bundled scenario name")->required();
  check_cmd->add_flag("--strong-positivity", check_opts.strong_positivity, "Positive semidefiniteness and null-set absorption");
  check_cmd->add_flag("--classical", check_opts.classical, "Whether the preclusions are downward closed");
  check_cmd->add_flag("--oracle", check_opts.oracle, "Cross-check the solvers against brute force");

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInputError;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_opts, out, err);
    if (preclusions_cmd->parsed()) return cmd_preclusions(preclusions_file, out, err);
    if (eval_cmd->parsed()) return cmd_eval(eval_opts, out, err);
    if (infer_cmd->parsed()) return cmd_infer(infer_opts, out, err);
    if (check_cmd->parsed()) return cmd_check(check_opts, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n\n" << kGrammarHelp;
    return kExitInputError;
  }
  err << app.help();
  return kExitInputError;
}

}  // namespace anhom
