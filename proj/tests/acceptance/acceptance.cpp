// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "../support.hpp"
#include "anhom/cli.hpp"
#include "anhom/oracle.hpp"
#include "anhom/schemes.hpp"

using namespace anhom;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::vector<std::string> rendered(const std::vector<Coevent>& coevents) {
  std::vector<std::string> out;
  for (const Coevent& phi : coevents) out.push_back(render_coevent(phi));
  return out;
}

using Strings = std::vector<std::string>;

PreclusionSet bundled_preclusions(const std::string& name) { return scenario_preclusions(testing::bundled(name)); }

Outcome two_slit() {
  Outcome o;
  const PreclusionSet p = bundled_preclusions("two_slit");
  o.require(p.masks() == std::vector<Mask>{0, 0b0101}, "preclusions are not {{}, {g1 g3}}");
  o.require(rendered(multiplicative_scheme(p).coevents) == Strings{"g2*", "g4*"}, "multiplicative result is not {g2*, g4*}");
  return o;
}

Outcome three_slit() {
  Outcome o;
  const PreclusionSet p = bundled_preclusions("three_slit");
  const SchemeResult mult = multiplicative_scheme(p);
  o.require(rendered(mult.coevents) == Strings{"a*b*"}, "multiplicative result is not {a*b*}");
  if (mult.coevents.size() == 1) {
    const SpacePtr& s = mult.space;
    for (auto [event, value] : std::vector<std::pair<const char*, Bit>>{{"{a}", Bit::zero},
                                                                         {"{b}", Bit::zero},
                                                                         {"{c}", Bit::zero},
                                                                         {"{a c}", Bit::zero},
                                                                         {"{b c}", Bit::zero},
                                                                         {"{a b}", Bit::one},
                                                                         {"{a b c}", Bit::one}}) {
      o.require(evaluate(mult.coevents[0], parse_event(event, s)) == value, std::string("wrong truth value on ") + event);
    }
  }
  o.require(rendered(linear_scheme(p).coevents) == Strings{"a*+b*+c*"}, "linear result is not {a*+b*+c*}");
  o.require(rendered(ideal_scheme(p).coevents) == Strings{"a*+b*+c*", "a*b*"}, "ideal result is not {a*+b*+c*, a*b*}");
  return o;
}

Outcome ab_correlation() {
  Outcome o;
  const PreclusionSet p = bundled_preclusions("ab_correlation");
  const SchemeResult mult = multiplicative_scheme(p);
  o.require(rendered(mult.coevents) == Strings{"AB*", "A'B'*"}, "multiplicative result is not {AB*, A'B'*}");
  o.require(ideal_scheme(p).coevents == mult.coevents, "ideal result differs from multiplicative");
  const SpacePtr& s = mult.space;
  const std::vector<Observation> given{{parse_event("{AB AB'}", s), Bit::one}};
  o.require(infer(mult, given, parse_event("{AB A'B}", s)) == Inference::always_true, "given A, B is not always-true");
  o.require(infer(mult, given, parse_event("{AB' A'B'}", s)) == Inference::always_false, "given A, B' is not always-false");
  return o;
}

Outcome counting() {
  Outcome o;
  const SpacePtr s = testing::space_of_size(4);
  auto e = oracle::enumerate_coevents(s);
  std::uint64_t total = 0, multiplicative = 0;
  while (auto phi = e.next()) {
    ++total;
    if (!phi->is_zero() && oracle::pairwise_multiplicative(oracle::pack(*phi), 4)) ++multiplicative;
  }
  o.require(total == 65536, "enumerated " + std::to_string(total) + " coevents");
  o.require(multiplicative == 16, "found " + std::to_string(multiplicative) + " nonzero multiplicative coevents");
  o.detail = std::to_string(total) + " coevents, " + std::to_string(multiplicative) + " multiplicative (zero excluded)";
  return o;
}

Outcome classical_limit() {
  Outcome o;
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200 && o.pass; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const SpacePtr s = testing::space_of_size(n);
    const PreclusionSet p = testing::random_classical_preclusions(s, rng);
    o.require(is_classical_preclusion(p), "generated set is not downward closed");
    std::vector<Coevent> expected;
    for (std::size_t i = 0; i < n; ++i) {
      if (!p.contains(Mask{1} << i)) expected.push_back(classical(Event::atom(s, i)));
    }
    std::sort(expected.begin(), expected.end());
    o.require(multiplicative_scheme(p).coevents == expected, "trial " + std::to_string(trial) + " differs");
  }
  if (o.pass) o.detail = "200 preclusion sets of random classical measures";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(103);
  std::size_t solutions = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const SpacePtr s = testing::space_of_size(1 + trial % 4);
    const PreclusionSet p = testing::random_preclusions(s, rng, 0.3);
    const SchemeResult r = multiplicative_scheme(p);
    solutions += r.coevents.size();
    o.require(r.coevents == oracle::brute_multiplicative(p), "multiplicative trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const SpacePtr s = testing::space_of_size(1 + trial % 4);
    const PreclusionSet p = testing::random_preclusions(s, rng, 0.3);
    o.require(linear_scheme(p).coevents == oracle::brute_linear(p), "linear trial " + std::to_string(trial));
  }
  const SpacePtr s3 = testing::space_of_size(3);
  std::size_t generators = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const PreclusionSet p = testing::random_preclusions(s3, rng, 0.3);
    const SchemeResult r = ideal_scheme(p);
    const oracle::MinCover m = oracle::brute_min_cover(p);
    const bool same = r.generating_sets == m.sets && r.total_complexity.has_value() == m.feasible &&
                      (!m.feasible || *r.total_complexity == m.total_complexity);
    o.require(same, "ideal trial " + std::to_string(trial));
    generators += r.generating_sets.empty() ? 0 : r.generating_sets[0].size();
  }
  if (o.pass) {
    o.detail = std::to_string(solutions) + " multiplicative solutions, " + std::to_string(generators) + " ideal generators compared";
  }
  return o;
}

Outcome involution() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    const SpacePtr s = testing::space_of_size(n);
    auto e = oracle::enumerate_coevents(s);
    while (auto phi = e.next()) {
      o.require(from_truth_table(s, [&](const Event& a) { return evaluate(*phi, a); }) == *phi,
                "round trip fails for " + render_coevent(*phi));
    }
  }
  std::mt19937_64 rng(107);
  const SpacePtr s4 = testing::space_of_size(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t table = rng() & 0xFFFF;
    const Coevent phi = from_truth_table(s4, [&](const Event& a) { return to_bit((table >> a.mask()) & 1U); });
    o.require(from_truth_table(s4, [&](const Event& a) { return evaluate(phi, a); }) == phi, "random n = 4 round trip");
    o.require(oracle::pack(phi) == table, "random n = 4 table");
  }
  return o;
}

Outcome strong_positivity() {
  Outcome o;
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> part(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const SpacePtr s = testing::space_of_size(n);
    std::vector<GaussianRational> amps;
    for (std::size_t i = 0; i < n; ++i) amps.emplace_back(Rational(part(rng)), Rational(part(rng)));
    o.require(is_strongly_positive(decoherence_from_amplitudes(s, amps, {})), "random amplitude matrix not positive");
  }
  for (const char* name : {"two_slit", "three_slit"}) {
    const auto d = scenario_decoherence(testing::bundled(name));
    o.require(d.has_value() && is_strongly_positive(*d), std::string(name) + " is not strongly positive");
    o.require(d.has_value() && null_set_absorption_check(*d), std::string(name) + " fails absorption");
  }
  // The A-B file lists zeros only; check the classical measure that puts
  // weight on AB and A'B' and reproduces exactly those zeros.
  const Scenario ab = testing::bundled("ab_correlation");
  const SpacePtr& s = ab.space;
  std::vector<Event> singletons;
  for (std::size_t i = 0; i < s->size(); ++i) singletons.push_back(Event::atom(s, i));
  const auto witness = decoherence_from_amplitudes(s, {1, 0, 0, 1}, singletons);
  o.require(preclusions(witness) == scenario_preclusions(ab), "A-B witness measure has different zeros");
  o.require(is_strongly_positive(witness), "A-B witness is not strongly positive");
  o.require(null_set_absorption_check(witness), "A-B witness fails absorption");
  return o;
}

Outcome non_unital_generator() {
  Outcome o;
  const SchemeResult r = ideal_scheme(bundled_preclusions("two_slit"));
  o.require(r.generating_sets.size() == 1, "expected a unique minimum generating set");
  if (!r.generating_sets.empty()) {
    const Coevent expected = parse_coevent("g1*+g3*", r.space);
    const auto& set = r.generating_sets[0];
    const bool present = std::find(set.begin(), set.end(), expected) != set.end();
    o.require(present, "g1*+g3* is not in the generating set");
    o.require(!is_unital(expected), "g1*+g3* is unital");
    o.require(std::find(r.coevents.begin(), r.coevents.end(), expected) == r.coevents.end(), "non-unital generator reported as admissible");
  }
  return o;
}

Outcome parser_contract() {
  Outcome o;
  const auto names = testing::bundled_names();
  for (const std::string& name : names) {
    const Scenario s = testing::bundled(name);
    const ScenarioParse again = parse_scenario(render_scenario(s));
    o.require(again.ok() && *again.scenario == s, name + " does not round trip");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(std::string(ANHOM_TEST_DATA_DIR) + "/malformed")) {
    if (entry.path().extension() == ".scn") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  o.require(files.size() >= 20, "malformed corpus has only " + std::to_string(files.size()) + " files");
  const std::regex positioned(R"(:\d+:\d+: error: )");
  for (const auto& path : files) {
    std::ostringstream out, err;
    int code = -1;
    try {
      code = run_cli({"anhom", "solve", path.string(), "--scheme", "multiplicative"}, out, err);
    } catch (const std::exception& e) {
      o.require(false, path.filename().string() + " threw: " + e.what());
      continue;
    }
    o.require(code == kExitInputError, path.filename().string() + " exited " + std::to_string(code));
    o.require(std::regex_search(err.str(), positioned), path.filename().string() + " has no positioned diagnostic");
  }
  if (o.pass) o.detail = std::to_string(names.size()) + " bundled files, " + std::to_string(files.size()) + " malformed files";
  return o;
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "two-slit reproduction", 1, two_slit},
      {2, "three-slit under all three schemes", 5, three_slit},
      {3, "A-B correlations and inference", 1, ab_correlation},
      {4, "coevent counting at n = 4", 10, counting},
      {5, "classical limit", 30, classical_limit},
      {6, "oracle equivalence", 60, oracle_equivalence},
      {7, "transform involution", 10, involution},
      {8, "strong positivity and null-set absorption", 5, strong_positivity},
      {9, "non-unital generator in the two-slit ideal solution", 5, non_unital_generator},
      {10, "parser and CLI contract", 5, parser_contract},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (outcome.pass && seconds > c.limit_seconds) {
      outcome.pass = false;
      outcome.detail = "over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit";
    }
    failures += outcome.pass ? 0 : 1;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(3);
    line << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << c.number << ": " << c.name << " (" << seconds << " s)";
    if (!outcome.detail.empty()) line << "  " << outcome.detail;
    std::cout << line.str() << '\n';
  }
  return failures == 0 ? 0 : 1;
}
