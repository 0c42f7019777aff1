#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>
#include <regex>

#include "anhom/scenario.hpp"
#include "support.hpp"

using namespace anhom;

namespace {

struct Expectation {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string fragment;
};

// Malformed corpus files open with `# expect <line>:<column> <message fragment>`.
Expectation expectation_of(const std::string& text) {
  static const std::regex header(R"(^# expect (\d+):(\d+) ?(.*)\n)");
  std::smatch m;
  REQUIRE(std::regex_search(text, m, header));
  return {std::stoul(m[1]), std::stoul(m[2]), m[3]};
}

std::vector<std::filesystem::path> malformed_corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(std::string(ANHOM_TEST_DATA_DIR) + "/malformed")) {
    if (entry.path().extension() == ".scn") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST_CASE("bundled scenarios round trip") {
  const auto names = testing::bundled_names();
  CHECK(names.size() == 4);
  for (const std::string& name : names) {
    CAPTURE(name);
    const Scenario s = testing::bundled(name);
    const std::string text = render_scenario(s);
    const ScenarioParse again = parse_scenario(text);
    REQUIRE(again.ok());
    CHECK(*again.scenario == s);
    CHECK(render_scenario(*again.scenario) == text);
  }
}

TEST_CASE("bundled scenario contents") {
  const Scenario two = testing::bundled("two_slit");
  CHECK(two.title == "Two-slit diffraction");
  CHECK(two.space->labels() == std::vector<std::string>{"g1", "g2", "g3", "g4"});
  REQUIRE(std::holds_alternative<AmplitudeSpec>(two.measure));
  CHECK(std::get<AmplitudeSpec>(two.measure).blocks.size() == 2);
  CHECK(two.comments.size() == 4);

  const Scenario ab = testing::bundled("ab_correlation");
  REQUIRE(std::holds_alternative<ExplicitSpec>(ab.measure));
  CHECK_FALSE(scenario_decoherence(ab).has_value());
  CHECK(scenario_preclusions(ab).size() == 4);
  CHECK(scenario_preclusions(ab).provenance() == Provenance::explicit_list);
  CHECK(scenario_preclusions(testing::bundled("three_slit")).provenance() == Provenance::derived_from_measure);
}

TEST_CASE("directives in any order, inline comments and blank lines") {
  const ScenarioParse p = parse_scenario(
      "amplitude c -1   # the odd one\n"
      "\n"
      "amplitude a 1\n"
      "histories a b c\n"
      "   amplitude b 1\n");
  REQUIRE(p.ok());
  CHECK(p.diagnostics.empty());
  CHECK(scenario_preclusions(*p.scenario) == scenario_preclusions(testing::bundled("three_slit")));
}

TEST_CASE("decoherence matrix mode") {
  const ScenarioParse p = parse_scenario(
      "histories x y\n"
      "dmatrix 1 1/2+1/2i\n"
      "dmatrix 1/2-1/2i 1\n");
  REQUIRE(p.ok());
  const auto d = scenario_decoherence(*p.scenario);
  REQUIRE(d.has_value());
  CHECK((*d)(0, 1) == parse_complex("1/2+1/2i"));
  const ScenarioParse again = parse_scenario(render_scenario(*p.scenario));
  REQUIRE(again.ok());
  CHECK(*again.scenario == *p.scenario);
}

TEST_CASE("mode conflict") {
  const ScenarioParse p = parse_scenario(
      "histories a b\n"
      "amplitude a 1\n"
      "amplitude b 1\n"
      "precluded {a}\n");
  CHECK_FALSE(p.ok());
  REQUIRE_FALSE(p.diagnostics.empty());
  CHECK(p.diagnostics[0].line == 4);
  CHECK(p.diagnostics[0].message.find("mode") != std::string::npos);
}

TEST_CASE("several problems are all reported") {
  const ScenarioParse p = parse_scenario(
      "histories a b\n"
      "amplitude a x\n"
      "amplitude q 1\n"
      "frobnicate\n");
  CHECK_FALSE(p.ok());
  CHECK(p.diagnostics.size() >= 3);
  for (std::size_t i = 1; i < p.diagnostics.size(); ++i) CHECK(p.diagnostics[i - 1].line <= p.diagnostics[i].line);
}

TEST_CASE("malformed corpus gives positioned diagnostics") {
  const auto files = malformed_corpus();
  CHECK(files.size() >= 20);
  for (const auto& path : files) {
    CAPTURE(path.filename().string());
    const std::string text = testing::read_file(path.string());
    const Expectation expected = expectation_of(text);
    const ScenarioParse p = parse_scenario(text);
    CHECK_FALSE(p.ok());
    REQUIRE_FALSE(p.diagnostics.empty());
    const ParseDiagnostic& first = p.diagnostics.front();
    CAPTURE(first.message);
    CHECK(first.line == expected.line);
    CHECK(first.column == expected.column);
    CHECK(first.message.find(expected.fragment) != std::string::npos);
    const std::string formatted = format_diagnostic(first, path.filename().string());
    CHECK(formatted.rfind(path.filename().string() + ":" + std::to_string(expected.line) + ":" +
                              std::to_string(expected.column) + ": error: ",
                          0) == 0);
  }
}

TEST_CASE("the parser survives arbitrary mutations") {
  std::mt19937_64 rng(47);
  const std::string base = testing::read_file(std::string(ANHOM_SCENARIO_DIR) + "/two_slit.scn");
  const std::string alphabet = "{}+*-/i#= \n\tabg1234'\x01";
  std::uniform_int_distribution<std::size_t> pick_char(0, alphabet.size() - 1);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text = base;
    std::uniform_int_distribution<int> edits(1, 6);
    for (int k = edits(rng); k > 0; --k) {
      std::uniform_int_distribution<std::size_t> at(0, text.size());
      const std::size_t pos = at(rng);
      switch (rng() % 3) {
        case 0: text.insert(pos, 1, alphabet[pick_char(rng)]); break;
        case 1: if (pos < text.size()) text.erase(pos, 1); break;
        default: if (pos < text.size()) text[pos] = alphabet[pick_char(rng)]; break;
      }
    }
    ScenarioParse p;
    CHECK_NOTHROW(p = parse_scenario(text));
    if (!p.ok()) {
      CHECK_FALSE(p.diagnostics.empty());
      for (const auto& d : p.diagnostics) {
        CHECK(d.line >= 1);
        CHECK(d.column >= 1);
      }
    } else {
      const ScenarioParse again = parse_scenario(render_scenario(*p.scenario));
      REQUIRE(again.ok());
      CHECK(*again.scenario == *p.scenario);
    }
  }
}
